#pragma once

#include <stdexcept>
#include <string>

namespace uhyp {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A carrier frequency is not representable on the grid (|carrier| * h > pi).
class ResolutionError : public Error {
public:
    using Error::Error;
};

/// Evaluation requested on the singular plane lambda = 0.
class SingularFrequency : public Error {
public:
    using Error::Error;
};

/// Rejected by a strict multiplier policy: too much energy on lambda = 0.
class IllPreparedData : public Error {
public:
    IllPreparedData(const std::string& what, double fraction)
        : Error(what), fraction_(fraction) {}
    double fraction() const noexcept { return fraction_; }

private:
    double fraction_;
};

/// Interpolation of a discrete spectrum outside its frequency box.
class OutOfBand : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    ConfigError(const std::string& what, int line)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

class FormatError : public Error {
public:
    using Error::Error;
};

}  // namespace uhyp
