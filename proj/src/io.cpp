#include "uhyp/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "uhyp/errors.hpp"

namespace uhyp::io {

namespace {

constexpr char kMagic[4] = {'U', 'H', 'Y', 'P'};

void put_u32(std::string& buf, std::uint32_t v) {
    for (int k = 0; k < 4; ++k) buf.push_back(static_cast<char>((v >> (8 * k)) & 0xffu));
}

void put_f64(std::string& buf, double x) {
    const auto bits = std::bit_cast<std::uint64_t>(x);
    for (int k = 0; k < 8; ++k) buf.push_back(static_cast<char>((bits >> (8 * k)) & 0xffu));
}

class Reader {
public:
    explicit Reader(std::istream& in) : in_(in) {}

    void bytes(unsigned char* dst, std::size_t count) {
        in_.read(reinterpret_cast<char*>(dst), static_cast<std::streamsize>(count));
        if (static_cast<std::size_t>(in_.gcount()) != count) throw FormatError("snapshot is truncated");
    }
    std::uint32_t u32() {
        unsigned char b[4];
        bytes(b, 4);
        std::uint32_t v = 0;
        for (int k = 0; k < 4; ++k) v |= static_cast<std::uint32_t>(b[k]) << (8 * k);
        return v;
    }
    double f64() {
        unsigned char b[8];
        bytes(b, 8);
        std::uint64_t v = 0;
        for (int k = 0; k < 8; ++k) v |= static_cast<std::uint64_t>(b[k]) << (8 * k);
        return std::bit_cast<double>(v);
    }

private:
    std::istream& in_;
};

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
        out.push_back(cell);
    }
    return out;
}

double parse_cell(const std::string& cell, std::size_t row) {
    try {
        std::size_t used = 0;
        const double v = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
        return v;
    } catch (const std::exception&) {
        throw FormatError("csv row " + std::to_string(row) + ": bad number '" + cell + "'");
    }
}

}  // namespace

void write_snapshot(std::ostream& out, const Field& f) {
    f.validate();
    const GridSpec& g = f.grid;
    std::string buf;
    buf.reserve(64 + 16 * f.values.size());
    buf.append(kMagic, 4);
    put_u32(buf, kSnapshotVersion);
    put_u32(buf, static_cast<std::uint32_t>(g.d));
    put_u32(buf, static_cast<std::uint32_t>(g.n));
    for (int m : g.points) put_u32(buf, static_cast<std::uint32_t>(m));
    for (double l : g.extent) put_f64(buf, l);
    put_f64(buf, f.time);
    for (const Complex& z : f.values) {
        put_f64(buf, z.real());
        put_f64(buf, z.imag());
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw FormatError("failed to write snapshot");
}

Field read_snapshot(std::istream& in) {
    Reader r(in);
    unsigned char magic[4];
    r.bytes(magic, 4);
    if (std::memcmp(magic, kMagic, 4) != 0) throw FormatError("not a UHYP snapshot");
    const std::uint32_t version = r.u32();
    if (version != kSnapshotVersion) {
        throw FormatError("unsupported snapshot version " + std::to_string(version));
    }
    Field f;
    f.grid.d = static_cast<int>(r.u32());
    f.grid.n = static_cast<int>(r.u32());
    if (f.grid.d < 1 || f.grid.n < 1 || f.grid.d > 8 || f.grid.n > 8) {
        throw FormatError("snapshot header has invalid dimensions");
    }
    const int axes = f.grid.axes();
    f.grid.points.resize(axes);
    f.grid.extent.resize(axes);
    for (int a = 0; a < axes; ++a) f.grid.points[a] = static_cast<int>(r.u32());
    for (int a = 0; a < axes; ++a) f.grid.extent[a] = r.f64();
    try {
        f.grid.validate();
    } catch (const InvalidArgument& e) {
        throw FormatError(std::string("snapshot header: ") + e.what());
    }
    f.time = r.f64();
    f.values.resize(f.grid.size());
    for (Complex& z : f.values) {
        const double re = r.f64();
        const double im = r.f64();
        z = Complex(re, im);
    }
    return f;
}

void write_csv(std::ostream& out, const Field& f) {
    f.validate();
    const GridSpec& g = f.grid;
    std::string text = "t,s";
    for (int k = 1; k <= g.d; ++k) text += ",x" + std::to_string(k);
    for (int k = 1; k <= g.n; ++k) text += ",y" + std::to_string(k);
    text += ",re,im\n";
    const std::string t = format_double(f.time);
    std::vector<double> p(g.axes());
    for (std::size_t flat = 0; flat < f.values.size(); ++flat) {
        g.point(flat, p);
        text += t;
        for (double c : p) text += "," + format_double(c);
        text += "," + format_double(f.values[flat].real()) + "," + format_double(f.values[flat].imag()) + "\n";
    }
    out << text;
    if (!out) throw FormatError("failed to write csv");
}

Field read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw FormatError("csv is empty");
    const auto header = split_csv(line);
    if (header.size() < 6 || header[0] != "t" || header[1] != "s" || header[header.size() - 2] != "re" ||
        header.back() != "im") {
        throw FormatError("csv header must be t,s,x1..,y1..,re,im");
    }
    int d = 0;
    int n = 0;
    for (std::size_t c = 2; c + 2 < header.size(); ++c) {
        if (header[c] == "x" + std::to_string(d + 1) && n == 0) {
            ++d;
        } else if (header[c] == "y" + std::to_string(n + 1)) {
            ++n;
        } else {
            throw FormatError("unexpected csv column '" + header[c] + "'");
        }
    }
    if (d < 1 || n < 1) throw FormatError("csv needs at least one x and one y column");
    const int axes = 1 + d + n;

    std::vector<std::vector<double>> rows;
    double time = 0.0;
    std::size_t row_no = 1;
    while (std::getline(in, line)) {
        ++row_no;
        if (line.empty() || line == "\r") continue;
        const auto cells = split_csv(line);
        if (cells.size() != header.size()) {
            throw FormatError("csv row " + std::to_string(row_no) + " has " + std::to_string(cells.size()) +
                              " columns");
        }
        std::vector<double> v(cells.size());
        for (std::size_t c = 0; c < cells.size(); ++c) v[c] = parse_cell(cells[c], row_no);
        if (rows.empty()) {
            time = v[0];
        } else if (v[0] != time) {
            throw FormatError("csv mixes several times");
        }
        rows.push_back(std::move(v));
    }
    if (rows.empty()) throw FormatError("csv has no data rows");

    Field f;
    f.grid.d = d;
    f.grid.n = n;
    f.time = time;
    f.grid.points.resize(axes);
    f.grid.extent.resize(axes);
    for (int a = 0; a < axes; ++a) {
        std::vector<double> coords;
        coords.reserve(rows.size());
        for (const auto& r : rows) coords.push_back(r[1 + a]);
        std::sort(coords.begin(), coords.end());
        coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
        const int m = static_cast<int>(coords.size());
        if (m < 2 || m % 2 != 0) throw FormatError("csv axis " + std::to_string(a) + " is not an even lattice");
        f.grid.points[a] = m;
        f.grid.extent[a] = -coords.front();
    }
    try {
        f.grid.validate();
    } catch (const InvalidArgument& e) {
        throw FormatError(std::string("csv grid: ") + e.what());
    }
    if (rows.size() != f.grid.size()) throw FormatError("csv does not cover the full lattice");

    const auto strides = f.grid.strides();
    f.values.assign(f.grid.size(), Complex{0.0, 0.0});
    std::vector<bool> seen(f.grid.size(), false);
    for (const auto& r : rows) {
        std::size_t flat = 0;
        for (int a = 0; a < axes; ++a) {
            const double h = f.grid.spacing(a);
            const double pos = (r[1 + a] + f.grid.extent[a]) / h;
            const long idx = std::lround(pos);
            if (idx < 0 || idx >= f.grid.points[a] || std::abs(pos - idx) > 1e-6) {
                throw FormatError("csv coordinate off the lattice on axis " + std::to_string(a));
            }
            flat += static_cast<std::size_t>(idx) * strides[a];
        }
        if (seen[flat]) throw FormatError("csv repeats a lattice node");
        seen[flat] = true;
        f.values[flat] = Complex(r[axes + 1], r[axes + 2]);
    }
    return f;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw FormatError("cannot open " + tmp.string() + " for writing");
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out) {
            out.close();
            std::filesystem::remove(tmp);
            throw FormatError("failed writing " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw FormatError("cannot rename onto " + path.string() + ": " + ec.message());
    }
}

void save_snapshot(const std::filesystem::path& path, const Field& f) {
    std::ostringstream out(std::ios::binary);
    write_snapshot(out, f);
    write_file_atomic(path, out.str());
}

Field load_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path.string());
    return read_snapshot(in);
}

void save_csv(const std::filesystem::path& path, const Field& f) {
    std::ostringstream out;
    write_csv(out, f);
    write_file_atomic(path, out.str());
}

Field load_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path.string());
    return read_csv(in);
}

}  // namespace uhyp::io
