#pragma once

// Snapshot formats.
//
// Binary (little-endian throughout):
//   "UHYP"  u32 version  u32 d  u32 n  u32 points[N+1]  f64 extent[N+1]  f64 t
//   then (re, im) f64 pairs in Field order.
// CSV: header "t,s,x1..xd,y1..yn,re,im", one row per node.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "uhyp/grid.hpp"

namespace uhyp::io {

inline constexpr std::uint32_t kSnapshotVersion = 1;

void write_snapshot(std::ostream& out, const Field& f);
Field read_snapshot(std::istream& in);

void write_csv(std::ostream& out, const Field& f);
/// Rebuilds the grid from the coordinate columns; rows may come in any order
/// but must cover the full lattice exactly once.
Field read_csv(std::istream& in);

/// Writes `path` through a temporary sibling file and a rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

void save_snapshot(const std::filesystem::path& path, const Field& f);
Field load_snapshot(const std::filesystem::path& path);
void save_csv(const std::filesystem::path& path, const Field& f);
Field load_csv(const std::filesystem::path& path);

}  // namespace uhyp::io
