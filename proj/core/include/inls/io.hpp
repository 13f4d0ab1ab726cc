#pragma once

#include <iosfwd>
#include <string>

#include "inls/field.hpp"

namespace inls {

/// Binary snapshot layout: a 64-byte header
///   offset 0:  magic "INLSFLD1"
///   offset 8:  u32 version (1)
///   offset 12: u32 spatial dimension
///   offset 16: u32 samples per axis
///   offset 20: f64 box half-width
///   offset 28: f64 inhomogeneity exponent b of the producing run
///   offset 36: f64 time stamp
///   offset 44: u8  cell-centered flag
///   padding with zero bytes to 64
/// followed by M^N little-endian (re, im) f64 pairs in row-major order.
void write_snapshot(const Field& u, double b, std::ostream& os);
void write_snapshot_file(const Field& u, double b, const std::string& path);

struct Snapshot {
    Field field;
    double b = 0.0;
};

Snapshot read_snapshot(std::istream& is);
Snapshot read_snapshot_file(const std::string& path);

} // namespace inls
