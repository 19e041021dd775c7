#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "dfw/ndarray.hpp"
#include "dfw/sampling.hpp"

namespace dfw::io {

/// Malformed or truncated input file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Binary field file:
///   "DFW1" | u16 version | u16 ndim | u16 ncomp | u16 layout | u32 dims[ndim]
///   | f64 offsets[ncomp][ndim] | f64 payload[ncomp][prod dims]
/// All little-endian, payload row-major with the last axis fastest.
/// layout: 0 collocated, 1 staggered (informational; offsets are authoritative).
struct FieldFile {
  static constexpr std::uint16_t version = 1;

  Extents dims;
  std::uint16_t layout = 0;
  std::vector<std::array<double, 3>> offset;
  std::vector<NdArray> comp;

  int ndim() const { return dims.ndim; }
};

std::vector<std::uint8_t> encode(const FieldFile& f);
FieldFile decode(const std::vector<std::uint8_t>& bytes);

void write_field(const std::filesystem::path& path, const FieldFile& f);
FieldFile read_field(const std::filesystem::path& path);

FieldFile from_field(const StaggeredField& f);
/// Single-component collocated file.
FieldFile from_scalar(const NdArray& a);
/// Requires a cubic grid with one offset row per component.
StaggeredField to_field(const FieldFile& f);

/// CSV with a header row; numbers written with 17 significant digits.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

std::string format_csv(const Table& t);
Table parse_csv(const std::string& text);
void write_csv(const std::filesystem::path& path, const Table& t);
Table read_csv(const std::filesystem::path& path);

/// Writes to a sibling temporary file, then renames over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& data);

}  // namespace dfw::io
