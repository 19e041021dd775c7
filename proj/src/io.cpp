#include "dfw/io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

#include <unistd.h>

namespace dfw::io {

namespace {

constexpr char kMagic[4] = {'D', 'F', 'W', '1'};

void put_u(std::vector<std::uint8_t>& out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_f64(std::vector<std::uint8_t>& out, double v) { put_u(out, std::bit_cast<std::uint64_t>(v), 8); }

class Reader {
 public:
  explicit Reader(const std::vector<std::uint8_t>& b) : b_(b) {}

  std::uint64_t u(int bytes) {
    need(static_cast<std::size_t>(bytes));
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) v |= static_cast<std::uint64_t>(b_[pos_++]) << (8 * i);
    return v;
  }
  double f64() { return std::bit_cast<double>(u(8)); }
  std::size_t remaining() const { return b_.size() - pos_; }

 private:
  void need(std::size_t k) const {
    if (b_.size() - pos_ < k) throw FormatError("field file is truncated");
  }
  const std::vector<std::uint8_t>& b_;
  std::size_t pos_ = 0;
};

std::string read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

std::vector<std::uint8_t> encode(const FieldFile& f) {
  const int nd = f.ndim();
  if (nd < 1 || nd > 3) throw std::invalid_argument("field must have 1 to 3 axes");
  if (f.offset.size() != f.comp.size()) throw std::invalid_argument("one offset row per component is required");
  std::vector<std::uint8_t> out(kMagic, kMagic + 4);
  put_u(out, FieldFile::version, 2);
  put_u(out, static_cast<std::uint64_t>(nd), 2);
  put_u(out, f.comp.size(), 2);
  put_u(out, f.layout, 2);
  for (int a = 0; a < nd; ++a) put_u(out, f.dims[a], 4);
  for (const auto& o : f.offset)
    for (int a = 0; a < nd; ++a) put_f64(out, o[static_cast<std::size_t>(a)]);
  for (const auto& c : f.comp) {
    if (!(c.extents() == f.dims)) throw std::invalid_argument("component shape differs from the header dims");
    for (double v : c.flat()) put_f64(out, v);
  }
  return out;
}

FieldFile decode(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 4 || !std::equal(kMagic, kMagic + 4, bytes.begin())) throw FormatError("not a DFW1 field file");
  Reader r(bytes);
  r.u(4);
  const auto version = r.u(2);
  if (version != FieldFile::version) throw FormatError("unsupported field file version " + std::to_string(version));
  const auto nd = static_cast<int>(r.u(2));
  const auto ncomp = static_cast<std::size_t>(r.u(2));
  if (nd < 1 || nd > 3) throw FormatError("field file has an invalid number of axes");
  FieldFile f;
  f.layout = static_cast<std::uint16_t>(r.u(2));
  f.dims.ndim = nd;
  for (int a = 0; a < nd; ++a) {
    f.dims.n[static_cast<std::size_t>(a)] = static_cast<std::size_t>(r.u(4));
    if (f.dims[a] == 0) throw FormatError("field file has an empty axis");
  }
  f.offset.resize(ncomp, {0.0, 0.0, 0.0});
  for (auto& o : f.offset)
    for (int a = 0; a < nd; ++a) o[static_cast<std::size_t>(a)] = r.f64();
  if (r.remaining() != ncomp * f.dims.size() * 8) throw FormatError("field file payload has the wrong length");
  for (std::size_t c = 0; c < ncomp; ++c) {
    NdArray a(f.dims);
    for (auto& v : a.flat()) v = r.f64();
    f.comp.push_back(std::move(a));
  }
  return f;
}

void write_field(const std::filesystem::path& path, const FieldFile& f) {
  const auto bytes = encode(f);
  write_atomic(path, std::string(bytes.begin(), bytes.end()));
}

FieldFile read_field(const std::filesystem::path& path) {
  const std::string s = read_all(path);
  return decode(std::vector<std::uint8_t>(s.begin(), s.end()));
}

FieldFile from_field(const StaggeredField& f) {
  FieldFile out;
  out.dims = Extents::cube(f.ndim, f.n);
  out.layout = f.has_standard_stagger() ? 1 : 0;
  out.offset = f.offset;
  out.comp = f.comp;
  return out;
}

FieldFile from_scalar(const NdArray& a) {
  FieldFile out;
  out.dims = a.extents();
  out.offset = {{0.0, 0.0, 0.0}};
  out.comp = {a};
  return out;
}

StaggeredField to_field(const FieldFile& f) {
  const int nd = f.ndim();
  for (int a = 1; a < nd; ++a)
    if (f.dims[a] != f.dims[0]) throw FormatError("field grid is not cubic");
  if (f.comp.empty()) throw FormatError("field file has no components");
  StaggeredField s;
  s.ndim = nd;
  s.n = f.dims[0];
  s.comp = f.comp;
  s.offset = f.offset;
  return s;
}

std::string format_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.header.size(); ++i) out += (i ? "," : "") + t.header[i];
  out += '\n';
  char buf[64];
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", row[i]);
      if (i) out += ',';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

Table parse_csv(const std::string& text) {
  Table t;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw FormatError("CSV is empty");
  {
    std::istringstream h(line);
    std::string cell;
    while (std::getline(h, cell, ',')) t.header.push_back(cell);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream l(line);
    std::string cell;
    while (std::getline(l, cell, ',')) {
      double v = 0.0;
      const auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc() || p != cell.data() + cell.size()) throw FormatError("CSV cell is not a number: " + cell);
      row.push_back(v);
    }
    if (row.size() != t.header.size()) throw FormatError("CSV row width differs from the header");
    t.rows.push_back(std::move(row));
  }
  return t;
}

void write_csv(const std::filesystem::path& path, const Table& t) { write_atomic(path, format_csv(t)); }

Table read_csv(const std::filesystem::path& path) { return parse_csv(read_all(path)); }

void write_atomic(const std::filesystem::path& path, const std::string& data) {
  std::filesystem::path tmp = path;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    out.flush();
    if (!out) {
      std::filesystem::remove(tmp);
      throw std::runtime_error("short write to " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace dfw::io
