#include "sdr/grid_io.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "sdr/error.hpp"

namespace sdr {
namespace {

static_assert(std::endian::native == std::endian::little,
              "the binary container assumes a little-endian host");

constexpr std::array<char, 8> kGridMagic{'G', 'R', 'I', 'D', 'F', 'N', '1', '\0'};
constexpr std::array<char, 8> kSpecMagic{'S', 'P', 'E', 'C', 'T', 'R', 'M', '1'};
constexpr std::uint32_t kMaxDim = 16;

template <class T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) fail(ErrorKind::invalid_argument, "truncated grid container");
  return v;
}

void put_layout(std::ostream& out, const Grid& g) {
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.dim()));
  put<double>(out, g.h);
  for (auto s : g.shape) put<std::uint64_t>(out, s);
  for (auto o : g.origin) put<double>(out, o);
}

Grid get_layout(std::istream& in) {
  Grid g;
  const auto d = get<std::uint32_t>(in);
  if (d == 0 || d > kMaxDim) fail(ErrorKind::invalid_argument, "grid container has a bad dimension");
  g.h = get<double>(in);
  g.shape.resize(d);
  g.origin.resize(d);
  for (auto& s : g.shape) s = static_cast<std::size_t>(get<std::uint64_t>(in));
  for (auto& o : g.origin) o = get<double>(in);
  g.validate();
  return g;
}

void put_values(std::ostream& out, const std::vector<Complex>& v) {
  for (const auto& z : v) {
    put<double>(out, z.real());
    put<double>(out, z.imag());
  }
}

std::vector<Complex> get_values(std::istream& in, std::size_t n) {
  std::vector<Complex> v(n);
  for (auto& z : v) {
    const double re = get<double>(in);
    const double im = get<double>(in);
    z = Complex(re, im);
  }
  return v;
}

void check_magic(std::istream& in, const std::array<char, 8>& magic, const char* what) {
  std::array<char, 8> m{};
  in.read(m.data(), 8);
  if (!in || m != magic) fail(ErrorKind::invalid_argument, std::string("not a ") + what + " container");
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::resource, "cannot open " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::resource, "cannot write " + path);
  return out;
}

}  // namespace

void write_grid_function(std::ostream& out, const GridFunction& f) {
  out.write(kGridMagic.data(), 8);
  put_layout(out, f.grid);
  put_values(out, f.values);
}

GridFunction read_grid_function(std::istream& in) {
  check_magic(in, kGridMagic, "grid function");
  Grid g = get_layout(in);
  auto values = get_values(in, g.size());
  return GridFunction(std::move(g), std::move(values));
}

void save_grid_function(const std::string& path, const GridFunction& f) {
  auto out = open_out(path);
  write_grid_function(out, f);
  if (!out) fail(ErrorKind::resource, "write failed for " + path);
}

GridFunction load_grid_function(const std::string& path) {
  auto in = open_in(path);
  return read_grid_function(in);
}

void write_spectrum(std::ostream& out, const Spectrum& s) {
  out.write(kSpecMagic.data(), 8);
  put_layout(out, s.grid);
  put_layout(out, s.source);
  put_values(out, s.values);
}

Spectrum read_spectrum(std::istream& in) {
  check_magic(in, kSpecMagic, "spectrum");
  Spectrum s;
  s.grid = get_layout(in);
  s.source = get_layout(in);
  if (s.source.dim() != s.grid.dim()) fail(ErrorKind::invalid_argument, "spectrum layouts disagree in dimension");
  s.values = get_values(in, s.grid.size());
  return s;
}

void save_spectrum(const std::string& path, const Spectrum& s) {
  auto out = open_out(path);
  write_spectrum(out, s);
  if (!out) fail(ErrorKind::resource, "write failed for " + path);
}

Spectrum load_spectrum(const std::string& path) {
  auto in = open_in(path);
  return read_spectrum(in);
}

GridFunction read_csv_1d(std::istream& in) {
  std::vector<double> xs;
  std::vector<Complex> vals;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    for (auto& c : line)
      if (c == ',') c = ' ';
    std::istringstream fields(line);
    double x = 0, re = 0, im = 0;
    if (!(fields >> x)) {
      if (xs.empty() && vals.empty()) continue;  // header
      fail(ErrorKind::invalid_argument, "csv line " + std::to_string(lineno) + ": expected x, re, im");
    }
    if (!(fields >> re)) fail(ErrorKind::invalid_argument, "csv line " + std::to_string(lineno) + ": missing re");
    if (!(fields >> im)) im = 0.0;
    xs.push_back(x);
    vals.emplace_back(re, im);
  }
  if (xs.empty()) fail(ErrorKind::invalid_argument, "csv input has no rows");
  double h = 1.0;
  if (xs.size() > 1) {
    h = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
    if (!(h > 0.0)) fail(ErrorKind::invalid_argument, "csv x column must increase");
    for (std::size_t i = 1; i < xs.size(); ++i)
      if (std::abs(xs[i] - xs[i - 1] - h) > 1e-9 * std::max(1.0, h))
        fail(ErrorKind::invalid_argument, "csv x column is not uniformly spaced");
  }
  Grid g;
  g.shape = {xs.size()};
  g.h = h;
  g.origin = {xs.front() - 0.5 * h};
  return GridFunction(std::move(g), std::move(vals));
}

GridFunction load_csv_1d(const std::string& path) {
  auto in = open_in(path);
  return read_csv_1d(in);
}

GridFunction load_any(const std::string& path) {
  auto in = open_in(path);
  std::array<char, 8> m{};
  in.read(m.data(), 8);
  const bool full = static_cast<bool>(in);
  in.clear();
  in.seekg(0);
  if (full && m == kGridMagic) return read_grid_function(in);
  if (full && m == kSpecMagic) return read_spectrum(in).as_grid_function();
  return read_csv_1d(in);
}

}  // namespace sdr
