#include "sdr/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <numeric>

#include "sdr/error.hpp"

namespace sdr {

Grid Grid::centered(std::size_t dim, std::size_t cells_per_axis, double h) {
  require(dim >= 1, ErrorKind::invalid_argument, "grid dimension must be >= 1");
  require(cells_per_axis >= 1, ErrorKind::invalid_argument, "grid needs at least one cell per axis");
  require(h > 0.0 && std::isfinite(h), ErrorKind::invalid_argument, "cell size must be positive");
  Grid g;
  g.shape.assign(dim, cells_per_axis);
  g.h = h;
  g.origin.assign(dim, -0.5 * static_cast<double>(cells_per_axis) * h);
  return g;
}

std::size_t Grid::size() const {
  std::size_t n = 1;
  for (auto s : shape) n *= s;
  return shape.empty() ? 0 : n;
}

double Grid::cell_measure() const { return std::pow(h, static_cast<double>(dim())); }

std::vector<double> Grid::center_of(std::size_t flat) const {
  std::vector<double> x(dim());
  for (std::size_t k = dim(); k-- > 0;) {
    x[k] = center(k, flat % shape[k]);
    flat /= shape[k];
  }
  return x;
}

double Grid::center_norm2(std::size_t flat) const {
  double r2 = 0.0;
  for (std::size_t k = dim(); k-- > 0;) {
    const double c = center(k, flat % shape[k]);
    r2 += c * c;
    flat /= shape[k];
  }
  return r2;
}

std::vector<std::size_t> Grid::unravel(std::size_t flat) const {
  std::vector<std::size_t> idx(dim());
  for (std::size_t k = dim(); k-- > 0;) {
    idx[k] = flat % shape[k];
    flat /= shape[k];
  }
  return idx;
}

std::size_t Grid::ravel(std::span<const std::size_t> index) const {
  std::size_t flat = 0;
  for (std::size_t k = 0; k < dim(); ++k) flat = flat * shape[k] + index[k];
  return flat;
}

std::optional<std::size_t> Grid::locate(std::span<const double> point) const {
  if (point.size() != dim()) return std::nullopt;
  std::size_t flat = 0;
  for (std::size_t k = 0; k < dim(); ++k) {
    const double u = std::floor((point[k] - origin[k]) / h);
    if (!(u >= 0.0) || u >= static_cast<double>(shape[k])) return std::nullopt;
    flat = flat * shape[k] + static_cast<std::size_t>(u);
  }
  return flat;
}

Grid Grid::dilated(double factor) const {
  require(factor > 0.0 && std::isfinite(factor), ErrorKind::invalid_argument,
          "dilation factor must be positive");
  Grid g = *this;
  g.h *= factor;
  for (auto& o : g.origin) o *= factor;
  return g;
}

void Grid::validate() const {
  require(!shape.empty(), ErrorKind::invalid_argument, "grid dimension must be >= 1");
  require(origin.size() == shape.size(), ErrorKind::invalid_argument,
          "grid origin length differs from its dimension");
  require(h > 0.0 && std::isfinite(h), ErrorKind::invalid_argument, "cell size must be positive");
  std::size_t n = 1;
  for (auto s : shape) {
    require(s >= 1, ErrorKind::invalid_argument, "grid needs at least one cell per axis");
    require(n <= std::numeric_limits<std::size_t>::max() / s, ErrorKind::resource,
            "grid cell count overflows");
    n *= s;
  }
  for (auto o : origin) require(std::isfinite(o), ErrorKind::invalid_argument, "grid origin is not finite");
}

bool Grid::same_layout(const Grid& other) const {
  return shape == other.shape && h == other.h && origin == other.origin;
}

GridFunction::GridFunction(Grid g, std::vector<Complex> v) : grid(std::move(g)), values(std::move(v)) {
  grid.validate();
  require(values.size() == grid.size(), ErrorKind::invalid_argument,
          "value count does not match the grid");
}

GridFunction::GridFunction(Grid g) : grid(std::move(g)) {
  grid.validate();
  values.assign(grid.size(), Complex{});
}

double GridFunction::norm_p(double p) const {
  require(p >= 1.0, ErrorKind::invalid_argument, "norm exponent must be >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& v : values) m = std::max(m, std::abs(v));
    return m;
  }
  CompensatedSum s;
  if (p == 1.0) {
    for (const auto& v : values) s.add(std::abs(v));
    return s.value() * grid.cell_measure();
  }
  if (p == 2.0) {
    for (const auto& v : values) s.add(std::norm(v));
    return std::sqrt(s.value() * grid.cell_measure());
  }
  for (const auto& v : values) s.add(std::pow(std::abs(v), p));
  return std::pow(s.value() * grid.cell_measure(), 1.0 / p);
}

double GridFunction::support_measure() const {
  std::size_t count = 0;
  for (const auto& v : values) count += (v != Complex{}) ? 1 : 0;
  return static_cast<double>(count) * grid.cell_measure();
}

GridFunction GridFunction::abs() const {
  GridFunction out(grid);
  for (std::size_t i = 0; i < values.size(); ++i) out.values[i] = std::abs(values[i]);
  return out;
}

GridFunction GridFunction::dilated(double factor) const {
  return GridFunction(grid.dilated(factor), values);
}

double RadialProfile::evaluate(double r) const {
  r = std::abs(r);
  if (levels.empty() || r > radii.back()) return 0.0;
  // first shell whose outer radius is >= r
  auto it = std::lower_bound(radii.begin() + 1, radii.end(), r);
  return levels[static_cast<std::size_t>(it - radii.begin()) - 1];
}

double RadialProfile::distribution(double lambda) const {
  // levels are nonincreasing, so the super-level set is a ball
  std::size_t k = 0;
  while (k < levels.size() && levels[k] > lambda) ++k;
  if (k == 0) return 0.0;
  const double cd = std::pow(std::numbers::pi, 0.5 * static_cast<double>(dim)) /
                    std::tgamma(0.5 * static_cast<double>(dim) + 1.0);
  return cd * std::pow(radii[k], static_cast<double>(dim));
}

void RadialProfile::validate() const {
  require(dim >= 1, ErrorKind::invalid_argument, "profile dimension must be >= 1");
  require(radii.size() == levels.size() + 1, ErrorKind::invalid_argument,
          "profile needs one more radius than levels");
  require(radii.front() == 0.0, ErrorKind::invalid_argument, "profile radii must start at 0");
  for (std::size_t i = 1; i < radii.size(); ++i)
    require(radii[i] > radii[i - 1], ErrorKind::invalid_argument, "profile radii must increase strictly");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    require(levels[i] >= 0.0 && std::isfinite(levels[i]), ErrorKind::invalid_argument,
            "profile levels must be finite and nonnegative");
    if (i > 0)
      require(levels[i] <= levels[i - 1], ErrorKind::invalid_argument, "profile levels must not increase");
  }
}

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x))
    comp_ += (sum_ - t) + x;
  else
    comp_ += (x - t) + sum_;
  sum_ = t;
}

std::vector<std::size_t> distance_order(const Grid& grid) {
  const std::size_t n = grid.size();
  std::vector<double> r2(n);
  // When every origin sits on the half-cell lattice, doubled centres are
  // integers and the squared distances are exact; the order then does not
  // depend on h at all, and mirror-image cells tie exactly.
  std::vector<long long> twice_origin(grid.dim());
  bool lattice = true;
  for (std::size_t k = 0; k < grid.dim(); ++k) {
    const double s = 2.0 * grid.origin[k] / grid.h;
    const double rs = std::round(s);
    lattice = lattice && std::abs(s - rs) <= 1e-9 * std::max(1.0, std::abs(s)) && std::abs(rs) < 1e9;
    twice_origin[k] = static_cast<long long>(rs);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!lattice) {
      r2[i] = grid.center_norm2(i);
      continue;
    }
    long long acc = 0;
    std::size_t flat = i;
    for (std::size_t k = grid.dim(); k-- > 0;) {
      const long long m = twice_origin[k] + 2 * static_cast<long long>(flat % grid.shape[k]) + 1;
      acc += m * m;
      flat /= grid.shape[k];
    }
    r2[i] = static_cast<double>(acc);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return r2[a] < r2[b] || (r2[a] == r2[b] && a < b);
  });
  return order;
}

}  // namespace sdr
