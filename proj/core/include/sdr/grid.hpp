#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace sdr {

using Complex = std::complex<double>;

/// Uniform Cartesian cell layout over a box in R^d.
///
/// Cell `i` along axis `k` covers [origin[k] + i*h, origin[k] + (i+1)*h).
/// Flat indices are row-major: the last axis varies fastest.
struct Grid {
  std::vector<std::size_t> shape;
  double h = 1.0;
  std::vector<double> origin;

  /// Box [-n*h/2, n*h/2)^d, the layout used everywhere rearrangements are
  /// expected to be centred.
  static Grid centered(std::size_t dim, std::size_t cells_per_axis, double h);

  std::size_t dim() const { return shape.size(); }
  std::size_t size() const;
  double cell_measure() const;
  double center(std::size_t axis, std::size_t index) const {
    return origin[axis] + (static_cast<double>(index) + 0.5) * h;
  }
  std::vector<double> center_of(std::size_t flat) const;
  double center_norm2(std::size_t flat) const;

  std::vector<std::size_t> unravel(std::size_t flat) const;
  std::size_t ravel(std::span<const std::size_t> index) const;

  /// Flat index of the cell containing `point`, if any.
  std::optional<std::size_t> locate(std::span<const double> point) const;

  /// Same cells, every coordinate multiplied by `factor` (> 0).
  Grid dilated(double factor) const;

  /// Throws invalid-argument when the layout violates its invariants.
  void validate() const;

  bool same_layout(const Grid& other) const;
};

/// Piecewise-constant complex function: `values[i]` on cell i.
struct GridFunction {
  Grid grid;
  std::vector<Complex> values;

  GridFunction() = default;
  GridFunction(Grid g, std::vector<Complex> v);
  explicit GridFunction(Grid g);

  std::size_t dim() const { return grid.dim(); }
  std::size_t size() const { return values.size(); }

  double norm_p(double p) const;  // p = +inf gives the sup norm
  double integral_abs() const { return norm_p(1.0); }
  /// Measure of the set where the function is non-zero.
  double support_measure() const;

  GridFunction abs() const;
  GridFunction dilated(double factor) const;
};

/// Radial step function x -> level(|x|): `levels[i]` on the shell
/// (radii[i], radii[i+1]], levels[0] at the origin, zero beyond radii.back().
struct RadialProfile {
  std::size_t dim = 1;
  std::vector<double> radii;
  std::vector<double> levels;

  double evaluate(double r) const;
  /// Measure of { x : level(|x|) > lambda }.
  double distribution(double lambda) const;
  void validate() const;
};

struct DistributionSamples {
  std::vector<double> lambdas;
  std::vector<double> measures;
};

/// Samples of a Fourier transform with the e^{-2 pi i <t, xi>} forward kernel.
///
/// `grid` is the frequency lattice (cells of width delta-xi centred on the
/// lattice points m * delta-xi, m in [-N/2, N/2)); `source` is the spatial
/// layout the spectrum was computed from, needed by the inverse transform.
struct Spectrum {
  Grid grid;
  Grid source;
  std::vector<Complex> values;

  std::size_t dim() const { return grid.dim(); }
  double cell_measure() const { return grid.cell_measure(); }
  /// Frequency lattice point of a flat index.
  std::vector<double> frequency(std::size_t flat) const { return grid.center_of(flat); }

  /// The spectrum viewed as a grid function on the frequency lattice.
  GridFunction as_grid_function() const { return GridFunction(grid, values); }
};

/// Neumaier-compensated accumulator; results depend only on the order of
/// additions, so fixed loops give bit-stable sums.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Cells sorted by distance of their centre from the coordinate origin,
/// ties broken by flat index.
std::vector<std::size_t> distance_order(const Grid& grid);

}  // namespace sdr
