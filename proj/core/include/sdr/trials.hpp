#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "sdr/grid.hpp"

namespace sdr {

/// Counter-based generator: the stream is a pure function of
/// (seed, trial, stream), so trials can be produced in any order or in
/// parallel and still be replayed one by one.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t trial, std::uint64_t stream);

  std::uint64_t next();
  double uniform();                     // [0, 1)
  double uniform(double lo, double hi); // [lo, hi)
  double normal();
  std::size_t below(std::size_t n);     // [0, n)

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

enum class Generator { indicator_union, random_step, gaussian_mix, modulated_bump };

std::string_view to_string(Generator g);
Generator parse_generator(std::string_view name);

struct TrialFamily {
  Generator generator = Generator::random_step;
  int d = 1;
  std::size_t n = 256;      // cells per axis
  double half_width = 8.0;  // the box is [-half_width, half_width)^d
  std::uint64_t seed = 0;
  std::size_t count = 100;

  Grid grid() const { return Grid::centered(static_cast<std::size_t>(d), n, 2.0 * half_width / static_cast<double>(n)); }
};

/// d = 1: 256 cells on [-8, 8); d = 2: 64 cells per axis on [-4, 4).
TrialFamily default_family(Generator g, int d, std::uint64_t seed, std::size_t count);

/// Trial `index` of the family, drawn from `stream` (distinct streams give
/// independent functions for the same trial, e.g. the two sides of a pair).
GridFunction make_trial(const TrialFamily& family, std::size_t index, std::uint64_t stream = 0);

/// A {0,1}-valued union of one to three boxes on `lattice`, all of whose
/// cells lie within `reach` of the origin in every coordinate.
GridFunction make_box_union(const Grid& lattice, double reach, std::uint64_t seed, std::size_t index,
                            std::uint64_t stream);

}  // namespace sdr
