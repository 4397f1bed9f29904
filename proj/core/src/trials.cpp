#include "sdr/trials.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "sdr/error.hpp"

namespace sdr {
namespace {

std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct Box {
  std::vector<double> center;
  std::vector<double> half;

  bool contains(const std::vector<double>& x) const {
    for (std::size_t k = 0; k < x.size(); ++k)
      if (std::abs(x[k] - center[k]) > half[k]) return false;
    return true;
  }
};

Box random_box(CounterRng& rng, std::size_t d, double center_reach, double min_half, double max_half) {
  Box b;
  for (std::size_t k = 0; k < d; ++k) {
    b.center.push_back(rng.uniform(-center_reach, center_reach));
    b.half.push_back(rng.uniform(min_half, max_half));
  }
  return b;
}

// Widths of smooth features: absolute, so that refining the box in d = 2
// does not make them thinner than a few cells.
double feature_scale(double half_width) { return std::min(1.0, half_width / 4.0); }

GridFunction indicator_union(const TrialFamily& fam, CounterRng& rng) {
  const Grid g = fam.grid();
  const double w = fam.half_width;
  const std::size_t count = 1 + rng.below(4);
  std::vector<Box> boxes;
  for (std::size_t i = 0; i < count; ++i)
    boxes.push_back(random_box(rng, g.dim(), 0.5 * w, 2.0 * g.h, 0.25 * w));
  GridFunction f(g);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto x = g.center_of(i);
    for (const auto& b : boxes)
      if (b.contains(x)) {
        f.values[i] = 1.0;
        break;
      }
  }
  return f;
}

GridFunction random_step(const TrialFamily& fam, CounterRng& rng) {
  const Grid g = fam.grid();
  const double w = fam.half_width;
  const std::size_t block = 2 + rng.below(7);
  const double block_len = static_cast<double>(block) * g.h;
  const auto per_axis = static_cast<std::size_t>(std::ceil(w / block_len));
  std::size_t blocks = 1;
  for (std::size_t k = 0; k < g.dim(); ++k) blocks *= per_axis;
  std::vector<Complex> level(blocks);
  for (auto& v : level) {
    if (rng.uniform() < 0.7) v = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  }
  GridFunction f(g);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto x = g.center_of(i);
    std::size_t id = 0;
    bool inside = true;
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double u = (x[k] + 0.5 * w) / block_len;
      if (u < 0.0 || u >= static_cast<double>(per_axis)) {
        inside = false;
        break;
      }
      id = id * per_axis + static_cast<std::size_t>(u);
    }
    if (inside) f.values[i] = level[id];
  }
  return f;
}

GridFunction gaussian_mix(const TrialFamily& fam, CounterRng& rng) {
  const Grid g = fam.grid();
  const double w = fam.half_width;
  const std::size_t count = 1 + rng.below(3);
  struct Bump {
    Complex amp;
    std::vector<double> center;
    double sigma;
  };
  std::vector<Bump> bumps;
  for (std::size_t j = 0; j < count; ++j) {
    Bump b;
    b.amp = Complex(rng.normal(), rng.normal());
    for (std::size_t k = 0; k < g.dim(); ++k) b.center.push_back(rng.uniform(-0.25 * w, 0.25 * w));
    b.sigma = rng.uniform(0.5, 1.5) * feature_scale(w);
    bumps.push_back(std::move(b));
  }
  GridFunction f(g);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto x = g.center_of(i);
    Complex v = 0.0;
    for (const auto& b : bumps) {
      double r2 = 0.0;
      for (std::size_t k = 0; k < x.size(); ++k) r2 += (x[k] - b.center[k]) * (x[k] - b.center[k]);
      v += b.amp * std::exp(-std::numbers::pi * r2 / (b.sigma * b.sigma));
    }
    f.values[i] = v;
  }
  return f;
}

GridFunction modulated_bump(const TrialFamily& fam, CounterRng& rng) {
  const Grid g = fam.grid();
  const double w = fam.half_width;
  const double radius = rng.uniform(1.0, 2.0) * feature_scale(w);
  const Complex amp = std::polar(rng.uniform(0.5, 2.0), rng.uniform(0.0, 2.0 * std::numbers::pi));
  std::vector<double> center, freq;
  for (std::size_t k = 0; k < g.dim(); ++k) {
    center.push_back(rng.uniform(-0.25 * w, 0.25 * w));
    freq.push_back(rng.uniform(-0.25 / g.h, 0.25 / g.h));
  }
  GridFunction f(g);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto x = g.center_of(i);
    double r2 = 0.0, phase = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      r2 += (x[k] - center[k]) * (x[k] - center[k]);
      phase += freq[k] * x[k];
    }
    const double u = r2 / (radius * radius);
    if (u >= 1.0) continue;
    f.values[i] = amp * std::exp(-1.0 / (1.0 - u)) * std::polar(1.0, 2.0 * std::numbers::pi * std::fmod(phase, 1.0));
  }
  return f;
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t trial, std::uint64_t stream)
    : key_(mix(mix(seed) ^ mix(trial * 0xd1b54a32d192ed03ULL) ^ mix(~stream))) {}

std::uint64_t CounterRng::next() { return mix(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

double CounterRng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double CounterRng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double CounterRng::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::size_t CounterRng::below(std::size_t n) {
  require(n > 0, ErrorKind::invalid_argument, "below() needs a positive bound");
  return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
}

std::string_view to_string(Generator g) {
  switch (g) {
    case Generator::indicator_union: return "indicator-union";
    case Generator::random_step: return "random-step";
    case Generator::gaussian_mix: return "gaussian-mix";
    case Generator::modulated_bump: return "modulated-bump";
  }
  return "random-step";
}

Generator parse_generator(std::string_view name) {
  for (auto g : {Generator::indicator_union, Generator::random_step, Generator::gaussian_mix,
                 Generator::modulated_bump})
    if (name == to_string(g)) return g;
  fail(ErrorKind::invalid_argument, "unknown trial generator '" + std::string(name) + "'");
}

TrialFamily default_family(Generator g, int d, std::uint64_t seed, std::size_t count) {
  require(d >= 1, ErrorKind::invalid_argument, "dimension must be >= 1");
  TrialFamily fam;
  fam.generator = g;
  fam.d = d;
  fam.seed = seed;
  fam.count = count;
  if (d == 1) {
    fam.n = 256;
    fam.half_width = 8.0;
  } else if (d == 2) {
    fam.n = 64;
    fam.half_width = 4.0;
  } else {
    fam.n = 16;
    fam.half_width = 2.0;
  }
  return fam;
}

GridFunction make_trial(const TrialFamily& family, std::size_t index, std::uint64_t stream) {
  CounterRng rng(family.seed, index, stream);
  switch (family.generator) {
    case Generator::indicator_union: return indicator_union(family, rng);
    case Generator::random_step: return random_step(family, rng);
    case Generator::gaussian_mix: return gaussian_mix(family, rng);
    case Generator::modulated_bump: return modulated_bump(family, rng);
  }
  return random_step(family, rng);
}

GridFunction make_box_union(const Grid& lattice, double reach, std::uint64_t seed, std::size_t index,
                            std::uint64_t stream) {
  require(reach > 0.0, ErrorKind::invalid_argument, "box reach must be positive");
  CounterRng rng(seed, index, stream);
  const std::size_t count = 1 + rng.below(3);
  std::vector<Box> boxes;
  for (std::size_t i = 0; i < count; ++i)
    boxes.push_back(random_box(rng, lattice.dim(), 0.5 * reach, lattice.h, 0.25 * reach));
  GridFunction s(lattice);
  bool any = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto x = lattice.center_of(i);
    bool within = true;
    for (double c : x) within = within && std::abs(c) <= reach;
    if (!within) continue;
    for (const auto& b : boxes)
      if (b.contains(x)) {
        s.values[i] = 1.0;
        any = true;
        break;
      }
  }
  if (!any) {
    // boxes narrower than a lattice cell: keep the cell holding the first centre
    if (auto cell = lattice.locate(boxes.front().center)) s.values[*cell] = 1.0;
  }
  return s;
}

}  // namespace sdr
