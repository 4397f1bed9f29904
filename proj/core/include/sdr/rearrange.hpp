#pragma once

#include <span>

#include "sdr/grid.hpp"
#include "sdr/report.hpp"

namespace sdr {

/// h^d * #{cells : |f| > lambda} for each lambda (strictly increasing, > 0).
DistributionSamples distribution_function(const GridFunction& f, std::span<const double> lambdas);

/// Radius of the centred ball of the given volume in R^d.
double set_rearrange(double volume, int d);

/// |f| permuted onto the cells in distance order, largest value nearest the
/// origin. The multiset of moduli is preserved exactly.
GridFunction symmetric_rearrange(const GridFunction& f);

/// |f|* as a radial step function whose k-th radius is the ball radius of
/// volume k h^d; runs of equal values are merged.
RadialProfile rearrange_to_profile(const GridFunction& f);

/// |f|* sampled on a caller-supplied radius ladder: the level on the shell
/// (r_i, r_{i+1}] is |f|*(r_{i+1}). The ladder must reach the support radius.
RadialProfile rearrange_to_profile(const GridFunction& f, std::span<const double> radii);

/// One-dimensional rearrangement: super-level sets of measure m go to
/// [-m/2, m/2]. The result lives on a centred 1-D grid with cells of length
/// h^d and as many cells as the input.
GridFunction star_rearrange_1d(const GridFunction& f);

/// |f|*(t) <= ||f||_p / (|B(0,1)|^(1/p) |t|^(d/p)), checked at the outer
/// radius of every shell of rearrange_to_profile in the equivalent form
/// level^p * |B(0,t)| <= ||f||_p^p.
InequalityReport check_decay_bound(const GridFunction& f, double p);

}  // namespace sdr
