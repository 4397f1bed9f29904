#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "config.hpp"
#include "sdr/grid.hpp"
#include "sdr/report.hpp"
#include "sdr/trials.hpp"

namespace sdr::cli {

/// Worker count: hardware concurrency, capped by VERIFY_THREADS when set.
std::size_t thread_budget();

/// Reports of one suite over the configured dimensions, in a fixed order
/// that does not depend on the thread count.
std::vector<InequalityReport> run_suite(std::string_view suite, const RunConfig& cfg, std::size_t threads);

/// The trial with the worst verdict (first failure, else the largest ratio
/// over the constant), renamed and annotated with trial counts.
InequalityReport worst_of(const std::vector<InequalityReport>& trials, const std::string& name);

/// The family a suite draws from: default_family with the configured n.
TrialFamily family_for(const RunConfig& cfg, Generator g, int d);

/// Indicator of [lo, hi] on a 1-D lattice (cells whose centre lies inside).
GridFunction interval_indicator(const Grid& lattice, double lo, double hi);

/// A smooth bump of radius 2 carried at frequency `omega` on the d = 1 grid
/// of `family`: its spectrum sits near omega while its rearrangement is the
/// unmodulated bump.
GridFunction modulated_bump_scenario(const TrialFamily& family, double omega);

/// Grid for the Schroedinger sweep in dimension d: a cell centred on the
/// origin and room for the spreading Gaussian up to t = 16.
Grid schrodinger_grid(int d, std::size_t n = 0);

}  // namespace sdr::cli
