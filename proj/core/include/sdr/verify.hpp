#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sdr/grid.hpp"
#include "sdr/report.hpp"
#include "sdr/transform.hpp"
#include "sdr/trials.hpp"

namespace sdr {

/// Discretization budget eps(h) = K * h for the Fourier-side checks, on the
/// ratio lhs / rhs. Each K is twice the largest |ratio - exact ratio| / h
/// seen on the Gaussian and indicator closed forms of the calibration set
/// at the working resolutions and one halving.
namespace tolerance {
inline constexpr double kWeight = 0.015;
inline constexpr double kDualSobolev = 0.02;
inline constexpr double kLieb = 1.5;
inline constexpr double kPropDs = 0.04;
inline constexpr double kMontgomery = 0.015;
inline constexpr double kSchrodinger = 0.003;
/// Summation-only tolerance for the exact discrete oracles.
inline constexpr double kExact = 1e-12;
}  // namespace tolerance

struct CheckOptions {
  std::size_t pad = kDefaultPad;
  /// Overrides the eps(h) model when set.
  std::optional<double> tolerance;
};

/// int |f||g| <= int |f|*|g|*, both sides exact sums.
InequalityReport verify_hardy_littlewood(const GridFunction& f, const GridFunction& g);

/// Riesz rearrangement inequality for the triple integral of
/// f(s) g(t) c(s - t), computed exactly for piecewise-constant functions on
/// a common one-dimensional grid.
InequalityReport verify_riesz(const GridFunction& f, const GridFunction& g, const GridFunction& c);

/// The exact triple integral used by verify_riesz (1-D, common layout).
double riesz_functional(const GridFunction& f, const GridFunction& g, const GridFunction& c);

/// |int chi^ |f^|^2| <= int (|chi|*)^ |(|f|*)^|^2.
InequalityReport verify_weight(const GridFunction& chi, const GridFunction& f, const CheckOptions& opt = {});

/// int (1+|xi|^2)^-s |f^|^2 <= int (1+|xi|^2)^-s |(|f|*)^|^2.
InequalityReport verify_dual_sobolev(const GridFunction& f, double s, const CheckOptions& opt = {});

/// int |xi|^2s |(|f|*)^|^2 <= int |xi|^2s |f^|^2, 0 < s <= 1. The packaged
/// H^s form (weight (1+|xi|^2)^s, constant 2^((1-s)/2)) is in the metadata.
InequalityReport verify_lieb(const GridFunction& f, double s, const CheckOptions& opt = {});

/// Concentration at the origin for Omega S^(1/d) below theta(d, alpha):
/// |Omega^-d int m_alpha(xi/Omega) f^| <= Omega^-d int m_alpha(xi/Omega) (|f|*)^,
/// evaluated on the space side as int m_alpha^(Omega x) f(x) dx.
InequalityReport verify_prop_ds(const GridFunction& f, double alpha, double omega, const CheckOptions& opt = {});

/// (1+s)^((d-2 alpha-1)/2), ln(1+s) or 1 according to alpha versus (d-1)/2.
double psi_factor(double s, int d, double alpha);

/// Empirical constant of the Bochner-Riesz concentration bound at (a, x).
InequalityReport verify_ds2(const GridFunction& f, double alpha, double beta, double omega,
                            const std::vector<double>& a, const std::vector<double>& x,
                            const CheckOptions& opt = {});

/// Empirical constant of the weighted L^1 spectral bound. With no weight the
/// kernel m_alpha(xi/Omega) is used together with the Omega^-d normalization.
InequalityReport verify_cor_ds(const GridFunction& f, const GridFunction* weight, double alpha, double beta,
                               double omega, const CheckOptions& opt = {});

/// Frequency lattice of forward_transform(f, pad) for a function on `source`.
Grid frequency_lattice(const Grid& source, std::size_t pad = kDefaultPad);

/// int_Sigma |f^|^2 <= kappa_d int_{Sigma*} |(|f|*)^|^2. `sigma` is a {0,1}
/// function on any grid in frequency space; lattice points of the spectrum
/// are tested for membership. Sigma* takes the |Sigma| / dxi^d lattice points
/// nearest the origin, the last one with its fractional weight.
InequalityReport verify_montgomery(const GridFunction& f, const GridFunction& sigma, const CheckOptions& opt = {});

/// Layer-cake extension to a nonnegative weight on frequency space.
InequalityReport verify_cor_weight(const GridFunction& f, const GridFunction& weight, const CheckOptions& opt = {});

struct ConjectureExploration {
  std::vector<double> ratios;
  std::vector<double> running_max;
  std::size_t argmax = 0;
  std::size_t degenerate = 0;
  /// Largest relative gap between the two ways of computing complements.
  double complement_discrepancy = 0.0;
  /// Largest violation of the reformulated inequality with kappa = max ratio.
  double reformulation_gap = 0.0;
  std::vector<InequalityReport> reports;  // exploration only
};

/// Frequency sets for the exploration: unions of boxes within `reach`.
struct SigmaSpec {
  double reach = 2.0;
};

ConjectureExploration explore_conjecture1(const TrialFamily& family, const SigmaSpec& sigma = {},
                                          std::size_t threads = 1);

struct SchrodingerReports {
  InequalityReport part1;  // small-time form, via the spectrum of v0
  InequalityReport part2;  // large-time form, via the rearranged datum
  std::vector<InequalityReport> extras;  // Hoelder consequences and L^1 forms
};

/// `sigma` is a {0,1} function on the grid of v0.
SchrodingerReports verify_schrodinger_bounds(const GridFunction& v0, double t, const GridFunction& sigma,
                                             double beta, const CheckOptions& opt = {});

struct StarParams {
  double alpha = 0.0;
  double beta = 0.0;
  double omega = 1.0;
  std::vector<double> a;  // empty means the origin
  std::vector<double> x;
  GridFunction sigma;     // frequency set, as in verify_montgomery
};

struct StarReports {
  InequalityReport concentration;  // empirical
  InequalityReport montgomery;     // against kappa_d
};

/// Variants with the one-dimensional rearrangement on the right-hand side.
StarReports verify_star_theorems(const GridFunction& f, const StarParams& params, const CheckOptions& opt = {});

/// Lower bounds and limit of int_0^s sin(2 pi t) / (pi t) dt.
std::vector<InequalityReport> gibbs_check();

/// int_0^s sin(2 pi t) / (pi t) dt.
double gibbs_integral(double s);

struct ConstantEstimate {
  std::string name;
  double value = 0.0;
  std::size_t argmax = 0;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  /// Trial 0 pairs a symmetric-decreasing function with itself.
  bool control = false;
};

/// Names accepted by estimate_constant.
std::vector<std::string> estimable_inequalities();

/// Maximum empirical ratio of the named check over the family.
ConstantEstimate estimate_constant(const TrialFamily& family, std::string_view name, std::size_t threads = 1);

/// Runs body(i) for i in [0, count) on up to `threads` workers.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body);

}  // namespace sdr
