#include "sdr/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>
#include <cstring>
#include <map>
#include <mutex>
#include <string>
#include <utility>

#include "sdr/error.hpp"

namespace sdr {
namespace {

// Three-term recurrence p_{k+1} = (x - a_k) p_k - beta_k p_{k-1} for a
// weight of total mass m0; beta has n+1 entries (beta[0] unused).
struct Recurrence {
  std::vector<double> a;
  std::vector<double> beta;
  double m0 = 1.0;
};

// Orthonormal q_n and q_n' at x, plus the Christoffel sum of q_0..q_{n-1}.
struct Eval {
  double q = 0, dq = 0, christoffel = 0;
};

Eval evaluate(const Recurrence& rec, std::size_t n, double x) {
  double q_prev = 0.0, dq_prev = 0.0;
  double q = 1.0 / std::sqrt(rec.m0), dq = 0.0;
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sum += q * q;
    const double b_next = std::sqrt(rec.beta[k + 1]);
    const double b_here = k == 0 ? 0.0 : std::sqrt(rec.beta[k]);
    const double q_next = ((x - rec.a[k]) * q - b_here * q_prev) / b_next;
    const double dq_next = (q + (x - rec.a[k]) * dq - b_here * dq_prev) / b_next;
    q_prev = q;
    dq_prev = dq;
    q = q_next;
    dq = dq_next;
  }
  return {q, dq, sum};
}

QuadratureRule golub_welsch(const Recurrence& rec, std::size_t n) {
  Eigen::VectorXd diag(static_cast<Eigen::Index>(n));
  Eigen::VectorXd sub(static_cast<Eigen::Index>(n > 1 ? n - 1 : 1));
  for (std::size_t k = 0; k < n; ++k) diag[static_cast<Eigen::Index>(k)] = rec.a[k];
  for (std::size_t k = 1; k < n; ++k) sub[static_cast<Eigen::Index>(k - 1)] = std::sqrt(rec.beta[k]);
  if (n == 1) sub[0] = 0.0;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
  eig.computeFromTridiagonal(diag, sub.head(static_cast<Eigen::Index>(n - 1)), Eigen::ComputeEigenvectors);
  if (eig.info() != Eigen::Success) fail(ErrorKind::numeric, "tridiagonal eigensolver did not converge");

  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    double x = eig.eigenvalues()[jj];
    const double v0 = eig.eigenvectors()(0, jj);
    double w = rec.m0 * v0 * v0;
    // polish the node, then prefer the Christoffel weight (better relative
    // accuracy for tiny weights) when it is representable
    for (int it = 0; it < 3; ++it) {
      const Eval e = evaluate(rec, n, x);
      if (!std::isfinite(e.q) || e.dq == 0.0 || !std::isfinite(e.dq)) break;
      const double step = e.q / e.dq;
      if (!(std::abs(step) < 1e-6 * (1.0 + std::abs(x)))) break;
      x -= step;
    }
    const Eval e = evaluate(rec, n, x);
    if (std::isfinite(e.christoffel) && e.christoffel > 0.0) w = 1.0 / e.christoffel;
    rule.nodes[j] = x;
    rule.weights[j] = w;
  }

  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (!(rule.weights[j] > 0.0)) fail(ErrorKind::numeric, "Gauss rule produced a non-positive weight");
    if (j > 0 && !(rule.nodes[j] > rule.nodes[j - 1]))
      fail(ErrorKind::numeric, "Gauss rule nodes are not strictly increasing");
    total += rule.weights[j];
  }
  if (std::abs(total - rec.m0) > 1e-12 * rec.m0)
    fail(ErrorKind::numeric, "Gauss rule weights do not reproduce the weight mass");
  return rule;
}

using Key = std::pair<std::uint64_t, std::size_t>;

std::uint64_t bits(double x) {
  std::uint64_t u;
  std::memcpy(&u, &x, sizeof u);
  return u;
}

template <class Build>
std::shared_ptr<const QuadratureRule> cached(std::map<Key, std::shared_ptr<const QuadratureRule>>& cache,
                                             std::mutex& mu, Key key, Build build) {
  {
    std::lock_guard lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto rule = std::make_shared<const QuadratureRule>(build());
  std::lock_guard lock(mu);
  return cache.emplace(key, std::move(rule)).first->second;
}

}  // namespace

double gegenbauer_mass(double mu) {
  return std::sqrt(std::numbers::pi) * std::exp(std::lgamma(mu + 0.5) - std::lgamma(mu + 1.0));
}

std::shared_ptr<const QuadratureRule> gauss_gegenbauer(double mu, std::size_t n) {
  require(mu > -0.5, ErrorKind::domain, "Gegenbauer parameter must exceed -1/2");
  require(n >= 1 && n <= 4096, ErrorKind::invalid_argument, "Gegenbauer rule size out of range");
  static std::map<Key, std::shared_ptr<const QuadratureRule>> cache;
  static std::mutex mu_cache;
  return cached(cache, mu_cache, {bits(mu), n}, [&] {
    Recurrence rec;
    rec.a.assign(n, 0.0);
    rec.beta.assign(n + 1, 0.0);
    rec.m0 = gegenbauer_mass(mu);
    rec.beta[1] = 1.0 / (2.0 * (1.0 + mu));
    for (std::size_t k = 2; k <= n; ++k) {
      const double kk = static_cast<double>(k);
      rec.beta[k] = kk * (kk + 2.0 * mu - 1.0) / (4.0 * (kk + mu) * (kk + mu - 1.0));
    }
    QuadratureRule rule = golub_welsch(rec, n);
    // the weight is even: enforce exact symmetry
    for (std::size_t j = 0; j < n / 2; ++j) {
      const double x = 0.5 * (rule.nodes[n - 1 - j] - rule.nodes[j]);
      const double w = 0.5 * (rule.weights[n - 1 - j] + rule.weights[j]);
      rule.nodes[j] = -x;
      rule.nodes[n - 1 - j] = x;
      rule.weights[j] = rule.weights[n - 1 - j] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
  });
}

std::shared_ptr<const QuadratureRule> gauss_laguerre(double a, std::size_t n) {
  require(a > -1.0, ErrorKind::domain, "Laguerre parameter must exceed -1");
  require(n >= 1 && n <= 256, ErrorKind::invalid_argument, "Laguerre rule size out of range");
  static std::map<Key, std::shared_ptr<const QuadratureRule>> cache;
  static std::mutex mu_cache;
  return cached(cache, mu_cache, {bits(a), n}, [&] {
    Recurrence rec;
    rec.a.resize(n);
    rec.beta.assign(n + 1, 0.0);
    rec.m0 = std::tgamma(a + 1.0);
    for (std::size_t k = 0; k < n; ++k) rec.a[k] = 2.0 * static_cast<double>(k) + a + 1.0;
    for (std::size_t k = 1; k <= n; ++k) {
      const double kk = static_cast<double>(k);
      rec.beta[k] = kk * (kk + a);
    }
    return golub_welsch(rec, n);
  });
}

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol, double* error) {
  double err = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 20, rel_tol, &err);
  if (error) *error = err;
  return v;
}

double integrate_endpoint(const std::function<double(double)>& f, double a, double b, double rel_tol,
                          double* error) {
  thread_local boost::math::quadrature::tanh_sinh<double> integrator;
  double err = 0.0;
  const double v = integrator.integrate(f, a, b, rel_tol, &err);
  if (error) *error = err;
  return v;
}

double gauss_legendre_30(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss<double, 30>::integrate(f, a, b);
}

}  // namespace sdr
