#pragma once

// Numerical estimation of M_n^t = sup { F_n^t(f) : ||f|| <= 1, f(0) = 0 }.
//
// F_n^t(c f) = |c|^2 F_n^t(f), so the constrained problem is equivalent to the
// unconstrained maximization of the scale-invariant ratio
//   R(f) = F_n^t(f) / ||f||^2
// over nonzero f; any maximizer rescaled to unit norm is extremal. The norm is
// a max-function of the coefficients, so R is nonsmooth and the local method
// is a derivative-free compass search.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bloch/functionals.hpp"
#include "bloch/norm.hpp"
#include "bloch/poly.hpp"

namespace bloch {

struct SearchConfig {
  int n = 2;
  double t = 1.0;
  int degree_cap = 0;  // 0 selects the default: n for nonneg, n + 2 otherwise
  int restarts = 32;
  bool nonneg = false;
  std::uint64_t seed = 0;
  double tol = 1e-8;
  int max_iters = 20000;  // objective evaluations per restart
  int threads = 1;

  int degree() const;
  /// Throws std::invalid_argument on an inconsistent configuration.
  void validate() const;
};

struct RestartTrace {
  int index = 0;
  std::string start;  // "monomial", "mixture:<w>", "random"
  double objective = 0.0;  // certified
  int evaluations = 0;
  bool converged = false;
};

struct SearchResult {
  int n = 0;
  double t = 1.0;
  Coefficients best;  // gauge-normalized, unit Bloch norm
  NormResult best_norm;
  double objective = 0.0;
  double marty_residual = 0.0;
  double tail_mass = 0.0;  // sum_{k>n} |b_k|^2
  double vs_conjectured = 0.0;  // objective - n^t B_n^2
  std::optional<double> vs_crude;  // objective - crude_bound(n), t = 1 only
  std::vector<RestartTrace> trace;
};

/// F_n^t(f) / ||f||^2. Throws on the zero polynomial.
double rayleigh_objective(const Coefficients& f, const FunctionalSpec& spec, double tol = kDefaultGeneralTol);

/// Representative of the gauge orbit e^{ia} f(e^{ib} z) in which the two
/// largest-magnitude coefficients (ties to the smaller index) are real >= 0.
Coefficients gauge_normalize(const Coefficients& f);

SearchResult search_extremal(const SearchConfig& config);

struct OracleResult {
  double value = 0.0;
  Coefficients argmax;
  bool lower_bound_only = false;  // n = 3: gauge reduction is not exhaustive
};

/// Exhaustive grid maximization of R over [0, 1.5]^n, n in {2, 3}.
OracleResult brute_force_oracle(int n, double t, double grid_step);

struct Perturbation {
  Coefficients g;
  double delta = 0.0;  // F_n(g) - F_n(f) from the closed form
};

/// g = f - b_k z^k + (k/m) b_k z^m for non-negative f and 1 <= k < m <= n.
Perturbation lemma_perturbation(const Coefficients& f, int k, int m, int n);

struct LemmaSlack {
  int k = 0;
  int m = 0;
  double slack = 0.0;  // (m-k)/(2m) b_k - b_m
};

/// Slacks for every pair 1 <= k < m <= n with b_k > 0. A negative slack
/// rules f out as an extremal of the non-negative problem.
std::vector<LemmaSlack> lemma_bound_check(const Coefficients& f, int n);

/// |n (n+1) b_{n+1} conj(b_n)|, which vanishes at every extremal.
double marty_residual(const Coefficients& f, int n);

}  // namespace bloch
