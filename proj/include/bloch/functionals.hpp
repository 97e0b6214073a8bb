#pragma once

// Truncated weighted area functionals F_n^t(f) = sum_{k<=n} k^t |b_k|^2 and
// the closed-form bounds that accompany them.

#include "bloch/poly.hpp"

namespace bloch {

struct FunctionalSpec {
  int n = 1;       // truncation order, >= 1
  double t = 1.0;  // weight exponent, >= 0

  FunctionalSpec() = default;
  FunctionalSpec(int n_, double t_);
};

double functional_value(const Coefficients& f, const FunctionalSpec& spec);

/// n^n / (n-1)^{n-1}, an upper bound for F_n over the unit ball. n >= 2.
double crude_bound(long n);

/// crude_bound(n) / (n B_n^2) = 4 / ((n+1)/n)^{n+1}; increases to 4/e.
double ratio_to_conjectured(long n);

/// n^t B_n^2, the value attained by B_n z^n.
double conjectured_value(int n, double t);

/// 1/(1-rho)^2 - sum_{k<=n} k^2 |b_k|^2 rho^{k-1}. Non-negative whenever
/// ||f|| <= 1. rho must lie in [0, 1).
double parseval_margin(const Coefficients& f, int n, double rho);

/// F_n^s(f) <= n^{s-t} F_n^t(f); requires s >= t >= 0.
bool weight_reduction_check(const Coefficients& f, int n, double t, double s);

}  // namespace bloch
