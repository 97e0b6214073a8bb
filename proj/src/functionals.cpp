#include "bloch/functionals.hpp"

#include <cmath>
#include <stdexcept>

#include "bloch/norm.hpp"

namespace bloch {

FunctionalSpec::FunctionalSpec(int n_, double t_) : n(n_), t(t_) {
  if (n < 1) throw std::invalid_argument("FunctionalSpec: n must be >= 1");
  if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("FunctionalSpec: t must be finite and >= 0");
}

double functional_value(const Coefficients& f, const FunctionalSpec& spec) {
  double sum = 0.0;
  for (int k = 1; k <= spec.n && k <= f.size(); ++k) {
    const double w = spec.t == 0.0 ? 1.0 : std::pow(static_cast<double>(k), spec.t);
    sum += w * std::norm(f[k]);
  }
  return sum;
}

double crude_bound(long n) {
  if (n < 2) throw std::invalid_argument("crude_bound: n must be >= 2");
  const double nn = static_cast<double>(n);
  // n (n/(n-1))^{n-1} = n exp(-(n-1) log1p(-1/n))
  return nn * std::exp(-(nn - 1.0) * std::log1p(-1.0 / nn));
}

double ratio_to_conjectured(long n) {
  if (n < 2) throw std::invalid_argument("ratio_to_conjectured: n must be >= 2");
  const double nn = static_cast<double>(n);
  return 4.0 * std::exp(-(nn + 1.0) * std::log1p(1.0 / nn));
}

double conjectured_value(int n, double t) {
  const double b = coefficient_bound_Bn(n);
  return std::pow(static_cast<double>(n), t) * b * b;
}

double parseval_margin(const Coefficients& f, int n, double rho) {
  if (!(rho >= 0.0 && rho < 1.0)) throw std::invalid_argument("parseval_margin: rho must lie in [0, 1)");
  double sum = 0.0;
  double power = 1.0;
  for (int k = 1; k <= n; ++k) {
    sum += static_cast<double>(k) * k * std::norm(f[k]) * power;
    power *= rho;
  }
  return 1.0 / ((1.0 - rho) * (1.0 - rho)) - sum;
}

bool weight_reduction_check(const Coefficients& f, int n, double t, double s) {
  if (!(t >= 0.0)) throw std::invalid_argument("weight_reduction_check: t must be >= 0");
  if (s < t) throw std::invalid_argument("weight_reduction_check: requires s >= t");
  const double lhs = functional_value(f, {n, s});
  const double rhs = std::pow(static_cast<double>(n), s - t) * functional_value(f, {n, t});
  // Term-wise k^s <= n^{s-t} k^t; allow for rounding in the two sums.
  return lhs <= rhs * (1.0 + 1e-14) + 1e-300;
}

}  // namespace bloch
