#include "bloch/constructions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "bloch/functionals.hpp"

namespace bloch {

long threshold_N(double t) {
  if (!(t < 1.0)) throw std::invalid_argument("threshold_N: t must be < 1");
  const double log_value = 2.0 / (1.0 - t) * (std::numbers::ln2 + 2.0);
  if (log_value > std::log(static_cast<double>(std::numeric_limits<long>::max() / 2)))
    throw std::overflow_error("threshold_N: threshold does not fit in a long");
  return static_cast<long>(std::ceil(std::exp(log_value)));
}

Coefficients counterexample_function(double t, long n) {
  if (!(t < 1.0)) throw std::invalid_argument("counterexample_function: t must be < 1");
  if (n < 2) throw std::invalid_argument("counterexample_function: n must be >= 2");
  const double eps = 0.5 * (1.0 - t);
  const double bn = coefficient_bound_Bn(n);
  const double radicand = bn * bn - std::pow(static_cast<double>(n), -(t + eps));
  if (!(radicand > 0.0)) throw std::domain_error("counterexample_function: B_n^2 - n^{-(t+eps)} must be > 0");
  Coefficients f = Coefficients::monomial(static_cast<int>(n), std::sqrt(radicand));
  f.set(1, 1.0);
  return f;
}

CounterexampleReport counterexample_verify(double t, long n) {
  CounterexampleReport rep;
  const Coefficients f = counterexample_function(t, n);
  rep.t = t;
  rep.epsilon = 0.5 * (1.0 - t);
  try {
    rep.threshold_N = threshold_N(t);
  } catch (const std::overflow_error&) {
    rep.threshold_N = std::numeric_limits<long>::max();
  }
  rep.n = n;
  rep.b_n = f[static_cast<int>(n)].real();
  rep.norm = seminorm_radial(f, kDefaultRadialTol);
  rep.functional_margin = functional_value(f, {static_cast<int>(n), t}) - conjectured_value(static_cast<int>(n), t);
  rep.norm_ok = rep.norm.value <= 1.0 + kNormCertificationSlack;
  return rep;
}

double hmax_closed_form(long n, double b) {
  if (n < 3) throw std::invalid_argument("hmax_closed_form: n must be >= 3");
  if (!(b > 0.0)) throw std::invalid_argument("hmax_closed_form: b must be > 0");
  const double nn = static_cast<double>(n);
  // std::pow(0, 0) == 1 gives the n = 3 case, whose maximum sits at r = 0.
  return nn * b * std::pow((nn - 3.0) / (nn - 1.0), 0.5 * (nn - 3.0)) * 2.0 / (nn - 1.0);
}

double counterexample_gap_bound(long n) {
  if (n < 4) throw std::invalid_argument("counterexample_gap_bound: n must be >= 4");
  const double nn = static_cast<double>(n);
  const double a = std::exp(2.0 * std::log(nn + 1.0) + (nn - 1.0) * std::log1p(2.0 / (nn - 1.0)));
  const double b = std::exp(2.0 * std::log(nn - 1.0) + (nn - 3.0) * std::log1p(2.0 / (nn - 3.0)));
  return (a - b) / nn;
}

namespace {

void check_example42(int n, double epsilon) {
  if (n < 2) throw std::invalid_argument("example42: n must be >= 2");
  if (!(epsilon > 0.0 && epsilon <= 0.2)) throw std::invalid_argument("example42: epsilon must lie in (0, 1/5]");
}

}  // namespace

Example42 example42_build(int n, double epsilon) {
  check_example42(n, epsilon);
  const int top = 2 * n - 1;
  Coefficients p = Coefficients::monomial(n, coefficient_bound_Bn(n), top);
  p.set(1, 1.0);
  Coefficients f = p, F = p;
  const double c = epsilon / top;
  f.set(top, -c);
  F.set(top, c);
  return {f, F, p.resized(n)};
}

Example42Report example42_verify(int n, double epsilon) {
  const Example42 ex = example42_build(n, epsilon);
  Example42Report rep;
  rep.n = n;
  rep.epsilon = epsilon;
  rep.norm_F = seminorm_radial(ex.F, kDefaultRadialTol);
  rep.norm_p = seminorm_radial(ex.p, kDefaultRadialTol);
  rep.norm_f = seminorm_general(ex.f, kDefaultRadialTol);
  rep.margin_Fp = rep.norm_F.value - rep.norm_p.value;
  rep.margin_pf = rep.norm_p.value - rep.norm_f.value;
  const double eF = rep.norm_F.error_bound, ep = rep.norm_p.error_bound, ef = rep.norm_f.error_bound;
  rep.chain_ok = rep.margin_Fp > eF + ep && rep.margin_pf > ep + ef && rep.norm_f.value > ef &&
                 rep.norm_p.value > 1.0 + ep;
  return rep;
}

double u_value(double x, int n, double epsilon, double R) {
  if (!(x >= -1.0 && x <= 1.0)) throw std::invalid_argument("u_value: x must lie in [-1, 1]");
  if (n < 2) throw std::invalid_argument("u_value: n must be >= 2");
  if (!(epsilon >= 0.0)) throw std::invalid_argument("u_value: epsilon must be >= 0");
  if (!(R >= 0.0 && R <= 1.0)) throw std::invalid_argument("u_value: R must lie in [0, 1]");
  const double nb = n * coefficient_bound_Bn(n);
  const double R2 = R * R;
  return -4.0 * epsilon * R2 * x * x + 2.0 * nb * R * (1.0 - epsilon * R2) * x + 1.0 + nb * nb * R2 +
         2.0 * epsilon * R2 + epsilon * epsilon * R2 * R2;
}

}  // namespace bloch
