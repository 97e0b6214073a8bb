#pragma once

// Explicit families: the two-term functions z + b_n z^n that beat n^t B_n^2
// for t < 1, and the three related polynomials showing that the Bloch unit
// ball is not solid.

#include <tuple>

#include "bloch/norm.hpp"
#include "bloch/poly.hpp"

namespace bloch {

inline constexpr double kNormCertificationSlack = 1e-10;

/// Smallest integer >= (2e^2)^{2/(1-t)}; t < 1.
long threshold_N(double t);

/// z + b_n z^n with b_n = sqrt(B_n^2 - n^{-(t+eps)}), eps = (1-t)/2.
Coefficients counterexample_function(double t, long n);

struct CounterexampleReport {
  double t = 0.0;
  double epsilon = 0.0;
  long threshold_N = 0;  // saturates at LONG_MAX when N(t) is not representable
  long n = 0;
  double b_n = 0.0;
  NormResult norm;
  double functional_margin = 0.0;  // F_n^t(f_n) - n^t B_n^2
  bool norm_ok = false;            // norm.value <= 1 + kNormCertificationSlack
};

CounterexampleReport counterexample_verify(double t, long n);

/// max_{0<=r<=1} n b r^{n-3} (1 - r^2) in closed form (0^0 = 1 at n = 3).
double hmax_closed_form(long n, double b);

/// ((n+1)^2 (1 + 2/(n-1))^{n-1} - (n-1)^2 (1 + 2/(n-3))^{n-3}) / n, which
/// stays below 8 e^2. n >= 4.
double counterexample_gap_bound(long n);

struct Example42 {
  Coefficients f;  // z + B_n z^n - eps/(2n-1) z^{2n-1}
  Coefficients F;  // z + B_n z^n + eps/(2n-1) z^{2n-1}
  Coefficients p;  // z + B_n z^n
};

Example42 example42_build(int n, double epsilon);

struct Example42Report {
  int n = 0;
  double epsilon = 0.0;
  NormResult norm_f, norm_p, norm_F;
  bool chain_ok = false;  // ||F|| > ||p|| > ||f|| > 0 and ||p|| > 1, beyond error bounds
  double margin_Fp = 0.0;
  double margin_pf = 0.0;
};

Example42Report example42_verify(int n, double epsilon);

/// |1 + n B_n z^{n-1} - eps z^{2n-2}|^2 as a quadratic in x = cos(arg z^{n-1}),
/// with R = |z|^{n-1}.
double u_value(double x, int n, double epsilon, double R);

}  // namespace bloch
