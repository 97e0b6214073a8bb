#pragma once

// Bloch seminorm sup_{|z|<1} (1 - |z|^2) |f'(z)| of a polynomial, and the
// sharp coefficient bounds B_n over the Bloch unit ball.

#include <string_view>

#include "bloch/poly.hpp"

namespace bloch {

enum class NormMethod { general, radial };

std::string_view to_string(NormMethod m);

struct NormResult {
  double value = 0.0;
  cplx witness{};  // argmax of (1 - |z|^2) |f'(z)|
  NormMethod method = NormMethod::general;
  double error_bound = 0.0;
  bool converged = true;  // error_bound <= requested tolerance
};

inline constexpr double kDefaultRadialTol = 1e-10;
inline constexpr double kDefaultGeneralTol = 1e-8;

/// Sampling and refinement knobs. The defaults are the certification grid;
/// the optimizer uses coarse_grid() for its inner loop.
struct NormOptions {
  double tol = kDefaultGeneralTol;
  int radial_uniform = 256;  // uniform radii in [0, 1)
  int radial_edge = 64;      // radii 1 - 10^{-u}, u up to 12, for high-degree peaks
  int angular_floor = 64;
  int angular_factor = 8;  // angular samples = max(floor, factor * deg f')
  int max_candidates = 12;
  int max_newton_iter = 60;

  static NormOptions coarse_grid(double tol = kDefaultGeneralTol);
};

/// (1 - |z|^2) |f'(z)|.
double weighted_derivative(const Coefficients& f, cplx z);

NormResult seminorm_general(const Coefficients& f, const NormOptions& opts);
NormResult seminorm_general(const Coefficients& f, double tol = kDefaultGeneralTol);

/// Radial path, valid only for real non-negative coefficients, where the
/// supremum is attained on [0, 1). Throws std::invalid_argument otherwise.
NormResult seminorm_radial(const Coefficients& f, double tol = kDefaultRadialTol);
NormResult seminorm_radial(const Coefficients& f, const NormOptions& opts);

/// Radial path when the coefficients allow it, general path otherwise.
NormResult seminorm(const Coefficients& f, double tol = kDefaultGeneralTol);

/// B_n = (n+1)/(2n) ((n+1)/(n-1))^{(n-1)/2}, B_1 = 1.
double coefficient_bound_Bn(long n);
/// ln B_n.
double log_coefficient_bound_Bn(long n);
/// e/2 - B_n > 0, computed without cancellation so that its strict decrease
/// (equivalently the strict increase of B_n) stays visible for large n.
double coefficient_bound_deficit(long n);

/// r_n = sqrt((n-1)/(n+1)), the radius where ||B_n z^n|| is attained.
double attainment_radius(long n);

}  // namespace bloch
