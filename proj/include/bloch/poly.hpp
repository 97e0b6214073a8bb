#pragma once

// Complex polynomials vanishing at the origin, f(z) = b_1 z + ... + b_D z^D.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace bloch {

using cplx = std::complex<double>;

/// Coefficients b_1..b_D of a polynomial with zero constant term.
/// Indexing is 1-based to match the usual power-series notation; reads
/// outside 1..D return 0.
class Coefficients {
 public:
  Coefficients() : b_(1, cplx{0.0, 0.0}) {}
  explicit Coefficients(std::vector<cplx> b);
  Coefficients(std::initializer_list<cplx> b) : Coefficients(std::vector<cplx>(b)) {}

  /// a * z^n, padded with zeros up to length max(n, length).
  static Coefficients monomial(int n, cplx a, int length = 0);
  /// Real coefficients b_1..b_D.
  static Coefficients from_real(std::span<const double> b);

  int size() const { return static_cast<int>(b_.size()); }
  /// Largest k with b_k != 0, or 0 for the zero polynomial.
  int degree() const;
  bool is_zero() const { return degree() == 0; }

  cplx operator[](int k) const {
    return (k >= 1 && k <= size()) ? b_[static_cast<std::size_t>(k - 1)] : cplx{};
  }
  void set(int k, cplx v);

  std::span<const cplx> values() const { return b_; }

  /// True when every coefficient is real (imaginary part exactly 0) and >= 0.
  bool is_nonnegative() const;

  Coefficients scaled(cplx c) const;
  /// e^{ia} f(e^{ib} z): b_k -> b_k e^{i(a + k b)}.
  Coefficients gauge(double a, double b) const;
  /// Same coefficients, zero-padded or truncated to length D.
  Coefficients resized(int length) const;

  friend Coefficients operator+(const Coefficients& f, const Coefficients& g);
  friend Coefficients operator-(const Coefficients& f, const Coefficients& g);
  friend bool operator==(const Coefficients&, const Coefficients&) = default;

 private:
  std::vector<cplx> b_;
};

/// General polynomial p(z) = c_0 + c_1 z + ... ; used for derivatives.
struct Polynomial {
  std::vector<cplx> c;

  int degree() const;
  cplx operator[](int k) const {
    return (k >= 0 && k < static_cast<int>(c.size())) ? c[static_cast<std::size_t>(k)] : cplx{};
  }
};

cplx eval(const Coefficients& f, cplx z);
cplx eval(const Polynomial& p, cplx z);

Polynomial derivative(const Coefficients& f);
Polynomial derivative(const Polynomial& p);

/// phi_lambda(z) = (z + lambda) / (1 + conj(lambda) z).
cplx mobius_map(cplx lambda, cplx z);
cplx mobius_map_derivative(cplx lambda, cplx z);

/// First K Taylor coefficients of f(phi_lambda(z)) - f(lambda), by Horner
/// composition of truncated series. Requires |lambda| < 1, K >= 1.
Coefficients mobius_recenter(const Coefficients& f, cplx lambda, int K);

/// c_k = (k+1) b_{k+1} conj(b_k) - (k-1) conj(b_{k-1}) b_k, with b_0 = 0.
/// d/ds |B_k(s e^{i theta})|^2 at s = 0 equals 2 Re{e^{i theta} c_k}.
cplx marty_first_order(const Coefficients& f, int k);

}  // namespace bloch
