#include "bloch/poly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bloch {

namespace {

bool finite(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

// Truncated product of two series, both stored from degree 0, kept to K+1 terms.
std::vector<cplx> mul_truncated(const std::vector<cplx>& a, const std::vector<cplx>& b,
                                std::size_t terms) {
  std::vector<cplx> out(terms, cplx{});
  for (std::size_t i = 0; i < a.size() && i < terms; ++i) {
    if (a[i] == cplx{}) continue;
    for (std::size_t j = 0; j < b.size() && i + j < terms; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

}  // namespace

Coefficients::Coefficients(std::vector<cplx> b) : b_(std::move(b)) {
  if (b_.empty()) throw std::invalid_argument("Coefficients: need at least one coefficient");
  for (std::size_t i = 0; i < b_.size(); ++i) {
    if (!finite(b_[i]))
      throw std::invalid_argument("Coefficients: non-finite entry at index " + std::to_string(i + 1));
  }
}

Coefficients Coefficients::monomial(int n, cplx a, int length) {
  if (n < 1) throw std::invalid_argument("monomial: degree must be >= 1");
  std::vector<cplx> b(static_cast<std::size_t>(std::max(n, length)), cplx{});
  b[static_cast<std::size_t>(n - 1)] = a;
  return Coefficients(std::move(b));
}

Coefficients Coefficients::from_real(std::span<const double> b) {
  std::vector<cplx> c(b.begin(), b.end());
  return Coefficients(std::move(c));
}

int Coefficients::degree() const {
  for (int k = size(); k >= 1; --k)
    if ((*this)[k] != cplx{}) return k;
  return 0;
}

void Coefficients::set(int k, cplx v) {
  if (k < 1) throw std::out_of_range("Coefficients::set: index must be >= 1");
  if (!finite(v)) throw std::invalid_argument("Coefficients::set: non-finite value");
  if (k > size()) b_.resize(static_cast<std::size_t>(k), cplx{});
  b_[static_cast<std::size_t>(k - 1)] = v;
}

bool Coefficients::is_nonnegative() const {
  return std::all_of(b_.begin(), b_.end(), [](cplx v) { return v.imag() == 0.0 && v.real() >= 0.0; });
}

Coefficients Coefficients::scaled(cplx c) const {
  std::vector<cplx> out(b_);
  for (auto& v : out) v *= c;
  return Coefficients(std::move(out));
}

Coefficients Coefficients::gauge(double a, double b) const {
  std::vector<cplx> out(b_);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] *= std::polar(1.0, a + static_cast<double>(i + 1) * b);
  return Coefficients(std::move(out));
}

Coefficients Coefficients::resized(int length) const {
  if (length < 1) throw std::invalid_argument("Coefficients::resized: length must be >= 1");
  std::vector<cplx> out(b_);
  out.resize(static_cast<std::size_t>(length), cplx{});
  return Coefficients(std::move(out));
}

Coefficients operator+(const Coefficients& f, const Coefficients& g) {
  const int n = std::max(f.size(), g.size());
  std::vector<cplx> out(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) out[static_cast<std::size_t>(k - 1)] = f[k] + g[k];
  return Coefficients(std::move(out));
}

Coefficients operator-(const Coefficients& f, const Coefficients& g) { return f + g.scaled(-1.0); }

int Polynomial::degree() const {
  for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k)
    if (c[static_cast<std::size_t>(k)] != cplx{}) return k;
  return 0;
}

cplx eval(const Coefficients& f, cplx z) {
  cplx acc{};
  for (int k = f.size(); k >= 1; --k) acc = acc * z + f[k];
  return acc * z;
}

cplx eval(const Polynomial& p, cplx z) {
  cplx acc{};
  for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Polynomial derivative(const Coefficients& f) {
  Polynomial d;
  d.c.resize(static_cast<std::size_t>(f.size()));
  for (int k = 1; k <= f.size(); ++k) d.c[static_cast<std::size_t>(k - 1)] = static_cast<double>(k) * f[k];
  return d;
}

Polynomial derivative(const Polynomial& p) {
  Polynomial d;
  if (p.c.size() <= 1) {
    d.c.assign(1, cplx{});
    return d;
  }
  d.c.resize(p.c.size() - 1);
  for (std::size_t k = 1; k < p.c.size(); ++k) d.c[k - 1] = static_cast<double>(k) * p.c[k];
  return d;
}

cplx mobius_map(cplx lambda, cplx z) { return (z + lambda) / (1.0 + std::conj(lambda) * z); }

cplx mobius_map_derivative(cplx lambda, cplx z) {
  const cplx den = 1.0 + std::conj(lambda) * z;
  return (1.0 - std::norm(lambda)) / (den * den);
}

Coefficients mobius_recenter(const Coefficients& f, cplx lambda, int K) {
  if (!(std::abs(lambda) < 1.0)) throw std::invalid_argument("mobius_recenter: |lambda| must be < 1");
  if (K < 1) throw std::invalid_argument("mobius_recenter: K must be >= 1");
  const auto terms = static_cast<std::size_t>(K) + 1;

  // phi(z) = lambda + (1 - |lambda|^2) sum_{j>=1} (-conj(lambda))^{j-1} z^j
  std::vector<cplx> phi(terms);
  phi[0] = lambda;
  const double w = 1.0 - std::norm(lambda);
  cplx power{1.0, 0.0};
  for (std::size_t j = 1; j < terms; ++j) {
    phi[j] = w * power;
    power *= -std::conj(lambda);
  }

  std::vector<cplx> acc(terms, cplx{});
  for (int k = f.size(); k >= 1; --k) {
    acc = mul_truncated(acc, phi, terms);
    acc[0] += f[k];
  }
  acc = mul_truncated(acc, phi, terms);

  // acc[0] is f(lambda); dropping it is the "- f(lambda)" of the recentering.
  return Coefficients(std::vector<cplx>(acc.begin() + 1, acc.end()));
}

cplx marty_first_order(const Coefficients& f, int k) {
  if (k < 1) throw std::invalid_argument("marty_first_order: k must be >= 1");
  const double kk = static_cast<double>(k);
  return (kk + 1.0) * f[k + 1] * std::conj(f[k]) - (kk - 1.0) * std::conj(f[k - 1]) * f[k];
}

}  // namespace bloch
