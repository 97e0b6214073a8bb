#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bloch/norm.hpp"
#include "bloch/poly.hpp"

using namespace bloch;

namespace {

// Cauchy coefficients of F(z) = f(phi_lambda(z)) - f(lambda) by the trapezoid
// rule on |z| = radius. Independent of the series-composition path.
std::vector<cplx> cauchy_coefficients(const Coefficients& f, cplx lambda, int K, double radius = 0.5) {
  const int samples = 4 * K + 16;
  const cplx f_lambda = eval(f, lambda);
  std::vector<cplx> out(static_cast<std::size_t>(K));
  for (int j = 0; j < samples; ++j) {
    const double th = 2.0 * std::numbers::pi * j / samples;
    const cplx z = std::polar(radius, th);
    const cplx v = eval(f, mobius_map(lambda, z)) - f_lambda;
    for (int k = 1; k <= K; ++k) out[static_cast<std::size_t>(k - 1)] += v * std::polar(std::pow(radius, -k), -k * th);
  }
  for (auto& c : out) c /= static_cast<double>(samples);
  return out;
}

}  // namespace

TEST_CASE("eval") {
  const Coefficients f{1.0, 0.0, 2.0};
  const cplx v = eval(f, cplx{0.0, 1.0});
  CHECK(v.real() == doctest::Approx(0.0));
  CHECK(v.imag() == doctest::Approx(-1.0));
  CHECK(eval(f, 0.0) == cplx{});
  CHECK(eval(Coefficients{1.0, 1.0}, 0.5).real() == doctest::Approx(0.75));
}

TEST_CASE("coefficients reject non-finite entries and report degree") {
  CHECK_THROWS_AS(Coefficients({cplx{NAN, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(Coefficients(std::vector<cplx>{}), std::invalid_argument);
  CHECK(Coefficients{1.0, 2.0, 0.0, 0.0}.degree() == 2);
  CHECK(Coefficients{0.0, 0.0}.degree() == 0);
  const Coefficients f{1.0, 2.0};
  CHECK(f[0] == cplx{});
  CHECK(f[3] == cplx{});
}

TEST_CASE("derivative") {
  const Polynomial d = derivative(Coefficients{1.0, 0.0, 2.0});
  REQUIRE(d.c.size() == 3);
  CHECK(d[0] == cplx{1.0});
  CHECK(d[1] == cplx{});
  CHECK(d[2] == cplx{6.0});
  CHECK(derivative(Coefficients{1.0})[0] == cplx{1.0});

  // B_5 z^5 against central differences of eval along the real axis
  const double b5 = coefficient_bound_Bn(5);
  const Coefficients f = Coefficients::monomial(5, b5);
  const Polynomial fp = derivative(f);
  for (double x : {0.1, 0.4, 0.7}) {
    const double h = 1e-6;
    const double fd = (eval(f, x + h) - eval(f, x - h)).real() / (2 * h);
    const double exact = eval(fp, x).real();
    CHECK(std::abs(fd - exact) / std::abs(exact) <= 1e-8);
  }
}

TEST_CASE("derivative is linear") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<cplx> a(6), b(6);
    for (auto& v : a) v = {u(rng), u(rng)};
    for (auto& v : b) v = {u(rng), u(rng)};
    const Coefficients f(a), g(b);
    const cplx s{u(rng), u(rng)}, t{u(rng), u(rng)};
    const Polynomial lhs = derivative(f.scaled(s) + g.scaled(t));
    const Polynomial df = derivative(f), dg = derivative(g);
    for (int k = 0; k < 6; ++k) CHECK(std::abs(lhs[k] - (s * df[k] + t * dg[k])) <= 1e-14);
  }
}

TEST_CASE("mobius_recenter closed form for f = z") {
  const Coefficients r = mobius_recenter(Coefficients{1.0}, 0.5, 3);
  REQUIRE(r.size() == 3);
  CHECK(r[1].real() == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(r[2].real() == doctest::Approx(-0.375).epsilon(1e-15));
  CHECK(r[3].real() == doctest::Approx(0.1875).epsilon(1e-15));
}

TEST_CASE("mobius_recenter at lambda = 0 is the identity") {
  const Coefficients f{cplx{1.0, 2.0}, cplx{-0.5, 0.25}, cplx{0.0, 3.0}};
  const Coefficients r = mobius_recenter(f, 0.0, f.degree());
  for (int k = 1; k <= 3; ++k) CHECK(std::abs(r[k] - f[k]) == 0.0);
}

TEST_CASE("mobius_recenter matches Cauchy coefficients") {
  const Coefficients f{1.0, 1.0};
  const Coefficients r = mobius_recenter(f, 0.3, 4);
  const auto oracle = cauchy_coefficients(f, 0.3, 4);
  for (int k = 1; k <= 4; ++k) CHECK(std::abs(r[k] - oracle[static_cast<std::size_t>(k - 1)]) <= 1e-10);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<cplx> b(5);
    for (auto& v : b) v = {u(rng), u(rng)};
    const Coefficients g(b);
    const cplx lam = std::polar(0.6 * std::abs(u(rng)), 3.0 * u(rng));
    const Coefficients rg = mobius_recenter(g, lam, 6);
    const auto og = cauchy_coefficients(g, lam, 6);
    for (int k = 1; k <= 6; ++k) CHECK(std::abs(rg[k] - og[static_cast<std::size_t>(k - 1)]) <= 1e-10);
  }
}

TEST_CASE("mobius_recenter rejects |lambda| >= 1 and K < 1") {
  CHECK_THROWS_AS(mobius_recenter(Coefficients{1.0}, 1.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(mobius_recenter(Coefficients{1.0}, cplx{0.8, 0.7}, 3), std::invalid_argument);
  CHECK_THROWS_AS(mobius_recenter(Coefficients{1.0}, 0.1, 0), std::invalid_argument);
}

TEST_CASE("marty_first_order reference values") {
  CHECK(marty_first_order(Coefficients{1.0}, 1) == cplx{});
  CHECK(marty_first_order(Coefficients{1.0, 1.0}, 1) == cplx{2.0});
  CHECK(marty_first_order(Coefficients{1.0, 1.0}, 2) == cplx{-1.0});
  CHECK_THROWS(marty_first_order(Coefficients{1.0}, 0));
}

TEST_CASE("marty_first_order is the derivative of |B_k(s e^{i theta})|^2") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<cplx> b(8);
    for (auto& v : b) v = {u(rng), u(rng)};
    const Coefficients f(b);
    const int k = 1 + trial % 8;
    const cplx dir = std::polar(1.0, 3.2 * u(rng));
    const double h = 1e-5;
    const double fd = (std::norm(mobius_recenter(f, h * dir, k + 1)[k]) -
                       std::norm(mobius_recenter(f, -h * dir, k + 1)[k])) / (2 * h);
    CHECK(fd == doctest::Approx(2.0 * (dir * marty_first_order(f, k)).real()).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("Moebius pointwise identity") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const cplx z = std::polar(std::sqrt(u(rng)) * 0.999, 6.3 * u(rng));
    const cplx lam = std::polar(std::sqrt(u(rng)) * 0.999, 6.3 * u(rng));
    const double lhs = (1.0 - std::norm(z)) * std::abs(mobius_map_derivative(lam, z));
    const double rhs = 1.0 - std::norm(mobius_map(lam, z));
    CHECK(std::abs(lhs - rhs) <= 1e-12);
  }
}
