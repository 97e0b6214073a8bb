#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bloch/constructions.hpp"
#include "bloch/functionals.hpp"
#include "bloch/golden.hpp"

using namespace bloch;

TEST_CASE("threshold_N") {
  CHECK(threshold_N(0.0) == 219);
  CHECK(threshold_N(0.5) == 47696);
  CHECK(threshold_N(0.25) == 1316);
  long prev = 0;
  for (double t = 0.0; t < 0.8; t += 0.05) {
    const long N = threshold_N(t);
    CHECK(N >= prev);
    prev = N;
  }
  CHECK_THROWS(threshold_N(1.0));
  CHECK_THROWS(threshold_N(0.95));  // exceeds the range of long
}

TEST_CASE("counterexample_function") {
  const Coefficients f2 = counterexample_function(0.0, 2);
  CHECK(f2[1] == cplx{1.0});
  const double b2 = coefficient_bound_Bn(2);
  CHECK(f2[2].real() == doctest::Approx(std::sqrt(b2 * b2 - std::pow(2.0, -0.5))).epsilon(1e-15));
  CHECK(std::abs(f2[2].real() - 0.9901480792353497) <= 1e-14);

  const Coefficients f = counterexample_function(0.0, 219);
  const double b = coefficient_bound_Bn(219);
  CHECK(f[219].real() == doctest::Approx(std::sqrt(b * b - std::pow(219.0, -0.5))).epsilon(1e-15));
  CHECK(f.is_nonnegative());
  CHECK_THROWS(counterexample_function(1.0, 10));
  CHECK_THROWS(counterexample_function(0.0, 1));
}

TEST_CASE("counterexample_verify") {
  const CounterexampleReport r = counterexample_verify(0.0, 219);
  CHECK(r.norm_ok);
  CHECK(r.epsilon == 0.5);
  CHECK(r.threshold_N == 219);
  CHECK(std::abs(r.functional_margin - (1.0 - std::pow(219.0, -0.5))) <= 1e-12);
  CHECK(std::abs(r.functional_margin - 0.932426) <= 1e-6);

  const CounterexampleReport small = counterexample_verify(0.0, 2);
  CHECK(std::abs(small.functional_margin - (1.0 - std::pow(2.0, -0.5))) <= 1e-12);
  CHECK(!small.norm_ok);  // below the threshold the construction has norm > 1

  const CounterexampleReport half = counterexample_verify(0.5, 47696);
  CHECK(half.norm_ok);
  CHECK(std::abs(half.functional_margin - (1.0 - std::pow(47696.0, -0.25))) <= 1e-12);
}

TEST_CASE("counterexample margin identity") {
  for (double t : {0.0, 0.3, 0.7})
    for (long n : {2L, 5L, 50L, 400L}) {
      const CounterexampleReport r = counterexample_verify(t, n);
      CHECK(std::abs(r.functional_margin - (1.0 - std::pow(double(n), -0.5 * (1.0 - t)))) <= 1e-12);
      CHECK(r.b_n * r.b_n == doctest::Approx(std::pow(coefficient_bound_Bn(n), 2) - std::pow(double(n), -(t + r.epsilon))));
    }
}

TEST_CASE("hmax_closed_form") {
  CHECK(hmax_closed_form(5, 0.5) == doctest::Approx(0.625).epsilon(1e-15));
  CHECK(hmax_closed_form(3, 1.0) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(hmax_closed_form(4, 1.0) == doctest::Approx(4.0 * std::sqrt(1.0 / 3.0) * 2.0 / 3.0).epsilon(1e-15));
  CHECK_THROWS(hmax_closed_form(2, 1.0));
  CHECK_THROWS(hmax_closed_form(5, 0.0));

  for (long n = 3; n <= 40; ++n) {
    for (double b : {0.1, 0.5, 1.3}) {
      const double nn = double(n);
      auto h = [&](double r) { return nn * b * std::pow(r, nn - 3.0) * (1.0 - r * r); };
      const double rstar = std::sqrt((nn - 3.0) / (nn - 1.0));
      const GoldenResult g = golden_max(h, std::max(0.0, rstar - 0.05), std::min(1.0, rstar + 0.05));
      CHECK(std::abs(std::max(g.value, h(rstar)) - hmax_closed_form(n, b)) <= 1e-10 * hmax_closed_form(n, b));
    }
  }
}

TEST_CASE("proof bound stays below 8e^2") {
  const double cap = 8.0 * std::numbers::e * std::numbers::e;
  for (long n = 219; n <= 200000; n += 7) CHECK(counterexample_gap_bound(n) <= cap);
  CHECK(counterexample_gap_bound(1000000) <= cap);
  CHECK_THROWS(counterexample_gap_bound(3));
}

TEST_CASE("example42_build") {
  const Example42 ex = example42_build(2, 0.2);
  const double b2 = coefficient_bound_Bn(2);
  CHECK(ex.f[1] == cplx{1.0});
  CHECK(ex.f[2].real() == b2);
  CHECK(ex.f[3].real() == doctest::Approx(-0.2 / 3.0));
  CHECK(ex.F[3].real() == doctest::Approx(0.2 / 3.0));
  CHECK(ex.p.degree() == 2);
  int nonzero = 0;
  for (int k = 1; k <= ex.p.size(); ++k) nonzero += ex.p[k] != cplx{};
  CHECK(nonzero == 2);
  CHECK_THROWS(example42_build(1, 0.1));
  CHECK_THROWS(example42_build(3, 0.25));
  CHECK_THROWS(example42_build(3, 0.0));
}

TEST_CASE("example42_verify") {
  const Example42Report r = example42_verify(2, 0.2);
  CHECK(r.chain_ok);
  CHECK(std::abs(r.norm_p.value - 1.7306) <= 1e-3);
  for (int n = 2; n <= 10; ++n) {
    const Example42Report q = example42_verify(n, 0.05);
    CHECK(q.chain_ok);
    CHECK(q.norm_p.value > 1.0 + 1e-6);
  }
}

TEST_CASE("u_value") {
  const double b2 = coefficient_bound_Bn(2);
  // eps = 0 collapses to (1 + n B_n R)^2 at x = 1
  CHECK(u_value(1.0, 2, 0.0, 0.5) == doctest::Approx(std::pow(1.0 + 2.0 * b2 * 0.5, 2)).epsilon(1e-14));
  CHECK(u_value(0.3, 5, 0.1, 0.0) == 1.0);
  const double v = u_value(1.0, 2, 0.1, 0.5);
  const double nbr = 2.0 * b2 * 0.5;
  const double alt = (1.0 + nbr) * (1.0 + nbr) + 0.1 * 0.25 * (0.1 * 0.25 - 2.0 - 2.0 * nbr);
  CHECK(std::abs(v - alt) <= 1e-10);
  CHECK(std::abs(v - 5.171249306069483) <= 1e-12);
  CHECK(v < (1.0 + nbr) * (1.0 + nbr));
  CHECK_THROWS(u_value(1.5, 2, 0.1, 0.5));
  CHECK_THROWS(u_value(0.5, 2, 0.1, 1.5));
}

TEST_CASE("u_value matches |1 + n B_n z^{n-1} - eps z^{2n-2}|^2") {
  for (int n = 2; n <= 6; ++n) {
    const double nb = n * coefficient_bound_Bn(n);
    for (double r : {0.2, 0.6, 0.9}) {
      for (double th : {0.0, 0.7, 2.0, 3.1}) {
        const double eps = 0.13;
        const cplx w = std::polar(std::pow(r, n - 1), th);  // z^{n-1}
        const double direct = std::norm(1.0 + nb * w - eps * w * w);
        CHECK(u_value(std::cos(th), n, eps, std::pow(r, n - 1)) == doctest::Approx(direct).epsilon(1e-13));
      }
    }
  }
}
