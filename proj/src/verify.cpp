#include "bloch/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "bloch/constructions.hpp"
#include "bloch/functionals.hpp"
#include "bloch/golden.hpp"
#include "bloch/norm.hpp"
#include "bloch/search.hpp"

namespace bloch {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string describe(std::initializer_list<std::pair<const char*, double>> items) {
  std::ostringstream os;
  os.precision(10);
  bool first = true;
  for (const auto& [k, v] : items) {
    os << (first ? "" : ", ") << k << "=" << v;
    first = false;
  }
  return os.str();
}

struct Recorder {
  std::vector<CheckResult>& out;
  std::string suite;

  // margin >= 0 passes
  void add(std::string name, double margin, std::string detail = {}) {
    out.push_back({suite, std::move(name), margin >= 0.0, margin, std::move(detail)});
  }
};

Coefficients random_nonneg(std::mt19937_64& rng, int max_degree) {
  std::uniform_int_distribution<int> deg(2, max_degree);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int d = deg(rng);
  std::vector<cplx> b(static_cast<std::size_t>(d));
  for (auto& v : b) v = u(rng);
  return Coefficients(std::move(b));
}

Coefficients random_complex(std::mt19937_64& rng, int max_degree) {
  std::uniform_int_distribution<int> deg(1, max_degree);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int d = deg(rng);
  std::vector<cplx> b(static_cast<std::size_t>(d));
  for (auto& v : b) v = {u(rng), u(rng)};
  return Coefficients(std::move(b));
}

cplx random_disc_point(std::mt19937_64& rng, double rmax) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(rmax * std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng));
}

// ---------------------------------------------------------------------------

void suite_prop41(Recorder rec, const std::vector<Coefficients>& samples) {
  {
    const double m = std::min({-std::abs(coefficient_bound_Bn(1) - 1.0), -std::abs(coefficient_bound_Bn(3) - 4.0 / 3.0) + 1e-15,
                               -std::abs(coefficient_bound_Bn(2) - 0.75 * std::sqrt(3.0)) + 1e-12});
    rec.add("B_n closed forms (B_1, B_2, B_3)", m);
  }
  {
    double worst = kInf;
    double prev = coefficient_bound_deficit(1);
    for (long n = 2; n <= 1000000; ++n) {
      const double d = coefficient_bound_deficit(n);
      worst = std::min(worst, (prev - d) / prev);
      prev = d;
    }
    rec.add("B_n strictly increasing, n = 1..1e6 (deficit e/2 - B_n)", worst > 0.0 ? worst : -1.0);
  }
  {
    double worst = kInf;
    double prev_ratio = 0.0;
    double worst_mono = kInf;
    for (long n = 2; n <= 10000; ++n) {
      const double b = coefficient_bound_Bn(n);
      const double conj = static_cast<double>(n) * b * b;
      const double c = crude_bound(n);
      const double lower = 32.0 / 27.0 * conj;
      const double upper = 4.0 / std::numbers::e * conj;
      worst = std::min({worst, (c - lower) / c + 1e-12, (upper - c) / c + 1e-12});
      const double r = ratio_to_conjectured(n);
      if (n > 2) worst_mono = std::min(worst_mono, r - prev_ratio);
      prev_ratio = r;
    }
    rec.add("crude bound sandwich 32/27 n B_n^2 <= n^n/(n-1)^(n-1) <= 4/e n B_n^2, n = 2..1e4", worst);
    rec.add("ratio sequence strictly increasing, n = 2..1e4", worst_mono > 0.0 ? worst_mono : -1.0);
    rec.add("ratio(2) = 32/27", 1e-12 - std::abs(ratio_to_conjectured(2) - 32.0 / 27.0));
    rec.add("ratio(1e4) within 1e-4 of 4/e", 1e-4 - std::abs(ratio_to_conjectured(10000) - 4.0 / std::numbers::e),
            describe({{"ratio", ratio_to_conjectured(10000)}}));
  }
  {
    double crude = kInf, sharp2 = kInf;
    bool chain = true;
    for (const Coefficients& f : samples) {
      const int n = f.degree();
      crude = std::min(crude, crude_bound(n) + 1e-9 - functional_value(f, {n, 1.0}));
      sharp2 = std::min(sharp2, conjectured_value(n, 2.0) + 1e-8 - functional_value(f, {n, 2.0}));
      for (double t : {0.0, 0.5, 1.0})
        for (double s : {t, t + 0.5, 2.0})
          if (s >= t) chain = chain && weight_reduction_check(f, n, t, s);
    }
    rec.add("F_n(f) <= n^n/(n-1)^(n-1) on normalized samples", crude);
    rec.add("F_n^2(f) <= n^2 B_n^2 on normalized samples", sharp2);
    rec.add("F_n^s <= n^(s-t) F_n^t on normalized samples", chain ? 0.0 : -1.0);
  }
}

void suite_parseval(Recorder rec, const std::vector<Coefficients>& samples) {
  double worst = kInf;
  for (const Coefficients& f : samples)
    for (int i = 0; i <= 9; ++i) worst = std::min(worst, parseval_margin(f, f.degree(), 0.1 * i) + 1e-8);
  rec.add("Parseval margin >= -1e-8 on rho grid {0, 0.1, ..., 0.9}", worst,
          describe({{"samples", static_cast<double>(samples.size())}}));
}

void suite_example42(Recorder rec, std::uint64_t seed) {
  double worst_ratio = kInf;
  bool all_chain = true;
  for (int n = 2; n <= 10; ++n) {
    for (double eps : {0.05, 0.1, 0.2}) {
      const Example42Report r = example42_verify(n, eps);
      all_chain = all_chain && r.chain_ok;
      const double e1 = r.norm_F.error_bound + r.norm_p.error_bound;
      const double e2 = r.norm_p.error_bound + r.norm_f.error_bound;
      const double e3 = r.norm_p.error_bound;
      worst_ratio = std::min({worst_ratio, r.margin_Fp - 10.0 * e1, r.margin_pf - 10.0 * e2,
                              r.norm_p.value - 1.0 - 10.0 * e3});
    }
  }
  rec.add("norm chain ||F|| > ||p_n|| > ||f||, ||p_n|| > 1, n = 2..10, eps in {0.05, 0.1, 0.2}",
          all_chain ? worst_ratio : -1.0);
  const Example42Report r2 = example42_verify(2, 0.2);
  rec.add("||p_2|| = 1.7306 +- 1e-3", 1e-3 - std::abs(r2.norm_p.value - 1.7306), describe({{"norm_p", r2.norm_p.value}}));

  std::mt19937_64 rng(seed + 42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_slope = kInf;
  for (int i = 0; i < 1000; ++i) {
    const int n = 2 + i % 9;
    const double eps = 0.2 * (1.0 - u(rng));
    const double R = u(rng);
    const double x = -1.0 + 1e-3 + (2.0 - 2e-3) * u(rng);
    const double h = 1e-4;
    const double slope = (u_value(x + h, n, eps, R) - u_value(x - h, n, eps, R)) / (2 * h);
    worst_slope = std::min(worst_slope, slope + 1e-9);
  }
  rec.add("u(x) nondecreasing on [-1, 1] for eps <= 1/5", worst_slope);

  double worst_circle = kInf;
  for (int n = 2; n <= 6; ++n) {
    const double eps = 0.2 * (1.0 - u(rng));
    const Example42 ex = example42_build(n, eps);
    const Polynomial fp = derivative(ex.f);
    for (int s = 1; s <= 9; ++s) {
      const double r = 0.1 * s;
      auto mod2 = [&](double th) { return std::norm(eval(fp, std::polar(r, th))); };
      const int m = 64 + 16 * n;
      int best = 0;
      double bv = -1.0;
      for (int j = 0; j < m; ++j) {
        const double v = mod2(2.0 * std::numbers::pi * j / m);
        if (v > bv) {
          bv = v;
          best = j;
        }
      }
      const double h = 2.0 * std::numbers::pi / m;
      const GoldenResult g = golden_max(mod2, (best - 1) * h, (best + 1) * h);
      const double circle_max = std::max(bv, g.value);
      const double u1 = u_value(1.0, n, eps, std::pow(r, n - 1));
      worst_circle = std::min(worst_circle, 1e-9 * std::max(1.0, u1) - std::abs(circle_max - u1));
    }
  }
  rec.add("max_t |f'(re^{it})|^2 = u(1)", worst_circle);
}

void suite_counterexample(Recorder rec) {
  rec.add("threshold_N(0) = 219", threshold_N(0.0) == 219 ? 0.0 : -1.0);
  rec.add("threshold_N(0.5) = 47696", threshold_N(0.5) == 47696 ? 0.0 : -1.0);

  double worst_identity = kInf;
  for (double t : {0.0, 0.25, 0.5, 0.9})
    for (long n : {2L, 10L, 219L, 1000L}) {
      const CounterexampleReport r = counterexample_verify(t, n);
      const double expect = 1.0 - std::pow(static_cast<double>(n), -0.5 * (1.0 - t));
      worst_identity = std::min(worst_identity, 1e-12 - std::abs(r.functional_margin - expect));
    }
  rec.add("functional margin = 1 - n^{-(1-t)/2}", worst_identity);

  double worst_norm = kInf;
  for (double t : {0.0, 0.25, 0.5}) {
    const long N = threshold_N(t);
    for (long n : {N, N + 1, N + 17}) {
      const CounterexampleReport r = counterexample_verify(t, n);
      worst_norm = std::min(worst_norm, r.norm_ok ? 1.0 + kNormCertificationSlack - r.norm.value : -1.0);
    }
  }
  rec.add("||f_n|| <= 1 for n in {N, N+1, N+17}, t in {0, 0.25, 0.5}", worst_norm);

  double worst_h = kInf;
  for (long n = 3; n <= 40; ++n) {
    for (double b : {0.1, 0.5, 1.3}) {
      const double nn = static_cast<double>(n);
      auto h = [&](double r) { return nn * b * std::pow(r, nn - 3.0) * (1.0 - r * r); };
      double best = h(0.0);
      int bi = 0;
      const int m = 400;
      for (int i = 1; i <= m; ++i) {
        const double v = h(static_cast<double>(i) / m);
        if (v > best) {
          best = v;
          bi = i;
        }
      }
      const GoldenResult g = golden_max(h, std::max(0, bi - 1) / double(m), std::min(m, bi + 1) / double(m));
      const double numeric = std::max(best, g.value);
      const double closed = hmax_closed_form(n, b);
      worst_h = std::min(worst_h, 1e-10 - std::abs(numeric - closed) / closed);
    }
  }
  rec.add("h(r) maximum closed form vs numeric, n = 3..40", worst_h);

  double worst_gap = kInf;
  const double cap = 8.0 * std::numbers::e * std::numbers::e;
  for (long n = 219; n <= 1000000; ++n) worst_gap = std::min(worst_gap, cap - counterexample_gap_bound(n));
  rec.add("proof bound <= 8e^2, n = 219..1e6", worst_gap);
}

void suite_lemma(Recorder rec, std::uint64_t seed) {
  {
    const auto s1 = lemma_bound_check(Coefficients{1.0, 1.0}, 2);
    const auto s2 = lemma_bound_check(Coefficients{1.0, 0.2}, 2);
    const bool ok = s1.size() == 1 && std::abs(s1[0].slack + 0.75) < 1e-15 && s2.size() == 1 &&
                    std::abs(s2[0].slack - 0.05) < 1e-15 &&
                    lemma_bound_check(Coefficients::monomial(5, coefficient_bound_Bn(5)), 5).empty();
    rec.add("slack formula on reference inputs", ok ? 0.0 : -1.0);
  }
  std::mt19937_64 rng(seed + 21);
  double worst_delta = kInf, worst_norm = kInf, worst_pointwise = kInf;
  for (int i = 0; i < 200; ++i) {
    const Coefficients f = random_nonneg(rng, 8);
    const int n = f.degree();
    const double nf = seminorm_radial(f).value;
    const Polynomial fp = derivative(f);
    for (int k = 1; k < n; ++k) {
      for (int m = k + 1; m <= n; ++m) {
        const Perturbation p = lemma_perturbation(f, k, m, n);
        const double direct = functional_value(p.g, {n, 1.0}) - functional_value(f, {n, 1.0});
        worst_delta = std::min(worst_delta, 1e-12 * std::max(1.0, functional_value(f, {n, 1.0})) - std::abs(direct - p.delta));
        worst_norm = std::min(worst_norm, nf + 1e-10 - seminorm_radial(p.g).value);
        const Polynomial gp = derivative(p.g);
        for (int j = 0; j <= 100; ++j) {
          const double r = 0.01 * j;
          worst_pointwise = std::min(worst_pointwise, eval(fp, r).real() - eval(gp, r).real() + 1e-12);
        }
      }
    }
  }
  rec.add("perturbation delta matches direct recomputation", worst_delta);
  rec.add("||g|| <= ||f|| for the perturbation", worst_norm);
  rec.add("g'(r) <= f'(r) on r grid", worst_pointwise);

  double worst_slack = kInf;
  for (int n = 3; n <= 6; ++n) {
    SearchConfig cfg;
    cfg.n = n;
    cfg.nonneg = true;
    cfg.restarts = 6;
    cfg.max_iters = 3000;
    cfg.seed = seed;
    const SearchResult res = search_extremal(cfg);
    for (const LemmaSlack& s : lemma_bound_check(res.best, n)) worst_slack = std::min(worst_slack, s.slack + 1e-8);
    if (lemma_bound_check(res.best, n).empty()) worst_slack = std::min(worst_slack, 1e-8);
  }
  rec.add("nonneg search results satisfy the slack condition", worst_slack);
}

void suite_marty(Recorder rec, std::uint64_t seed) {
  std::mt19937_64 rng(seed + 7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_fd = kInf;
  for (int i = 0; i < 100; ++i) {
    const Coefficients f = random_complex(rng, 8);
    const int k = 1 + static_cast<int>(u(rng) * f.degree()) % f.degree();
    const double theta = 2.0 * std::numbers::pi * u(rng);
    const double h = 1e-5;
    const cplx dir = std::polar(1.0, theta);
    const double plus = std::norm(mobius_recenter(f, h * dir, k + 1)[k]);
    const double minus = std::norm(mobius_recenter(f, -h * dir, k + 1)[k]);
    const double fd = (plus - minus) / (2.0 * h);
    const double analytic = 2.0 * (dir * marty_first_order(f, k)).real();
    worst_fd = std::min(worst_fd, 1e-5 - std::abs(fd - analytic));
  }
  rec.add("Marty first-order term vs finite differences (100 inputs)", worst_fd);

  double worst_pt = kInf;
  for (int i = 0; i < 10000; ++i) {
    const cplx z = random_disc_point(rng, 0.999);
    const cplx lam = random_disc_point(rng, 0.999);
    const double lhs = (1.0 - std::norm(z)) * std::abs(mobius_map_derivative(lam, z));
    const double rhs = 1.0 - std::norm(mobius_map(lam, z));
    worst_pt = std::min(worst_pt, 1e-12 - std::abs(lhs - rhs));
  }
  rec.add("(1-|z|^2)|phi'(z)| = 1-|phi(z)|^2 on 1e4 points", worst_pt);

  double worst_inv = kInf;
  for (int i = 0; i < 20; ++i) {
    const Coefficients f = random_complex(rng, 8);
    const Polynomial fp = derivative(f);
    const cplx lam = random_disc_point(rng, 0.9);
    double max_pull = 0.0, max_direct = 0.0;
    for (int a = 0; a < 60; ++a) {
      for (int b = 0; b < 64; ++b) {
        const cplx z = std::polar(a / 60.0, 2.0 * std::numbers::pi * b / 64.0);
        const cplx w = mobius_map(lam, z);
        max_pull = std::max(max_pull, (1.0 - std::norm(z)) * std::abs(eval(fp, w) * mobius_map_derivative(lam, z)));
        max_direct = std::max(max_direct, (1.0 - std::norm(w)) * std::abs(eval(fp, w)));
      }
    }
    worst_inv = std::min(worst_inv, 1e-10 * std::max(1.0, max_direct) - std::abs(max_pull - max_direct));
  }
  rec.add("Moebius invariance of the sampled weighted derivative", worst_inv);

  double worst_res = kInf;
  for (int n = 2; n <= 4; ++n) {
    SearchConfig cfg;
    cfg.n = n;
    cfg.restarts = 6;
    cfg.max_iters = 3000;
    cfg.seed = seed;
    const SearchResult res = search_extremal(cfg);
    worst_res = std::min(worst_res, 1e-6 - res.marty_residual);
  }
  rec.add("marty residual <= 1e-6 on search results (t = 1, n = 2..4)", worst_res);
}

}  // namespace

std::optional<Suite> parse_suite(std::string_view name) {
  for (Suite s : {Suite::all, Suite::lemma, Suite::prop41, Suite::example42, Suite::parseval, Suite::counterexample,
                  Suite::marty})
    if (to_string(s) == name) return s;
  return std::nullopt;
}

std::string_view to_string(Suite s) {
  switch (s) {
    case Suite::all: return "all";
    case Suite::lemma: return "lemma";
    case Suite::prop41: return "prop41";
    case Suite::example42: return "example42";
    case Suite::parseval: return "parseval";
    case Suite::counterexample: return "counterexample";
    case Suite::marty: return "marty";
  }
  return "unknown";
}

std::vector<Coefficients> normalized_samples(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> deg(2, 12);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Coefficients> out;
  out.reserve(static_cast<std::size_t>(count));
  while (static_cast<int>(out.size()) < count) {
    const int d = deg(rng);
    std::vector<cplx> b(static_cast<std::size_t>(d));
    for (auto& v : b) v = {u(rng), u(rng)};
    const Coefficients f(std::move(b));
    if (f.degree() < 2) continue;
    const double norm = seminorm_general(f, 1e-10).value;
    out.push_back(f.scaled(1.0 / norm));
  }
  return out;
}

std::vector<CheckResult> verify_suites(Suite suite, std::uint64_t seed) {
  std::vector<CheckResult> out;
  const bool all = suite == Suite::all;
  std::vector<Coefficients> samples;
  if (all || suite == Suite::prop41 || suite == Suite::parseval) samples = normalized_samples(1000, seed);

  if (all || suite == Suite::prop41) suite_prop41({out, "prop41"}, samples);
  if (all || suite == Suite::parseval) suite_parseval({out, "parseval"}, samples);
  if (all || suite == Suite::example42) suite_example42({out, "example42"}, seed);
  if (all || suite == Suite::counterexample) suite_counterexample({out, "counterexample"});
  if (all || suite == Suite::lemma) suite_lemma({out, "lemma"}, seed);
  if (all || suite == Suite::marty) suite_marty({out, "marty"}, seed);
  return out;
}

}  // namespace bloch
