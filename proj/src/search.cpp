#include "bloch/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace bloch {

namespace {

constexpr double kCertifyTol = 1e-10;
constexpr double kInitialStep = 0.25;
constexpr double kFinalStep = 1e-9;

// Real parameter vector <-> coefficients. General: (Re b_1, Im b_1, ...);
// nonneg: (b_1, ..., b_D) with b_k >= 0.
Coefficients to_coeffs(const std::vector<double>& x, bool nonneg) {
  if (nonneg) return Coefficients::from_real(x);
  std::vector<cplx> b(x.size() / 2);
  for (std::size_t k = 0; k < b.size(); ++k) b[k] = {x[2 * k], x[2 * k + 1]};
  return Coefficients(std::move(b));
}

std::vector<double> to_params(const Coefficients& f, bool nonneg) {
  std::vector<double> x;
  for (int k = 1; k <= f.size(); ++k) {
    x.push_back(f[k].real());
    if (!nonneg) x.push_back(f[k].imag());
  }
  return x;
}

NormResult certify_norm(const Coefficients& f, bool nonneg) {
  if (nonneg && f.is_nonnegative()) return seminorm_radial(f, kCertifyTol);
  return seminorm_general(f, kCertifyTol);
}

struct Start {
  std::string label;
  Coefficients f;
};

std::vector<Start> start_set(const SearchConfig& cfg) {
  const int D = cfg.degree();
  const double bn = coefficient_bound_Bn(cfg.n);
  std::vector<Start> starts;
  starts.push_back({"monomial", Coefficients::monomial(cfg.n, bn, D)});
  if (cfg.n >= 2) {
    for (double w : {0.1, 0.5, 0.9}) {
      Coefficients f = Coefficients::monomial(cfg.n, (1.0 - w) * bn, D);
      f.set(1, w);
      std::ostringstream label;
      label << "mixture:" << w;
      starts.push_back({label.str(), f});
    }
  }
  while (static_cast<int>(starts.size()) < cfg.restarts) {
    const auto idx = static_cast<std::uint64_t>(starts.size());
    std::mt19937_64 rng(cfg.seed + idx);
    std::uniform_real_distribution<double> u(cfg.nonneg ? 0.0 : -1.0, 1.0);
    std::vector<cplx> b(static_cast<std::size_t>(D));
    for (auto& v : b) {
      const double re = u(rng);
      v = cfg.nonneg ? cplx{re, 0.0} : cplx{re, u(rng)};
    }
    Coefficients f(std::move(b));
    if (f.is_zero()) f.set(cfg.n, 1.0);
    starts.push_back({"random", f});
  }
  if (static_cast<int>(starts.size()) > cfg.restarts) starts.resize(static_cast<std::size_t>(std::max(cfg.restarts, 1)));
  return starts;
}

struct LocalOutcome {
  Coefficients f;
  int evaluations = 0;
  bool converged = false;
};

// Compass search with step halving on the ratio R. The iterate is rescaled
// to (approximately) unit norm after each productive sweep so that the
// absolute step sizes keep a fixed meaning.
LocalOutcome compass_search(const SearchConfig& cfg, const Coefficients& start) {
  const FunctionalSpec spec(cfg.n, cfg.t);
  const NormOptions coarse = NormOptions::coarse_grid(cfg.tol);

  struct Eval {
    double ratio;
    double functional;
  };
  int evals = 0;
  auto evaluate = [&](const std::vector<double>& x) -> Eval {
    ++evals;
    const Coefficients f = to_coeffs(x, cfg.nonneg);
    if (f.is_zero()) return {-std::numeric_limits<double>::infinity(), 0.0};
    const double norm = cfg.nonneg ? seminorm_radial(f, coarse).value : seminorm_general(f, coarse).value;
    const double F = functional_value(f, spec);
    return {F / (norm * norm), F};
  };

  std::vector<double> x = to_params(start, cfg.nonneg);
  Eval cur = evaluate(x);
  double step = kInitialStep;
  while (step > kFinalStep && evals < cfg.max_iters) {
    bool improved = false;
    for (std::size_t i = 0; i < x.size() && evals < cfg.max_iters; ++i) {
      for (double sign : {1.0, -1.0}) {
        std::vector<double> trial = x;
        trial[i] += sign * step;
        if (cfg.nonneg) trial[i] = std::max(trial[i], 0.0);
        if (trial[i] == x[i]) continue;
        const Eval e = evaluate(trial);
        // Relative threshold keeps norm-evaluation noise from being accepted
        // as progress at tiny step sizes.
        if (e.ratio > cur.ratio + 1e-13 * std::abs(cur.ratio)) {
          x = std::move(trial);
          cur = e;
          improved = true;
          break;
        }
      }
    }
    if (improved) {
      if (cur.functional > 0.0 && cur.ratio > 0.0) {
        const double scale = std::sqrt(cur.ratio / cur.functional);  // 1 / ||f||
        for (double& v : x) v *= scale;
        cur.functional *= scale * scale;
      }
    } else {
      step *= 0.5;
    }
  }
  return {to_coeffs(x, cfg.nonneg), evals, step <= kFinalStep};
}

struct Candidate {
  Coefficients best;
  NormResult norm;
  double objective = -std::numeric_limits<double>::infinity();
};

Candidate certify(const Coefficients& raw, const SearchConfig& cfg) {
  Candidate c;
  if (raw.is_zero()) return c;
  const Coefficients g = gauge_normalize(raw);
  const NormResult nr = certify_norm(g, cfg.nonneg);
  c.best = g.scaled(1.0 / nr.value);
  c.norm = certify_norm(c.best, cfg.nonneg);
  c.objective = functional_value(c.best, FunctionalSpec(cfg.n, cfg.t)) / (c.norm.value * c.norm.value);
  return c;
}

bool lex_magnitudes_less(const Coefficients& a, const Coefficients& b) {
  const int n = std::max(a.size(), b.size());
  for (int k = 1; k <= n; ++k) {
    const double ma = std::abs(a[k]), mb = std::abs(b[k]);
    if (ma != mb) return ma < mb;
  }
  return false;
}

}  // namespace

int SearchConfig::degree() const {
  if (degree_cap > 0) return degree_cap;
  return nonneg ? n : n + 2;
}

void SearchConfig::validate() const {
  if (n < 1) throw std::invalid_argument("search: n must be >= 1");
  if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("search: t must be finite and >= 0");
  if (degree() < n) throw std::invalid_argument("search: degree cap must be >= n");
  if (restarts < 1) throw std::invalid_argument("search: restarts must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("search: tol must be > 0");
  if (max_iters < 1) throw std::invalid_argument("search: max_iters must be >= 1");
  if (threads < 1) throw std::invalid_argument("search: threads must be >= 1");
}

double rayleigh_objective(const Coefficients& f, const FunctionalSpec& spec, double tol) {
  if (f.is_zero()) throw std::invalid_argument("rayleigh_objective: zero polynomial");
  const double norm = seminorm(f, tol).value;
  return functional_value(f, spec) / (norm * norm);
}

Coefficients gauge_normalize(const Coefficients& f) {
  if (f.is_zero()) throw std::invalid_argument("gauge_normalize: zero polynomial");
  std::vector<int> idx(static_cast<std::size_t>(f.size()));
  std::iota(idx.begin(), idx.end(), 1);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return std::abs(f[a]) > std::abs(f[b]); });

  const int k1 = idx[0];
  const int k2 = idx.size() > 1 && std::abs(f[idx[1]]) > 0.0 ? idx[1] : 0;
  double a = 0.0, b = 0.0;
  if (k2 == 0) {
    a = -std::arg(f[k1]);
  } else {
    // a + k1 b = -arg b_{k1},  a + k2 b = -arg b_{k2}
    b = (std::arg(f[k1]) - std::arg(f[k2])) / static_cast<double>(k2 - k1);
    a = -std::arg(f[k1]) - k1 * b;
  }
  Coefficients out = (a == 0.0 && b == 0.0) ? f : f.gauge(a, b);
  out.set(k1, std::abs(f[k1]));
  if (k2 != 0) out.set(k2, std::abs(f[k2]));
  return out;
}

SearchResult search_extremal(const SearchConfig& cfg) {
  cfg.validate();
  const std::vector<Start> starts = start_set(cfg);

  std::vector<Candidate> cands(starts.size());
  std::vector<RestartTrace> trace(starts.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < starts.size(); i = next++) {
      const LocalOutcome out = compass_search(cfg, starts[i].f);
      cands[i] = certify(out.f, cfg);
      trace[i] = {static_cast<int>(i), starts[i].label, cands[i].objective, out.evaluations, out.converged};
    }
  };
  const int nthreads = std::min<int>(cfg.threads, static_cast<int>(starts.size()));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
  }

  // Sequential, order-independent reduction.
  std::size_t best = 0;
  for (std::size_t i = 1; i < cands.size(); ++i) {
    const double diff = cands[i].objective - cands[best].objective;
    if (diff > cfg.tol || (std::abs(diff) <= cfg.tol && lex_magnitudes_less(cands[i].best, cands[best].best)))
      best = i;
  }

  SearchResult res;
  res.n = cfg.n;
  res.t = cfg.t;
  res.best = cands[best].best;
  res.best_norm = cands[best].norm;
  res.objective = cands[best].objective;
  res.marty_residual = marty_residual(res.best, cfg.n);
  for (int k = cfg.n + 1; k <= res.best.size(); ++k) res.tail_mass += std::norm(res.best[k]);
  res.vs_conjectured = res.objective - conjectured_value(cfg.n, cfg.t);
  if (cfg.t == 1.0 && cfg.n >= 2) res.vs_crude = res.objective - crude_bound(cfg.n);
  res.trace = std::move(trace);
  return res;
}

OracleResult brute_force_oracle(int n, double t, double grid_step) {
  if (n != 2 && n != 3) throw std::invalid_argument("brute_force_oracle: n must be 2 or 3");
  if (!(grid_step > 0.0) || grid_step > 1e-2) throw std::invalid_argument("brute_force_oracle: grid_step must lie in (0, 1e-2]");
  const FunctionalSpec spec(n, t);
  const NormOptions opts = NormOptions::coarse_grid(kDefaultRadialTol);
  const long steps = std::lround(1.5 / grid_step);

  OracleResult best;
  best.value = -1.0;
  best.lower_bound_only = n == 3;
  std::vector<double> b(static_cast<std::size_t>(n));
  std::vector<long> idx(static_cast<std::size_t>(n), 0);
  while (true) {
    for (int i = 0; i < n; ++i) b[static_cast<std::size_t>(i)] = static_cast<double>(idx[static_cast<std::size_t>(i)]) * grid_step;
    const Coefficients f = Coefficients::from_real(b);
    if (!f.is_zero()) {
      const double norm = seminorm_radial(f, opts).value;
      const double r = functional_value(f, spec) / (norm * norm);
      if (r > best.value) {
        best.value = r;
        best.argmax = f;
      }
    }
    int pos = 0;
    while (pos < n && ++idx[static_cast<std::size_t>(pos)] > steps) idx[static_cast<std::size_t>(pos++)] = 0;
    if (pos == n) break;
  }
  return best;
}

Perturbation lemma_perturbation(const Coefficients& f, int k, int m, int n) {
  if (!(1 <= k && k < m && m <= n)) throw std::invalid_argument("lemma_perturbation: need 1 <= k < m <= n");
  if (!f.is_nonnegative()) throw std::invalid_argument("lemma_perturbation: coefficients must be real and non-negative");
  const double bk = f[k].real();
  const double bm = f[m].real();
  Coefficients g = f;
  g.set(k, 0.0);
  g.set(m, bm + static_cast<double>(k) / m * bk);
  const double kk = k;
  return {g, 2.0 * kk * bk * bm + kk * kk / m * bk * bk - kk * bk * bk};
}

std::vector<LemmaSlack> lemma_bound_check(const Coefficients& f, int n) {
  if (!f.is_nonnegative()) throw std::invalid_argument("lemma_bound_check: coefficients must be real and non-negative");
  std::vector<LemmaSlack> out;
  for (int k = 1; k < n; ++k) {
    const double bk = f[k].real();
    if (!(bk > 0.0)) continue;
    for (int m = k + 1; m <= n; ++m)
      out.push_back({k, m, (m - k) / (2.0 * m) * bk - f[m].real()});
  }
  return out;
}

double marty_residual(const Coefficients& f, int n) {
  if (n < 1) throw std::invalid_argument("marty_residual: n must be >= 1");
  return std::abs(static_cast<double>(n) * (n + 1.0) * f[n + 1] * std::conj(f[n]));
}

}  // namespace bloch
