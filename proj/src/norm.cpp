#include "bloch/norm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bloch/golden.hpp"

namespace bloch {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kMaxRadius = 1.0 - 1e-12;

struct Jet {
  cplx d1, d2, d3;  // f', f'', f'''
};

// Evaluates f' (and optionally f'', f''') either by Horner on the dense
// coefficients or term by term when the polynomial is sparse and of high
// degree (e.g. z + b z^n with n in the tens of thousands).
class DerivativeEvaluator {
 public:
  explicit DerivativeEvaluator(const Coefficients& f) : degree_(f.degree()) {
    int nnz = 0;
    for (int k = 1; k <= degree_; ++k)
      if (f[k] != cplx{}) ++nnz;
    sparse_ = degree_ > 32 && 8 * nnz < degree_;
    if (sparse_) {
      for (int k = 1; k <= degree_; ++k)
        if (f[k] != cplx{}) terms_.emplace_back(k, f[k]);
    } else {
      dense_.resize(static_cast<std::size_t>(std::max(degree_, 1)));
      for (int k = 1; k <= degree_; ++k) dense_[static_cast<std::size_t>(k - 1)] = static_cast<double>(k) * f[k];
    }
  }

  int degree() const { return degree_; }

  cplx first(cplx z) const {
    if (!sparse_) {
      cplx acc{};
      for (auto it = dense_.rbegin(); it != dense_.rend(); ++it) acc = acc * z + *it;
      return acc;
    }
    cplx acc{};
    const double r = std::abs(z);
    const double arg = std::arg(z);
    for (const auto& [k, b] : terms_) acc += static_cast<double>(k) * b * power(r, arg, k - 1);
    return acc;
  }

  // f'(r) for real r >= 0.
  double first_radial(double r) const {
    if (!sparse_) {
      cplx acc{};
      for (auto it = dense_.rbegin(); it != dense_.rend(); ++it) acc = acc * r + *it;
      return acc.real();
    }
    double acc = 0.0;
    for (const auto& [k, b] : terms_) acc += static_cast<double>(k) * b.real() * (k == 1 ? 1.0 : std::pow(r, k - 1));
    return acc;
  }

  Jet jet(cplx z) const {
    Jet j{};
    if (!sparse_) {
      // Simultaneous Horner for p, p', p'' with p = f'.
      for (auto it = dense_.rbegin(); it != dense_.rend(); ++it) {
        j.d3 = j.d3 * z + 2.0 * j.d2;
        j.d2 = j.d2 * z + j.d1;
        j.d1 = j.d1 * z + *it;
      }
      return j;
    }
    const double r = std::abs(z);
    const double arg = std::arg(z);
    for (const auto& [k, b] : terms_) {
      const double kk = k;
      j.d1 += kk * b * power(r, arg, k - 1);
      if (k >= 2) j.d2 += kk * (kk - 1.0) * b * power(r, arg, k - 2);
      if (k >= 3) j.d3 += kk * (kk - 1.0) * (kk - 2.0) * b * power(r, arg, k - 3);
    }
    return j;
  }

 private:
  static cplx power(double r, double arg, int m) {
    if (m == 0) return {1.0, 0.0};
    if (r == 0.0) return {};
    return std::polar(std::pow(r, m), arg * m);
  }

  int degree_;
  bool sparse_ = false;
  std::vector<cplx> dense_;
  std::vector<std::pair<int, cplx>> terms_;
};

std::vector<double> radial_samples(const Coefficients& f, const NormOptions& opts) {
  std::vector<double> rs;
  rs.reserve(static_cast<std::size_t>(opts.radial_uniform + opts.radial_edge) + 16);
  for (int i = 0; i < opts.radial_uniform; ++i) rs.push_back(static_cast<double>(i) / opts.radial_uniform);
  for (int i = 0; i < opts.radial_edge; ++i) {
    const double u = 0.3 + (12.0 - 0.3) * i / std::max(1, opts.radial_edge - 1);
    rs.push_back(1.0 - std::pow(10.0, -u));
  }
  // Monomial peaks: k b_k r^{k-1} (1 - r^2) is maximal at sqrt((k-1)/(k+1)).
  for (int k = 2; k <= f.degree(); ++k)
    if (f[k] != cplx{}) rs.push_back(std::sqrt((k - 1.0) / (k + 1.0)));
  std::sort(rs.begin(), rs.end());
  rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
  while (!rs.empty() && rs.back() > kMaxRadius) rs.pop_back();
  return rs;
}

double weight(double r2) { return 1.0 - r2; }

struct Candidate {
  double value;
  double r;
  double theta;
};

bool candidate_before(const Candidate& a, const Candidate& b) {
  if (a.value != b.value) return a.value > b.value;
  if (a.r != b.r) return a.r < b.r;
  return a.theta < b.theta;
}

// Picks the better of two refined maxima, breaking near-ties by the
// smaller radius and then the smaller angle.
bool better_witness(const Candidate& a, const Candidate& b) {
  const double scale = std::max(a.value, b.value);
  if (std::abs(a.value - b.value) > 1e-14 * scale) return a.value > b.value;
  if (std::abs(a.r - b.r) > 1e-12) return a.r < b.r;
  return a.theta < b.theta;
}

double normalize_angle(double t) {
  t = std::fmod(t, 2.0 * std::numbers::pi);
  if (t < 0.0) t += 2.0 * std::numbers::pi;
  return t;
}

struct NewtonOutcome {
  cplx z;
  double value;
  double predicted_gain;  // remaining log-space ascent predicted by the model
  bool converged;
};

// Modified Newton ascent on log((1 - |z|^2) |f'(z)|) in Cartesian
// coordinates. Indefinite curvature directions are flipped so every step is
// an ascent direction; a backtracking line search guards the iteration.
NewtonOutcome newton_refine(const DerivativeEvaluator& d, cplx z, int max_iter) {
  auto log_objective = [&](cplx w) {
    const double s = std::norm(w);
    if (s >= kMaxRadius * kMaxRadius) return -std::numeric_limits<double>::infinity();
    const double m = std::abs(d.first(w));
    if (m == 0.0) return -std::numeric_limits<double>::infinity();
    return std::log1p(-s) + std::log(m);
  };

  double phi = log_objective(z);
  double predicted = std::numeric_limits<double>::infinity();
  bool converged = false;
  for (int it = 0; it < max_iter && std::isfinite(phi); ++it) {
    const Jet j = d.jet(z);
    const cplx g = j.d2 / j.d1;
    const cplx gp = j.d3 / j.d1 - g * g;
    const double x = z.real();
    const double y = z.imag();
    const double q = 1.0 - std::norm(z);

    const double gx = g.real() - 2.0 * x / q;
    const double gy = -g.imag() - 2.0 * y / q;
    const double hxx = gp.real() - 2.0 / q - 4.0 * x * x / (q * q);
    const double hyy = -gp.real() - 2.0 / q - 4.0 * y * y / (q * q);
    const double hxy = -gp.imag() - 4.0 * x * y / (q * q);

    // Symmetric 2x2 eigendecomposition.
    const double mean = 0.5 * (hxx + hyy);
    const double diff = 0.5 * (hxx - hyy);
    const double rad = std::hypot(diff, hxy);
    const double l1 = mean + rad;
    const double l2 = mean - rad;
    double v1x = 1.0, v1y = 0.0;
    if (rad > 0.0) {
      const double ang = 0.5 * std::atan2(hxy, diff);
      v1x = std::cos(ang);
      v1y = std::sin(ang);
    }
    const double v2x = -v1y, v2y = v1x;
    const double floor = 1e-10 * std::max({std::abs(l1), std::abs(l2), 1.0});
    const double m1 = std::max(std::abs(l1), floor);
    const double m2 = std::max(std::abs(l2), floor);
    const double c1 = v1x * gx + v1y * gy;
    const double c2 = v2x * gx + v2y * gy;
    predicted = 0.5 * (c1 * c1 / m1 + c2 * c2 / m2);
    if (predicted < 1e-18) {
      converged = true;
      break;
    }
    const cplx step{c1 / m1 * v1x + c2 / m2 * v2x, c1 / m1 * v1y + c2 / m2 * v2y};

    double alpha = 1.0;
    bool moved = false;
    for (int ls = 0; ls < 60; ++ls, alpha *= 0.5) {
      const cplx trial = z + alpha * step;
      const double phi_trial = log_objective(trial);
      if (phi_trial >= phi) {
        z = trial;
        phi = phi_trial;
        moved = true;
        break;
      }
    }
    if (!moved) {
      // No representable ascent left along the model direction.
      converged = predicted < 1e-12;
      break;
    }
  }
  const double value = std::isfinite(phi) ? std::exp(phi) : 0.0;
  return {z, value, std::isfinite(predicted) ? predicted : 0.0, converged};
}

NormResult zero_result(NormMethod m) {
  NormResult r;
  r.method = m;
  return r;
}

}  // namespace

std::string_view to_string(NormMethod m) { return m == NormMethod::general ? "general" : "radial"; }

NormOptions NormOptions::coarse_grid(double tol) {
  NormOptions o;
  o.tol = tol;
  o.radial_uniform = 48;
  o.radial_edge = 16;
  o.angular_floor = 24;
  o.angular_factor = 4;
  o.max_candidates = 6;
  return o;
}

double weighted_derivative(const Coefficients& f, cplx z) {
  return (1.0 - std::norm(z)) * std::abs(eval(derivative(f), z));
}

NormResult seminorm_general(const Coefficients& f, const NormOptions& opts) {
  if (!(opts.tol > 0.0)) throw std::invalid_argument("seminorm_general: tol must be > 0");
  if (f.is_zero()) return zero_result(NormMethod::general);

  const DerivativeEvaluator d(f);
  const std::vector<double> rs = radial_samples(f, opts);
  const int deg_fp = std::max(d.degree() - 1, 0);
  const int n_theta = std::max(opts.angular_floor, opts.angular_factor * deg_fp);
  const std::size_t n_r = rs.size();
  const auto n_t = static_cast<std::size_t>(n_theta);

  std::vector<cplx> unit(n_t);
  for (std::size_t j = 0; j < n_t; ++j) unit[j] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / n_theta);

  std::vector<double> grid(n_r * n_t);
  for (std::size_t i = 0; i < n_r; ++i) {
    const double w = weight(rs[i] * rs[i]);
    for (std::size_t j = 0; j < n_t; ++j) {
      // r = 0 is a single point; copy it across the row.
      grid[i * n_t + j] = (i == 0 && rs[0] == 0.0 && j > 0) ? grid[0] : w * std::abs(d.first(rs[i] * unit[j]));
    }
  }

  std::vector<Candidate> cands;
  double grid_best = 0.0;
  for (std::size_t i = 0; i < n_r; ++i) {
    for (std::size_t j = 0; j < n_t; ++j) {
      const double v = grid[i * n_t + j];
      grid_best = std::max(grid_best, v);
      bool is_max = v > 0.0;
      for (int di = -1; di <= 1 && is_max; ++di) {
        const auto ii = static_cast<long>(i) + di;
        if (ii < 0 || ii >= static_cast<long>(n_r)) continue;
        for (int dj = -1; dj <= 1; ++dj) {
          if (di == 0 && dj == 0) continue;
          const std::size_t jj = (j + n_t + static_cast<std::size_t>(dj + 1) - 1) % n_t;
          if (grid[static_cast<std::size_t>(ii) * n_t + jj] > v) {
            is_max = false;
            break;
          }
        }
      }
      if (is_max) cands.push_back({v, rs[i], 2.0 * std::numbers::pi * static_cast<double>(j) / n_theta});
      if (i == 0 && rs[0] == 0.0) break;  // one representative for the origin
    }
  }
  std::sort(cands.begin(), cands.end(), candidate_before);
  std::erase_if(cands, [&](const Candidate& c) { return c.value < 0.5 * grid_best; });
  if (static_cast<int>(cands.size()) > opts.max_candidates) cands.resize(static_cast<std::size_t>(opts.max_candidates));

  Candidate best{0.0, 0.0, 0.0};
  double best_gain = 0.0;
  bool best_converged = false;
  bool have = false;
  for (const Candidate& c : cands) {
    const NewtonOutcome out = newton_refine(d, std::polar(c.r, c.theta), opts.max_newton_iter);
    Candidate refined{out.value, std::abs(out.z), normalize_angle(std::arg(out.z))};
    if (refined.r == 0.0) refined.theta = 0.0;
    // Keep the grid point if refinement somehow lost ground.
    if (refined.value < c.value) refined = c;
    if (!have || better_witness(refined, best)) {
      best = refined;
      best_gain = out.predicted_gain;
      best_converged = out.converged;
      have = true;
    }
  }

  NormResult res;
  res.method = NormMethod::general;
  res.value = best.value;
  res.witness = std::polar(best.r, best.theta);
  const double rounding = 8.0 * kEps * (d.degree() + 1) * best.value;
  res.error_bound = best.value * std::expm1(std::min(best_gain, 1.0)) + rounding;
  res.converged = best_converged && res.error_bound <= opts.tol;
  return res;
}

NormResult seminorm_general(const Coefficients& f, double tol) {
  NormOptions o;
  o.tol = tol;
  return seminorm_general(f, o);
}

NormResult seminorm_radial(const Coefficients& f, const NormOptions& opts) {
  if (!(opts.tol > 0.0)) throw std::invalid_argument("seminorm_radial: tol must be > 0");
  if (!f.is_nonnegative())
    throw std::invalid_argument("seminorm_radial: coefficients must be real and non-negative");
  if (f.is_zero()) return zero_result(NormMethod::radial);

  const DerivativeEvaluator d(f);
  auto G = [&](double r) { return weight(r * r) * d.first_radial(r); };
  const std::vector<double> rs = radial_samples(f, opts);
  std::vector<double> vals(rs.size());
  for (std::size_t i = 0; i < rs.size(); ++i) vals[i] = G(rs[i]);
  const double grid_best = *std::max_element(vals.begin(), vals.end());

  std::vector<std::size_t> peaks;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const bool left_ok = i == 0 || vals[i - 1] <= vals[i];
    const bool right_ok = i + 1 == rs.size() || vals[i + 1] <= vals[i];
    if (left_ok && right_ok && vals[i] >= 0.5 * grid_best) peaks.push_back(i);
  }
  std::sort(peaks.begin(), peaks.end(), [&](std::size_t a, std::size_t b) {
    return vals[a] != vals[b] ? vals[a] > vals[b] : a < b;
  });
  if (static_cast<int>(peaks.size()) > opts.max_candidates) peaks.resize(static_cast<std::size_t>(opts.max_candidates));

  double best_r = 0.0, best_v = -1.0, best_err = 0.0;
  bool best_conv = false;
  for (std::size_t i : peaks) {
    const double lo = i == 0 ? rs[0] : rs[i - 1];
    const double hi = i + 1 == rs.size() ? kMaxRadius : rs[i + 1];
    const GoldenResult g = golden_max(G, lo, hi);
    double r = g.x, v = g.value;
    if (vals[i] > v) {
      r = rs[i];
      v = vals[i];
    }
    // The bracket ends are the nearest points the search could not rule
    // out; their spread around v bounds the residual error.
    const double err = std::max({std::abs(G(g.lo) - v), std::abs(G(g.hi) - v), 0.0});
    const bool better = v > best_v + 1e-14 * std::max(v, 1e-300) ||
                        (std::abs(v - best_v) <= 1e-14 * std::max(v, 1e-300) && r < best_r);
    if (better) {
      best_r = r;
      best_v = v;
      best_err = err;
      best_conv = g.converged;
    }
  }

  NormResult res;
  res.method = NormMethod::radial;
  res.value = best_v;
  res.witness = cplx{best_r, 0.0};
  res.error_bound = best_err + 8.0 * kEps * (d.degree() + 1) * best_v;
  res.converged = best_conv && res.error_bound <= opts.tol;
  return res;
}

NormResult seminorm_radial(const Coefficients& f, double tol) {
  NormOptions o;
  o.tol = tol;
  return seminorm_radial(f, o);
}

NormResult seminorm(const Coefficients& f, double tol) {
  return f.is_nonnegative() ? seminorm_radial(f, tol) : seminorm_general(f, tol);
}

namespace {

// ln(B_n) - ln(e/2) = -sum_{k>=1} x^{2k} / (2k (2k+1)), x = 1/n.
double log_ratio_series(long n) {
  const double x = 1.0 / static_cast<double>(n);
  const double x2 = x * x;
  double term = x2;
  double sum = 0.0;
  for (int k = 1; k < 200; ++k) {
    const double add = term / (2.0 * k * (2.0 * k + 1.0));
    sum += add;
    if (add < 1e-18 * sum) break;
    term *= x2;
  }
  return -sum;
}

}  // namespace

double log_coefficient_bound_Bn(long n) {
  if (n < 1) throw std::invalid_argument("coefficient_bound_Bn: n must be >= 1");
  if (n == 1) return 0.0;
  if (n <= 1000) {
    const double nn = static_cast<double>(n);
    return std::log((nn + 1.0) / (2.0 * nn)) + 0.5 * (nn - 1.0) * std::log1p(2.0 / (nn - 1.0));
  }
  return 1.0 - std::numbers::ln2 + log_ratio_series(n);
}

double coefficient_bound_Bn(long n) {
  if (n < 1) throw std::invalid_argument("coefficient_bound_Bn: n must be >= 1");
  if (n == 1) return 1.0;
  if (n <= 1000) {
    const double nn = static_cast<double>(n);
    return (nn + 1.0) / (2.0 * nn) * std::exp(0.5 * (nn - 1.0) * std::log1p(2.0 / (nn - 1.0)));
  }
  return 0.5 * std::numbers::e * std::exp(log_ratio_series(n));
}

double coefficient_bound_deficit(long n) {
  if (n < 1) throw std::invalid_argument("coefficient_bound_deficit: n must be >= 1");
  if (n == 1) return 0.5 * std::numbers::e - 1.0;
  return -0.5 * std::numbers::e * std::expm1(log_ratio_series(n));
}

double attainment_radius(long n) {
  if (n < 2) throw std::invalid_argument("attainment_radius: n must be >= 2");
  const double nn = static_cast<double>(n);
  return std::sqrt((nn - 1.0) / (nn + 1.0));
}

}  // namespace bloch
