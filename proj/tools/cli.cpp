#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <stdexcept>

#include <CLI11.hpp>

#include "bloch/constructions.hpp"
#include "bloch/functionals.hpp"
#include "bloch/io.hpp"
#include "bloch/norm.hpp"
#include "bloch/search.hpp"
#include "bloch/verify.hpp"

#ifndef BLOCH_VERSION
#define BLOCH_VERSION "0.0.0"
#endif

namespace bloch::cli {

namespace {

struct Outcome {
  json payload;
  int code = kExitOk;
  std::uint64_t seed = 0;
};

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json nullable(std::optional<double> v) { return v ? json(*v) : json(nullptr); }

struct BnRow {
  long n;
  double bn, nbn2;
  std::optional<double> crude, ratio;
};

std::vector<BnRow> bn_rows(long n_max) {
  std::vector<BnRow> rows;
  rows.reserve(static_cast<std::size_t>(n_max));
  for (long n = 1; n <= n_max; ++n) {
    const double b = coefficient_bound_Bn(n);
    BnRow r{n, b, static_cast<double>(n) * b * b, std::nullopt, std::nullopt};
    if (n >= 2) {
      r.crude = crude_bound(n);
      r.ratio = ratio_to_conjectured(n);
    }
    rows.push_back(r);
  }
  return rows;
}

void write_bn_csv(const std::vector<BnRow>& rows, std::ostream& out) {
  out << "n,B_n,n_Bn2,crude_bound,ratio\n";
  for (const BnRow& r : rows) {
    out << r.n << ',' << format_double(r.bn) << ',' << format_double(r.nbn2) << ','
        << (r.crude ? format_double(*r.crude) : "") << ',' << (r.ratio ? format_double(*r.ratio) : "") << '\n';
  }
}

void write_bn_text(const std::vector<BnRow>& rows, std::ostream& out) {
  out << std::left << std::setw(8) << "n" << std::setw(24) << "B_n" << std::setw(24) << "n*B_n^2" << std::setw(24)
      << "crude_bound" << "ratio\n";
  for (const BnRow& r : rows) {
    out << std::setw(8) << r.n << std::setw(24) << format_double(r.bn) << std::setw(24) << format_double(r.nbn2)
        << std::setw(24) << (r.crude ? format_double(*r.crude) : "-") << (r.ratio ? format_double(*r.ratio) : "-")
        << '\n';
  }
}

json bn_payload(const std::vector<BnRow>& rows) {
  json arr = json::array();
  for (const BnRow& r : rows)
    arr.push_back({{"n", r.n}, {"B_n", r.bn}, {"n_Bn2", r.nbn2}, {"crude_bound", nullable(r.crude)},
                   {"ratio", nullable(r.ratio)}});
  return json{{"rows", arr}};
}

json verify_payload(Suite suite, const std::vector<CheckResult>& checks, bool& all_passed) {
  all_passed = true;
  json arr = json::array();
  for (const CheckResult& c : checks) {
    all_passed = all_passed && c.passed;
    arr.push_back({{"suite", c.suite},
                   {"name", c.name},
                   {"passed", c.passed},
                   {"margin", std::isfinite(c.margin) ? json(c.margin) : json(nullptr)},
                   {"detail", c.detail}});
  }
  return json{{"suite", std::string(to_string(suite))}, {"passed", all_passed}, {"checks", arr}};
}

// Smallest n in [2, n_max] whose construction has certified norm <= 1.
std::optional<CounterexampleReport> scan_min_failing(double t, long n_max) {
  for (long n = 2; n <= n_max; ++n) {
    CounterexampleReport r = counterexample_verify(t, n);
    if (r.norm_ok) return r;
  }
  return std::nullopt;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bloch-space truncated area functionals: bounds, norms and extremal search"};
  app.require_subcommand(1);
  app.set_version_flag("--version", BLOCH_VERSION);

  long n_max = 10;
  std::string format = "json";
  auto* bn = app.add_subcommand("bn", "Table of B_n, n B_n^2, crude bound and their ratio");
  bn->add_option("--n-max", n_max, "Largest n")->required()->check(CLI::Range(1L, 10000000L));
  bn->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));

  std::string coeffs_path;
  std::string method = "auto";
  std::optional<double> tol;
  auto* norm = app.add_subcommand("norm", "Bloch seminorm of a polynomial");
  norm->add_option("--coeffs", coeffs_path, "Coefficient file")->required();
  norm->add_option("--method", method, "Norm path")->check(CLI::IsMember({"auto", "general", "radial"}));
  norm->add_option("--tol", tol, "Relative tolerance")->check(CLI::PositiveNumber);

  int fn_n = 0;
  double fn_t = 1.0;
  auto* functional = app.add_subcommand("functional", "Weighted truncated area functional");
  functional->add_option("--coeffs", coeffs_path, "Coefficient file")->required();
  functional->add_option("--n", fn_n, "Truncation order")->required()->check(CLI::Range(1, 1000000));
  functional->add_option("--t", fn_t, "Weight exponent")->required()->check(CLI::NonNegativeNumber);

  SearchConfig scfg;
  std::string out_path;
  auto* search = app.add_subcommand("search", "Multi-start search for the extremal ratio");
  search->add_option("--n", scfg.n, "Truncation order")->required()->check(CLI::Range(1, 64));
  search->add_option("--t", scfg.t, "Weight exponent")->required()->check(CLI::NonNegativeNumber);
  search->add_option("--degree", scfg.degree_cap, "Degree cap of the trial polynomials")->check(CLI::Range(1, 128));
  search->add_option("--restarts", scfg.restarts, "Number of restarts")->check(CLI::Range(1, 100000));
  search->add_flag("--nonneg", scfg.nonneg, "Restrict to non-negative real coefficients");
  search->add_option("--seed", scfg.seed, "Random seed");
  search->add_option("--tol", scfg.tol, "Certification tolerance")->check(CLI::PositiveNumber);
  search->add_option("--threads", scfg.threads, "Worker threads")->check(CLI::Range(1, 256));
  search->add_option("--out", out_path, "Write the report to this file instead of stdout");

  double cx_t = 0.0;
  std::optional<long> cx_n;
  bool scan = false;
  auto* counter = app.add_subcommand("counterexample", "Two-term functions beating n^t B_n^2 for t < 1");
  counter->add_option("--t", cx_t, "Weight exponent, 0 <= t < 1")->required()->check(CLI::Range(0.0, 1.0));
  counter->add_option("--n", cx_n, "Degree (default: the threshold N(t))")->check(CLI::Range(2L, 100000000L));
  counter->add_flag("--scan-min-failing", scan, "Find the smallest n whose construction has norm <= 1");

  int ex_n = 2;
  double ex_eps = 0.1;
  auto* ex42 = app.add_subcommand("example42", "Norm chain showing the unit ball is not solid");
  ex42->add_option("--n", ex_n, "Degree")->required()->check(CLI::Range(2, 100000));
  ex42->add_option("--epsilon", ex_eps, "Perturbation size in (0, 0.2]")->required();

  std::string suite_name = "all";
  std::uint64_t verify_seed = 0;
  auto* verify = app.add_subcommand("verify", "Run the property suites");
  verify->add_option("--suite", suite_name, "Suite to run")
      ->check(CLI::IsMember({"all", "lemma", "prop41", "example42", "parseval", "counterexample", "marty"}));
  verify->add_option("--seed", verify_seed, "Sampling seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  const auto start = std::chrono::steady_clock::now();
  Outcome result;
  json params = json::object();
  std::string command;
  try {
    if (*bn) {
      command = "bn";
      params = {{"n_max", n_max}, {"format", format}};
      const auto rows = bn_rows(n_max);
      if (format == "csv") {
        write_bn_csv(rows, out);
        return kExitOk;
      }
      if (format == "text") {
        write_bn_text(rows, out);
        return kExitOk;
      }
      result.payload = bn_payload(rows);
    } else if (*norm) {
      command = "norm";
      const Coefficients f = read_coefficients(coeffs_path);
      params = {{"coeffs", coeffs_path}, {"method", method}, {"tol", nullable(tol)}};
      NormResult r;
      if (method == "general") {
        r = seminorm_general(f, tol.value_or(kDefaultGeneralTol));
      } else if (method == "radial") {
        r = seminorm_radial(f, tol.value_or(kDefaultRadialTol));
      } else {
        r = tol ? seminorm(f, *tol) : seminorm(f);
      }
      result.payload = to_json(r);
      result.payload["degree"] = f.degree();
    } else if (*functional) {
      command = "functional";
      const Coefficients f = read_coefficients(coeffs_path);
      params = {{"coeffs", coeffs_path}, {"n", fn_n}, {"t", fn_t}};
      const FunctionalSpec spec(fn_n, fn_t);
      result.payload = {{"n", fn_n},
                        {"t", fn_t},
                        {"value", functional_value(f, spec)},
                        {"conjectured_value", conjectured_value(fn_n, fn_t)}};
    } else if (*search) {
      command = "search";
      params = {{"n", scfg.n},         {"t", scfg.t},        {"degree", scfg.degree()}, {"restarts", scfg.restarts},
                {"nonneg", scfg.nonneg}, {"seed", scfg.seed}, {"tol", scfg.tol}};
      result.seed = scfg.seed;
      const SearchResult r = search_extremal(scfg);
      result.payload = to_json(r);
      if (!(std::abs(r.best_norm.value - 1.0) <= scfg.tol) || !std::isfinite(r.objective)) result.code = kExitViolation;
    } else if (*counter) {
      command = "counterexample";
      if (cx_t >= 1.0) throw std::invalid_argument("--t must be < 1");
      const long threshold = threshold_N(cx_t);
      params = {{"t", cx_t}, {"n", cx_n ? json(*cx_n) : json(nullptr)}, {"scan_min_failing", scan}};
      if (scan) {
        const long limit = cx_n.value_or(threshold);
        const auto found = scan_min_failing(cx_t, limit);
        result.payload = found ? to_json(*found) : to_json(counterexample_verify(cx_t, limit));
        result.payload["min_failing_n"] = found ? json(found->n) : json(nullptr);
        result.payload["scan_limit"] = limit;
        result.payload["min_failing_basis"] = "empirical";
      } else {
        const CounterexampleReport r = counterexample_verify(cx_t, cx_n.value_or(threshold));
        result.payload = to_json(r);
        const double expect = 1.0 - std::pow(static_cast<double>(r.n), -0.5 * (1.0 - cx_t));
        if (std::abs(r.functional_margin - expect) > 1e-12 || (r.n >= threshold && !r.norm_ok))
          result.code = kExitViolation;
      }
    } else if (*ex42) {
      command = "example42";
      params = {{"n", ex_n}, {"epsilon", ex_eps}};
      const Example42Report r = example42_verify(ex_n, ex_eps);
      result.payload = to_json(r);
      if (!r.chain_ok) result.code = kExitViolation;
    } else if (*verify) {
      command = "verify";
      const Suite suite = *parse_suite(suite_name);
      params = {{"suite", suite_name}, {"seed", verify_seed}};
      result.seed = verify_seed;
      bool passed = false;
      result.payload = verify_payload(suite, verify_suites(suite, verify_seed), passed);
      if (!passed) result.code = kExitViolation;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << " (pass --n explicitly)\n";
    return kExitInvalid;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitViolation;
  }

  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const json envelope{{"tool_version", BLOCH_VERSION},
                      {"seed", result.seed},
                      {"timestamp", utc_timestamp()},
                      {"command", {{"name", command}, {"parameters", params}}},
                      {"payload", result.payload},
                      {"wall_time_seconds", wall}};
  if (!out_path.empty()) {
    std::ofstream file(out_path);
    if (!file) {
      err << "error: cannot write " << out_path << '\n';
      return kExitInvalid;
    }
    file << envelope.dump(2) << '\n';
  } else {
    out << envelope.dump(2) << '\n';
  }
  return result.code;
}

}  // namespace bloch::cli
