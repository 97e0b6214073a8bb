#include "bloch/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <stdexcept>
#include <utility>

namespace bloch {

namespace {

json point(cplx z) { return json::array({z.real(), z.imag()}); }

// JSON has no encoding for non-finite numbers; keep them visible as null.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

enum class Type { number, integer, boolean, string, array, object };

bool has_type(const json& v, Type t) {
  switch (t) {
    case Type::number: return v.is_number();
    case Type::integer: return v.is_number_integer();
    case Type::boolean: return v.is_boolean();
    case Type::string: return v.is_string();
    case Type::array: return v.is_array();
    case Type::object: return v.is_object();
  }
  return false;
}

using FieldList = std::initializer_list<std::pair<const char*, Type>>;

void require(const json& obj, FieldList fields, const std::string& where, std::vector<std::string>& errors) {
  if (!obj.is_object()) {
    errors.push_back(where + ": expected an object");
    return;
  }
  for (const auto& [name, type] : fields) {
    if (!obj.contains(name)) {
      errors.push_back(where + ": missing field '" + name + "'");
    } else if (!has_type(obj.at(name), type)) {
      errors.push_back(where + ": field '" + name + "' has the wrong type");
    }
  }
}

void require_point_list(const json& arr, const std::string& where, std::vector<std::string>& errors) {
  if (!arr.is_array()) return;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json& p = arr[i];
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
      errors.push_back(where + "[" + std::to_string(i) + "]: expected [re, im]");
  }
}

void validate_norm(const json& j, const std::string& where, std::vector<std::string>& errors) {
  require(j, {{"value", Type::number}, {"witness", Type::array}, {"method", Type::string}, {"error_bound", Type::number}},
          where, errors);
  if (j.is_object() && j.contains("witness")) {
    const json w = json::array({j["witness"]});
    require_point_list(w, where + ".witness", errors);
  }
  if (j.is_object() && j.contains("method") && j["method"].is_string()) {
    const auto m = j["method"].get<std::string>();
    if (m != "general" && m != "radial") errors.push_back(where + ".method: unknown method '" + m + "'");
  }
}

}  // namespace

json coefficients_to_json(const Coefficients& f) {
  json arr = json::array();
  for (cplx b : f.values()) arr.push_back(point(b));
  return json{{"coeffs", arr}};
}

Coefficients coefficients_from_json(const json& j) {
  if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array())
    throw std::invalid_argument("coefficient document must be an object with a 'coeffs' array");
  const json& arr = j["coeffs"];
  if (arr.empty()) throw std::invalid_argument("'coeffs' must list at least one coefficient");
  std::vector<cplx> b;
  b.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json& p = arr[i];
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
      throw std::invalid_argument("coeffs[" + std::to_string(i) + "] must be [re, im]");
    b.emplace_back(p[0].get<double>(), p[1].get<double>());
  }
  return Coefficients(std::move(b));
}

Coefficients read_coefficients(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open coefficient file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("cannot parse " + path.string() + ": " + e.what());
  }
  return coefficients_from_json(j);
}

json to_json(const NormResult& r) {
  return json{{"value", number(r.value)},
              {"witness", point(r.witness)},
              {"method", std::string(to_string(r.method))},
              {"error_bound", number(r.error_bound)},
              {"converged", r.converged}};
}

json to_json(const SearchResult& r) {
  json trace = json::array();
  for (const RestartTrace& t : r.trace) {
    trace.push_back({{"index", t.index},
                     {"start", t.start},
                     {"objective", number(t.objective)},
                     {"evaluations", t.evaluations},
                     {"converged", t.converged}});
  }
  return json{{"n", r.n},
              {"t", r.t},
              {"objective", number(r.objective)},
              {"coeffs", coefficients_to_json(r.best)["coeffs"]},
              {"norm", to_json(r.best_norm)},
              {"marty_residual", number(r.marty_residual)},
              {"tail_mass", number(r.tail_mass)},
              {"abs_b_n", std::abs(r.best[r.n])},
              {"vs_conjectured", number(r.vs_conjectured)},
              {"vs_crude", r.vs_crude ? number(*r.vs_crude) : json(nullptr)},
              {"trace", trace}};
}

json to_json(const CounterexampleReport& r) {
  return json{{"t", r.t},
              {"epsilon", r.epsilon},
              {"threshold_N", r.threshold_N},
              {"n", r.n},
              {"b_n", r.b_n},
              {"norm", to_json(r.norm)},
              {"functional_margin", number(r.functional_margin)},
              {"norm_ok", r.norm_ok}};
}

json to_json(const Example42Report& r) {
  return json{{"n", r.n},
              {"epsilon", r.epsilon},
              {"norm_f", to_json(r.norm_f)},
              {"norm_p", to_json(r.norm_p)},
              {"norm_F", to_json(r.norm_F)},
              {"margin_Fp", r.margin_Fp},
              {"margin_pf", r.margin_pf},
              {"chain_ok", r.chain_ok}};
}

std::vector<std::string> validate_payload(PayloadKind kind, const json& p) {
  std::vector<std::string> errors;
  switch (kind) {
    case PayloadKind::norm:
      validate_norm(p, "norm", errors);
      break;
    case PayloadKind::search:
      require(p,
              {{"n", Type::integer},
               {"t", Type::number},
               {"objective", Type::number},
               {"coeffs", Type::array},
               {"norm", Type::object},
               {"marty_residual", Type::number},
               {"tail_mass", Type::number},
               {"vs_conjectured", Type::number},
               {"trace", Type::array}},
              "search", errors);
      if (p.is_object() && p.contains("coeffs")) require_point_list(p["coeffs"], "search.coeffs", errors);
      if (p.is_object() && p.contains("norm")) validate_norm(p["norm"], "search.norm", errors);
      if (p.is_object() && !p.contains("vs_crude")) errors.push_back("search: missing field 'vs_crude'");
      if (p.is_object() && p.contains("trace") && p["trace"].is_array()) {
        for (const json& t : p["trace"])
          require(t, {{"index", Type::integer}, {"start", Type::string}, {"objective", Type::number},
                      {"evaluations", Type::integer}, {"converged", Type::boolean}},
                  "search.trace", errors);
      }
      break;
    case PayloadKind::counterexample:
      require(p,
              {{"t", Type::number},
               {"epsilon", Type::number},
               {"threshold_N", Type::integer},
               {"n", Type::integer},
               {"b_n", Type::number},
               {"norm", Type::object},
               {"functional_margin", Type::number},
               {"norm_ok", Type::boolean}},
              "counterexample", errors);
      if (p.is_object() && p.contains("norm")) validate_norm(p["norm"], "counterexample.norm", errors);
      break;
    case PayloadKind::example42:
      require(p,
              {{"n", Type::integer},
               {"epsilon", Type::number},
               {"norm_f", Type::object},
               {"norm_p", Type::object},
               {"norm_F", Type::object},
               {"chain_ok", Type::boolean}},
              "example42", errors);
      for (const char* key : {"norm_f", "norm_p", "norm_F"})
        if (p.is_object() && p.contains(key)) validate_norm(p[key], std::string("example42.") + key, errors);
      break;
    case PayloadKind::bn:
      require(p, {{"rows", Type::array}}, "bn", errors);
      if (p.is_object() && p.contains("rows") && p["rows"].is_array()) {
        for (const json& row : p["rows"])
          require(row, {{"n", Type::integer}, {"B_n", Type::number}, {"n_Bn2", Type::number}}, "bn.rows", errors);
      }
      break;
    case PayloadKind::functional:
      require(p, {{"n", Type::integer}, {"t", Type::number}, {"value", Type::number}}, "functional", errors);
      break;
    case PayloadKind::verify:
      require(p, {{"suite", Type::string}, {"passed", Type::boolean}, {"checks", Type::array}}, "verify", errors);
      if (p.is_object() && p.contains("checks") && p["checks"].is_array()) {
        for (const json& c : p["checks"])
          require(c, {{"suite", Type::string}, {"name", Type::string}, {"passed", Type::boolean}}, "verify.checks",
                  errors);
      }
      break;
  }
  return errors;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

}  // namespace bloch
