#pragma once

// JSON encodings shared by the CLI and the tests.
//
// Coefficient files: {"coeffs": [[re, im], ...]} listing b_1..b_D.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bloch/constructions.hpp"
#include "bloch/norm.hpp"
#include "bloch/poly.hpp"
#include "bloch/search.hpp"

namespace bloch {

using json = nlohmann::json;

json coefficients_to_json(const Coefficients& f);
/// Throws std::invalid_argument on a malformed document.
Coefficients coefficients_from_json(const json& j);
Coefficients read_coefficients(const std::filesystem::path& path);

json to_json(const NormResult& r);
json to_json(const SearchResult& r);
json to_json(const CounterexampleReport& r);
json to_json(const Example42Report& r);

/// Payload kinds understood by validate_payload.
enum class PayloadKind { norm, search, counterexample, example42, bn, functional, verify };

/// Structural check of an emitted payload: required fields present with the
/// right JSON types. Returns one message per problem; empty means valid.
std::vector<std::string> validate_payload(PayloadKind kind, const json& payload);

/// Decimal rendering with 17 significant digits ('.' separator, no grouping).
std::string format_double(double v);

}  // namespace bloch
