#pragma once

// Property suites that re-check the inequalities and constructions on
// deterministic samples. Used by `bloch verify` and by the test binaries.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bloch/poly.hpp"

namespace bloch {

enum class Suite { all, lemma, prop41, example42, parseval, counterexample, marty };

std::optional<Suite> parse_suite(std::string_view name);
std::string_view to_string(Suite s);

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  double margin = 0.0;  // worst observed slack; negative means violated
  std::string detail;
};

/// Random polynomials with independent coefficient components uniform in
/// [-1, 1], degree uniform in {2..12}, scaled to unit Bloch norm.
/// Deterministic in (count, seed).
std::vector<Coefficients> normalized_samples(int count, std::uint64_t seed);

std::vector<CheckResult> verify_suites(Suite suite, std::uint64_t seed = 0);

}  // namespace bloch
