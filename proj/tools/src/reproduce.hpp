#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace thetaforge::harness {

/// One row of a reproduction table. `value` and `expected` are JSON so that
/// numeric, integer and categorical checks share the same shape.
struct Check {
  std::string name;
  nlohmann::json value;
  nlohmann::json expected;
  std::string relation;  // "~", "<=", "<", ">=", "=="
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

struct SectionResult {
  std::string tag;
  std::vector<Check> checks;
  double seconds = 0.0;

  bool passed() const;
};

/// Every section, in the order `all` runs them.
const std::vector<std::string>& section_tags();
bool is_section(std::string_view tag);

/// A check that throws is recorded as failed with the error text as detail.
SectionResult run_section(std::string_view tag);

/// Sections run on up to `threads` workers; results keep the input order.
std::vector<SectionResult> run_sections(const std::vector<std::string>& tags, int threads);

/// Deterministic fields only (no timings).
nlohmann::json to_json(const Check& c);
nlohmann::json to_json(const SectionResult& s);

}  // namespace thetaforge::harness
