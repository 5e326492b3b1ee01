#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nambu/report.hpp"

namespace nambu {

// One term of a form written in a config: basis differentials by variable
// name ({"x"} for dx, {"c0", "c1"} for dc0^dc1, {} for a 0-form).
struct FormTerm {
  std::vector<std::string> basis;
  std::string coefficient;
  bool operator==(const FormTerm&) const = default;
};

// A parameter variable appended after the phase-space variables, constrained
// by a monic relation in itself (s with s^2 + s + 1 = 0).
struct ParameterSpec {
  std::string name;
  std::string relation;
  bool operator==(const ParameterSpec&) const = default;
};

struct TraceSpec {
  std::uint32_t power = 1;
  std::string expected;
  bool operator==(const TraceSpec&) const = default;
};

struct InvariantValue {
  std::size_t index = 0;
  std::string value;
  bool operator==(const InvariantValue&) const = default;
};

// Text format, one `key = value` per line, `#` starts a comment line:
//
//   nambu-scenario 1
//   name = solid-body
//   variables = x y z
//   hamiltonian = (x^2 + y^2 + z^2)/2     (repeatable, in bracket order)
//   field = y - z ; z - x ; x - y          (explicit flow, no hamiltonians)
//   expect_field = ...                     (flow the hamiltonians must give)
//   published = dx : (y^2 + z^2 - x*(y + z))/3    (repeatable; "1" = 0-form)
//   homotopy = dx : ...                    (expected homotopy output)
//   parameter = s : s^2 + s + 1
//   lax = x ; z ; y                        (one row per line)
//   partner = 0 ; -1/2 ; 1/2
//   trace = 2 : 3/2*(x^2 + y^2 + z^2)      ((1/k) tr L^k)
//   invariant = x + y + z
//   invariant_value = 0 : 1                (invariant index : value)
//   initial = 1 1/2 -1/4
//   t_end = 10
//   dt = 0.001
//   drift_tol = 1e-8
//   ring = 3                               (enables the ring checks)
struct ScenarioConfig {
  std::string name;
  std::vector<std::string> variables;
  std::vector<std::string> hamiltonians;
  std::vector<std::string> field;
  std::vector<std::string> expect_field;
  std::vector<FormTerm> published;
  std::vector<FormTerm> homotopy;
  std::vector<ParameterSpec> parameters;
  std::vector<std::vector<std::string>> lax;
  std::vector<std::vector<std::string>> partner;
  std::vector<TraceSpec> traces;
  std::vector<std::string> invariants;
  std::vector<InvariantValue> invariant_values;
  std::vector<std::string> initial;
  double t_end = 10.0;
  double dt = 1e-3;
  double drift_tol = 1e-8;
  std::optional<std::size_t> ring;

  bool operator==(const ScenarioConfig&) const = default;
};

inline constexpr int kScenarioVersion = 1;

// Throws ParseError whose position is the 1-based line number.
ScenarioConfig parse_scenario(const std::string& text);
std::string format_scenario(const ScenarioConfig& config);

// solid-body, ishii, ring-2, ring-3, ring-4, oscillator
std::vector<std::string> shipped_scenario_names();
// Throws DomainError for an unknown name.
ScenarioConfig shipped_scenario(const std::string& name);

struct VerifyOptions {
  std::optional<double> tol;  // replaces every numeric tolerance
  std::uint64_t seed = 1;     // randomized theorem checks
};

struct VerificationReport {
  std::string scenario;
  std::vector<CheckResult> checks;
  std::vector<double> elapsed_ms;  // parallel to checks; never printed to stdout

  bool passed() const;
};

VerificationReport verify(const ScenarioConfig& config, const VerifyOptions& options = {});

std::string report_json(const VerificationReport& report);
std::string report_text(const VerificationReport& report);

}  // namespace nambu
