#pragma once

// JSON forms of ring elements, modules, functors, families, scenarios and
// reports.
//
// Elements: integers as JSON numbers or decimal strings, polynomials as
// coefficient arrays low-to-high. Matrices: arrays of rows, or
// {"rows": r, "cols": c, "entries": [...]} when a dimension is zero.
// Modules: {"relations": matrix, "ambient": k} or {"rank": r, "factors": [...]}.
// Anywhere a value is expected, the string "$name" refers to an entry of the
// scenario's "definitions" object.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "stab/stabilab.hpp"

namespace stab::io {

using json = nlohmann::json;

/// Malformed JSON text.
class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(int line, int column, const std::string& what)
      : std::runtime_error(what), line(line), column(column) {}
  int line, column;
};

/// A well-formed document whose content is invalid, anchored at a JSON pointer.
class SpecError : public std::runtime_error {
 public:
  SpecError(std::string pointer, const std::string& what) : std::runtime_error(what), pointer(std::move(pointer)) {}
  std::string pointer;
};

/// Parsed JSON together with the source line of every value.
struct Document {
  json value;
  std::map<std::string, int> lines;  // JSON pointer -> line
  /// Line of the value at pointer, or of its nearest recorded ancestor.
  int line_of(std::string pointer) const;
};
Document parse_document(const std::string& text);

Domain parse_backend(const json& j, const std::string& path = "/backend");
std::string backend_name(const Domain& dom);

/// Converts JSON into library values for one backend, resolving "$name"
/// references against a definitions object. Every failure is a SpecError.
class Reader {
 public:
  explicit Reader(Domain dom, json definitions = json::object());

  const Domain& domain() const noexcept { return dom_; }

  Elem elem(const json& j, const std::string& path) const;
  /// rows fixes the row count of an empty matrix.
  Mat mat(const json& j, const std::string& path, std::optional<std::size_t> rows = std::nullopt) const;
  FpModule module(const json& j, const std::string& path) const;
  Morphism morphism(const json& j, const std::string& path) const;
  Ideal ideal(const json& j, const std::string& path) const;
  ExponentSet exponents(const json& j, const std::string& path) const;
  CmcSet cmc(const json& j, const std::string& path) const;
  FunctorSpec functor(const json& j, const std::string& path) const;
  Family family(const json& j, const std::string& path) const;

 private:
  /// Follows "$name" references; returns the value and its pointer.
  std::pair<const json*, std::string> resolve(const json& j, const std::string& path, int depth = 0) const;
  EndSummand end_summand(const json& j, const std::string& path) const;

  Domain dom_;
  json defs_;
};

json to_json(const Elem& e);
json to_json(const Mat& m);
json to_json(const FpModule& m);
json to_json(const Morphism& f);
json to_json(const ExponentSet& e);
json to_json(const CmcSet& s);
json to_json(const FunctorSpec& f);
json to_json(const Family& fam);
json to_json(const Decomposition& d);

struct Expectation {
  std::optional<std::string> ass, depth;  // verdict strings
  std::optional<unsigned> n0_max;
  std::optional<unsigned> artin_rees_max;
};

struct Scenario {
  std::string name;
  Domain dom;
  json definitions = json::object();
  Family family;
  FunctorSpec functor;
  std::optional<Ideal> depth_ideal;
  unsigned horizon = 50, window = 10;
  std::optional<Expectation> expect;
};

Scenario parse_scenario(const json& doc);
/// Canonical form; parse_scenario(to_json(s)) serializes back to the same document.
json to_json(const Scenario& s);

/// One scan of a scenario: observations with Ass and depth verdicts.
struct ScenarioResult {
  StabilizationReport ass;
  std::optional<StabilizationReport> depth;
  std::optional<unsigned> artin_rees;
  bool ann_monotone = true;
  /// Empty when there is no expectation block or everything matched.
  std::vector<std::string> mismatches;
};

ScenarioResult run_scenario(const Scenario& s, bool parallel = true);
json report_json(const Scenario& s, const ScenarioResult& r);
/// The CSV report: one row per index with the depth column filled when a
/// depth ideal is present.
std::string report_csv(const ScenarioResult& r);

}  // namespace stab::io
