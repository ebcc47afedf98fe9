#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "gencontact/builders.hpp"
#include "gencontact/integrability.hpp"
#include "gencontact/tduality.hpp"

namespace gencontact {

/// One line of a `[checks]` section: `KIND TARGET... = key: value, ...`.
/// `vanishes MODEL = EXPR` takes the whole value as an expression.
struct CheckSpec {
  int line = 0;
  std::string kind;
  std::vector<std::string> targets;
  std::map<std::string, std::string> params;
  std::string expression;

  std::string label() const;
};

/// A loaded scenario. Everything is resolved and validated at load time.
///
///   [scenario NAME]        description = ...
///   [model NAME]           as in the model files
///   [structure NAME]       builder = BUILDER plus its parameters;
///                          builder = dual takes base = STRUCTURE, pair = PAIR
///   [twist NAME]           model = MODEL, form = EXPR (closed 3-form)
///   [dualpair NAME]        builtin = NAME, or the keys of a shipped pair;
///                          circle = MODEL gives the trivial circle pair
///   [checks]               one check per line, run in order
struct Scenario {
  std::string name;
  std::string description;
  std::string source;
  std::map<std::string, ModelPtr> models;
  std::map<std::string, BuiltStructure> structures;
  std::map<std::string, DifferentialForm> twists;
  std::map<std::string, TDualPair> dual_pairs;
  std::vector<CheckSpec> checks;
  /// Sample points removed by LoadOptions::points.
  std::set<std::string> dropped_points;
};

struct LoadOptions {
  /// Keep only these sample point labels in models that have any of them.
  std::vector<std::string> points;
};

/// Throws ParseError (with line and column where known), ValidationError or
/// UnknownSymbol.
Scenario load_scenario(const std::string& text, const std::string& source = "<input>",
                       const LoadOptions& options = {});

struct CheckInfo {
  std::string kind;
  std::string usage;
  std::vector<std::string> params;
  std::string formula;
  std::string description;
};
const std::vector<CheckInfo>& check_catalog();
const CheckInfo* find_check(const std::string& kind);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct CheckResult {
  std::string label;
  Verdict verdict = Verdict::Inconclusive;
  /// Nonzero residuals or failing point witnesses; never empty on FAIL.
  std::vector<std::string> residuals;
  std::vector<std::string> notes;
  Table table;
  double seconds = 0;
};

enum class ExitCode { Pass = 0, Fail = 1, LoadError = 2, Inconclusive = 3 };

struct Report {
  std::string scenario;
  std::string description;
  std::vector<CheckResult> checks;

  std::size_t count(Verdict v) const;
  ExitCode exit_code(bool strict) const;
};

CheckResult run_check(const Scenario& s, const CheckSpec& check);
Report run_scenario(const Scenario& s);

/// Human-readable text. Timing is printed only when asked for, so the default
/// output is byte-identical across runs.
std::string render_text(const Report& r, bool timing = false);
/// `[check N]` records with stable keys (name, verdict, residual, note,
/// columns, row, seconds) followed by a `[summary]` record.
std::string render_records(const Report& r, bool strict = false, bool timing = false);

}  // namespace gencontact
