#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "gencontact/builtins.hpp"
#include "gencontact/errors.hpp"
#include "gencontact/scenario.hpp"

using namespace gencontact;

namespace {

constexpr int kLoadError = static_cast<int>(ExitCode::LoadError);

struct Source {
  std::string name;
  std::string text;
};

Source read_scenario(const std::string& arg) {
  if (std::ifstream in{arg}) {
    std::ostringstream buf;
    buf << in.rdbuf();
    return {arg, buf.str()};
  }
  if (auto s = builtin_scenario(arg)) return {s->name, s->text};
  throw Error("no scenario file or shipped scenario named '" + arg + "'");
}

std::string scenario_description(const std::string& text) {
  try {
    for (const auto& s : parse_document(text).sections) {
      if (s.kind == "scenario") return s.get("description");
    }
  } catch (const Error&) {
  }
  return "";
}

int run(const std::string& path, bool strict, const std::string& report_path, const std::vector<std::string>& points,
        bool timing) {
  Scenario scenario;
  try {
    const Source src = read_scenario(path);
    scenario = load_scenario(src.text, src.name, LoadOptions{points});
  } catch (const ParseError& e) {
    std::cerr << path << ": " << e.what() << "\n";
    return kLoadError;
  } catch (const std::exception& e) {
    std::cerr << path << ": " << e.what() << "\n";
    return kLoadError;
  }
  const Report report = run_scenario(scenario);
  std::cout << render_text(report, timing);
  if (!report_path.empty()) {
    std::ofstream out(report_path);
    if (!out) {
      std::cerr << "cannot write " << report_path << "\n";
      return kLoadError;
    }
    out << render_records(report, strict, timing);
  }
  return static_cast<int>(report.exit_code(strict));
}

void list() {
  std::cout << "models:\n";
  for (const auto& m : builtin_models()) std::cout << "  " << m.name << "  " << m.description << "\n";
  std::cout << "structures:\n";
  for (const auto& b : builder_catalog()) {
    std::cout << "  " << b.name << "  " << b.description;
    if (!b.params.empty()) {
      std::cout << " (";
      for (std::size_t i = 0; i < b.params.size(); ++i) std::cout << (i ? ", " : "") << b.params[i];
      std::cout << ")";
    }
    std::cout << "\n";
  }
  std::cout << "  dual  image of a structure under a dual pair (base, pair)\n";
  std::cout << "dual pairs:\n";
  for (const auto& name : builtin_dual_pairs()) {
    const TDualPair d = builtin_dual_pair(name);
    std::cout << "  " << name << "  " << d.source->name() << " <-> " << d.target->name() << "\n";
  }
  std::cout << "  trivial-circle  M x S^1 <-> M x S^1 for any model M (circle = MODEL)\n";
  std::cout << "scenarios:\n";
  for (const auto& s : builtin_scenarios()) std::cout << "  " << s.name << "  " << scenario_description(s.text) << "\n";
  std::cout << "checks:\n";
  for (const auto& c : check_catalog()) std::cout << "  " << c.usage << "\n";
}

int explain(const std::string& kind) {
  const CheckInfo* info = find_check(kind);
  if (!info) {
    std::cerr << "unknown check '" << kind << "'; see 'gencontact list'\n";
    return kLoadError;
  }
  std::cout << info->usage << "\n\n  " << info->formula << "\n\n" << info->description << "\n";
  if (!info->params.empty()) {
    std::cout << "\nparameters:";
    for (const auto& p : info->params) std::cout << " " << p;
    std::cout << "\n";
  }
  std::cout << "every check also accepts 'outcome: fail' to expect a failure\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized contact structures: scenario runner"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "Run a scenario file or shipped scenario");
  std::string path, report_path;
  std::vector<std::string> points;
  bool strict = false, timing = false;
  run_cmd->add_option("scenario", path, "Scenario file or shipped scenario name")->required();
  run_cmd->add_flag("--strict", strict, "Exit 3 when a check is inconclusive");
  run_cmd->add_option("--report", report_path, "Write a machine-readable report");
  run_cmd->add_option("--points", points, "Restrict sample points to these labels")->delimiter(',');
  run_cmd->add_flag("--timing", timing, "Print per-check wall time");

  auto* list_cmd = app.add_subcommand("list", "List shipped models, structures, dual pairs, scenarios and checks");

  auto* explain_cmd = app.add_subcommand("explain", "Describe a check");
  std::string kind;
  explain_cmd->add_option("check", kind, "Check name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kLoadError;
  }

  if (*run_cmd) return run(path, strict, report_path, points, timing);
  if (*list_cmd) {
    list();
    return 0;
  }
  return explain(kind);
}
