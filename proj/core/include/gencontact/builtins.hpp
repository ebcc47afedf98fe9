#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gencontact/document.hpp"
#include "gencontact/frame_model.hpp"

namespace gencontact {

struct BuiltinEntry {
  std::string name;
  std::string description;
};

/// Models shipped with the library, in name order.
std::vector<BuiltinEntry> builtin_models();

/// Loads (once) and returns a shipped model; throws UnknownSymbol.
ModelPtr builtin_model(const std::string& name);

/// Raw `[kind name]` section shipped under core/data, e.g. a dual pair.
/// Throws UnknownSymbol when there is none.
const Section& builtin_section(const std::string& kind, const std::string& name);
std::vector<const Section*> builtin_sections(const std::string& kind);

/// Scenario files shipped under core/data/scenarios, by file stem.
struct BuiltinScenario {
  std::string name;
  std::string text;
};
std::vector<BuiltinScenario> builtin_scenarios();
std::optional<BuiltinScenario> builtin_scenario(const std::string& name);

}  // namespace gencontact
