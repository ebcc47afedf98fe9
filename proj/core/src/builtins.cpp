#include "gencontact/builtins.hpp"

#include <map>
#include <mutex>

#include "embedded_data.hpp"
#include "gencontact/errors.hpp"
#include "gencontact/model_loader.hpp"

namespace gencontact {

namespace {

struct Registry {
  std::vector<Document> documents;
  std::map<std::pair<std::string, std::string>, const Section*> sections;
  std::recursive_mutex mutex;
  std::map<std::string, ModelPtr> models;

  Registry() {
    for (const auto& f : detail::embedded_files()) {
      if (f.path.ends_with(".scn")) continue;
      documents.push_back(parse_document(std::string(f.text), std::string(f.path)));
    }
    for (const auto& doc : documents) {
      for (const auto& s : doc.sections) {
        if (!sections.emplace(std::pair{s.kind, s.name}, &s).second) {
          throw ValidationError("builtin '" + s.kind + " " + s.name + "' is defined twice");
        }
      }
    }
  }
};

Registry& registry() {
  static Registry r;
  return r;
}

}  // namespace

const Section& builtin_section(const std::string& kind, const std::string& name) {
  auto& r = registry();
  auto it = r.sections.find({kind, name});
  if (it == r.sections.end()) throw UnknownSymbol(name);
  return *it->second;
}

std::vector<const Section*> builtin_sections(const std::string& kind) {
  std::vector<const Section*> out;
  for (const auto& [key, s] : registry().sections) {
    if (key.first == kind) out.push_back(s);
  }
  return out;
}

std::vector<BuiltinEntry> builtin_models() {
  std::vector<BuiltinEntry> out;
  for (const Section* s : builtin_sections("model")) out.push_back({s->name, s->get("description")});
  return out;
}

ModelPtr builtin_model(const std::string& name) {
  auto& r = registry();
  std::lock_guard lock(r.mutex);
  if (auto it = r.models.find(name); it != r.models.end()) return it->second;
  const Section& s = builtin_section("model", name);
  ModelPtr m = build_model(s, [](const std::string& n) { return builtin_model(n); });
  r.models.emplace(name, m);
  return m;
}

std::vector<BuiltinScenario> builtin_scenarios() {
  std::vector<BuiltinScenario> out;
  for (const auto& f : detail::embedded_files()) {
    if (!f.path.ends_with(".scn")) continue;
    std::string name(f.path.substr(f.path.rfind('/') + 1));
    name.resize(name.size() - 4);
    out.push_back({std::move(name), std::string(f.text)});
  }
  return out;
}

std::optional<BuiltinScenario> builtin_scenario(const std::string& name) {
  for (auto& s : builtin_scenarios()) {
    if (s.name == name) return s;
  }
  return std::nullopt;
}

}  // namespace gencontact
