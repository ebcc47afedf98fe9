#include "gencontact/model_loader.hpp"

#include <regex>
#include <set>

#include "gencontact/errors.hpp"
#include "gencontact/expression.hpp"

namespace gencontact {

namespace {

// Runs `fn`, re-throwing parse errors with the entry's line and absolute column.
template <typename Fn>
auto at_entry(const Entry& e, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ParseError& err) {
    const int col = err.column() > 0 ? e.value_column + err.column() - 1 : 0;
    throw ParseError(err.message(), e.line, col);
  } catch (const UnknownSymbol& err) {
    throw ParseError(err.what(), e.line);
  } catch (const ValidationError& err) {
    throw ParseError(err.what(), e.line);
  }
}

// "a: expr, b: expr" -> pairs
std::vector<std::pair<std::string, std::string>> assignments(const Entry& e) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& item : split_list(e.value, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ParseError("expected 'name: value' in '" + item + "'", e.line);
    out.emplace_back(trim(item.substr(0, colon)), trim(item.substr(colon + 1)));
  }
  return out;
}

std::size_t frame_index(const std::vector<std::string>& names, const std::string& n, const Entry& e) {
  for (std::size_t a = 0; a < names.size(); ++a) {
    if (names[a] == n) return a;
  }
  throw ParseError("unknown frame name '" + n + "'", e.line);
}

ModelPtr derived_model(const Section& s, const ModelResolver& resolve) {
  if (const Entry* cone = s.find("cone_of")) {
    ModelPtr base = resolve(trim(cone->value));
    auto words = split_words(s.get("line", "Dt dt"));
    if (words.size() != 2) throw ParseError("'line' takes a vector name and a form name", s.line);
    ModelPtr m = extend_by_line(base, "", words[0], words[1]);
    FrameModel::Definition def = m->definition();
    def.name = s.name;
    def.description = s.get("description", "cone over " + base->name());
    return FrameModel::create(std::move(def));
  }
  const Entry& prod = s.require("product");
  auto words = split_words(prod.value);
  if (words.size() != 2) throw ParseError("'product' takes two model names", prod.line);
  ModelPtr m = product_model(resolve(words[0]), resolve(words[1]), s.name);
  if (s.find("description")) {
    FrameModel::Definition def = m->definition();
    def.description = s.get("description");
    return FrameModel::create(std::move(def));
  }
  return m;
}

}  // namespace

ModelPtr build_model(const Section& s, const ModelResolver& resolve) {
  if (s.find("cone_of") || s.find("product")) return derived_model(s, resolve);

  const auto vectors = split_words(s.require("frame").value);
  const auto coframe = split_words(s.require("coframe").value);
  if (vectors.size() != coframe.size()) throw ParseError("frame and coframe differ in length", s.require("coframe").line);

  // Frame vectors carrying a derivation, and the explicit images they list.
  std::vector<std::string> derivation_names;
  std::map<std::string, std::map<std::string, std::pair<std::string, const Entry*>>> images;
  for (const Entry* e : s.all("derivation")) {
    if (e->key.size() != 2) throw ParseError("expected 'derivation NAME = ...'", e->line);
    const std::string& name = e->key[1];
    frame_index(vectors, name, *e);
    if (images.count(name)) throw ParseError("derivation '" + name + "' given twice", e->line);
    derivation_names.push_back(name);
    auto& img = images[name];
    for (auto& [g, v] : assignments(*e)) img[g] = {v, e};
  }

  ScalarContext::Builder b;
  std::set<std::string> seen;
  auto add_all = [&](const char* key, GeneratorKind kind) {
    for (const auto& n : split_words(s.get(key))) {
      if (!seen.insert(n).second) throw ParseError("generator '" + n + "' declared twice", s.find(key)->line);
      b.add_generator(n, kind);
    }
  };
  add_all("coordinates", GeneratorKind::Coordinate);
  add_all("formal", GeneratorKind::Formal);
  add_all("parameters", GeneratorKind::Parameter);
  add_all("algebraic", GeneratorKind::Algebraic);
  const auto formal = split_words(s.get("formal"));
  for (const auto& d : derivation_names) {
    for (const auto& f : formal) {
      if (!images[d].count(f)) b.add_generator(d + "(" + f + ")", GeneratorKind::Derivative);
    }
  }
  if (const Entry* pr = s.find("priority")) b.set_priority(split_words(pr->value));

  ContextPtr pre = b.provisional();
  Scope scalar_scope(pre);
  static const std::regex rel_lhs(R"(^\s*([A-Za-z_~][A-Za-z0-9_~']*)\s*\^\s*([0-9]+)\s*$)");
  for (const Entry* e : s.all("relation")) {
    const auto eq = e->value.find('=');
    if (eq == std::string::npos) throw ParseError("relation must read 'symbol^k = expression'", e->line);
    std::smatch m;
    const std::string lhs = e->value.substr(0, eq);
    if (!std::regex_match(lhs, m, rel_lhs)) throw ParseError("relation must read 'symbol^k = expression'", e->line);
    Entry rhs = *e;
    rhs.value = e->value.substr(eq + 1);
    rhs.value_column = e->value_column + static_cast<int>(eq) + 1;
    FunctionElement r = at_entry(rhs, [&] { return parse_scalar(rhs.value, scalar_scope); });
    at_entry(*e, [&] {
      b.add_relation(m[1].str(), static_cast<unsigned>(std::stoul(m[2].str())), r.terms());
      return 0;
    });
  }
  for (const auto& d : derivation_names) {
    const std::size_t idx = b.add_derivation(d);
    for (const auto& [g, ve] : images[d]) {
      const auto& [text, e] = ve;
      if (!pre->find_generator(g)) throw ParseError("derivation '" + d + "' sets unknown generator '" + g + "'", e->line);
      FunctionElement u = at_entry(*e, [&] { return parse_scalar(text, scalar_scope); });
      b.set_image(idx, g, u.terms());
    }
    for (const auto& f : formal) {
      if (images[d].count(f)) continue;
      auto gen = FunctionElement::generator(pre, d + "(" + f + ")");
      b.set_image(idx, f, gen.terms());
    }
  }
  ContextPtr ctx = at_entry(s.require("frame"), [&] { return b.build(); });

  FrameModel::Definition def;
  def.name = s.name;
  def.description = s.get("description");
  def.context = ctx;
  def.vectors = vectors;
  def.coframe = coframe;
  for (const auto& v : vectors) {
    const bool has = images.count(v) > 0;
    def.derivations.push_back(has ? std::optional<std::string>(v) : std::nullopt);
  }
  const std::size_t m = vectors.size();
  Scope frame_scope(ctx, vectors, coframe);
  def.structure.assign(m, std::vector<Column>(m, Column()));
  for (const Entry* e : s.all("bracket")) {
    if (e->key.size() != 3) throw ParseError("expected 'bracket X Y = ...'", e->line);
    const std::size_t a = frame_index(vectors, e->key[1], *e);
    const std::size_t bb = frame_index(vectors, e->key[2], *e);
    GenSection val = at_entry(*e, [&] { return parse_section(e->value, frame_scope); });
    if (!val.is_vector()) throw ParseError("bracket of frame vectors must be a vector field", e->line);
    if (!def.structure[a][bb].empty()) throw ParseError("bracket given twice", e->line);
    if (a > bb) {
      Column neg = val.vec();
      for (auto& u : neg) u = -u;
      def.structure[bb][a] = neg;
    } else {
      def.structure[a][bb] = val.vec();
    }
  }
  if (!s.all("d").empty()) {
    def.coframe_differentials.assign(m, DifferentialForm(ctx, static_cast<unsigned>(m)));
    std::vector<bool> given(m, false);
    for (const Entry* e : s.all("d")) {
      if (e->key.size() != 2) throw ParseError("expected 'd FORM = ...'", e->line);
      const std::size_t a = frame_index(coframe, e->key[1], *e);
      def.coframe_differentials[a] = at_entry(*e, [&] { return parse_form(e->value, frame_scope); });
      given[a] = true;
    }
    for (std::size_t a = 0; a < m; ++a) {
      if (!given[a]) throw ParseError("missing 'd " + coframe[a] + "' (give all or none)", s.line);
    }
  }
  for (const Entry* e : s.all("point")) {
    if (e->key.size() != 2) throw ParseError("expected 'point LABEL = ...'", e->line);
    Point p{e->key[1], std::vector<std::optional<GaussianRational>>(ctx->generator_count())};
    for (const auto& [g, text] : assignments(*e)) {
      auto idx = ctx->find_generator(g);
      if (!idx) throw ParseError("point assigns unknown generator '" + g + "'", e->line);
      FunctionElement v = at_entry(*e, [&] { return parse_scalar(text, Scope(ctx)); });
      if (!v.is_constant()) throw ParseError("point values must be numbers", e->line);
      p.values[*idx] = v.constant_value();
    }
    def.points.push_back(std::move(p));
  }
  for (const Entry* e : s.all("closed")) {
    if (e->key.size() != 2) throw ParseError("expected 'closed NAME = ...'", e->line);
    def.closed_two_forms.emplace_back(e->key[1], at_entry(*e, [&] { return parse_form(e->value, frame_scope); }));
  }
  ModelPtr model = FrameModel::create(std::move(def));
  if (model->points().size() < 3) {
    throw ValidationError("model '" + model->name() + "': at least three sample points are required");
  }
  return model;
}

}  // namespace gencontact
