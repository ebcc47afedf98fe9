#include "gencontact/scalar_context.hpp"

#include <algorithm>
#include <numeric>

#include "gencontact/errors.hpp"

namespace gencontact {

std::string to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::Coordinate: return "coordinate";
    case GeneratorKind::Formal: return "formal";
    case GeneratorKind::Derivative: return "derivative";
    case GeneratorKind::Parameter: return "parameter";
    case GeneratorKind::Algebraic: return "algebraic";
  }
  return "?";
}

void add_term(Terms& terms, const Monomial& m, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

namespace {

std::optional<std::size_t> find_name(const std::vector<Generator>& gens, const std::string& name) {
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].name == name) return i;
  }
  return std::nullopt;
}

bool default_image_defined(GeneratorKind kind) {
  return kind != GeneratorKind::Formal && kind != GeneratorKind::Derivative;
}

}  // namespace

std::size_t ScalarContext::Builder::add_generator(const std::string& name, GeneratorKind kind) {
  if (find_name(generators_, name)) throw ValidationError("duplicate generator '" + name + "'");
  if (generators_.size() >= 64) throw ValidationError("too many generators");
  generators_.push_back({name, kind});
  return generators_.size() - 1;
}

void ScalarContext::Builder::set_priority(const std::vector<std::string>& names) {
  for (const auto& n : names) {
    if (!find_name(generators_, n)) throw UnknownSymbol(n);
  }
  priority_ = names;
}

void ScalarContext::Builder::add_relation(const std::string& symbol, unsigned power, Terms replacement) {
  auto idx = find_name(generators_, symbol);
  if (!idx) throw UnknownSymbol(symbol);
  if (power == 0) throw ValidationError("relation power must be positive");
  for (const auto& r : relations_) {
    if (r.symbol == *idx) throw ValidationError("second relation for '" + symbol + "'");
  }
  relations_.push_back({*idx, power, std::move(replacement)});
}

std::size_t ScalarContext::Builder::add_derivation(const std::string& name) {
  if (find_derivation(name)) throw ValidationError("duplicate derivation '" + name + "'");
  derivations_.push_back({name, {}});
  return derivations_.size() - 1;
}

void ScalarContext::Builder::set_image(std::size_t d, const std::string& generator, Terms image) {
  auto idx = find_name(generators_, generator);
  if (!idx) throw UnknownSymbol(generator);
  auto& images = derivations_.at(d).images;
  if (images.size() <= *idx) images.resize(*idx + 1);
  images[*idx] = std::move(image);
  // Remember explicitly set images so that build() does not overwrite them.
  explicit_.insert({d, *idx});
}

void ScalarContext::Builder::set_undefined(std::size_t d, const std::string& generator) {
  auto idx = find_name(generators_, generator);
  if (!idx) throw UnknownSymbol(generator);
  auto& images = derivations_.at(d).images;
  if (images.size() <= *idx) images.resize(*idx + 1);
  images[*idx].reset();
  explicit_.insert({d, *idx});
}

std::optional<std::size_t> ScalarContext::Builder::find_generator(const std::string& name) const {
  return find_name(generators_, name);
}

std::optional<std::size_t> ScalarContext::Builder::find_derivation(const std::string& name) const {
  for (std::size_t i = 0; i < derivations_.size(); ++i) {
    if (derivations_[i].name == name) return i;
  }
  return std::nullopt;
}

ContextPtr ScalarContext::Builder::provisional() const {
  auto ctx = std::shared_ptr<ScalarContext>(new ScalarContext());
  ctx->generators_ = generators_;
  ctx->rank_.resize(generators_.size());
  std::iota(ctx->rank_.begin(), ctx->rank_.end(), std::size_t{0});
  ctx->by_rank_ = ctx->rank_;
  return ctx;
}

ContextPtr ScalarContext::Builder::build() const {
  auto ctx = std::shared_ptr<ScalarContext>(new ScalarContext());
  const std::size_t n = generators_.size();
  ctx->generators_ = generators_;

  std::vector<std::string> order = priority_;
  if (order.empty()) {
    for (const auto& r : relations_) order.push_back(generators_[r.symbol].name);
    for (const auto& g : generators_) order.push_back(g.name);
  } else {
    for (const auto& g : generators_) order.push_back(g.name);
  }
  ctx->rank_.assign(n, n);
  std::size_t next = 0;
  for (const auto& name : order) {
    auto idx = *find_name(generators_, name);
    if (ctx->rank_[idx] == n) ctx->rank_[idx] = next++;
  }
  ctx->by_rank_.resize(n);
  for (std::size_t g = 0; g < n; ++g) ctx->by_rank_[ctx->rank_[g]] = g;

  std::vector<bool> is_relation_symbol(n, false);
  for (const auto& r : relations_) is_relation_symbol[r.symbol] = true;
  for (const auto& r : relations_) {
    for (const auto& [m, c] : r.replacement) {
      if (m.size() != n) throw ValidationError("relation replacement has wrong arity");
      for (std::size_t g = 0; g < n; ++g) {
        if (m[g] > 0 && is_relation_symbol[g]) {
          throw ValidationError("replacement for '" + generators_[r.symbol].name +
                                "' mentions relation symbol '" + generators_[g].name + "'");
        }
      }
    }
  }
  for (std::size_t g = 0; g < n; ++g) {
    if (generators_[g].kind == GeneratorKind::Algebraic && !is_relation_symbol[g]) {
      throw ValidationError("algebraic constant '" + generators_[g].name + "' needs a relation");
    }
  }
  ctx->relations_ = relations_;

  ctx->derivations_ = derivations_;
  for (std::size_t d = 0; d < ctx->derivations_.size(); ++d) {
    auto& images = ctx->derivations_[d].images;
    images.resize(n);
    for (std::size_t g = 0; g < n; ++g) {
      const GeneratorKind kind = generators_[g].kind;
      const bool set = explicit_.count({d, g}) > 0;
      if (kind == GeneratorKind::Parameter || kind == GeneratorKind::Algebraic) {
        if (set && images[g] && !images[g]->empty()) {
          throw ValidationError("derivation '" + ctx->derivations_[d].name + "' must kill constant '" +
                                generators_[g].name + "'");
        }
        images[g] = Terms{};
      } else if (!set) {
        if (default_image_defined(kind)) {
          images[g] = Terms{};
        } else {
          images[g].reset();
        }
      }
      if (images[g]) *images[g] = ctx->normalize(std::move(*images[g]));
    }
  }

  // Each derivation must respect each relation: D(x^k - p) == 0.
  for (std::size_t d = 0; d < ctx->derivations_.size(); ++d) {
    for (const auto& r : ctx->relations_) {
      Terms rel;
      Monomial m(n, 0);
      m[r.symbol] = static_cast<std::uint16_t>(r.power);
      add_term(rel, m, 1);
      for (const auto& [mm, c] : r.replacement) add_term(rel, mm, -c);
      Terms image;
      try {
        image = ctx->derive(d, rel);
      } catch (const SecondOrderDerivativeRequired&) {
        throw ValidationError("derivation '" + ctx->derivations_[d].name +
                              "' is undefined on a generator of the relation for '" +
                              generators_[r.symbol].name + "'");
      }
      if (!image.empty()) {
        throw ValidationError("derivation '" + ctx->derivations_[d].name +
                              "' does not preserve the relation for '" + generators_[r.symbol].name + "'");
      }
    }
  }
  return ctx;
}

std::optional<std::size_t> ScalarContext::find_generator(const std::string& name) const {
  return find_name(generators_, name);
}

std::size_t ScalarContext::generator_index(const std::string& name) const {
  auto idx = find_generator(name);
  if (!idx) throw UnknownSymbol(name);
  return *idx;
}

std::optional<std::size_t> ScalarContext::find_derivation(const std::string& name) const {
  for (std::size_t i = 0; i < derivations_.size(); ++i) {
    if (derivations_[i].name == name) return i;
  }
  return std::nullopt;
}

bool ScalarContext::monomial_less(const Monomial& a, const Monomial& b) const {
  unsigned da = 0;
  unsigned db = 0;
  for (auto e : a) da += e;
  for (auto e : b) db += e;
  if (da != db) return da < db;
  for (std::size_t g : by_rank_) {
    if (a[g] != b[g]) return a[g] < b[g];
  }
  return false;
}

Terms ScalarContext::normalize(Terms terms) const {
  if (relations_.empty()) return terms;
  Terms out;
  std::vector<std::pair<Monomial, GaussianRational>> stack(terms.begin(), terms.end());
  while (!stack.empty()) {
    auto [m, c] = std::move(stack.back());
    stack.pop_back();
    const Relation* hit = nullptr;
    for (const auto& r : relations_) {
      if (m[r.symbol] >= r.power) {
        hit = &r;
        break;
      }
    }
    if (hit == nullptr) {
      add_term(out, m, c);
      continue;
    }
    m[hit->symbol] = static_cast<std::uint16_t>(m[hit->symbol] - hit->power);
    for (const auto& [rm, rc] : hit->replacement) {
      Monomial prod = m;
      for (std::size_t g = 0; g < prod.size(); ++g) prod[g] = static_cast<std::uint16_t>(prod[g] + rm[g]);
      stack.emplace_back(std::move(prod), c * rc);
    }
  }
  return out;
}

Terms ScalarContext::multiply(const Terms& a, const Terms& b) const {
  Terms out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      Monomial m = ma;
      for (std::size_t g = 0; g < m.size(); ++g) m[g] = static_cast<std::uint16_t>(m[g] + mb[g]);
      add_term(out, m, ca * cb);
    }
  }
  return normalize(std::move(out));
}

Terms ScalarContext::derive(std::size_t d, const Terms& terms) const {
  const auto& images = derivations_.at(d).images;
  Terms out;
  for (const auto& [m, c] : terms) {
    for (std::size_t g = 0; g < m.size(); ++g) {
      if (m[g] == 0) continue;
      if (!images[g]) {
        throw SecondOrderDerivativeRequired(derivations_[d].name + "(" + generators_[g].name + ")");
      }
      if (images[g]->empty()) continue;
      Monomial rest = m;
      rest[g] = static_cast<std::uint16_t>(rest[g] - 1);
      Terms lead;
      lead.emplace(rest, c * GaussianRational(static_cast<long>(m[g])));
      for (const auto& [mm, cc] : multiply(lead, *images[g])) add_term(out, mm, cc);
    }
  }
  return out;
}

bool ScalarContext::has_algebraic_constants() const {
  return std::any_of(generators_.begin(), generators_.end(),
                     [](const Generator& g) { return g.kind == GeneratorKind::Algebraic; });
}

}  // namespace gencontact
