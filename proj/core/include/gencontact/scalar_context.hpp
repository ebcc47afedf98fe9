#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gencontact/gaussian_rational.hpp"

namespace gencontact {

using Monomial = std::vector<std::uint16_t>;
using Terms = std::map<Monomial, GaussianRational>;

enum class GeneratorKind {
  Coordinate,  // ordinary polynomial coordinate
  Formal,      // formal function symbol of a first-order jet
  Derivative,  // first derivative of a formal symbol; derivations are undefined on it
  Parameter,   // real constant, killed by every derivation
  Algebraic,   // real algebraic constant fixed by a relation, never assigned at points
};

std::string to_string(GeneratorKind kind);

struct Generator {
  std::string name;
  GeneratorKind kind = GeneratorKind::Coordinate;
};

/// `symbol^power` is rewritten as `replacement`.
struct Relation {
  std::size_t symbol = 0;
  unsigned power = 0;
  Terms replacement;
};

struct Derivation {
  std::string name;
  /// Image of each generator; std::nullopt marks an undefined image.
  std::vector<std::optional<Terms>> images;
};

void add_term(Terms& terms, const Monomial& m, const GaussianRational& c);

class ScalarContext;
using ContextPtr = std::shared_ptr<const ScalarContext>;

/// Generators, relations in substitution form and named derivations.
/// Immutable once built; elements refer to it by shared pointer.
class ScalarContext {
 public:
  class Builder {
   public:
    std::size_t add_generator(const std::string& name, GeneratorKind kind);
    /// Generators are compared in this order (first = highest) when a leading
    /// term is needed. Defaults to relation symbols first, then declaration order.
    void set_priority(const std::vector<std::string>& names);
    void add_relation(const std::string& symbol, unsigned power, Terms replacement);
    std::size_t add_derivation(const std::string& name);
    void set_image(std::size_t derivation, const std::string& generator, Terms image);
    void set_undefined(std::size_t derivation, const std::string& generator);

    std::optional<std::size_t> find_generator(const std::string& name) const;
    std::size_t generator_count() const { return generators_.size(); }
    std::optional<std::size_t> find_derivation(const std::string& name) const;
    const Derivation& derivation(std::size_t d) const { return derivations_.at(d); }

    /// Context with the generators only, for parsing relation and image text.
    ContextPtr provisional() const;
    /// Validates relations (replacements free of relation symbols, every
    /// derivation compatible with every relation) and returns the context.
    ContextPtr build() const;

   private:
    std::vector<Generator> generators_;
    std::vector<std::string> priority_;
    std::vector<Relation> relations_;
    std::vector<Derivation> derivations_;
    std::set<std::pair<std::size_t, std::size_t>> explicit_;
  };

  std::size_t generator_count() const { return generators_.size(); }
  const Generator& generator(std::size_t i) const { return generators_.at(i); }
  const std::vector<Generator>& generators() const { return generators_; }
  std::optional<std::size_t> find_generator(const std::string& name) const;
  std::size_t generator_index(const std::string& name) const;  // throws UnknownSymbol

  const std::vector<Relation>& relations() const { return relations_; }

  std::size_t derivation_count() const { return derivations_.size(); }
  const Derivation& derivation(std::size_t d) const { return derivations_.at(d); }
  std::optional<std::size_t> find_derivation(const std::string& name) const;

  /// rank[g] = position of generator g in the priority order (0 = highest).
  const std::vector<std::size_t>& priority_rank() const { return rank_; }
  /// Total order on monomials: total degree, then exponents in priority order.
  bool monomial_less(const Monomial& a, const Monomial& b) const;

  /// Rewrites terms to normal form modulo the relations.
  Terms normalize(Terms terms) const;
  Terms multiply(const Terms& a, const Terms& b) const;
  /// Applies derivation d; throws SecondOrderDerivativeRequired when a term
  /// involves a generator with an undefined image.
  Terms derive(std::size_t d, const Terms& terms) const;
  Monomial unit_monomial() const { return Monomial(generators_.size(), 0); }

  bool has_algebraic_constants() const;

 private:
  ScalarContext() = default;

  std::vector<Generator> generators_;
  std::vector<std::size_t> rank_;
  std::vector<std::size_t> by_rank_;
  std::vector<Relation> relations_;
  std::vector<Derivation> derivations_;
};

}  // namespace gencontact
