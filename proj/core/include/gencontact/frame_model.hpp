#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gencontact/differential_form.hpp"

namespace gencontact {

class FrameModel;
using ModelPtr = std::shared_ptr<const FrameModel>;

/// Global frame X_1..X_m with dual coframe, given by structure functions
/// [X_a, X_b] = sum_e c_ab^e X_e, a coframe differential table and the
/// derivation each frame vector induces on the scalar ring.
class FrameModel {
 public:
  struct Definition {
    std::string name;
    std::string description;
    ContextPtr context;
    std::vector<std::string> vectors;
    std::vector<std::string> coframe;
    /// Derivation of the context realised by each frame vector; nullopt = zero.
    std::vector<std::optional<std::string>> derivations;
    /// structure[a][b][e] = c_ab^e; empty means abelian. Only a < b is read,
    /// the rest is filled by antisymmetry and must agree if given.
    std::vector<std::vector<Column>> structure;
    /// d(alpha^e); empty means "derive from the structure functions".
    std::vector<DifferentialForm> coframe_differentials;
    std::vector<Point> points;
    /// Named closed 2-forms shipped with the model.
    std::vector<std::pair<std::string, DifferentialForm>> closed_two_forms;
  };

  /// Validates the definition: antisymmetry, Jacobi identity, the bracket
  /// acting on non-formal generators, the coframe differential table against
  /// the structure functions, closedness of the shipped 2-forms and the
  /// sample points (at least three, satisfying every relation).
  static ModelPtr create(Definition def);

  const std::string& name() const { return def_.name; }
  const std::string& description() const { return def_.description; }
  const ContextPtr& context() const { return def_.context; }
  unsigned dim() const { return static_cast<unsigned>(def_.vectors.size()); }
  const std::vector<std::string>& vector_names() const { return def_.vectors; }
  const std::vector<std::string>& coframe_names() const { return def_.coframe; }
  const std::vector<Point>& points() const { return def_.points; }
  const std::vector<std::pair<std::string, DifferentialForm>>& closed_two_forms() const {
    return def_.closed_two_forms;
  }
  const std::optional<std::string>& derivation_name(std::size_t a) const { return def_.derivations.at(a); }
  const Definition& definition() const { return def_; }

  std::optional<std::size_t> vector_index(const std::string& name) const;
  std::optional<std::size_t> coframe_index(const std::string& name) const;

  const FunctionElement& structure(std::size_t a, std::size_t b, std::size_t e) const {
    return def_.structure[a][b][e];
  }
  const DifferentialForm& coframe_differential(std::size_t e) const { return def_.coframe_differentials[e]; }

  FunctionElement zero() const { return FunctionElement(def_.context, 0); }
  FunctionElement one() const { return FunctionElement(def_.context, 1); }
  Column zero_column() const { return Column(dim(), zero()); }
  DifferentialForm zero_form() const { return DifferentialForm(def_.context, dim()); }

  /// X_a(u).
  FunctionElement act(std::size_t a, const FunctionElement& u) const;
  /// X(u) for X = sum_a x[a] X_a.
  FunctionElement act(const Column& x, const FunctionElement& u) const;

  /// Restricts the sample points to the listed indices.
  ModelPtr with_points(const std::vector<std::size_t>& subset) const;

 private:
  explicit FrameModel(Definition def) : def_(std::move(def)) {}
  std::vector<std::optional<std::size_t>> derivation_index_;
  Definition def_;
};

/// Adds one frame direction with zero brackets and zero derivation, named
/// `vector_name` / `form_name`. Used for cones and products with a circle.
ModelPtr extend_by_line(const ModelPtr& base, const std::string& suffix, const std::string& vector_name,
                        const std::string& form_name);

/// Direct product of two models; the scalar contexts are merged and must not
/// share generator or derivation names. Sample points are paired up.
ModelPtr product_model(const ModelPtr& first, const ModelPtr& second, const std::string& name);

}  // namespace gencontact
