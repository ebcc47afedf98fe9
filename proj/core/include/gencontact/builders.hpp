#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gencontact/contact.hpp"
#include "gencontact/model_loader.hpp"

namespace gencontact {

/// A validated structure with everything the checks need: the pair, its
/// triple in the builder's published frame and, when the builder knows one,
/// a spinor line for the first isotropic line L + C e1.
struct BuiltStructure {
  std::string builder;
  ContactPair pair;
  ContactTriple triple;
  std::optional<DifferentialForm> spinor;
};

/// Sphere family: E = span(-V1, -nu1 - f V2 - g V3) and
/// L = span(V2 - i V3, nu3 - g V1 - i(-nu2 + f V1)).
BuiltStructure s3_family(const ModelPtr& model, const FunctionElement& f, const FunctionElement& g);

/// Same with f + i g = h(z, w), z = x1 + i x2, w = x3 + i x4, on the
/// polynomial sphere model.
BuiltStructure s3_family(const std::string& h);

/// Heisenberg pair with eta = a1, theta = a2 a3 + b a1 a2 + c a1 a3.
BuiltStructure heisenberg_structure(const GaussianRational& b, const GaussianRational& c);

/// Cosymplectic structure (theta, eta); xi is solved from eta(xi) = 1,
/// i_xi theta = 0.
BuiltStructure cosymplectic_structure(const ModelPtr& model, const DifferentialForm& theta,
                                      const DifferentialForm& eta);

BuiltStructure almost_contact_structure(const ModelPtr& model, const Matrix& phi, const Column& xi,
                                        const DifferentialForm& eta);

/// Replaces each generator l_j of L by l_j + eps_j, where eps_j must lie in
/// the span of the conjugate generators.
BuiltStructure deformation(const BuiltStructure& base, const std::vector<GenSection>& eps);

/// Structure on M x N from a structure on M and the generalized complex
/// structure of a symplectic form on N.
BuiltStructure product_structure(const BuiltStructure& base, const ModelPtr& second, const DifferentialForm& symplectic,
                                 const std::string& name);

/// The structure family on the 7-dimensional triple almost contact model:
/// the base endomorphism and its images under the sign flip sigma and the
/// swap tau, each with the outcome of conditions (i)-(iv).
struct TripleContactMember {
  std::string label;    // "Phi0", "sigma Phi0", ...
  std::string action;   // "composition" or "conjugation"
  Matrix phi;
  bool conditions = false;
};

struct TripleContactFamily {
  ModelPtr model;
  GenSection e1, e2;
  Matrix phi_base;  // phi_3 on TM, -phi_3^* on T*M
  std::vector<TripleContactMember> members;
  BuiltStructure structure;  // Phi0 as a validated structure
};

/// Which sign the alpha(xi_2) eta_1 term carries in Phi0 on 1-forms.
TripleContactFamily triple_contact_family(int eta1_sign = 1);

/// Conditions (i)-(iv) of the family on the 7-dimensional model.
bool triple_contact_conditions(const TripleContactFamily& family, const Matrix& phi);

struct BuilderInfo {
  std::string name;
  std::string description;
  std::vector<std::string> params;
};
const std::vector<BuilderInfo>& builder_catalog();

using BuilderParams = std::map<std::string, std::string>;

/// Builds a structure from textual parameters as they appear in scenario
/// files. `known` resolves references to earlier structures (deformation and
/// product take `base`); `models` resolves model names and defaults to the
/// shipped models.
BuiltStructure builtin_example(const std::string& name, const BuilderParams& params,
                               const std::map<std::string, BuiltStructure>& known = {},
                               const ModelResolver& models = {});

}  // namespace gencontact
