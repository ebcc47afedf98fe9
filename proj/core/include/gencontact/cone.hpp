#pragma once

#include <string>
#include <vector>

#include "gencontact/contact.hpp"

namespace gencontact {

/// (Phi, e1, e2, lambda): Phi skew, Phi e1 = lambda e1, Phi e2 = -lambda e2,
/// Phi^2 x = -x + 2(1 + lambda^2)(<x, e2> e1 + <x, e1> e2).
/// lambda is a constant with sqrt(1 + lambda^2) rational.
struct SekiyaQuadruple {
  ModelPtr model;
  Matrix phi;
  GenSection e1, e2;
  GaussianRational lambda;
};

void validate(const SekiyaQuadruple& q);

/// Phi + lambda (2<., e2> e1 - 2<., e1> e2); lambda = 0 gives the triple back.
SekiyaQuadruple sekiya_from_triple(const ContactTriple& t, const GaussianRational& lambda = GaussianRational(0));
ContactTriple triple_from_sekiya(const SekiyaQuadruple& q);

/// Generalized almost complex structure on the cone fibre T M + span(Dt, dt),
/// stored as a matrix on the generators of the cone model.
struct ConeStructure {
  ModelPtr base;
  ModelPtr cone;
  Matrix j;
};

/// The base model with one more direction (Dt, dt) and zero brackets.
ModelPtr cone_model(const ModelPtr& base);
GenSection to_cone(const GenSection& x);
/// Drops the cone components; throws ValidationError when they are nonzero.
GenSection to_base(const GenSection& x);

ConeStructure sekiya_to_cone(const SekiyaQuadruple& q);
SekiyaQuadruple cone_to_sekiya(const ConeStructure& c);

/// J^2 = -Id and J skew for the pairing.
void validate(const ConeStructure& c);
/// J(Dt) and J(dt) have no cone components.
bool in_sek0(const ConeStructure& c);

/// The +i eigenbundle x - i J x over the cone generators.
std::vector<GenSection> eigenbundle(const ConeStructure& c);

struct ConeTypeRow {
  std::string point;
  unsigned t_l = 0;
  unsigned t_j = 0;
  bool jdt_in_al = false;  // a(J dt) lies in a(L)
};

/// t_J = m + 1 - rank a(L_J) against t_L of the pair J represents. Throws
/// std::logic_error when 0 <= t_L - t_J <= 1 or the equality criterion fails.
std::vector<ConeTypeRow> cone_type(const ContactPair& pair, const ConeStructure& c);

}  // namespace gencontact
