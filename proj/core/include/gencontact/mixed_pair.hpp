#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gencontact/builders.hpp"
#include "gencontact/spinor.hpp"

namespace gencontact {

/// Pure spinors rho1 = e1 . rho2, rho2 = e2 . rho1 of opposite parity with
/// mu(rho1, conj rho2) nonzero.
struct MixedPair {
  ModelPtr model;
  DifferentialForm rho1, rho2;
  GenSection e1, e2;
};

void validate(const MixedPair& mp);

/// rho1 is the given form or a common null form of L + C e1; rho2 = e2 . rho1
/// in the normalised frame of the triple. Checks Ann(rho_i) = L + C e_i at
/// the sample points.
MixedPair mixed_pair_from_pair(const ContactPair& pair, const ContactTriple& triple,
                               const std::optional<DifferentialForm>& rho1 = std::nullopt);
MixedPair mixed_pair_of(const BuiltStructure& s);

enum class SpinorEquation { Solved, NoSolution, NonPolynomial };
std::string to_string(SpinorEquation s);

/// A section v with d_H rho = v . rho, when one exists.
struct SpinorWitness {
  SpinorEquation status = SpinorEquation::NoSolution;
  std::optional<GenSection> v;
};

SpinorWitness spinor_witness(const FrameModel& model, const DifferentialForm& rho,
                             const DifferentialForm* twist = nullptr);

struct MixedIntegrability {
  SpinorWitness first, second;
  bool integrable = false;  // one of the two equations is solved
  bool strong = false;      // both are
};

MixedIntegrability mixed_pair_integrability(const MixedPair& mp, const DifferentialForm* twist = nullptr);

/// rho1 + i dt rho2 on the cone model of mp.model.
DifferentialForm cone_spinor(const MixedPair& mp);

struct TypeSumRow {
  std::string point;
  unsigned t_l = 0;
  unsigned type1 = 0;
  unsigned type2 = 0;
};

/// 2 t_L = type(rho1) + type(rho2) + 1 at every sample point; a violation
/// throws std::logic_error.
std::vector<TypeSumRow> type_sum_check(const MixedPair& mp, const ContactPair& pair);

struct CircleTypeRow {
  std::string point;
  unsigned t_l = 0;
  unsigned t_j = 0;  // type of the cone spinor
  unsigned type1 = 0;
  unsigned type2 = 0;
};

/// Types on M x S^1: 0 <= t_L - t_J <= 1, t_J = type(rho1), and t_L = t_J
/// exactly when type(rho1) - type(rho2) = 1. Throws std::logic_error.
std::vector<CircleTypeRow> circle_type_check(const MixedPair& mp, const ContactPair& pair);

}  // namespace gencontact
