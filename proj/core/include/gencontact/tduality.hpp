#pragma once

#include <string>
#include <vector>

#include "gencontact/mixed_pair.hpp"

namespace gencontact {

/// Two circle/torus bundles over a common base. The basic frame is matched by
/// name; fiber vectors are matched by position in the two fiber lists. The
/// pairing F = sum_ab f_ab nu^a ^ nu~^b has constant coefficients.
struct TDualPair {
  std::string name;
  ModelPtr source, target;
  std::vector<std::string> source_fiber, target_fiber;  // frame vector names
  std::vector<std::vector<GaussianRational>> pairing;   // f_ab
  DifferentialForm source_twist, target_twist;
};

/// Checks the frame correspondence, invertibility of f and
/// dF = p~* H~ - p* H on the correspondence coframe.
void validate(const TDualPair& d);

/// Shipped pairs ("hopf", "heisenberg").
TDualPair builtin_dual_pair(const std::string& name);
std::vector<std::string> builtin_dual_pairs();
TDualPair dual_pair_from_section(const Section& s, const ModelResolver& models = {});

/// The same correspondence read from the target side: fibers and twists
/// exchanged, pairing transposed.
TDualPair inverse_pair(const TDualPair& d);

/// M x S^1 and M x S^1~ with F = -dt ^ dt~.
TDualPair trivial_circle_pair(const ModelPtr& base);

/// The pairing as a form on the correspondence coframe: source coframe, then
/// the target fiber coframe.
DifferentialForm correspondence_pairing(const TDualPair& d);

/// Coefficients unchanged along the fiber derivations.
bool is_invariant(const TDualPair& d, const FunctionElement& u);
bool is_invariant(const TDualPair& d, const GenSection& x);
bool is_invariant(const TDualPair& d, const DifferentialForm& rho);

/// Same values on the basic generators, for evaluating transported data.
Point transport_point(const TDualPair& d, const Point& p);

GenSection phi_f(const TDualPair& d, const GenSection& x);
/// Fiber integral of e^F ^ rho. The fiber coframe is moved to the right
/// before its coefficient is read off.
DifferentialForm tau_f(const TDualPair& d, const DifferentialForm& rho);
/// Matrix of phi_F on the generators (source columns, target rows).
Matrix phi_f_matrix(const TDualPair& d);

ContactPair dualize(const TDualPair& d, const ContactPair& pair);
ContactTriple dualize(const TDualPair& d, const ContactTriple& triple);
MixedPair dualize(const TDualPair& d, const MixedPair& mp);

struct IntertwinerReport {
  std::size_t pairing_failures = 0;
  std::size_t bracket_failures = 0;
  std::size_t bracket_pairs = 0;  // invariant pairs compared
  std::size_t clifford_failures = 0;
  std::size_t chain_failures = 0;
  std::vector<std::string> messages;
  bool ok() const { return pairing_failures + bracket_failures + clifford_failures + chain_failures == 0; }
};

/// On the generators: <phi v, phi w> = <v, w>; phi [v, w]_H = [phi v, phi w]_H~
/// for pairs whose bracket with every fiber vector vanishes; for each form,
/// tau(v . rho) = phi(v) . tau(rho) and tau(d_H rho) = d_H~ tau(rho).
IntertwinerReport intertwiner_check(const TDualPair& d, const std::vector<DifferentialForm>& forms);

/// rho(p) = c e^B ^ Omega with Omega the lowest-degree component; B solved
/// from the next component at the point.
struct SpinorPresentation {
  DifferentialForm b;
  DifferentialForm omega;
};
SpinorPresentation presentation_at(const FrameModel& model, const DifferentialForm& rho, const Point& p);

/// Smallest j with the fiber integral of (F + B)^j Omega nonzero at the point.
unsigned integral_order_at(const TDualPair& d, const DifferentialForm& rho, const Point& p);

struct TypeChangeRow {
  std::string point;
  unsigned p_e = 0, t_l = 0;
  unsigned dual_p_e = 0, dual_t_l = 0;
  unsigned j1 = 0, j2 = 0, k = 0;
  bool basic_anchors_vanish = false;  // pi_* a(E) = 0 = pi_* a(phi E)
};

/// Type accounting under the duality, asserting t~ - t = j1 + j2 - k, the
/// per-spinor rule type(tau rho) = type(rho) + 2j - k and the p_E rule.
/// Violations throw std::logic_error.
std::vector<TypeChangeRow> type_change_report(const TDualPair& d, const MixedPair& mp, const ContactPair& pair);

struct DoubleDualityReport {
  GaussianRational phase;           // tau(rho) = phase (rho2 + i dt~ rho1)
  GaussianRational predicted_phase; // i (-1)^deg(rho2)
  bool swapped = false;
};

/// Trivial circle duality of rho1 + i dt rho2 on M x S^1.
DoubleDualityReport double_duality_check(const MixedPair& mp);

}  // namespace gencontact
