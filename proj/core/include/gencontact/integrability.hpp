#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gencontact/contact.hpp"

namespace gencontact {

enum class Verdict { Pass, Fail, Inconclusive };
std::string to_string(Verdict v);

/// A nonzero value of one of the three normality conditions.
struct NormalityFailure {
  std::string condition;  // "nijenhuis", "e-invariance" or "frame-bracket"
  std::string argument;   // the generators it was evaluated on
  GenSection value;
};

struct NormalityReport {
  bool normal = true;
  std::vector<NormalityFailure> failures;
  /// Nonzero coefficients of [e1, e2], the frame-bracket condition.
  std::vector<FunctionElement> frame_bracket_coefficients;
};

/// Decides normality of a triple through three conditions on a frame of the
/// orthogonal complement x of E: the Nijenhuis-type expression
/// [Phi x, Phi y] - [x, y] - Phi([Phi x, y] + [x, Phi y]), the commutation
/// Phi [x, e_i] = [Phi x, e_i], and [e1, e2] = 0.
NormalityReport normality_check(const ContactTriple& triple, const DifferentialForm* twist = nullptr);

struct LineResult {
  std::string line;  // "e1", "e2" or "extra1", ...
  bool involutive = true;
  /// <[x, y], w> for generators x, y, w of L + C line that do not vanish.
  std::vector<FunctionElement> obstructions;
};

struct IntegrabilityReport {
  bool integrable = false;  // some line is involutive
  bool strong = false;      // every line tried is involutive
  std::vector<LineResult> lines;
  /// Canonical real polynomials whose vanishing is equivalent to strong
  /// integrability on the lines tried.
  std::vector<FunctionElement> certificates;
};

/// Tests L + C e1, L + C e2 (normalised frame) and each extra isotropic
/// section of E for involutivity. On a maximal isotropic subbundle the
/// obstruction <[x, y], w> is tensorial and totally skew, so it is evaluated
/// on generators only.
IntegrabilityReport integrability_check(const ContactPair& pair, const DifferentialForm* twist = nullptr,
                                        const std::vector<GenSection>& extra_lines = {});

/// Splits into real and imaginary parts, drops elements that are Q-linear
/// combinations of monomial multiples (degree <= 2) of simpler ones, then
/// row-reduces over Q with pivots on the lowest-degree monomials and makes
/// every element monic.
std::vector<FunctionElement> canonical_certificates(const std::vector<FunctionElement>& scalars);

struct NormalFrameReport {
  Verdict verdict = Verdict::Inconclusive;
  /// u with [e1, e2] = du - 2<e1, du> e2 - 2<e2, du> e1.
  std::optional<FunctionElement> potential;
  std::string detail;
};

/// Normality through the frame bracket: strong integrability, then a
/// potential u of degree <= 2 for [e1, e2] in the normalised frame.
NormalFrameReport normal_frame_criterion(const ContactPair& pair, const DifferentialForm* twist = nullptr);

}  // namespace gencontact
