#pragma once

#include <vector>

#include "gencontact/gen_section.hpp"

namespace gencontact {

/// (X + xi) . rho = i_X rho + xi ^ rho.
DifferentialForm clifford_act(const FrameModel& model, const GenSection& x, const DifferentialForm& rho);

/// d rho, or the twisted d rho - H ^ rho when a twist is given.
DifferentialForm exterior_d(const FrameModel& model, const DifferentialForm& rho,
                            const DifferentialForm* twist = nullptr);

/// (-1)^(m choose 2) times the top-degree part of reversed(rho1) ^ rho2.
DifferentialForm mukai_pairing(const FrameModel& model, const DifferentialForm& rho1, const DifferentialForm& rho2);

/// Lowest degree with a nonzero coefficient at the point.
unsigned spinor_type_at(const DifferentialForm& rho, const Point& p);

/// Kernel of x |-> x . rho(p) on the complexified fibre, as evaluated sections.
std::vector<GenSection> annihilator_basis_at(const FrameModel& model, const DifferentialForm& rho, const Point& p);

/// Kernel dimension equals the frame dimension.
bool is_pure_at(const FrameModel& model, const DifferentialForm& rho, const Point& p);

/// x . rho == 0 identically.
bool annihilates(const FrameModel& model, const GenSection& x, const DifferentialForm& rho);

/// Generic annihilator of rho over the fraction field, denominators cleared.
std::vector<GenSection> annihilator_basis(const FrameModel& model, const DifferentialForm& rho);

/// A form annihilated by every given section, found as a kernel vector of the
/// joint Clifford action over the fraction field. Returns the zero form when
/// the only common solution is zero.
DifferentialForm common_null_form(const FrameModel& model, const std::vector<GenSection>& sections);

/// True when span(a) == span(b) at the point (exact rank comparison).
bool same_span_at(const std::vector<GenSection>& a, const std::vector<GenSection>& b, const Point& p);

}  // namespace gencontact
