#pragma once

#include "gencontact/frame_model.hpp"

namespace gencontact {

/// du = sum_a X_a(u) alpha^a.
DifferentialForm differential(const FrameModel& model, const FunctionElement& u);

/// Exterior derivative from the coframe differential table and the Leibniz rule.
DifferentialForm exterior_derivative(const FrameModel& model, const DifferentialForm& form);

/// Lie bracket of vector fields written in the frame.
Column vector_bracket(const FrameModel& model, const Column& x, const Column& y);

/// L_X = i_X d + d i_X.
DifferentialForm lie_derivative(const FrameModel& model, const Column& x, const DifferentialForm& form);

/// alpha(X) for a 1-form given by coefficients.
FunctionElement pair_form_vector(const Column& form, const Column& vec);

}  // namespace gencontact
