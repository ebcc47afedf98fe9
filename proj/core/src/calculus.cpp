#include "gencontact/calculus.hpp"

#include "gencontact/errors.hpp"

namespace gencontact {

DifferentialForm differential(const FrameModel& model, const FunctionElement& u) {
  DifferentialForm out = model.zero_form();
  if (u.is_zero() || u.is_constant()) return out;
  for (std::size_t a = 0; a < model.dim(); ++a) out.add(Mask{1} << a, model.act(a, u));
  return out;
}

namespace {

// d(alpha^I) by the graded Leibniz rule.
DifferentialForm d_of_word(const FrameModel& model, Mask word) {
  DifferentialForm out = model.zero_form();
  const ContextPtr& ctx = model.context();
  const unsigned m = model.dim();
  unsigned position = 0;
  for (std::size_t a = 0; a < m; ++a) {
    const Mask bit = Mask{1} << a;
    if ((word & bit) == 0) continue;
    const Mask left = word & (bit - 1);
    const Mask right = word & ~(bit | (bit - 1));
    const DifferentialForm& da = model.coframe_differential(a);
    if (!da.is_zero()) {
      DifferentialForm piece = DifferentialForm::monomial(ctx, m, left)
                                   .wedge(da)
                                   .wedge(DifferentialForm::monomial(ctx, m, right));
      out += (position % 2 == 0) ? piece : -piece;
    }
    ++position;
  }
  return out;
}

}  // namespace

DifferentialForm exterior_derivative(const FrameModel& model, const DifferentialForm& form) {
  DifferentialForm out = model.zero_form();
  const ContextPtr& ctx = model.context();
  for (const auto& [word, u] : form.terms()) {
    out += differential(model, u).wedge(DifferentialForm::monomial(ctx, model.dim(), word));
    out += d_of_word(model, word).scaled(u);
  }
  return out;
}

Column vector_bracket(const FrameModel& model, const Column& x, const Column& y) {
  const std::size_t m = model.dim();
  Column out = model.zero_column();
  for (std::size_t e = 0; e < m; ++e) {
    if (!y[e].is_zero()) out[e] += model.act(x, y[e]);
    if (!x[e].is_zero()) out[e] -= model.act(y, x[e]);
  }
  for (std::size_t a = 0; a < m; ++a) {
    if (x[a].is_zero()) continue;
    for (std::size_t b = 0; b < m; ++b) {
      if (y[b].is_zero() || a == b) continue;
      const FunctionElement xy = x[a] * y[b];
      for (std::size_t e = 0; e < m; ++e) {
        const auto& c = model.structure(a, b, e);
        if (!c.is_zero()) out[e] += xy * c;
      }
    }
  }
  return out;
}

DifferentialForm lie_derivative(const FrameModel& model, const Column& x, const DifferentialForm& form) {
  return exterior_derivative(model, form).interior(x) + exterior_derivative(model, form.interior(x));
}

FunctionElement pair_form_vector(const Column& form, const Column& vec) {
  if (form.size() != vec.size()) throw Error("pairing size mismatch");
  FunctionElement out;
  for (std::size_t a = 0; a < form.size(); ++a) {
    if (!form[a].is_zero() && !vec[a].is_zero()) out += form[a] * vec[a];
  }
  return out;
}

}  // namespace gencontact
