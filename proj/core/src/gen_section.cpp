#include "gencontact/gen_section.hpp"

#include <algorithm>

#include "gencontact/calculus.hpp"
#include "gencontact/errors.hpp"

namespace gencontact {

GenSection::GenSection(Column vec, Column form) : vec_(std::move(vec)), form_(std::move(form)) {
  if (vec_.size() != form_.size()) throw Error("section parts of different length");
}

GenSection GenSection::basis_vector(const FrameModel& model, std::size_t a) {
  GenSection s(model);
  s.vec_.at(a) = model.one();
  return s;
}

GenSection GenSection::basis_form(const FrameModel& model, std::size_t a) {
  GenSection s(model);
  s.form_.at(a) = model.one();
  return s;
}

GenSection GenSection::from_one_form(const FrameModel& model, const DifferentialForm& one_form) {
  GenSection s(model);
  for (const auto& [m, u] : one_form.terms()) {
    if (mask_degree(m) != 1) throw Error("expected a 1-form");
    s.form_.at(static_cast<std::size_t>(__builtin_ctz(m))) = u;
  }
  return s;
}

GenSection GenSection::from_vector(const FrameModel& model, const Column& vec) {
  GenSection s(model);
  s.vec_ = vec;
  return s;
}

GenSection GenSection::from_column(const Column& column) {
  if (column.size() % 2 != 0) throw Error("section column of odd length");
  const std::size_t m = column.size() / 2;
  return GenSection(Column(column.begin(), column.begin() + static_cast<long>(m)),
                    Column(column.begin() + static_cast<long>(m), column.end()));
}

std::vector<GenSection> GenSection::generators(const FrameModel& model) {
  std::vector<GenSection> out;
  for (std::size_t a = 0; a < model.dim(); ++a) out.push_back(basis_vector(model, a));
  for (std::size_t a = 0; a < model.dim(); ++a) out.push_back(basis_form(model, a));
  return out;
}

Column GenSection::as_column() const {
  Column out = vec_;
  out.insert(out.end(), form_.begin(), form_.end());
  return out;
}

DifferentialForm GenSection::one_form(const FrameModel& model) const {
  DifferentialForm out = model.zero_form();
  for (std::size_t a = 0; a < form_.size(); ++a) out.add(Mask{1} << a, form_[a]);
  return out;
}

bool GenSection::is_zero() const { return is_vector() && is_form(); }

bool GenSection::is_vector() const {
  return std::all_of(form_.begin(), form_.end(), [](const FunctionElement& u) { return u.is_zero(); });
}

bool GenSection::is_form() const {
  return std::all_of(vec_.begin(), vec_.end(), [](const FunctionElement& u) { return u.is_zero(); });
}

GenSection& GenSection::operator+=(const GenSection& o) {
  if (vec_.empty()) {
    *this = o;
    return *this;
  }
  if (o.dim() != dim()) throw Error("sections of different dimension");
  for (std::size_t a = 0; a < dim(); ++a) {
    vec_[a] += o.vec_[a];
    form_[a] += o.form_[a];
  }
  return *this;
}

GenSection& GenSection::operator-=(const GenSection& o) {
  if (vec_.empty()) {
    *this = -o;
    return *this;
  }
  if (o.dim() != dim()) throw Error("sections of different dimension");
  for (std::size_t a = 0; a < dim(); ++a) {
    vec_[a] -= o.vec_[a];
    form_[a] -= o.form_[a];
  }
  return *this;
}

GenSection GenSection::operator-() const {
  GenSection out = *this;
  for (auto& u : out.vec_) u = -u;
  for (auto& u : out.form_) u = -u;
  return out;
}

GenSection GenSection::scaled(const FunctionElement& u) const {
  GenSection out = *this;
  for (auto& v : out.vec_) v *= u;
  for (auto& v : out.form_) v *= u;
  return out;
}

GenSection GenSection::conj() const {
  GenSection out = *this;
  for (auto& v : out.vec_) v = v.conj();
  for (auto& v : out.form_) v = v.conj();
  return out;
}

GenSection GenSection::evaluate(const Point& p) const {
  GenSection out = *this;
  for (auto& v : out.vec_) v = v.evaluate(p);
  for (auto& v : out.form_) v = v.evaluate(p);
  return out;
}

bool operator==(const GenSection& a, const GenSection& b) {
  if (a.dim() != b.dim()) return false;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (a.vec_[i] != b.vec_[i] || a.form_[i] != b.form_[i]) return false;
  }
  return true;
}

std::string GenSection::to_string(const FrameModel& model) const {
  std::string out;
  auto emit = [&](const FunctionElement& u, const std::string& name) {
    if (u.is_zero()) return;
    std::string s = u.to_string();
    std::string term;
    if (s == "1") {
      term = name;
    } else if (s == "-1") {
      term = "-" + name;
    } else if (u.term_count() > 1) {
      term = "(" + s + ")*" + name;
    } else {
      term = s + "*" + name;
    }
    if (out.empty()) {
      out = term;
    } else if (term[0] == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  };
  for (std::size_t a = 0; a < vec_.size(); ++a) emit(vec_[a], model.vector_names()[a]);
  for (std::size_t a = 0; a < form_.size(); ++a) emit(form_[a], model.coframe_names()[a]);
  return out.empty() ? "0" : out;
}

FunctionElement inner_product(const GenSection& x, const GenSection& y) {
  FunctionElement s = pair_form_vector(x.form(), y.vec()) + pair_form_vector(y.form(), x.vec());
  return s.scaled(GaussianRational(mpq_class(1, 2)));
}

GenSection exact_section(const FrameModel& model, const FunctionElement& u) {
  return GenSection::from_one_form(model, differential(model, u));
}

GenSection dorfman(const FrameModel& model, const GenSection& x, const GenSection& y,
                   const DifferentialForm* twist) {
  const Column bracket = vector_bracket(model, x.vec(), y.vec());
  const DifferentialForm xi = x.one_form(model);
  const DifferentialForm eta = y.one_form(model);
  DifferentialForm form = lie_derivative(model, x.vec(), eta) - exterior_derivative(model, xi).interior(y.vec());
  if (twist != nullptr && !twist->is_zero()) form -= twist->interior(y.vec()).interior(x.vec());
  GenSection out = GenSection::from_one_form(model, form);
  out.vec() = bracket;
  for (auto& v : out.vec()) v = v.lift_to(model.context());
  return out;
}

GenSection dorfman_one_form_twist(const FrameModel& model, const GenSection& x, const GenSection& y,
                                  const DifferentialForm& phi) {
  GenSection out = dorfman(model, x, y);
  const Column phi_c = phi.one_form_coefficients();
  const FunctionElement phi_x = pair_form_vector(phi_c, x.vec());
  const FunctionElement phi_y = pair_form_vector(phi_c, y.vec());
  const FunctionElement xi_y = pair_form_vector(x.form(), y.vec());
  for (std::size_t a = 0; a < model.dim(); ++a) {
    out.form()[a] += phi_x * y.form()[a] - phi_y * x.form()[a] + xi_y * phi_c[a];
  }
  return out;
}

GenSection b_transform(const FrameModel& model, const DifferentialForm& omega, const GenSection& x) {
  GenSection out = x;
  const DifferentialForm shift = omega.interior(x.vec());
  const GenSection s = GenSection::from_one_form(model, shift);
  for (std::size_t a = 0; a < model.dim(); ++a) out.form()[a] += s.form()[a];
  return out;
}

DifferentialForm make_twist(const FrameModel& model, const DifferentialForm& h) {
  DifferentialForm lifted = h.lift_to(model.context());
  if (lifted.dim() != model.dim()) lifted = lifted.embedded(model.dim());
  if (!lifted.is_zero() && (!lifted.is_homogeneous() || *lifted.min_degree() != 3)) {
    throw ValidationError("twist is not a 3-form: " + lifted.to_string(model.coframe_names()));
  }
  const DifferentialForm dh = exterior_derivative(model, lifted);
  if (!dh.is_zero()) {
    throw ValidationError("twist is not closed: dH = " + dh.to_string(model.coframe_names()));
  }
  return lifted;
}

bool CourantAxiomReport::ok() const {
  return std::all_of(metric_residuals.begin(), metric_residuals.end(), [](const auto& r) { return r.is_zero(); }) &&
         std::all_of(leibniz_residuals.begin(), leibniz_residuals.end(), [](const auto& r) { return r.is_zero(); }) &&
         std::all_of(symmetry_residuals.begin(), symmetry_residuals.end(), [](const auto& r) { return r.is_zero(); });
}

CourantAxiomReport courant_axioms_check(const FrameModel& model, const std::vector<GenSection>& sections,
                                        const DifferentialForm* twist) {
  if (sections.size() < 3) throw Error("the axiom check needs at least three sections");
  CourantAxiomReport report;
  const std::size_t n = sections.size();
  // Brackets of pairs are reused across triples.
  std::vector<std::vector<GenSection>> br(n, std::vector<GenSection>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) br[i][j] = dorfman(model, sections[i], sections[j], twist);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      GenSection sym = br[i][j] + br[j][i] -
                       exact_section(model, inner_product(sections[i], sections[j])).scaled(FunctionElement(2));
      report.symmetry_residuals.push_back(std::move(sym));
      for (std::size_t k = 0; k < n; ++k) {
        const auto& x = sections[i];
        const auto& y = sections[j];
        const auto& z = sections[k];
        FunctionElement metric = model.act(x.vec(), inner_product(y, z)) - inner_product(br[i][j], z) -
                                 inner_product(y, br[i][k]);
        report.metric_residuals.push_back(std::move(metric));
        GenSection leib = dorfman(model, x, br[j][k], twist) - dorfman(model, br[i][j], z, twist) -
                          dorfman(model, y, br[i][k], twist);
        report.leibniz_residuals.push_back(std::move(leib));
      }
    }
  }
  return report;
}

std::size_t section_rank(const std::vector<GenSection>& sections) {
  if (sections.empty()) return 0;
  std::vector<Column> cols;
  for (const auto& s : sections) cols.push_back(s.as_column());
  return rank(Matrix::from_columns(cols, cols.front().size()));
}

std::size_t section_rank_at(const std::vector<GenSection>& sections, const Point& p) {
  if (sections.empty()) return 0;
  std::vector<Column> cols;
  for (const auto& s : sections) cols.push_back(s.evaluate(p).as_column());
  return rank(Matrix::from_columns(cols, cols.front().size()));
}

}  // namespace gencontact
