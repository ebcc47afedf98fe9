#include "gencontact/contact.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "gencontact/errors.hpp"
#include "gencontact/spinor.hpp"

namespace gencontact {

namespace {

const GaussianRational kHalf(mpq_class(1, 2));

FunctionElement half(const FrameModel& model) { return FunctionElement(model.context(), kHalf); }

std::string at_point(const Point& p) { return " at point '" + p.label + "'"; }

bool is_real(const GenSection& x) { return x == x.conj(); }

// Rational square root of a non-negative rational, if any.
std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
  if (sgn(q) < 0) return std::nullopt;
  mpz_class n = q.get_num(), d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  return mpq_class(rn, rd);
}

// Scalar multiple k e0 + l e1 from a kernel vector of a 2-column matrix.
GenSection combine(const std::array<GenSection, 2>& e, const Column& k) {
  return e[0].scaled(k[0]) + e[1].scaled(k[1]);
}

Matrix block(const Matrix& m, std::size_t r0, std::size_t c0, std::size_t n) {
  Matrix out(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) out(r, c) = m(r0 + r, c0 + c);
  }
  return out;
}

// 2-form with coefficient omega(a, b) on alpha^a ^ alpha^b.
DifferentialForm two_form(const FrameModel& model, const std::function<FunctionElement(std::size_t, std::size_t)>& omega) {
  DifferentialForm out = model.zero_form();
  for (std::size_t a = 0; a < model.dim(); ++a) {
    for (std::size_t b = a + 1; b < model.dim(); ++b) {
      FunctionElement c = omega(a, b);
      if (!c.is_zero()) out.add((Mask(1) << a) | (Mask(1) << b), c);
    }
  }
  return out;
}

Matrix outer(const GenSection& x, const Column& row) {
  const Column col = x.as_column();
  Matrix out(col.size(), row.size());
  for (std::size_t r = 0; r < col.size(); ++r) {
    for (std::size_t c = 0; c < row.size(); ++c) out(r, c) = col[r] * row[c];
  }
  return out;
}

// Row vector y^T G.
Column covector(const GenSection& y, const Matrix& g) {
  const Column col = y.as_column();
  Column out(col.size(), FunctionElement(0));
  for (std::size_t c = 0; c < col.size(); ++c) {
    for (std::size_t r = 0; r < col.size(); ++r) {
      if (!g(r, c).is_zero()) out[c] += col[r] * g(r, c);
    }
  }
  return out;
}

}  // namespace

Matrix pairing_matrix(unsigned dim) {
  Matrix g(2 * dim, 2 * dim);
  for (unsigned a = 0; a < dim; ++a) {
    g(a, dim + a) = FunctionElement(kHalf);
    g(dim + a, a) = FunctionElement(kHalf);
  }
  return g;
}

GenSection apply(const Matrix& phi, const GenSection& x) { return GenSection::from_column(phi.apply(x.as_column())); }

Matrix conj(const Matrix& a) {
  Matrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c).conj();
  }
  return out;
}

GenSection project_off(const GenSection& x, const GenSection& e1, const GenSection& e2) {
  const FunctionElement two(2);
  return x - e1.scaled(two * inner_product(x, e2)) - e2.scaled(two * inner_product(x, e1));
}

PhiBlocks phi_blocks(const Matrix& phi) {
  const std::size_t m = phi.rows() / 2;
  return {block(phi, 0, 0, m), block(phi, 0, m, m), block(phi, m, 0, m), block(phi, m, m, m)};
}

Matrix from_blocks(const PhiBlocks& b) {
  const std::size_t m = b.a.rows();
  Matrix out(2 * m, 2 * m);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < m; ++c) {
      out(r, c) = b.a(r, c);
      out(r, m + c) = b.b(r, c);
      out(m + r, c) = b.c(r, c);
      out(m + r, m + c) = b.d(r, c);
    }
  }
  return out;
}

Matrix b_transform_matrix(const FrameModel& model, const DifferentialForm& omega) {
  std::vector<Column> cols;
  for (const auto& u : GenSection::generators(model)) cols.push_back(b_transform(model, omega, u).as_column());
  return Matrix::from_columns(cols, 2 * model.dim());
}

ContactPair b_transform(const ContactPair& pair, const DifferentialForm& omega) {
  ContactPair out = pair;
  for (auto& x : out.e) x = b_transform(*pair.model, omega, x);
  for (auto& x : out.l) x = b_transform(*pair.model, omega, x);
  return out;
}

ContactTriple b_transform(const ContactTriple& triple, const DifferentialForm& omega) {
  const FrameModel& model = *triple.model;
  ContactTriple out = triple;
  out.phi = b_transform_matrix(model, omega) * triple.phi * b_transform_matrix(model, -omega);
  out.e1 = b_transform(model, omega, triple.e1);
  out.e2 = b_transform(model, omega, triple.e2);
  return out;
}

void validate(const ContactPair& pair) {
  if (!pair.model) throw ValidationError("pair without a model");
  const FrameModel& model = *pair.model;
  const unsigned m = model.dim();
  if (m % 2 == 0) throw ValidationError("generalized almost contact structures need an odd-dimensional model");
  for (const auto& x : pair.e) {
    if (x.dim() != m) throw ValidationError("E generator has the wrong dimension");
    if (!is_real(x)) throw ValidationError("E generator is not real: " + x.to_string(model));
  }
  const FunctionElement a = inner_product(pair.e[0], pair.e[0]);
  const FunctionElement b = inner_product(pair.e[0], pair.e[1]);
  const FunctionElement c = inner_product(pair.e[1], pair.e[1]);
  const FunctionElement det = a * c - b * b;
  if (det.is_zero()) throw ValidationError("pairing on E is degenerate");
  for (const auto& p : model.points()) {
    const FunctionElement v = det.evaluate(p);
    if (v.is_zero()) throw ValidationError("pairing on E is degenerate" + at_point(p));
    if (v.is_constant() && sgn(v.constant_value().real()) >= 0) {
      throw ValidationError("pairing on E does not have signature (1,1)" + at_point(p));
    }
  }
  if (pair.l.size() + 1 != m) {
    throw ValidationError("L needs " + std::to_string(m - 1) + " generators, got " + std::to_string(pair.l.size()));
  }
  for (std::size_t j = 0; j < pair.l.size(); ++j) {
    if (pair.l[j].dim() != m) throw ValidationError("L generator has the wrong dimension");
    for (std::size_t k = j; k < pair.l.size(); ++k) {
      if (!inner_product(pair.l[j], pair.l[k]).is_zero()) {
        throw ValidationError("L is not isotropic: <l" + std::to_string(j + 1) + ", l" + std::to_string(k + 1) +
                              "> = " + inner_product(pair.l[j], pair.l[k]).to_string());
      }
    }
    for (std::size_t i = 0; i < 2; ++i) {
      if (!inner_product(pair.l[j], pair.e[i]).is_zero()) {
        throw ValidationError("L is not orthogonal to E: <l" + std::to_string(j + 1) + ", e" + std::to_string(i + 1) +
                              "> = " + inner_product(pair.l[j], pair.e[i]).to_string());
      }
    }
  }
  std::vector<GenSection> both = pair.l;
  for (const auto& x : pair.l) both.push_back(x.conj());
  if (section_rank(both) != 2 * pair.l.size()) throw ValidationError("L meets its conjugate");
  for (const auto& p : model.points()) {
    if (section_rank_at(both, p) != 2 * pair.l.size()) {
      throw ValidationError("L meets its conjugate or drops rank" + at_point(p));
    }
  }
}

void validate(const ContactTriple& t) {
  if (!t.model) throw ValidationError("triple without a model");
  const FrameModel& model = *t.model;
  const unsigned m = model.dim();
  if (t.phi.rows() != 2 * m || t.phi.cols() != 2 * m) throw ValidationError("Phi has the wrong size");
  if (!is_real(t.e1) || !is_real(t.e2)) throw ValidationError("e1 or e2 is not real");
  if (!(t.phi == conj(t.phi))) throw ValidationError("Phi is not real");
  if (!inner_product(t.e1, t.e1).is_zero()) throw ValidationError("e1 is not isotropic");
  if (!inner_product(t.e2, t.e2).is_zero()) throw ValidationError("e2 is not isotropic");
  if (inner_product(t.e1, t.e2) != half(model)) throw ValidationError("<e1, e2> is not 1/2");
  const Matrix g = pairing_matrix(m);
  if (!(t.phi.transposed() * g + g * t.phi).is_zero()) throw ValidationError("Phi is not skew for the pairing");
  if (!apply(t.phi, t.e1).is_zero()) throw ValidationError("Phi(e1) != 0");
  if (!apply(t.phi, t.e2).is_zero()) throw ValidationError("Phi(e2) != 0");
  const FunctionElement two(2);
  Matrix expected = Matrix::identity(2 * m).scaled(FunctionElement(-1)) +
                    (outer(t.e2, covector(t.e1, g)) + outer(t.e1, covector(t.e2, g))).scaled(two);
  const Matrix sq = t.phi * t.phi;
  for (std::size_t c = 0; c < 2 * m; ++c) {
    for (std::size_t r = 0; r < 2 * m; ++r) {
      if (sq(r, c) != expected(r, c)) {
        throw ValidationError("Phi^2 != -1 + e1 (x) e2 + e2 (x) e1 on generator " +
                              GenSection::generators(model)[c].to_string(model));
      }
    }
  }
}

std::array<GenSection, 2> normalized_frame(const ContactPair& pair, const FrameChoice& choice) {
  const auto& e = pair.e;
  GenSection a, b;
  const FunctionElement p00 = inner_product(e[0], e[0]);
  const FunctionElement p11 = inner_product(e[1], e[1]);
  if (p00.is_zero()) {
    a = e[0];
    b = e[1];
  } else if (p11.is_zero()) {
    a = e[1];
    b = e[0];
  } else {
    // Isotropic e0 + k e1 with constant k: p11 k^2 + 2 p01 k + p00 = 0.
    const FunctionElement p01 = inner_product(e[0], e[1]);
    if (!p00.is_constant() || !p01.is_constant() || !p11.is_constant()) {
      throw ValidationError("E has no isotropic generator; give one of the two generators isotropic");
    }
    const mpq_class x = p00.constant_value().real(), y = p01.constant_value().real(), z = p11.constant_value().real();
    auto root = rational_sqrt(y * y - x * z);
    if (!root) throw ValidationError("isotropic lines of E are not rational; give an isotropic generator");
    const mpq_class k = (-y + *root) / z;
    a = e[0] + e[1].scaled(FunctionElement(pair.model->context(), GaussianRational(k)));
    b = e[1];
  }
  const FunctionElement ab = inner_product(a, b);
  auto inv = ab.scaled(GaussianRational(2)).try_inverse();
  if (!inv) throw NotPolynomial("<e1, e2> is not invertible: " + ab.to_string());
  // b' = b - <b,b>/(2<a,b>) a, then e2 = b' / (2<a,b>).
  GenSection bp = b - a.scaled(inner_product(b, b) * *inv);
  std::array<GenSection, 2> out{a, bp.scaled(*inv)};
  if (choice.swap) std::swap(out[0], out[1]);
  if (!(choice.scale == FunctionElement(1))) {
    auto sinv = choice.scale.try_inverse();
    if (!sinv) throw ValidationError("frame scale is not invertible");
    out[0] = out[0].scaled(choice.scale);
    out[1] = out[1].scaled(*sinv);
  }
  return out;
}

ContactTriple triple_from_pair(const ContactPair& pair, const FrameChoice& choice) {
  const FrameModel& model = *pair.model;
  const unsigned m = model.dim();
  const auto [e1, e2] = normalized_frame(pair, choice);
  const std::size_t k = pair.l.size();

  std::vector<GenSection> lbar;
  for (const auto& x : pair.l) lbar.push_back(x.conj());
  // M^T c = v with M_jk = <l_j, lbar_k> and v_k = <x, lbar_k>.
  Matrix mt(k, k);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < k; ++i) mt(i, j) = inner_product(pair.l[j], lbar[i]);
  }
  const FunctionElement i2(GaussianRational(0, 2));
  const FunctionElement i1(GaussianRational::i());

  std::vector<Column> cols;
  for (const auto& u : GenSection::generators(model)) {
    const GenSection x = project_off(u, e1, e2);
    Column v(k);
    for (std::size_t j = 0; j < k; ++j) v[j] = inner_product(x, lbar[j]);
    auto res = solve_linear(mt, v);
    if (std::holds_alternative<Inconsistency>(res)) throw ValidationError("L is degenerate against its conjugate");
    const auto& sol = std::get<LinearSolution>(res).values;
    FunctionElement den(model.context(), 1);
    for (const auto& f : sol) {
      if (f.numerator.is_zero() || den.divide_exact(f.denominator)) continue;
      den *= f.denominator;
    }
    GenSection l(model);
    for (std::size_t j = 0; j < k; ++j) {
      if (sol[j].numerator.is_zero()) continue;
      auto q = den.divide_exact(sol[j].denominator);
      if (!q) throw NotPolynomial("Phi: cannot clear denominators");
      l += pair.l[j].scaled(sol[j].numerator * *q);
    }
    Column col = (l.scaled(i2) - x.scaled(i1 * den)).as_column();
    for (auto& entry : col) {
      auto q = entry.divide_exact(den);
      if (!q) throw NotPolynomial("Phi is not polynomial: denominator " + den.to_string());
      entry = *q;
    }
    cols.push_back(std::move(col));
  }
  ContactTriple t{pair.model, Matrix::from_columns(cols, 2 * m), e1, e2};
  if (!(t.phi == conj(t.phi))) throw ValidationError("L does not define a real Phi");
  return t;
}

std::optional<std::vector<GenSection>> independent_subset(const FrameModel& model,
                                                          const std::vector<GenSection>& candidates,
                                                          std::size_t size) {
  std::vector<GenSection> chosen;
  std::size_t budget = 100000;
  std::function<bool(std::size_t)> search = [&](std::size_t from) -> bool {
    if (chosen.size() == size) {
      for (const auto& p : model.points()) {
        if (section_rank_at(chosen, p) != size) return false;
      }
      return true;
    }
    for (std::size_t i = from; i < candidates.size(); ++i) {
      if (candidates.size() - i < size - chosen.size()) return false;
      if (budget == 0) return false;
      --budget;
      chosen.push_back(candidates[i]);
      if (section_rank(chosen) == chosen.size() && search(i + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (search(0)) return chosen;
  return std::nullopt;
}

ContactPair pair_from_triple(const ContactTriple& t) {
  const FrameModel& model = *t.model;
  const FunctionElement i1(GaussianRational::i());
  std::vector<GenSection> candidates;
  for (const auto& u : GenSection::generators(model)) {
    const GenSection x = project_off(u, t.e1, t.e2);
    GenSection c = x - apply(t.phi, x).scaled(i1);
    if (c.is_zero()) continue;
    if (std::find(candidates.begin(), candidates.end(), c) == candidates.end()) candidates.push_back(std::move(c));
  }
  auto l = independent_subset(model, candidates, model.dim() - 1);
  if (!l) throw ValidationError("no frame of the +i eigenbundle is independent at every sample point");
  return ContactPair{t.model, {t.e1, t.e2}, std::move(*l)};
}

std::size_t anchor_rank_at(const std::vector<GenSection>& sections, const Point& p) {
  if (sections.empty()) return 0;
  std::vector<Column> cols;
  for (const auto& s : sections) {
    Column c = s.vec();
    for (auto& u : c) u = u.evaluate(p);
    cols.push_back(std::move(c));
  }
  return rank(Matrix::from_columns(cols, cols.front().size()));
}

std::vector<PointType> geometric_type(const ContactPair& pair) {
  const FrameModel& model = *pair.model;
  const unsigned m = model.dim();
  const unsigned n = (m - 1) / 2;
  std::vector<PointType> out;
  for (const auto& p : model.points()) {
    PointType row{p.label, static_cast<unsigned>(anchor_rank_at({pair.e[0], pair.e[1]}, p)),
                  m - static_cast<unsigned>(anchor_rank_at(pair.l, p))};
    const bool ok = (row.p_e == 1 && row.t_l >= 1 && row.t_l <= n + 1) ||
                    (row.p_e == 2 && row.t_l >= 1 && row.t_l <= n);
    if (!ok) {
      throw std::logic_error("geometric type out of range" + at_point(p) + ": p_E = " + std::to_string(row.p_e) +
                             ", t_L = " + std::to_string(row.t_l));
    }
    out.push_back(row);
  }
  return out;
}

bool same_span(const FrameModel& model, const std::vector<GenSection>& a, const std::vector<GenSection>& b) {
  std::vector<GenSection> both = a;
  both.insert(both.end(), b.begin(), b.end());
  const std::size_t ra = section_rank(a);
  if (section_rank(b) != ra || section_rank(both) != ra) return false;
  for (const auto& p : model.points()) {
    if (!same_span_at(a, b, p)) return false;
  }
  return true;
}

namespace {

// Pure vectors (form_part = false) or pure forms in span(e).
std::vector<GenSection> pure_elements(const std::array<GenSection, 2>& e, bool pure_forms) {
  const Column& c0 = pure_forms ? e[0].vec() : e[0].form();
  const Column& c1 = pure_forms ? e[1].vec() : e[1].form();
  std::vector<GenSection> out;
  for (const auto& k : kernel_basis(Matrix::from_columns({c0, c1}, c0.size()))) {
    GenSection x = combine(e, k);
    if (!x.is_zero()) out.push_back(std::move(x));
  }
  return out;
}

}  // namespace

std::optional<PoonWadeWitness> is_poon_wade(const ContactPair& pair) {
  const auto forms = pure_elements(pair.e, true);
  const auto vectors = pure_elements(pair.e, false);
  if (forms.size() != 1 || vectors.size() != 1) return std::nullopt;
  for (const auto& p : pair.model->points()) {
    if (section_rank_at({vectors[0], forms[0]}, p) != 2) return std::nullopt;
  }
  return PoonWadeWitness{vectors[0], forms[0]};
}

std::optional<CosymplecticData> as_cosymplectic(const ContactTriple& t) {
  const FrameModel& model = *t.model;
  if (!t.e1.is_vector() || !t.e2.is_form()) return std::nullopt;
  const PhiBlocks b = phi_blocks(t.phi);
  if (!b.a.is_zero() || !b.d.is_zero()) return std::nullopt;
  if (!(b.c + b.c.transposed()).is_zero()) return std::nullopt;
  CosymplecticData out{t.e2.one_form(model), two_form(model, [&](std::size_t a, std::size_t c) { return b.c(c, a); }),
                       t.e1.vec()};
  const unsigned n = (model.dim() - 1) / 2;
  DifferentialForm top = out.eta;
  for (unsigned k = 0; k < n; ++k) top = out.theta.wedge(top);
  for (const auto& p : model.points()) {
    if (top.evaluate(p).is_zero()) return std::nullopt;
  }
  return out;
}

std::optional<AlmostContactData> as_almost_contact(const ContactTriple& t) {
  const FrameModel& model = *t.model;
  if (!t.e1.is_vector() || !t.e2.is_form()) return std::nullopt;
  const PhiBlocks b = phi_blocks(t.phi);
  if (!b.b.is_zero() || !b.c.is_zero()) return std::nullopt;
  return AlmostContactData{b.a, t.e1.vec(), t.e2.one_form(model)};
}

ContactTriple almost_contact_triple(const ModelPtr& model, const Matrix& phi, const Column& xi,
                                    const DifferentialForm& eta) {
  const unsigned m = model->dim();
  PhiBlocks b{phi, Matrix(m, m), Matrix(m, m), phi.transposed().scaled(FunctionElement(-1))};
  ContactTriple t{model, from_blocks(b), GenSection::from_vector(*model, xi), GenSection::from_one_form(*model, eta)};
  validate(t);
  return t;
}

Reduction poon_wade_reduce(const ContactPair& pair, ReductionMode mode) {
  const FrameModel& model = *pair.model;
  const unsigned m = model.dim();
  const auto types = geometric_type(pair);
  for (std::size_t i = 0; i < types.size(); ++i) {
    if (types[i].p_e != 1) {
      throw ValidationError("E does not meet T*M in a line" + at_point(model.points()[i]));
    }
  }
  const auto forms = pure_elements(pair.e, true);
  if (forms.size() != 1) throw ValidationError("E does not meet T*M in a line");
  const GenSection& beta = forms[0];
  for (const auto& p : model.points()) {
    if (beta.evaluate(p).is_zero()) throw ValidationError("E meets T*M only generically" + at_point(p));
  }
  std::optional<GenSection> e1;
  for (const auto& u : pair.e) {
    const FunctionElement ub = inner_product(u, beta);
    auto inv = ub.scaled(GaussianRational(2)).try_inverse();
    if (!inv) continue;
    GenSection up = u - beta.scaled(inner_product(u, u) * *inv);
    e1 = up.scaled(*inv);
    break;
  }
  if (!e1) throw NotPolynomial("cannot normalise E against its form part");

  Reduction out;
  out.omega = e1->one_form(model).wedge(beta.one_form(model));
  ContactPair reduced = b_transform(pair, out.omega);
  reduced.e = {b_transform(model, out.omega, *e1), beta};
  if (!reduced.e[0].is_vector()) throw std::logic_error("B-transform did not straighten E");
  ContactTriple triple = triple_from_pair(reduced);

  const unsigned n = (m - 1) / 2;
  if (mode == ReductionMode::Cosymplectic) {
    for (std::size_t i = 0; i < types.size(); ++i) {
      if (types[i].t_l != 1) throw ValidationError("cosymplectic reduction needs t_L = 1" + at_point(model.points()[i]));
    }
    const PhiBlocks b = phi_blocks(triple.phi);
    const Column& xi = triple.e1.vec();
    Matrix stacked(m + 1, m);
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t c = 0; c < m; ++c) stacked(r, c) = b.b(r, c);
    }
    for (std::size_t c = 0; c < m; ++c) stacked(m, c) = xi[c];
    for (const auto& p : model.points()) {
      if (rank(stacked.evaluate(p)) != m) {
        throw ValidationError("the form-to-vector block is not injective on the annihilator of xi" + at_point(p));
      }
    }
    std::vector<Column> gamma;
    for (std::size_t a = 0; a < m; ++a) {
      Column rhs(m + 1, model.zero());
      for (std::size_t r = 0; r < m; ++r) rhs[r] = b.a(r, a);
      auto res = solve_linear(stacked, rhs);
      if (std::holds_alternative<Inconsistency>(res)) {
        throw ValidationError("A X is not in the image of the annihilator of xi");
      }
      Column g;
      for (const auto& f : std::get<LinearSolution>(res).values) {
        auto v = f.as_element();
        if (!v) throw NotPolynomial("cosymplectic reduction: non-polynomial correction");
        g.push_back(*v);
      }
      gamma.push_back(std::move(g));
    }
    const FunctionElement h = half(model);
    const DifferentialForm omega2 =
        two_form(model, [&](std::size_t a, std::size_t c) { return h * (gamma[a][c] - gamma[c][a]); });
    triple = b_transform(triple, omega2);
    reduced = b_transform(reduced, omega2);
    out.omega += omega2;
    if (!as_cosymplectic(triple)) throw std::logic_error("reduction did not reach a cosymplectic triple");
  } else if (mode == ReductionMode::Contact) {
    for (std::size_t i = 0; i < types.size(); ++i) {
      if (types[i].t_l != n + 1) {
        throw ValidationError("almost contact reduction needs t_L = n + 1" + at_point(model.points()[i]));
      }
    }
    const PhiBlocks b = phi_blocks(triple.phi);
    const Matrix k = (b.c * b.a).scaled(half(model));
    if (!(k + k.transposed()).is_zero()) throw std::logic_error("almost contact reduction: C A is not skew");
    const DifferentialForm omega2 = two_form(model, [&](std::size_t a, std::size_t c) { return k(c, a); });
    triple = b_transform(triple, omega2);
    reduced = b_transform(reduced, omega2);
    out.omega += omega2;
    if (!as_almost_contact(triple)) throw std::logic_error("reduction did not reach an almost contact triple");
  }
  out.pair = std::move(reduced);
  out.triple = std::move(triple);
  return out;
}

}  // namespace gencontact
