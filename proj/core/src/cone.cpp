#include "gencontact/cone.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

#include "gencontact/errors.hpp"

namespace gencontact {

namespace {

// sqrt(1 + lambda^2) for a real rational lambda.
GaussianRational cone_factor(const GaussianRational& lambda) {
  if (!lambda.is_real()) throw ValidationError("lambda is not real");
  const mpq_class s = 1 + lambda.real() * lambda.real();
  mpz_class num = s.get_num(), den = s.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0 || mpz_perfect_square_p(den.get_mpz_t()) == 0) {
    throw ValidationError("sqrt(1 + lambda^2) is not rational for lambda = " + lambda.to_string());
  }
  mpz_sqrt(num.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(den.get_mpz_t(), den.get_mpz_t());
  return GaussianRational(mpq_class(num, den));
}

Matrix from_images(const std::vector<GenSection>& images) {
  std::vector<Column> cols;
  for (const auto& x : images) cols.push_back(x.as_column());
  return Matrix::from_columns(cols, images.empty() ? 0 : 2 * images.front().dim());
}

FunctionElement constant(const ModelPtr& m, const GaussianRational& c) { return FunctionElement(m->context(), c); }

}  // namespace

void validate(const SekiyaQuadruple& q) {
  if (!q.model) throw ValidationError("quadruple without a model");
  const FrameModel& model = *q.model;
  const unsigned m = model.dim();
  if (q.phi.rows() != 2 * m || q.phi.cols() != 2 * m) throw ValidationError("Phi has the wrong size");
  cone_factor(q.lambda);
  const FunctionElement half = constant(q.model, GaussianRational(mpq_class(1, 2)));
  if (!inner_product(q.e1, q.e1).is_zero()) throw ValidationError("e1 is not isotropic");
  if (!inner_product(q.e2, q.e2).is_zero()) throw ValidationError("e2 is not isotropic");
  if (inner_product(q.e1, q.e2) != half) throw ValidationError("<e1, e2> is not 1/2");
  const Matrix g = pairing_matrix(m);
  if (!(q.phi.transposed() * g + g * q.phi).is_zero()) throw ValidationError("Phi is not skew for the pairing");
  const FunctionElement lam = constant(q.model, q.lambda);
  GenSection r1 = apply(q.phi, q.e1) - q.e1.scaled(lam);
  if (!r1.is_zero()) throw ValidationError("Phi(e1) - lambda e1 = " + r1.to_string(model));
  GenSection r2 = apply(q.phi, q.e2) + q.e2.scaled(lam);
  if (!r2.is_zero()) throw ValidationError("Phi(e2) + lambda e2 = " + r2.to_string(model));
  const FunctionElement k = constant(q.model, GaussianRational(2) * (GaussianRational(1) + q.lambda * q.lambda));
  for (const auto& x : GenSection::generators(model)) {
    GenSection expected = -x + (q.e1.scaled(inner_product(x, q.e2)) + q.e2.scaled(inner_product(x, q.e1))).scaled(k);
    GenSection r = apply(q.phi, apply(q.phi, x)) - expected;
    if (!r.is_zero()) throw ValidationError("Phi^2 residual on " + x.to_string(model) + ": " + r.to_string(model));
  }
}

SekiyaQuadruple sekiya_from_triple(const ContactTriple& t, const GaussianRational& lambda) {
  const FunctionElement two(2);
  const FunctionElement lam = constant(t.model, lambda);
  std::vector<GenSection> images;
  for (const auto& x : GenSection::generators(*t.model)) {
    GenSection k = t.e1.scaled(two * inner_product(x, t.e2)) - t.e2.scaled(two * inner_product(x, t.e1));
    images.push_back(apply(t.phi, x) + k.scaled(lam));
  }
  SekiyaQuadruple q{t.model, from_images(images), t.e1, t.e2, lambda};
  validate(q);
  return q;
}

ContactTriple triple_from_sekiya(const SekiyaQuadruple& q) {
  if (!q.lambda.is_zero()) throw ValidationError("lambda is not zero");
  ContactTriple t{q.model, q.phi, q.e1, q.e2};
  validate(t);
  return t;
}

ModelPtr cone_model(const ModelPtr& base) {
  static std::mutex mu;
  static std::map<const FrameModel*, std::pair<std::weak_ptr<const FrameModel>, ModelPtr>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(base.get());
  if (it != cache.end() && !it->second.first.expired() && it->second.first.lock() == base) return it->second.second;
  ModelPtr cone = extend_by_line(base, "-cone", "Dt", "dt");
  cache[base.get()] = {base, cone};
  return cone;
}

GenSection to_cone(const GenSection& x) {
  Column v = x.vec(), f = x.form();
  v.emplace_back(GaussianRational(0));
  f.emplace_back(GaussianRational(0));
  return GenSection(std::move(v), std::move(f));
}

GenSection to_base(const GenSection& x) {
  if (!x.vec().back().is_zero() || !x.form().back().is_zero()) throw ValidationError("section has cone components");
  Column v(x.vec().begin(), x.vec().end() - 1), f(x.form().begin(), x.form().end() - 1);
  return GenSection(std::move(v), std::move(f));
}

ConeStructure sekiya_to_cone(const SekiyaQuadruple& q) {
  validate(q);
  const ModelPtr cone = cone_model(q.model);
  const unsigned m = q.model->dim();
  const FunctionElement lam = constant(q.model, q.lambda);
  const FunctionElement mu = constant(q.model, cone_factor(q.lambda));
  const FunctionElement two(2);
  const GenSection dt_vec = GenSection::basis_vector(*cone, m);
  const GenSection dt_form = GenSection::basis_form(*cone, m);
  const GenSection e1 = to_cone(q.e1), e2 = to_cone(q.e2);
  const GenSection je1 = e1.scaled(lam) - dt_vec.scaled(mu);
  const GenSection je2 = -e2.scaled(lam) - dt_form.scaled(mu);
  std::vector<GenSection> images;
  for (const auto& x : GenSection::generators(*q.model)) {
    const GenSection perp = project_off(x, q.e1, q.e2);
    images.push_back(to_cone(apply(q.phi, perp)) + je1.scaled(two * inner_product(x, q.e2)) +
                     je2.scaled(two * inner_product(x, q.e1)));
  }
  // Cone generators are ordered vectors (base, Dt) then forms (base, dt).
  std::vector<GenSection> out(images.begin(), images.begin() + m);
  out.push_back(e1.scaled(mu) - dt_vec.scaled(lam));
  out.insert(out.end(), images.begin() + m, images.end());
  out.push_back(e2.scaled(mu) + dt_form.scaled(lam));
  ConeStructure c{q.model, cone, from_images(out)};
  validate(c);
  return c;
}

SekiyaQuadruple cone_to_sekiya(const ConeStructure& c) {
  validate(c);
  const FrameModel& cone = *c.cone;
  const unsigned m = c.base->dim();
  const FunctionElement two(2);
  const GenSection dt_vec = GenSection::basis_vector(cone, m);
  const GenSection dt_form = GenSection::basis_form(cone, m);
  const GenSection j_vec = apply(c.j, dt_vec);
  const GenSection j_form = apply(c.j, dt_form);
  const FunctionElement lam = two * inner_product(j_form, dt_vec);
  if (!lam.is_constant()) throw ValidationError("lambda = 2<J dt, Dt> is not constant: " + lam.to_string());
  const GaussianRational lambda = lam.constant_value();
  const FunctionElement inv_mu = constant(c.base, GaussianRational(1) / cone_factor(lambda));
  const GenSection e1 = to_base((j_vec + dt_vec.scaled(lam)).scaled(inv_mu));
  const GenSection e2 = to_base((j_form - dt_form.scaled(lam)).scaled(inv_mu));
  std::vector<GenSection> images;
  for (const auto& x : GenSection::generators(*c.base)) {
    const GenSection jx = apply(c.j, to_cone(x));
    images.push_back(to_base(jx - dt_form.scaled(two * inner_product(dt_vec, jx)) -
                             dt_vec.scaled(two * inner_product(dt_form, jx))));
  }
  SekiyaQuadruple q{c.base, from_images(images), e1, e2, lambda};
  validate(q);
  return q;
}

void validate(const ConeStructure& c) {
  if (!c.base || !c.cone) throw ValidationError("cone structure without a model");
  const unsigned n = c.cone->dim();
  if (n != c.base->dim() + 1 || c.j.rows() != 2 * n || c.j.cols() != 2 * n) throw ValidationError("J has the wrong size");
  if (!(c.j * c.j + Matrix::identity(2 * n)).is_zero()) throw ValidationError("J^2 != -1");
  const Matrix g = pairing_matrix(n);
  if (!(c.j.transposed() * g + g * c.j).is_zero()) throw ValidationError("J is not skew for the pairing");
}

bool in_sek0(const ConeStructure& c) {
  const unsigned m = c.base->dim();
  for (const auto& x : {GenSection::basis_vector(*c.cone, m), GenSection::basis_form(*c.cone, m)}) {
    const GenSection jx = apply(c.j, x);
    if (!jx.vec().back().is_zero() || !jx.form().back().is_zero()) return false;
  }
  return true;
}

std::vector<GenSection> eigenbundle(const ConeStructure& c) {
  const FunctionElement i(GaussianRational::i());
  std::vector<GenSection> out;
  for (const auto& x : GenSection::generators(*c.cone)) {
    GenSection y = x - apply(c.j, x).scaled(i);
    if (!y.is_zero()) out.push_back(std::move(y));
  }
  return out;
}

std::vector<ConeTypeRow> cone_type(const ContactPair& pair, const ConeStructure& c) {
  const unsigned m = c.base->dim();
  const auto lj = eigenbundle(c);
  const GenSection jdt = apply(c.j, GenSection::basis_form(*c.cone, m));
  std::vector<GenSection> l_cone;
  for (const auto& l : pair.l) l_cone.push_back(to_cone(l));
  std::vector<ConeTypeRow> out;
  for (const auto& p : c.base->points()) {
    ConeTypeRow row;
    row.point = p.label;
    row.t_l = m - static_cast<unsigned>(anchor_rank_at(pair.l, p));
    row.t_j = m + 1 - static_cast<unsigned>(anchor_rank_at(lj, p));
    std::vector<GenSection> with = l_cone;
    with.push_back(jdt);
    row.jdt_in_al = anchor_rank_at(with, p) == anchor_rank_at(l_cone, p);
    if (row.t_j > row.t_l || row.t_l - row.t_j > 1) {
      throw std::logic_error("t_L - t_J out of [0, 1] at " + p.label);
    }
    if ((row.t_j == row.t_l) != row.jdt_in_al) throw std::logic_error("t_J = t_L criterion fails at " + p.label);
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace gencontact
