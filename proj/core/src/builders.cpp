#include "gencontact/builders.hpp"

#include <set>

#include "gencontact/builtins.hpp"
#include "gencontact/document.hpp"
#include "gencontact/errors.hpp"
#include "gencontact/expression.hpp"
#include "gencontact/spinor.hpp"

namespace gencontact {

namespace {

const GaussianRational kI = GaussianRational::i();

GenSection vec(const FrameModel& m, std::size_t a) { return GenSection::basis_vector(m, a); }
GenSection form(const FrameModel& m, std::size_t a) { return GenSection::basis_form(m, a); }

FunctionElement constant(const FrameModel& m, const GaussianRational& c) { return FunctionElement(m.context(), c); }

BuiltStructure finish(std::string builder, ContactPair pair, std::optional<DifferentialForm> spinor = std::nullopt) {
  validate(pair);
  ContactTriple triple = triple_from_pair(pair);
  validate(triple);
  geometric_type(pair);
  return BuiltStructure{std::move(builder), std::move(pair), std::move(triple), std::move(spinor)};
}

GenSection embed(const GenSection& x, const FrameModel& target, unsigned shift) {
  GenSection out(target);
  for (std::size_t a = 0; a < x.dim(); ++a) {
    out.vec()[shift + a] = x.vec()[a].lift_to(target.context());
    out.form()[shift + a] = x.form()[a].lift_to(target.context());
  }
  return out;
}

// Solves eta(xi) = 1, i_xi theta = 0 for xi.
Column reeb_field(const FrameModel& model, const DifferentialForm& theta, const DifferentialForm& eta) {
  const unsigned m = model.dim();
  Matrix a(m + 1, m);
  Column rhs(m + 1, model.zero());
  const Column eta_c = eta.one_form_coefficients();
  for (unsigned c = 0; c < m; ++c) {
    a(0, c) = eta_c[c];
    const Column row = theta.interior_basis(c).one_form_coefficients();
    for (unsigned r = 0; r < m; ++r) a(r + 1, c) = row[r];
  }
  rhs[0] = model.one();
  auto res = solve_linear(a, rhs);
  if (std::holds_alternative<Inconsistency>(res)) {
    throw ValidationError("no vector field xi with eta(xi) = 1 and i_xi theta = 0");
  }
  Column xi;
  for (const auto& f : std::get<LinearSolution>(res).values) {
    auto v = f.as_element();
    if (!v) throw NotPolynomial("xi is not polynomial");
    xi.push_back(*v);
  }
  return xi;
}

// Y - i i_Y omega for the given vector fields.
std::vector<GenSection> graph_of(const FrameModel& model, const DifferentialForm& omega,
                                 const std::vector<Column>& fields) {
  std::vector<GenSection> out;
  for (const auto& y : fields) {
    GenSection g = GenSection::from_vector(model, y) -
                   GenSection::from_one_form(model, omega.interior(y)).scaled(constant(model, kI));
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace

BuiltStructure s3_family(const ModelPtr& model, const FunctionElement& f, const FunctionElement& g) {
  const FrameModel& m = *model;
  if (m.dim() != 3) throw ValidationError("sphere family needs a 3-dimensional frame");
  const FunctionElement i(m.context(), kI);
  ContactPair pair;
  pair.model = model;
  pair.e = {-vec(m, 0), -form(m, 0) - vec(m, 1).scaled(f) - vec(m, 2).scaled(g)};
  pair.l = {vec(m, 1) - vec(m, 2).scaled(i), form(m, 2) - vec(m, 0).scaled(g) - (vec(m, 0).scaled(f) - form(m, 1)).scaled(i)};
  const DifferentialForm rho = DifferentialForm::coframe(m.context(), 3, 1).scaled(i) + DifferentialForm::coframe(m.context(), 3, 2);
  return finish("s3-family", std::move(pair), rho);
}

BuiltStructure s3_family(const std::string& h) {
  ModelPtr model = builtin_model("s3");
  Scope scope(model);
  scope.define("z", parse_scalar("x1 + i*x2", scope));
  scope.define("w", parse_scalar("x3 + i*x4", scope));
  const FunctionElement hv = parse_scalar(h, scope);
  return s3_family(model, hv.real_part(), hv.imag_part());
}

BuiltStructure heisenberg_structure(const GaussianRational& b, const GaussianRational& c) {
  if (!b.is_real() || !c.is_real()) throw ValidationError("Heisenberg parameters must be real");
  ModelPtr model = builtin_model("heisenberg");
  const FrameModel& m = *model;
  const FunctionElement i(m.context(), kI), bb = constant(m, b), cc = constant(m, c);
  ContactPair pair;
  pair.model = model;
  pair.e = {vec(m, 0) - vec(m, 1).scaled(cc) + vec(m, 2).scaled(bb), form(m, 0)};
  pair.l = {vec(m, 1) - form(m, 2).scaled(i) + form(m, 0).scaled(i * bb),
            vec(m, 2) + form(m, 1).scaled(i) + form(m, 0).scaled(i * cc)};
  Scope scope(model);
  scope.define("b", bb);
  scope.define("c", cc);
  const DifferentialForm theta = parse_form("a2^a3 + b*a1^a2 + c*a1^a3", scope);
  return finish("heisenberg", std::move(pair), theta.scaled(i).exp());
}

BuiltStructure cosymplectic_structure(const ModelPtr& model, const DifferentialForm& theta,
                                      const DifferentialForm& eta) {
  const FrameModel& m = *model;
  if (!theta.is_homogeneous() || theta.min_degree().value_or(2) != 2) throw ValidationError("theta must be a 2-form");
  if (!eta.is_homogeneous() || eta.min_degree().value_or(1) != 1) throw ValidationError("eta must be a 1-form");
  const Column xi = reeb_field(m, theta, eta);
  const Column eta_c = eta.one_form_coefficients();
  std::vector<Column> fields;
  for (unsigned a = 0; a < m.dim(); ++a) {
    Column y = m.zero_column();
    y[a] = m.one();
    for (unsigned b = 0; b < m.dim(); ++b) y[b] -= eta_c[a] * xi[b];
    fields.push_back(std::move(y));
  }
  auto l = independent_subset(m, graph_of(m, theta, fields), m.dim() - 1);
  if (!l) throw ValidationError("theta is degenerate on the kernel of eta");
  ContactPair pair{model, {GenSection::from_vector(m, xi), GenSection::from_one_form(m, eta)}, std::move(*l)};
  const FunctionElement i(m.context(), kI);
  BuiltStructure out = finish("cosymplectic", std::move(pair), theta.scaled(i).exp());
  if (!as_cosymplectic(out.triple)) throw ValidationError("theta^n ^ eta vanishes at a sample point");
  return out;
}

BuiltStructure almost_contact_structure(const ModelPtr& model, const Matrix& phi, const Column& xi,
                                        const DifferentialForm& eta) {
  ContactTriple triple = almost_contact_triple(model, phi, xi, eta);
  ContactPair pair = pair_from_triple(triple);
  validate(pair);
  geometric_type(pair);
  return BuiltStructure{"almost-contact", std::move(pair), std::move(triple), std::nullopt};
}

BuiltStructure deformation(const BuiltStructure& base, const std::vector<GenSection>& eps) {
  const ContactPair& p = base.pair;
  if (eps.size() != p.l.size()) throw ValidationError("deformation needs one image per generator of L");
  std::vector<GenSection> lbar;
  for (const auto& x : p.l) lbar.push_back(x.conj());
  ContactPair pair = p;
  bool trivial = true;
  for (std::size_t j = 0; j < eps.size(); ++j) {
    if (eps[j].is_zero()) continue;
    trivial = false;
    std::vector<GenSection> with = lbar;
    with.push_back(eps[j]);
    if (section_rank(with) != section_rank(lbar)) {
      throw ValidationError("deformation image of l" + std::to_string(j + 1) + " is not in the conjugate of L");
    }
    pair.l[j] += eps[j];
  }
  try {
    return finish("deformation", std::move(pair), trivial ? base.spinor : std::nullopt);
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("deformation is not admissible: ") + e.what());
  }
}

BuiltStructure product_structure(const BuiltStructure& base, const ModelPtr& second, const DifferentialForm& symplectic,
                                 const std::string& name) {
  ModelPtr model = product_model(base.pair.model, second, name);
  const FrameModel& m = *model;
  const unsigned m1 = base.pair.model->dim();
  const unsigned m2 = second->dim();
  ContactPair pair;
  pair.model = model;
  for (std::size_t k = 0; k < 2; ++k) pair.e[k] = embed(base.pair.e[k], m, 0);
  for (const auto& x : base.pair.l) pair.l.push_back(embed(x, m, 0));
  const DifferentialForm omega = symplectic.lift_to(m.context()).embedded(m1 + m2, m1);
  std::vector<Column> fields;
  for (unsigned a = 0; a < m2; ++a) {
    Column y = m.zero_column();
    y[m1 + a] = m.one();
    fields.push_back(std::move(y));
  }
  for (auto& g : graph_of(m, omega, fields)) pair.l.push_back(std::move(g));
  std::optional<DifferentialForm> spinor;
  if (base.spinor) {
    const FunctionElement i(m.context(), kI);
    spinor = base.spinor->lift_to(m.context()).embedded(m1 + m2).wedge(omega.scaled(i).exp());
  }
  return finish("product", std::move(pair), spinor);
}

namespace {

// phi_a on the 7-dimensional model: cross product on X1..X3 and left
// multiplication by i, j, k on the quaternion block X4..X7.
Matrix triple_phi(const FrameModel& m, int a) {
  Matrix phi(7, 7);
  for (std::size_t r = 0; r < 7; ++r) {
    for (std::size_t c = 0; c < 7; ++c) phi(r, c) = m.zero();
  }
  auto set = [&](int from, int to, long sign) { phi(to, from) = constant(m, sign); };
  const int b = (a + 1) % 3, c = (a + 2) % 3;
  set(b, c, 1);
  set(c, b, -1);
  // 1, i, j, k at 3..6; left multiplication tables.
  static const int table[3][4][2] = {
      {{4, 1}, {3, -1}, {6, 1}, {5, -1}},
      {{5, 1}, {6, -1}, {3, -1}, {4, 1}},
      {{6, 1}, {5, 1}, {4, -1}, {3, -1}},
  };
  for (int q = 0; q < 4; ++q) set(3 + q, table[a][q][0], table[a][q][1]);
  return phi;
}

Matrix signed_permutation(const FrameModel& m, const std::vector<std::pair<std::pair<int, int>, long>>& images) {
  Matrix out = Matrix::identity(14);
  for (const auto& [ft, s] : images) {
    out(ft.first, ft.first) = m.zero();
  }
  for (const auto& [ft, s] : images) out(ft.second, ft.first) = constant(m, s);
  return out;
}

}  // namespace

bool triple_contact_conditions(const TripleContactFamily& fam, const Matrix& phi) {
  const FrameModel& m = *fam.model;
  try {
    validate(ContactTriple{fam.model, phi, fam.e1, fam.e2});
  } catch (const ValidationError&) {
    return false;
  }
  auto in_s = [](std::size_t idx) { return idx < 3 || (idx >= 7 && idx < 10); };
  for (std::size_t c = 0; c < 14; ++c) {
    for (std::size_t r = 0; r < 14; ++r) {
      if (in_s(c) && !in_s(r) && !phi(r, c).is_zero()) return false;  // (ii)
      if (!in_s(c) && phi(r, c) != fam.phi_base(r, c)) return false;  // (iii)
    }
  }
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 0; b < 3; ++b) {
      const FunctionElement lhs = inner_product(apply(phi, vec(m, a)), form(m, b));
      const FunctionElement rhs = inner_product(apply(phi, vec(m, b)), form(m, a));
      if (lhs + rhs != m.zero()) return false;  // (iv)
    }
  }
  return true;
}

TripleContactFamily triple_contact_family(int eta1_sign) {
  TripleContactFamily fam;
  fam.model = builtin_model("triple-contact-7d");
  const FrameModel& m = *fam.model;
  std::array<Matrix, 3> phis{triple_phi(m, 0), triple_phi(m, 1), triple_phi(m, 2)};
  // phi_a phi_b = -delta_ab + eta_b(.) xi_a + eps_abc phi_c
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      Matrix expected = a == b ? Matrix::identity(7).scaled(constant(m, -1)) : Matrix(7, 7);
      expected(a, b) += m.one();
      if (a != b) {
        const int c = 3 - a - b;
        const long sign = ((b - a + 3) % 3 == 1) ? 1 : -1;
        expected = expected + phis[c].scaled(constant(m, sign));
      }
      if (!(phis[a] * phis[b] - expected).is_zero()) {
        throw std::logic_error("triple almost contact relations fail for phi" + std::to_string(a + 1) + " phi" +
                               std::to_string(b + 1));
      }
    }
  }
  const FunctionElement s = FunctionElement::generator(m.context(), "s");
  const FunctionElement hs = s.scaled(GaussianRational(mpq_class(1, 2)));
  fam.e1 = (vec(m, 0) + form(m, 1)).scaled(hs);
  fam.e2 = (vec(m, 1) + form(m, 0)).scaled(hs);

  const Matrix& phi3 = phis[2];
  PhiBlocks base{phi3, Matrix(7, 7), Matrix(7, 7), phi3.transposed().scaled(constant(m, -1))};
  fam.phi_base = from_blocks(base);

  std::vector<Column> cols;
  for (std::size_t k = 0; k < 7; ++k) {
    // Phi0(X_k): eta_a(X_k) = delta_ak.
    GenSection x = GenSection::from_vector(m, phi3.column(k));
    auto d = [&](std::size_t a) { return k == a ? m.one() : m.zero(); };
    x = x - vec(m, 1).scaled(d(0)) + vec(m, 0).scaled(d(1)) +
        (vec(m, 2).scaled(d(0)) - vec(m, 0).scaled(d(2)) - form(m, 2).scaled(d(1)) + form(m, 1).scaled(d(2))).scaled(hs);
    cols.push_back(x.as_column());
  }
  const Matrix phi3_star = phi3.transposed();
  for (std::size_t k = 0; k < 7; ++k) {
    // Phi0(alpha^k): alpha^k(xi_a) = delta_ak.
    GenSection x = GenSection(m.zero_column(), phi3_star.column(k)).scaled(constant(m, -1));
    auto d = [&](std::size_t a) { return k == a ? m.one() : m.zero(); };
    x = x - form(m, 1).scaled(d(0)) + form(m, 0).scaled(d(1) * constant(m, eta1_sign)) +
        (form(m, 2).scaled(d(0)) - form(m, 0).scaled(d(2)) - vec(m, 2).scaled(d(1)) + vec(m, 1).scaled(d(2))).scaled(hs);
    cols.push_back(x.as_column());
  }
  const Matrix phi0 = Matrix::from_columns(cols, 14);

  // sigma flips xi_a, eta_a; tau swaps xi1 <-> xi2, eta1 <-> eta2, xi3 <-> -eta3.
  const Matrix sigma = signed_permutation(m, {{{0, 0}, -1}, {{1, 1}, -1}, {{2, 2}, -1},
                                              {{7, 7}, -1}, {{8, 8}, -1}, {{9, 9}, -1}});
  const Matrix tau = signed_permutation(m, {{{0, 1}, 1}, {{1, 0}, 1}, {{7, 8}, 1}, {{8, 7}, 1},
                                            {{2, 9}, -1}, {{9, 2}, -1}});
  struct Candidate {
    std::string label;
    Matrix g;
  };
  const std::vector<Candidate> candidates{
      {"Phi0", Matrix::identity(14)}, {"sigma Phi0", sigma}, {"tau Phi0", tau}, {"sigma tau Phi0", sigma * tau}};
  for (const auto& cand : candidates) {
    TripleContactMember member{cand.label, "composition", cand.g * phi0, false};
    member.conditions = triple_contact_conditions(fam, member.phi);
    if (!member.conditions) {
      // g is an involution here, so g^-1 = g.
      TripleContactMember conj{cand.label, "conjugation", cand.g * phi0 * cand.g, false};
      conj.conditions = triple_contact_conditions(fam, conj.phi);
      if (conj.conditions) member = std::move(conj);
    }
    fam.members.push_back(std::move(member));
  }
  ContactTriple triple{fam.model, phi0, fam.e1, fam.e2};
  validate(triple);
  ContactPair pair = pair_from_triple(triple);
  validate(pair);
  geometric_type(pair);
  fam.structure = BuiltStructure{"triple-contact-7d", std::move(pair), std::move(triple), std::nullopt};
  return fam;
}

const std::vector<BuilderInfo>& builder_catalog() {
  static const std::vector<BuilderInfo> catalog{
      {"almost-contact", "almost contact structure (phi, xi, eta)", {"model", "phi", "xi", "eta"}},
      {"cosymplectic", "structure of a 2-form theta and 1-form eta with theta^n ^ eta != 0", {"model", "theta", "eta"}},
      {"deformation", "graph deformation of L by a map into its conjugate", {"base", "eps"}},
      {"heisenberg", "Heisenberg pair (E_bc, L_bc) with eta = a1", {"b", "c"}},
      {"product", "product with a symplectic manifold", {"base", "model", "symplectic"}},
      {"s3-family", "sphere family from f, g or a holomorphic h(z, w)", {"model", "h", "f", "g"}},
      {"triple-contact-7d", "Phi0 on the 7-dimensional triple almost contact model", {"eta1_sign"}},
  };
  return catalog;
}

namespace {

std::string param(const BuilderParams& params, const std::string& key, const std::string& fallback = "") {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

std::string require(const BuilderParams& params, const std::string& key, const std::string& builder) {
  auto it = params.find(key);
  if (it == params.end()) throw ValidationError("builder '" + builder + "' needs parameter '" + key + "'");
  return it->second;
}

GaussianRational constant_param(const BuilderParams& params, const std::string& key, const std::string& fallback) {
  try {
    return GaussianRational::parse_rational(param(params, key, fallback));
  } catch (const Error&) {
    throw ValidationError("parameter '" + key + "' must be a rational number");
  }
}

// "X1: expr, X2: expr" with images of the frame vectors, as a matrix.
Matrix endomorphism(const std::string& text, const Scope& scope) {
  const FrameModel& m = *scope.model();
  Matrix out(m.dim(), m.dim());
  for (std::size_t r = 0; r < m.dim(); ++r) {
    for (std::size_t c = 0; c < m.dim(); ++c) out(r, c) = m.zero();
  }
  for (const auto& item : split_list(text, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ValidationError("expected 'X: image' in '" + item + "'");
    auto idx = m.vector_index(trim(item.substr(0, colon)));
    if (!idx) throw UnknownSymbol(trim(item.substr(0, colon)));
    const GenSection img = parse_section(item.substr(colon + 1), scope);
    if (!img.is_vector()) throw ValidationError("image of a vector field must be a vector field");
    for (std::size_t r = 0; r < m.dim(); ++r) out(r, *idx) = img.vec()[r];
  }
  return out;
}

}  // namespace

BuiltStructure builtin_example(const std::string& name, const BuilderParams& params,
                               const std::map<std::string, BuiltStructure>& known, const ModelResolver& models) {
  const ModelResolver resolve = models ? models : ModelResolver([](const std::string& n) { return builtin_model(n); });
  auto base_of = [&](const std::string& builder) -> const BuiltStructure& {
    const std::string ref = require(params, "base", builder);
    auto it = known.find(ref);
    if (it == known.end()) throw UnknownSymbol(ref);
    return it->second;
  };
  for (const auto& [key, value] : params) {
    bool accepted = false;
    for (const auto& info : builder_catalog()) {
      if (info.name != name) continue;
      for (const auto& p : info.params) accepted = accepted || p == key;
    }
    if (!accepted && key != "name") throw ValidationError("builder '" + name + "' has no parameter '" + key + "'");
  }

  if (name == "s3-family") {
    if (params.count("h")) return s3_family(require(params, "h", name));
    const bool formal = !params.count("f") && !params.count("g");
    ModelPtr model = resolve(param(params, "model", formal ? "s3-formal" : "s3"));
    Scope scope(model);
    return s3_family(model, parse_scalar(param(params, "f", formal ? "f" : "0"), scope),
                     parse_scalar(param(params, "g", formal ? "g" : "0"), scope));
  }
  if (name == "heisenberg") {
    return heisenberg_structure(constant_param(params, "b", "0"), constant_param(params, "c", "0"));
  }
  if (name == "cosymplectic") {
    ModelPtr model = resolve(require(params, "model", name));
    Scope scope(model);
    return cosymplectic_structure(model, parse_form(require(params, "theta", name), scope),
                                  parse_form(require(params, "eta", name), scope));
  }
  if (name == "almost-contact") {
    ModelPtr model = resolve(require(params, "model", name));
    Scope scope(model);
    const GenSection xi = parse_section(require(params, "xi", name), scope);
    if (!xi.is_vector()) throw ValidationError("xi must be a vector field");
    return almost_contact_structure(model, endomorphism(require(params, "phi", name), scope), xi.vec(),
                                    parse_form(require(params, "eta", name), scope));
  }
  if (name == "deformation") {
    const BuiltStructure& base = base_of(name);
    Scope scope(base.pair.model);
    for (std::size_t j = 0; j < base.pair.l.size(); ++j) {
      scope.define("l" + std::to_string(j + 1), base.pair.l[j]);
      scope.define("lbar" + std::to_string(j + 1), base.pair.l[j].conj());
    }
    std::vector<GenSection> eps(base.pair.l.size(), GenSection(*base.pair.model));
    for (const auto& item : split_list(param(params, "eps"), ',')) {
      const auto colon = item.find(':');
      if (colon == std::string::npos) throw ValidationError("expected 'lK: image' in '" + item + "'");
      const std::string key = trim(item.substr(0, colon));
      std::size_t j = 0;
      for (; j < eps.size(); ++j) {
        if (key == "l" + std::to_string(j + 1)) break;
      }
      if (j == eps.size()) throw UnknownSymbol(key);
      eps[j] = parse_section(item.substr(colon + 1), scope);
    }
    return deformation(base, eps);
  }
  if (name == "product") {
    const BuiltStructure& base = base_of(name);
    ModelPtr second = resolve(require(params, "model", name));
    const DifferentialForm omega = parse_form(require(params, "symplectic", name), Scope(second));
    return product_structure(base, second, omega, param(params, "name", base.pair.model->name() + "x" + second->name()));
  }
  if (name == "triple-contact-7d") {
    const long sign = std::stol(param(params, "eta1_sign", "1"));
    if (sign != 1 && sign != -1) throw ValidationError("eta1_sign must be 1 or -1");
    return triple_contact_family(static_cast<int>(sign)).structure;
  }
  throw UnknownSymbol(name);
}

}  // namespace gencontact
