#include "gencontact/frame_model.hpp"

#include <set>
#include <sstream>

#include "gencontact/calculus.hpp"
#include "gencontact/errors.hpp"

namespace gencontact {

namespace {

std::string idx3(std::size_t a, std::size_t b, std::size_t c) {
  std::ostringstream os;
  os << "(" << a << ", " << b << ", " << c << ")";
  return os.str();
}

}  // namespace

ModelPtr FrameModel::create(Definition def) {
  const std::size_t m = def.vectors.size();
  const std::string where = "model '" + def.name + "': ";
  if (!def.context) throw ValidationError(where + "missing scalar context");
  if (m == 0) throw ValidationError(where + "empty frame");
  if (m > 30) throw ValidationError(where + "frame too large");
  if (def.coframe.size() != m) throw ValidationError(where + "coframe and frame sizes differ");
  {
    std::set<std::string> names;
    for (const auto& n : def.vectors) {
      if (!names.insert(n).second) throw ValidationError(where + "duplicate frame name '" + n + "'");
    }
    for (const auto& n : def.coframe) {
      if (!names.insert(n).second) throw ValidationError(where + "duplicate frame name '" + n + "'");
    }
  }
  const ContextPtr& ctx = def.context;
  FunctionElement zero(ctx, 0);

  if (def.derivations.empty()) def.derivations.resize(m);
  if (def.derivations.size() != m) throw ValidationError(where + "derivation list has wrong size");

  // Structure functions, completed by antisymmetry.
  std::vector<std::vector<Column>> c(m, std::vector<Column>(m, Column(m, zero)));
  const auto& given = def.structure;
  for (std::size_t a = 0; a < given.size() && a < m; ++a) {
    for (std::size_t b = 0; b < given[a].size() && b < m; ++b) {
      if (given[a][b].empty()) continue;
      if (given[a][b].size() != m) throw ValidationError(where + "structure entry of wrong length");
      for (std::size_t e = 0; e < m; ++e) {
        const FunctionElement v = given[a][b][e].lift_to(ctx);
        if (v.is_zero()) continue;
        if (a == b) throw ValidationError(where + "bracket of a frame vector with itself must vanish");
        if (a < b) {
          c[a][b][e] = v;
        }
      }
    }
  }
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < a; ++b) {
      for (std::size_t e = 0; e < m; ++e) c[a][b][e] = -c[b][a][e];
    }
  }
  // Entries given for a > b must agree with antisymmetry.
  for (std::size_t a = 0; a < given.size() && a < m; ++a) {
    for (std::size_t b = 0; b < a && b < given[a].size(); ++b) {
      if (given[a][b].empty()) continue;
      for (std::size_t e = 0; e < m; ++e) {
        if (given[a][b][e].lift_to(ctx) != c[a][b][e]) {
          throw ValidationError(where + "structure functions are not antisymmetric at " + idx3(a, b, e));
        }
      }
    }
  }
  def.structure = std::move(c);

  auto model = std::shared_ptr<FrameModel>(new FrameModel(def));
  model->derivation_index_.resize(m);
  for (std::size_t a = 0; a < m; ++a) {
    if (!def.derivations[a]) continue;
    auto d = ctx->find_derivation(*def.derivations[a]);
    if (!d) throw ValidationError(where + "unknown derivation '" + *def.derivations[a] + "'");
    model->derivation_index_[a] = *d;
  }

  // Cartan table: d alpha^e = - sum_{a<b} c_ab^e alpha^a ^ alpha^b.
  std::vector<DifferentialForm> derived(m, DifferentialForm(ctx, static_cast<unsigned>(m)));
  for (std::size_t e = 0; e < m; ++e) {
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = a + 1; b < m; ++b) {
        const auto& v = model->def_.structure[a][b][e];
        if (!v.is_zero()) derived[e].add((Mask{1} << a) | (Mask{1} << b), -v);
      }
    }
  }
  if (model->def_.coframe_differentials.empty()) {
    model->def_.coframe_differentials = derived;
  } else {
    if (model->def_.coframe_differentials.size() != m) {
      throw ValidationError(where + "coframe differential table has wrong size");
    }
    for (std::size_t e = 0; e < m; ++e) {
      auto& given_d = model->def_.coframe_differentials[e];
      given_d = given_d.lift_to(ctx).embedded(static_cast<unsigned>(m));
      if (given_d != derived[e]) {
        throw ValidationError(where + "d(" + def.coframe[e] + ") = " + given_d.to_string(def.coframe) +
                              " disagrees with the brackets, which give " + derived[e].to_string(def.coframe));
      }
    }
  }

  // Jacobi identity.
  auto basis = [&](std::size_t a) {
    Column v(m, zero);
    v[a] = FunctionElement(ctx, 1);
    return v;
  };
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      for (std::size_t cidx = b + 1; cidx < m; ++cidx) {
        Column xa = basis(a), xb = basis(b), xc = basis(cidx);
        Column t1, t2, t3;
        try {
          t1 = vector_bracket(*model, xa, vector_bracket(*model, xb, xc));
          t2 = vector_bracket(*model, xb, vector_bracket(*model, xc, xa));
          t3 = vector_bracket(*model, xc, vector_bracket(*model, xa, xb));
        } catch (const SecondOrderDerivativeRequired&) {
          continue;  // structure functions depend on formal symbols: not decidable here
        }
        for (std::size_t e = 0; e < m; ++e) {
          if (!(t1[e] + t2[e] + t3[e]).is_zero()) {
            throw ValidationError(where + "Jacobi identity fails for frame indices " + idx3(a, b, cidx) + " (" +
                                  def.vectors[a] + ", " + def.vectors[b] + ", " + def.vectors[cidx] + ")");
          }
        }
      }
    }
  }

  // The frame must act on ordinary generators as its brackets say.
  for (std::size_t g = 0; g < ctx->generator_count(); ++g) {
    if (ctx->generator(g).kind != GeneratorKind::Coordinate) continue;
    const auto u = FunctionElement::generator(ctx, g);
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = a + 1; b < m; ++b) {
        FunctionElement lhs = model->act(a, model->act(b, u)) - model->act(b, model->act(a, u));
        FunctionElement rhs = zero;
        for (std::size_t e = 0; e < m; ++e) {
          const auto& v = model->def_.structure[a][b][e];
          if (!v.is_zero()) rhs += v * model->act(e, u);
        }
        if (lhs != rhs) {
          throw ValidationError(where + "[" + def.vectors[a] + ", " + def.vectors[b] +
                                "] does not act on generator '" + ctx->generator(g).name +
                                "' as the structure functions require");
        }
      }
    }
  }

  for (auto& [name, form] : model->def_.closed_two_forms) {
    form = form.lift_to(ctx).embedded(static_cast<unsigned>(m));
    if (!exterior_derivative(*model, form).is_zero()) {
      throw ValidationError(where + "shipped form '" + name + "' is not closed");
    }
  }

  for (const auto& p : model->def_.points) {
    if (p.values.size() != ctx->generator_count()) {
      throw ValidationError(where + "sample point '" + p.label + "' has wrong arity");
    }
    for (std::size_t g = 0; g < ctx->generator_count(); ++g) {
      const auto kind = ctx->generator(g).kind;
      const bool algebraic = kind == GeneratorKind::Algebraic;
      if (algebraic && p.values[g]) {
        throw ValidationError(where + "sample point '" + p.label + "' assigns algebraic constant '" +
                              ctx->generator(g).name + "'");
      }
      // Jet symbols may stay free at a point; ranks are then taken over their fraction field.
      if (!p.values[g] && (kind == GeneratorKind::Formal || kind == GeneratorKind::Derivative)) continue;
      if (!algebraic && !p.values[g]) {
        throw ValidationError(where + "sample point '" + p.label + "' leaves '" + ctx->generator(g).name +
                              "' unassigned");
      }
      if (p.values[g] && !p.values[g]->is_real()) {
        throw ValidationError(where + "sample point '" + p.label + "' is not real");
      }
    }
    for (const auto& r : ctx->relations()) {
      Terms rel;
      Monomial mono = ctx->unit_monomial();
      mono[r.symbol] = static_cast<std::uint16_t>(r.power);
      add_term(rel, mono, 1);
      for (const auto& [mm, cc] : r.replacement) add_term(rel, mm, -cc);
      // Evaluate without normalising, the relation itself would vanish.
      GaussianRational value = 0;
      bool symbolic = false;
      for (const auto& [mm, cc] : rel) {
        GaussianRational v = cc;
        for (std::size_t g = 0; g < mm.size(); ++g) {
          for (unsigned k = 0; k < mm[g]; ++k) {
            if (!p.values[g]) {
              symbolic = true;
              break;
            }
            v *= *p.values[g];
          }
        }
        value += v;
      }
      if (!symbolic && !value.is_zero()) {
        throw ValidationError(where + "sample point '" + p.label + "' violates the relation for '" +
                              ctx->generator(r.symbol).name + "'");
      }
    }
  }
  return model;
}

std::optional<std::size_t> FrameModel::vector_index(const std::string& name) const {
  for (std::size_t a = 0; a < def_.vectors.size(); ++a) {
    if (def_.vectors[a] == name) return a;
  }
  return std::nullopt;
}

std::optional<std::size_t> FrameModel::coframe_index(const std::string& name) const {
  for (std::size_t a = 0; a < def_.coframe.size(); ++a) {
    if (def_.coframe[a] == name) return a;
  }
  return std::nullopt;
}

FunctionElement FrameModel::act(std::size_t a, const FunctionElement& u) const {
  if (!derivation_index_[a] || u.is_constant()) return zero();
  return u.lift_to(def_.context).derive(*derivation_index_[a]);
}

FunctionElement FrameModel::act(const Column& x, const FunctionElement& u) const {
  FunctionElement out = zero();
  if (u.is_constant()) return out;
  for (std::size_t a = 0; a < x.size(); ++a) {
    if (x[a].is_zero() || !derivation_index_[a]) continue;
    out += x[a] * act(a, u);
  }
  return out;
}

ModelPtr FrameModel::with_points(const std::vector<std::size_t>& subset) const {
  auto copy = std::shared_ptr<FrameModel>(new FrameModel(*this));
  std::vector<Point> pts;
  for (auto i : subset) {
    if (i >= def_.points.size()) throw Error("sample point index " + std::to_string(i) + " out of range");
    pts.push_back(def_.points[i]);
  }
  copy->def_.points = std::move(pts);
  return copy;
}

ModelPtr extend_by_line(const ModelPtr& base, const std::string& suffix, const std::string& vector_name,
                        const std::string& form_name) {
  FrameModel::Definition def = base->definition();
  const std::size_t m = def.vectors.size();
  def.name = base->name() + suffix;
  def.vectors.push_back(vector_name);
  def.coframe.push_back(form_name);
  def.derivations.push_back(std::nullopt);
  FunctionElement zero(def.context, 0);
  std::vector<std::vector<Column>> c(m + 1, std::vector<Column>(m + 1, Column(m + 1, zero)));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      for (std::size_t e = 0; e < m; ++e) c[a][b][e] = def.structure[a][b][e];
    }
  }
  def.structure = std::move(c);
  for (auto& d : def.coframe_differentials) d = d.embedded(static_cast<unsigned>(m + 1));
  def.coframe_differentials.emplace_back(def.context, static_cast<unsigned>(m + 1));
  for (auto& [n, f] : def.closed_two_forms) f = f.embedded(static_cast<unsigned>(m + 1));
  return FrameModel::create(std::move(def));
}

ModelPtr product_model(const ModelPtr& first, const ModelPtr& second, const std::string& name) {
  const ContextPtr& c1 = first->context();
  const ContextPtr& c2 = second->context();
  ScalarContext::Builder b;
  for (const auto& g : c1->generators()) b.add_generator(g.name, g.kind);
  for (const auto& g : c2->generators()) b.add_generator(g.name, g.kind);
  auto pre = b.provisional();
  auto lift_terms = [&](const ContextPtr& from, const Terms& t) { return FunctionElement(from, t).lift_to(pre).terms(); };
  for (const auto* src : {&c1, &c2}) {
    for (const auto& r : (*src)->relations()) {
      b.add_relation((*src)->generator(r.symbol).name, r.power, lift_terms(*src, r.replacement));
    }
  }
  for (const auto* src : {&c1, &c2}) {
    const ContextPtr& other = (src == &c1) ? c2 : c1;
    for (std::size_t d = 0; d < (*src)->derivation_count(); ++d) {
      const auto& der = (*src)->derivation(d);
      auto idx = b.add_derivation(der.name);
      for (std::size_t g = 0; g < der.images.size(); ++g) {
        const std::string& gname = (*src)->generator(g).name;
        if (der.images[g]) {
          b.set_image(idx, gname, lift_terms(*src, *der.images[g]));
        } else {
          b.set_undefined(idx, gname);
        }
      }
      for (const auto& g : other->generators()) b.set_image(idx, g.name, Terms{});
    }
  }
  ContextPtr ctx = b.build();

  const unsigned m1 = first->dim();
  const unsigned m2 = second->dim();
  const unsigned m = m1 + m2;
  FrameModel::Definition def;
  def.name = name;
  def.description = first->name() + " x " + second->name();
  def.context = ctx;
  def.vectors = first->vector_names();
  def.vectors.insert(def.vectors.end(), second->vector_names().begin(), second->vector_names().end());
  def.coframe = first->coframe_names();
  def.coframe.insert(def.coframe.end(), second->coframe_names().begin(), second->coframe_names().end());
  for (unsigned a = 0; a < m1; ++a) def.derivations.push_back(first->derivation_name(a));
  for (unsigned a = 0; a < m2; ++a) def.derivations.push_back(second->derivation_name(a));
  FunctionElement zero(ctx, 0);
  def.structure.assign(m, std::vector<Column>(m, Column(m, zero)));
  for (unsigned a = 0; a < m1; ++a) {
    for (unsigned bb = 0; bb < m1; ++bb) {
      for (unsigned e = 0; e < m1; ++e) def.structure[a][bb][e] = first->structure(a, bb, e).lift_to(ctx);
    }
  }
  for (unsigned a = 0; a < m2; ++a) {
    for (unsigned bb = 0; bb < m2; ++bb) {
      for (unsigned e = 0; e < m2; ++e) {
        def.structure[m1 + a][m1 + bb][m1 + e] = second->structure(a, bb, e).lift_to(ctx);
      }
    }
  }
  for (unsigned e = 0; e < m1; ++e) def.coframe_differentials.push_back(first->coframe_differential(e).lift_to(ctx).embedded(m));
  for (unsigned e = 0; e < m2; ++e) {
    def.coframe_differentials.push_back(second->coframe_differential(e).lift_to(ctx).embedded(m, m1));
  }
  for (const auto& [n, f] : first->closed_two_forms()) def.closed_two_forms.emplace_back(n, f.lift_to(ctx).embedded(m));
  for (const auto& [n, f] : second->closed_two_forms()) {
    def.closed_two_forms.emplace_back(n, f.lift_to(ctx).embedded(m, m1));
  }
  const std::size_t np = std::max(first->points().size(), second->points().size());
  for (std::size_t i = 0; i < np; ++i) {
    const Point& p1 = first->points()[i % first->points().size()];
    const Point& p2 = second->points()[i % second->points().size()];
    Point p{p1.label + "|" + p2.label, p1.values};
    p.values.insert(p.values.end(), p2.values.begin(), p2.values.end());
    def.points.push_back(std::move(p));
  }
  return FrameModel::create(std::move(def));
}

}  // namespace gencontact
