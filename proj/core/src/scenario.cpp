#include "gencontact/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "gencontact/builtins.hpp"
#include "gencontact/calculus.hpp"
#include "gencontact/cone.hpp"
#include "gencontact/errors.hpp"
#include "gencontact/expression.hpp"
#include "gencontact/mixed_pair.hpp"
#include "gencontact/model_loader.hpp"

namespace gencontact {

namespace {

enum class Arg { Model, Structure, Pair, Expression };

struct CheckShape {
  std::vector<Arg> args;
};

const std::map<std::string, CheckShape>& shapes() {
  static const std::map<std::string, CheckShape> table{
      {"courant", {{Arg::Model}}},
      {"d-squared", {{Arg::Model}}},
      {"vanishes", {{Arg::Model, Arg::Expression}}},
      {"normality", {{Arg::Structure}}},
      {"integrability", {{Arg::Structure}}},
      {"strong-integrability", {{Arg::Structure}}},
      {"normal-frame", {{Arg::Structure}}},
      {"type", {{Arg::Structure}}},
      {"poon-wade", {{Arg::Structure}}},
      {"poon-wade-reduce", {{Arg::Structure}}},
      {"mixed-pair", {{Arg::Structure}}},
      {"spinor-integrability", {{Arg::Structure}}},
      {"cone", {{Arg::Structure}}},
      {"circle-types", {{Arg::Structure}}},
      {"tduality", {{Arg::Structure}}},
      {"double-duality", {{Arg::Structure}}},
      {"intertwiner", {{Arg::Pair}}},
  };
  return table;
}

std::map<std::string, std::string> parse_params(const std::string& text, int line) {
  std::map<std::string, std::string> out;
  for (const auto& item : split_list(text, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ParseError("expected 'key: value' in '" + item + "'", line);
    const std::string key = trim(item.substr(0, colon));
    if (!out.emplace(key, trim(item.substr(colon + 1))).second) throw ParseError("parameter '" + key + "' given twice", line);
  }
  return out;
}

class Loader {
 public:
  Loader(const LoadOptions& options) : wanted_(options.points.begin(), options.points.end()) {}

  Scenario load(const std::string& text, const std::string& source) {
    const Document doc = parse_document(text, source);
    Scenario s;
    s.source = source;
    s_ = &s;
    bool have_checks = false;
    for (const auto& sec : doc.sections) {
      if (sec.kind == "scenario") {
        s.name = sec.name;
        s.description = sec.get("description");
      } else if (sec.kind == "model") {
        named(sec);
        if (s.models.count(sec.name)) throw ParseError("model '" + sec.name + "' is defined twice", sec.line);
        s.models.emplace(sec.name, restrict(build_model(sec, resolver())));
      } else if (sec.kind == "structure") {
        named(sec);
        if (s.structures.count(sec.name)) throw ParseError("structure '" + sec.name + "' is defined twice", sec.line);
        s.structures.emplace(sec.name, structure(sec));
      } else if (sec.kind == "twist") {
        named(sec);
        const ModelPtr m = resolver()(trim(sec.require("model").value));
        s.twists.emplace(sec.name, make_twist(*m, parse_form(sec.require("form").value, Scope(m))));
      } else if (sec.kind == "dualpair") {
        named(sec);
        s.dual_pairs.emplace(sec.name, dual_pair(sec));
      } else if (sec.kind == "checks") {
        have_checks = true;
        for (const auto& e : sec.entries) s.checks.push_back(check(e));
      } else {
        throw ParseError("unknown section kind '" + sec.kind + "'", sec.line);
      }
    }
    if (s.name.empty()) s.name = source;
    if (!have_checks) throw ParseError("scenario has no [checks] section", 0);
    for (const auto& label : wanted_) {
      if (!matched_.count(label)) throw ValidationError("no model has a sample point named '" + label + "'");
    }
    return s;
  }

 private:
  static void named(const Section& sec) {
    if (sec.name.empty()) throw ParseError("[" + sec.kind + "] needs a name", sec.line);
  }

  ModelResolver resolver() {
    return [this](const std::string& name) -> ModelPtr {
      if (auto it = s_->models.find(name); it != s_->models.end()) return it->second;
      return restrict(builtin_model(name));
    };
  }

  ModelPtr restrict(const ModelPtr& m) {
    if (wanted_.empty()) return m;
    if (auto it = restricted_.find(m.get()); it != restricted_.end()) return it->second;
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < m->points().size(); ++i) {
      if (wanted_.count(m->points()[i].label)) {
        keep.push_back(i);
        matched_.insert(m->points()[i].label);
      } else {
        s_->dropped_points.insert(m->points()[i].label);
      }
    }
    ModelPtr out = keep.empty() ? m : m->with_points(keep);
    restricted_.emplace(m.get(), out);
    restricted_.emplace(out.get(), out);
    return out;
  }

  void restrict(BuiltStructure& b) {
    b.pair.model = restrict(b.pair.model);
    b.triple.model = restrict(b.triple.model);
  }

  BuiltStructure structure(const Section& sec) {
    const std::string builder = trim(sec.require("builder").value);
    BuilderParams params;
    for (const auto& e : sec.entries) {
      if (e.key.front() == "builder") continue;
      if (e.key.size() != 1) throw ParseError("expected 'key = value'", e.line);
      params[e.key.front()] = e.value;
    }
    BuiltStructure out;
    if (builder == "dual") {
      auto base = s_->structures.find(params["base"]);
      if (base == s_->structures.end()) throw UnknownSymbol(params["base"]);
      auto pair = s_->dual_pairs.find(params["pair"]);
      if (pair == s_->dual_pairs.end()) throw UnknownSymbol(params["pair"]);
      const TDualPair& d = pair->second;
      out.builder = "dual";
      out.pair = dualize(d, base->second.pair);
      out.triple = dualize(d, base->second.triple);
      if (base->second.spinor) out.spinor = tau_f(d, *base->second.spinor);
    } else {
      out = builtin_example(builder, params, s_->structures, resolver());
    }
    restrict(out);
    return out;
  }

  TDualPair dual_pair(const Section& sec) {
    TDualPair d;
    if (const Entry* b = sec.find("builtin")) {
      d = builtin_dual_pair(trim(b->value));
    } else if (const Entry* c = sec.find("circle")) {
      d = trivial_circle_pair(resolver()(trim(c->value)));
    } else {
      d = dual_pair_from_section(sec, resolver());
    }
    d.name = sec.name;
    d.source = restrict(d.source);
    d.target = restrict(d.target);
    return d;
  }

  CheckSpec check(const Entry& e) {
    CheckSpec c;
    c.line = e.line;
    c.kind = e.key.front();
    c.targets.assign(e.key.begin() + 1, e.key.end());
    auto shape = shapes().find(c.kind);
    if (shape == shapes().end()) throw ParseError("unknown check '" + c.kind + "'", e.line);
    const auto& args = shape->second.args;
    const bool expression = std::find(args.begin(), args.end(), Arg::Expression) != args.end();
    const std::size_t want = args.size() - (expression ? 1 : 0);
    if (c.targets.size() != want) {
      throw ParseError("check '" + c.kind + "' takes " + std::to_string(want) + " target(s)", e.line);
    }
    for (std::size_t i = 0; i < want; ++i) {
      const std::string& t = c.targets[i];
      switch (args[i]) {
        case Arg::Model: s_->models.emplace(t, resolver()(t)); break;
        case Arg::Structure:
          if (!s_->structures.count(t)) throw ParseError("unknown structure '" + t + "'", e.line);
          break;
        case Arg::Pair:
          if (!s_->dual_pairs.count(t)) throw ParseError("unknown dual pair '" + t + "'", e.line);
          break;
        case Arg::Expression: break;
      }
    }
    if (expression) {
      c.expression = e.value;
      if (c.expression.empty()) throw ParseError("check '" + c.kind + "' needs an expression", e.line);
      parse_scalar_or_form(c);
      return c;
    }
    c.params = parse_params(e.value, e.line);
    const CheckInfo* info = find_check(c.kind);
    for (const auto& [key, value] : c.params) {
      const bool known = key == "outcome" || (c.kind == "type" && key.rfind("expect.", 0) == 0) ||
                         std::find(info->params.begin(), info->params.end(), key) != info->params.end();
      if (!known) throw ParseError("check '" + c.kind + "' has no parameter '" + key + "'", e.line);
      if (key == "outcome" && value != "pass" && value != "fail") {
        throw ParseError("outcome must be 'pass' or 'fail'", e.line);
      }
      if (key == "twist" && !s_->twists.count(value)) throw ParseError("unknown twist '" + value + "'", e.line);
      if (key == "pair" && !s_->dual_pairs.count(value)) throw ParseError("unknown dual pair '" + value + "'", e.line);
    }
    if (c.kind == "tduality" && !c.params.count("pair")) throw ParseError("tduality needs 'pair: NAME'", e.line);
    if (auto t = c.params.find("twist"); t != c.params.end()) {
      const std::string& target = c.targets.front();
      const ModelPtr m = s_->structures.count(target) ? s_->structures.at(target).pair.model : s_->models.at(target);
      if (s_->twists.at(t->second).context() != m->context()) {
        throw ParseError("twist '" + t->second + "' lives on another model", e.line);
      }
    }
    return c;
  }

  void parse_scalar_or_form(const CheckSpec& c) {
    try {
      evaluate_expression(c.expression, Scope(resolver()(c.targets.front())));
    } catch (const ParseError& err) {
      throw ParseError(err.message(), c.line, err.column());
    }
  }

  std::set<std::string> wanted_;
  std::set<std::string> matched_;
  std::map<const FrameModel*, ModelPtr> restricted_;
  Scenario* s_ = nullptr;
};

// ---------------------------------------------------------------------------
// Checks.

struct Context {
  const Scenario& s;
  const CheckSpec& c;
  CheckResult& r;

  const BuiltStructure& structure() const { return s.structures.at(c.targets.front()); }
  const DifferentialForm* twist() const {
    auto it = c.params.find("twist");
    return it == c.params.end() ? nullptr : &s.twists.at(it->second);
  }
  std::string param(const std::string& key, const std::string& fallback = "") const {
    auto it = c.params.find(key);
    return it == c.params.end() ? fallback : it->second;
  }
  ModelPtr model() const {
    const std::string& name = c.targets.front();
    if (auto it = s.models.find(name); it != s.models.end()) return it->second;
    return builtin_model(name);
  }
  void verdict(bool ok) const { r.verdict = ok ? Verdict::Pass : Verdict::Fail; }
};

std::string show(const FunctionElement& u) { return u.to_string(); }

void check_courant(Context& x) {
  const ModelPtr m = x.model();
  const auto gens = GenSection::generators(*m);
  const CourantAxiomReport rep = courant_axioms_check(*m, gens, x.twist());
  for (const auto& u : rep.metric_residuals) {
    if (!u.is_zero()) x.r.residuals.push_back("metric: " + show(u));
  }
  for (const auto& v : rep.leibniz_residuals) {
    if (!v.is_zero()) x.r.residuals.push_back("leibniz: " + v.to_string(*m));
  }
  for (const auto& v : rep.symmetry_residuals) {
    if (!v.is_zero()) x.r.residuals.push_back("symmetry: " + v.to_string(*m));
  }
  x.r.notes.push_back(std::to_string(gens.size()) + " generators, all ordered triples");
  x.verdict(rep.ok());
}

void check_d_squared(Context& x) {
  const ModelPtr m = x.model();
  const unsigned dim = m->dim();
  std::size_t count = 0;
  for (Mask mask = 0; mask < (Mask{1} << dim); ++mask) {
    const DifferentialForm f = DifferentialForm::monomial(m->context(), dim, mask);
    const DifferentialForm dd = exterior_derivative(*m, exterior_derivative(*m, f));
    ++count;
    if (!dd.is_zero()) x.r.residuals.push_back("d d " + f.to_string(m->coframe_names()) + " = " + dd.to_string(m->coframe_names()));
  }
  const ContextPtr& ctx = m->context();
  for (std::size_t g = 0; g < ctx->generator_count(); ++g) {
    if (ctx->generator(g).kind != GeneratorKind::Coordinate) continue;
    const FunctionElement u = FunctionElement::generator(ctx, g);
    const DifferentialForm dd = exterior_derivative(*m, differential(*m, u));
    ++count;
    if (!dd.is_zero()) x.r.residuals.push_back("d d " + u.to_string() + " = " + dd.to_string(m->coframe_names()));
  }
  x.r.notes.push_back(std::to_string(count) + " forms checked");
  x.verdict(x.r.residuals.empty());
}

void check_vanishes(Context& x) {
  const ModelPtr m = x.model();
  const Value v = evaluate_expression(x.c.expression, Scope(m));
  bool zero = false;
  std::string text;
  if (v.is_scalar()) {
    zero = v.scalar().is_zero();
    text = v.scalar().to_string();
  } else if (v.is_section()) {
    zero = v.section().is_zero();
    text = v.section().to_string(*m);
  } else {
    zero = v.form().is_zero();
    text = v.form().to_string(m->coframe_names());
  }
  if (!zero) x.r.residuals.push_back(text);
  x.verdict(zero);
}

void check_normality(Context& x) {
  const BuiltStructure& b = x.structure();
  const FrameModel& m = *b.triple.model;
  const NormalityReport rep = normality_check(b.triple, x.twist());
  for (const auto& f : rep.failures) {
    x.r.residuals.push_back(f.condition + " " + f.argument + ": " + f.value.to_string(m));
  }
  for (const auto& u : rep.frame_bracket_coefficients) x.r.notes.push_back("[e1, e2] coefficient: " + show(u));
  x.verdict(rep.normal);
}

std::vector<GenSection> extra_lines(const Context& x) {
  std::vector<GenSection> out;
  if (auto l = x.param("line"); !l.empty()) out.push_back(parse_section(l, Scope(x.structure().pair.model)));
  return out;
}

void report_lines(Context& x, const IntegrabilityReport& rep) {
  for (const auto& line : rep.lines) {
    x.r.table.rows.push_back({line.line, line.involutive ? "yes" : "no", std::to_string(line.obstructions.size())});
  }
  x.r.table.header = {"line", "involutive", "obstructions"};
}

void check_integrability(Context& x) {
  const BuiltStructure& b = x.structure();
  const IntegrabilityReport rep = integrability_check(b.pair, x.twist(), extra_lines(x));
  report_lines(x, rep);
  if (!rep.integrable) {
    for (const auto& line : rep.lines) {
      for (const auto& u : line.obstructions) x.r.residuals.push_back(line.line + ": " + show(u));
    }
  }
  x.verdict(rep.integrable);
}

void check_strong(Context& x) {
  const BuiltStructure& b = x.structure();
  const IntegrabilityReport rep = integrability_check(b.pair, x.twist(), extra_lines(x));
  report_lines(x, rep);
  for (const auto& u : rep.certificates) x.r.residuals.push_back("certificate: " + show(u));
  x.verdict(rep.strong);
}

void check_normal_frame(Context& x) {
  const NormalFrameReport rep = normal_frame_criterion(x.structure().pair, x.twist());
  x.r.verdict = rep.verdict;
  if (!rep.detail.empty()) (rep.verdict == Verdict::Fail ? x.r.residuals : x.r.notes).push_back(rep.detail);
}

std::optional<std::pair<unsigned, unsigned>> expected_type(const std::string& text, int line) {
  if (text.empty()) return std::nullopt;
  const auto w = split_words(text);
  if (w.size() != 2) throw ParseError("expected type 'P T', got '" + text + "'", line);
  return std::pair{static_cast<unsigned>(std::stoul(w[0])), static_cast<unsigned>(std::stoul(w[1]))};
}

void check_type(Context& x) {
  const auto types = geometric_type(x.structure().pair);
  const auto all = expected_type(x.param("expect"), x.c.line);
  x.r.table.header = {"point", "p_E", "t_L"};
  for (const auto& t : types) {
    x.r.table.rows.push_back({t.point, std::to_string(t.p_e), std::to_string(t.t_l)});
    auto want = all;
    if (auto at = expected_type(x.param("expect." + t.point), x.c.line)) want = at;
    if (want && (want->first != t.p_e || want->second != t.t_l)) {
      x.r.residuals.push_back("at " + t.point + ": expected (" + std::to_string(want->first) + ", " +
                              std::to_string(want->second) + "), got (" + std::to_string(t.p_e) + ", " +
                              std::to_string(t.t_l) + ")");
    }
  }
  for (const auto& [key, value] : x.c.params) {
    if (key.rfind("expect.", 0) != 0) continue;
    const std::string label = key.substr(7);
    if (x.s.dropped_points.count(label)) continue;
    if (std::none_of(types.begin(), types.end(), [&](const PointType& t) { return t.point == label; })) {
      x.r.residuals.push_back("no sample point '" + label + "'");
    }
  }
  x.verdict(x.r.residuals.empty());
}

void check_poon_wade(Context& x) {
  const BuiltStructure& b = x.structure();
  const FrameModel& m = *b.pair.model;
  if (auto w = is_poon_wade(b.pair)) {
    x.r.notes.push_back("vector: " + w->vector.to_string(m));
    x.r.notes.push_back("form: " + w->form.to_string(m));
    x.verdict(true);
    return;
  }
  x.r.residuals.push_back("E is not spanned by a vector field and a 1-form: e1 = " + b.pair.e[0].to_string(m) +
                          ", e2 = " + b.pair.e[1].to_string(m));
  x.verdict(false);
}

void check_poon_wade_reduce(Context& x) {
  const BuiltStructure& b = x.structure();
  const FrameModel& m = *b.pair.model;
  const std::string mode = x.param("mode", "general");
  ReductionMode rm = ReductionMode::General;
  if (mode == "cosymplectic") {
    rm = ReductionMode::Cosymplectic;
  } else if (mode == "contact") {
    rm = ReductionMode::Contact;
  } else if (mode != "general") {
    throw ValidationError("mode must be general, cosymplectic or contact");
  }
  const Reduction red = poon_wade_reduce(b.pair, rm);
  x.r.notes.push_back("omega = " + red.omega.to_string(m.coframe_names()));
  const ContactPair moved = b_transform(b.pair, red.omega);
  const bool same = same_span(m, {moved.e[0], moved.e[1]}, {red.pair.e[0], red.pair.e[1]});
  const bool vector = red.pair.e[0].is_vector();
  x.r.notes.push_back("e^omega e1 = " + red.pair.e[0].to_string(m));
  if (!vector) x.r.residuals.push_back("e^omega e1 has form part: " + red.pair.e[0].to_string(m));
  if (!same) x.r.residuals.push_back("reduced E is not the B-transform of E");
  x.verdict(vector && same);
}

void check_mixed_pair(Context& x) {
  const BuiltStructure& b = x.structure();
  const FrameModel& m = *b.pair.model;
  const MixedPair mp = mixed_pair_of(b);
  x.r.notes.push_back("rho1 = " + mp.rho1.to_string(m.coframe_names()));
  x.r.notes.push_back("rho2 = " + mp.rho2.to_string(m.coframe_names()));
  x.r.notes.push_back("mukai(rho1, conj rho2) = " + mukai_pairing(m, mp.rho1, mp.rho2.conj()).to_string(m.coframe_names()));
  x.r.table.header = {"point", "t_L", "type1", "type2"};
  for (const auto& row : type_sum_check(mp, b.pair)) {
    x.r.table.rows.push_back({row.point, std::to_string(row.t_l), std::to_string(row.type1), std::to_string(row.type2)});
  }
  x.verdict(true);
}

void check_spinor_integrability(Context& x) {
  const BuiltStructure& b = x.structure();
  const FrameModel& m = *b.pair.model;
  const MixedPair mp = mixed_pair_of(b);
  const MixedIntegrability rep = mixed_pair_integrability(mp, x.twist());
  const bool strong = x.param("strong", "no") == "yes";
  x.r.table.header = {"spinor", "equation", "witness"};
  const std::pair<const char*, const SpinorWitness*> rows[] = {{"rho1", &rep.first}, {"rho2", &rep.second}};
  bool undecided = false;
  for (const auto& [name, w] : rows) {
    x.r.table.rows.push_back({name, to_string(w->status), w->v ? w->v->to_string(m) : "-"});
    undecided = undecided || w->status == SpinorEquation::NonPolynomial;
    if (w->status != SpinorEquation::Solved) {
      x.r.residuals.push_back(std::string("d_H ") + name + " = v . " + name + ": " + to_string(w->status));
    }
  }
  const bool ok = strong ? rep.strong : rep.integrable;
  if (ok) {
    x.r.residuals.clear();
    x.r.verdict = Verdict::Pass;
  } else {
    x.r.verdict = undecided ? Verdict::Inconclusive : Verdict::Fail;
  }
}

void check_cone(Context& x) {
  const BuiltStructure& b = x.structure();
  const GaussianRational lambda = GaussianRational::parse_rational(x.param("lambda", "0"));
  const SekiyaQuadruple q = sekiya_from_triple(b.triple, lambda);
  validate(q);
  const ConeStructure c = sekiya_to_cone(q);
  validate(c);
  const SekiyaQuadruple back = cone_to_sekiya(c);
  if (!(back.phi == q.phi) || back.e1 != q.e1 || back.e2 != q.e2 || back.lambda != q.lambda) {
    x.r.residuals.push_back("cone to Sekiya does not invert the lift");
  }
  if (lambda.is_zero()) {
    const ContactTriple t = triple_from_sekiya(back);
    if (!(t.phi == b.triple.phi)) x.r.residuals.push_back("triple of the lift differs from the original");
    x.r.table.header = {"point", "t_L", "t_J", "a(J dt) in a(L)"};
    for (const auto& row : cone_type(b.pair, c)) {
      x.r.table.rows.push_back(
          {row.point, std::to_string(row.t_l), std::to_string(row.t_j), row.jdt_in_al ? "yes" : "no"});
    }
  }
  x.r.notes.push_back(std::string("J^2 = -1 and J skew; ") + (in_sek0(c) ? "in" : "not in") + " the lambda = 0 class");
  x.verdict(x.r.residuals.empty());
}

void check_circle_types(Context& x) {
  const BuiltStructure& b = x.structure();
  const MixedPair mp = mixed_pair_of(b);
  x.r.table.header = {"point", "t_L", "type(rho1 + i dt rho2)", "type1", "type2"};
  for (const auto& row : circle_type_check(mp, b.pair)) {
    x.r.table.rows.push_back({row.point, std::to_string(row.t_l), std::to_string(row.t_j), std::to_string(row.type1),
                              std::to_string(row.type2)});
  }
  x.verdict(true);
}

void check_tduality(Context& x) {
  const BuiltStructure& b = x.structure();
  const TDualPair& d = x.s.dual_pairs.at(x.param("pair"));
  const MixedPair mp = mixed_pair_of(b);
  const ContactPair dual = dualize(d, b.pair);
  const MixedPair dual_mp = dualize(d, mp);
  const FrameModel& t = *d.target;
  x.r.notes.push_back("phi(e1) = " + dual.e[0].to_string(t));
  x.r.notes.push_back("phi(e2) = " + dual.e[1].to_string(t));
  x.r.notes.push_back("tau(rho1) = " + dual_mp.rho1.to_string(t.coframe_names()));
  x.r.notes.push_back("tau(rho2) = " + dual_mp.rho2.to_string(t.coframe_names()));
  for (const auto& p : d.source->points()) {
    const Point tp = transport_point(d, p);
    for (const auto* rho : {&mp.rho1, &mp.rho2}) {
      std::vector<GenSection> images;
      for (const auto& v : annihilator_basis_at(*d.source, *rho, p)) images.push_back(phi_f(d, v));
      if (!same_span_at(images, annihilator_basis_at(t, tau_f(d, *rho), tp), tp)) {
        x.r.residuals.push_back("at " + p.label + ": Ann(tau rho) != phi(Ann rho)");
      }
    }
  }
  x.r.table.header = {"point", "p_E", "t_L", "dual p_E", "dual t_L", "j1", "j2", "k", "basic anchors vanish"};
  for (const auto& row : type_change_report(d, mp, b.pair)) {
    x.r.table.rows.push_back({row.point, std::to_string(row.p_e), std::to_string(row.t_l), std::to_string(row.dual_p_e),
                              std::to_string(row.dual_t_l), std::to_string(row.j1), std::to_string(row.j2),
                              std::to_string(row.k), row.basic_anchors_vanish ? "yes" : "no"});
  }
  const IntertwinerReport rep = intertwiner_check(d, {mp.rho1, mp.rho2});
  for (const auto& msg : rep.messages) x.r.residuals.push_back("intertwiner: " + msg);
  x.r.notes.push_back("brackets compared on " + std::to_string(rep.bracket_pairs) + " invariant pairs");
  x.verdict(x.r.residuals.empty());
}

void check_double_duality(Context& x) {
  const DoubleDualityReport rep = double_duality_check(mixed_pair_of(x.structure()));
  x.r.notes.push_back("phase " + rep.phase.to_string() + ", predicted " + rep.predicted_phase.to_string());
  if (!rep.swapped) x.r.residuals.push_back("tau(rho1 + i dt rho2) is not a multiple of rho2 + i dt~ rho1");
  if (rep.swapped && rep.phase != rep.predicted_phase) {
    x.r.residuals.push_back("phase " + rep.phase.to_string() + " != " + rep.predicted_phase.to_string());
  }
  x.verdict(x.r.residuals.empty());
}

void check_intertwiner(Context& x) {
  const TDualPair& d = x.s.dual_pairs.at(x.c.targets.front());
  std::vector<DifferentialForm> forms;
  const unsigned m = d.source->dim();
  for (Mask mask = 0; mask < (Mask{1} << m); ++mask) {
    forms.push_back(DifferentialForm::monomial(d.source->context(), m, mask));
  }
  const IntertwinerReport rep = intertwiner_check(d, forms);
  x.r.residuals = rep.messages;
  x.r.notes.push_back(std::to_string(2 * m) + " generators, " + std::to_string(forms.size()) + " coframe monomials, " +
                      std::to_string(rep.bracket_pairs) + " invariant bracket pairs");
  x.verdict(rep.ok());
}

using CheckFn = void (*)(Context&);

const std::map<std::string, CheckFn>& runners() {
  static const std::map<std::string, CheckFn> table{
      {"courant", check_courant},
      {"d-squared", check_d_squared},
      {"vanishes", check_vanishes},
      {"normality", check_normality},
      {"integrability", check_integrability},
      {"strong-integrability", check_strong},
      {"normal-frame", check_normal_frame},
      {"type", check_type},
      {"poon-wade", check_poon_wade},
      {"poon-wade-reduce", check_poon_wade_reduce},
      {"mixed-pair", check_mixed_pair},
      {"spinor-integrability", check_spinor_integrability},
      {"cone", check_cone},
      {"circle-types", check_circle_types},
      {"tduality", check_tduality},
      {"double-duality", check_double_duality},
      {"intertwiner", check_intertwiner},
  };
  return table;
}

}  // namespace

std::string CheckSpec::label() const {
  std::string out = kind;
  for (const auto& t : targets) out += " " + t;
  return out;
}

Scenario load_scenario(const std::string& text, const std::string& source, const LoadOptions& options) {
  return Loader(options).load(text, source);
}

const std::vector<CheckInfo>& check_catalog() {
  static const std::vector<CheckInfo> catalog{
      {"courant", "courant MODEL", {"twist"},
       "x<y,z> = <[x,y],z> + <y,[x,z]>;  [x,[y,z]] = [[x,y],z] + [y,[x,z]];  [x,y] + [y,x] = 2 d<x,y>",
       "Courant algebroid axioms of the (twisted) Dorfman bracket on every ordered triple of frame generators."},
      {"d-squared", "d-squared MODEL", {}, "d d alpha^I = 0,  d d u = 0",
       "The exterior derivative squares to zero on coframe monomials and coordinate functions."},
      {"vanishes", "vanishes MODEL = EXPR", {}, "EXPR = 0",
       "Evaluates an expression in the model and passes when its normal form is zero."},
      {"normality", "normality STRUCTURE", {"twist"},
       "[Phi x, Phi y] - [x, y] - Phi([Phi x, y] + [x, Phi y]) = 0,  Phi[x, e_i] = [Phi x, e_i],  [e1, e2] = 0",
       "Normality of the triple through three bracket conditions on a frame of the complement of E."},
      {"integrability", "integrability STRUCTURE", {"twist", "line"}, "<[x, y], w> = 0 on L + C e_i",
       "Passes when L + C e1, L + C e2 or the extra line is involutive."},
      {"strong-integrability", "strong-integrability STRUCTURE", {"twist", "line"},
       "<[x, y], w> = 0 on L + C e1 and L + C e2",
       "Passes when every line is involutive; otherwise prints canonical certificate polynomials."},
      {"normal-frame", "normal-frame STRUCTURE", {"twist"}, "[e1, e2] = du - 2<e1, du> e2 - 2<e2, du> e1",
       "Strong integrability plus a polynomial potential u of degree at most 2 for the frame bracket."},
      {"type", "type STRUCTURE", {"expect"}, "p_E = dim a(E),  t_L = codim a(L)",
       "Geometric type at every sample point; `expect: P T` or `expect.POINT: P T` pin the values."},
      {"poon-wade", "poon-wade STRUCTURE", {}, "E = span(X, beta)",
       "Whether E is spanned by a vector field and a 1-form."},
      {"poon-wade-reduce", "poon-wade-reduce STRUCTURE", {"mode"}, "e^omega e1 in TM",
       "B-transform straightening E when p_E = 1; mode general, cosymplectic or contact."},
      {"mixed-pair", "mixed-pair STRUCTURE", {}, "2 t_L = type(rho1) + type(rho2) + 1",
       "Builds the mixed pair of spinors, validates it and checks the type law at sample points."},
      {"spinor-integrability", "spinor-integrability STRUCTURE", {"twist", "strong"}, "d_H rho_i = v . rho_i",
       "Solves the spinor equation for each spinor; `strong: yes` requires both solutions."},
      {"cone", "cone STRUCTURE", {"lambda"}, "J^2 = -1,  J skew,  0 <= t_L - t_J <= 1",
       "Lifts the triple to the cone, validates J, checks the round trip and the type bounds."},
      {"circle-types", "circle-types STRUCTURE", {}, "t_J = type(rho1),  t_L = t_J iff type(rho1) = type(rho2) + 1",
       "Types of the product with a circle against the spinor types."},
      {"tduality", "tduality STRUCTURE", {"pair"},
       "Ann(tau rho) = phi(Ann rho),  t~ - t = j1 + j2 - k,  tau(v . rho) = phi(v) . tau(rho)",
       "Dualizes the structure and its spinors through the pair and checks annihilators, types and intertwining."},
      {"double-duality", "double-duality STRUCTURE", {}, "tau(rho1 + i dt rho2) = i (-1)^|rho2| (rho2 + i dt~ rho1)",
       "Trivial circle duality of the cone spinor swaps the two spinors."},
      {"intertwiner", "intertwiner PAIR", {},
       "<phi v, phi w> = <v, w>,  phi[v, w]_H = [phi v, phi w]_H~,  tau(v . rho) = phi(v) . tau(rho)",
       "Intertwining identities of a dual pair on frame generators and coframe monomials."},
  };
  return catalog;
}

const CheckInfo* find_check(const std::string& kind) {
  for (const auto& c : check_catalog()) {
    if (c.kind == kind) return &c;
  }
  return nullptr;
}

CheckResult run_check(const Scenario& s, const CheckSpec& check) {
  CheckResult r;
  r.label = check.label();
  const auto start = std::chrono::steady_clock::now();
  Context x{s, check, r};
  try {
    runners().at(check.kind)(x);
  } catch (const SecondOrderDerivativeRequired& e) {
    r = CheckResult{r.label, Verdict::Inconclusive, {}, {e.what()}, {}, 0};
  } catch (const NotPolynomial& e) {
    r = CheckResult{r.label, Verdict::Inconclusive, {}, {e.what()}, {}, 0};
  } catch (const std::exception& e) {
    r.verdict = Verdict::Fail;
    r.residuals.push_back(e.what());
  }
  if (auto o = check.params.find("outcome"); o != check.params.end() && o->second == "fail") {
    if (r.verdict == Verdict::Fail) {
      r.verdict = Verdict::Pass;
      r.notes.push_back("fails as expected");
    } else if (r.verdict == Verdict::Pass) {
      r.verdict = Verdict::Fail;
      r.residuals.push_back("expected a failure but every condition holds");
    }
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

Report run_scenario(const Scenario& s) {
  Report out{s.name, s.description, {}};
  for (const auto& c : s.checks) out.checks.push_back(run_check(s, c));
  return out;
}

}  // namespace gencontact
