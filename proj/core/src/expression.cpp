#include "gencontact/expression.hpp"

#include <cctype>

#include "gencontact/calculus.hpp"
#include "gencontact/errors.hpp"
#include "gencontact/spinor.hpp"

namespace gencontact {

const FunctionElement& Value::scalar() const { return std::get<FunctionElement>(v_); }

std::string Value::kind_name() const {
  if (is_scalar()) return "scalar";
  if (is_section()) return "section";
  return "form";
}

Scope::Scope(const ModelPtr& model)
    : ctx_(model->context()), model_(model), vectors_(model->vector_names()), coframe_(model->coframe_names()) {}

void Scope::define(const std::string& name, Value v) { defs_.insert_or_assign(name, std::move(v)); }

const Value* Scope::lookup(const std::string& name) const {
  auto it = defs_.find(name);
  return it == defs_.end() ? nullptr : &it->second;
}

namespace {

enum class Tok { Number, Ident, Op, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int column = 0;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '~'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '~' || c == '\'';
}

class Parser {
 public:
  Parser(const std::string& text, const Scope& scope) : text_(text), scope_(scope) { tokenize(); }

  Value parse() {
    Value v = expr();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'", peek().column);
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, int column) const { throw ParseError(msg, 0, column); }

  void tokenize() {
    std::size_t i = 0;
    const auto& ctx = scope_.context();
    while (i < text_.size()) {
      const char c = text_[i];
      const int col = static_cast<int>(i) + 1;
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t j = i;
        while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
        if (j < text_.size() && text_[j] == '.' && j + 1 < text_.size() &&
            std::isdigit(static_cast<unsigned char>(text_[j + 1]))) {
          ++j;
          while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
        }
        tokens_.push_back({Tok::Number, text_.substr(i, j - i), col});
        i = j;
      } else if (ident_start(c)) {
        std::size_t j = i;
        while (j < text_.size() && ident_char(text_[j])) ++j;
        std::string name = text_.substr(i, j - i);
        // Derivative symbols such as "V1(f)" are single generators.
        if (j < text_.size() && text_[j] == '(' && ctx) {
          const auto close = text_.find(')', j);
          if (close != std::string::npos) {
            std::string inner = text_.substr(j + 1, close - j - 1);
            std::string joined = name + "(" + inner + ")";
            if (ctx->find_generator(joined) && !scope_.lookup(name)) {
              tokens_.push_back({Tok::Ident, joined, col});
              i = close + 1;
              continue;
            }
          }
        }
        tokens_.push_back({Tok::Ident, name, col});
        i = j;
      } else if (std::string("+-*/^().,").find(c) != std::string::npos) {
        tokens_.push_back({Tok::Op, std::string(1, c), col});
        ++i;
      } else {
        fail(std::string("unexpected character '") + c + "'", col);
      }
    }
    tokens_.push_back({Tok::End, "end of input", static_cast<int>(text_.size()) + 1});
  }

  const Token& peek() const { return tokens_[pos_]; }
  Token next() { return tokens_[pos_++]; }
  bool accept(const std::string& op) {
    if (peek().kind == Tok::Op && peek().text == op) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(const std::string& op) {
    if (!accept(op)) fail("expected '" + op + "'", peek().column);
  }

  // --- conversions -------------------------------------------------------

  FunctionElement lift(const FunctionElement& u) const { return u.lift_to(scope_.context()); }

  void need_frame(int col) const {
    if (!scope_.has_frame()) fail("sections and forms need a frame here", col);
  }

  GenSection zero_section() const {
    Column z(scope_.dim(), FunctionElement(scope_.context(), 0));
    return GenSection(z, z);
  }

  DifferentialForm form_of(const Value& v, int col) const {
    need_frame(col);
    if (v.is_form()) return v.form();
    if (v.is_scalar()) return DifferentialForm::scalar(scope_.context(), scope_.dim(), lift(v.scalar()));
    const GenSection& s = v.section();
    if (!s.is_form()) fail("a section with a vector part is not a form", col);
    DifferentialForm out(scope_.context(), scope_.dim());
    for (std::size_t a = 0; a < s.dim(); ++a) out.add(Mask{1} << a, s.form()[a]);
    return out;
  }

  GenSection section_of(const Value& v, int col) const {
    need_frame(col);
    if (v.is_section()) return v.section();
    if (v.is_form()) {
      const auto& f = v.form();
      if (!f.is_zero() && (!f.is_homogeneous() || *f.min_degree() != 1)) {
        fail("only 1-forms can be used as sections", col);
      }
      GenSection out = zero_section();
      for (const auto& [m, u] : f.terms()) out.form()[static_cast<std::size_t>(__builtin_ctz(m))] = u;
      return out;
    }
    if (v.scalar().is_zero()) return zero_section();
    fail("a nonzero scalar is not a section", col);
  }

  // --- arithmetic --------------------------------------------------------

  Value add(const Value& a, const Value& b, bool subtract, int col) const {
    auto sign = [&](const auto& x) { return subtract ? -x : x; };
    if (a.is_scalar() && b.is_scalar()) return Value(lift(a.scalar()) + sign(lift(b.scalar())));
    const bool zero_a = a.is_scalar() && a.scalar().is_zero();
    const bool zero_b = b.is_scalar() && b.scalar().is_zero();
    if (a.is_section() || b.is_section()) {
      if (zero_a) return Value(sign(section_of(b, col)));
      if (zero_b) return a;
      return Value(section_of(a, col) + sign(section_of(b, col)));
    }
    return Value(form_of(a, col) + sign(form_of(b, col)));
  }

  Value multiply(const Value& a, const Value& b, int col) const {
    if (a.is_scalar() && b.is_scalar()) return Value(lift(a.scalar()) * lift(b.scalar()));
    if (a.is_scalar() && b.is_section()) return Value(b.section().scaled(lift(a.scalar())));
    if (a.is_section() && b.is_scalar()) return Value(a.section().scaled(lift(b.scalar())));
    if (a.is_scalar() && b.is_form()) return Value(b.form().scaled(lift(a.scalar())));
    if (a.is_form() && b.is_scalar()) return Value(a.form().scaled(lift(b.scalar())));
    if (a.is_section() && !a.section().is_form()) fail("cannot multiply a vector part; use '.' for the Clifford action", col);
    if (b.is_section() && !b.section().is_form()) fail("cannot multiply a vector part; use '.' for the Clifford action", col);
    return Value(form_of(a, col).wedge(form_of(b, col)));
  }

  Value clifford(const Value& a, const Value& b, int col) const {
    need_frame(col);
    if (!scope_.model()) fail("the Clifford action needs a model", col);
    const GenSection x = section_of(a, col);
    return Value(clifford_act(*scope_.model(), x, form_of(b, col)));
  }

  Value divide(const Value& a, const Value& b, int col) const {
    if (!b.is_scalar()) fail("can only divide by a scalar", col);
    auto inv = lift(b.scalar()).try_inverse();
    if (!inv) fail("divisor '" + b.scalar().to_string() + "' is not invertible", col);
    return multiply(a, Value(*inv), col);
  }

  // --- grammar -----------------------------------------------------------

  Value expr() {
    Value v = term();
    while (peek().kind == Tok::Op && (peek().text == "+" || peek().text == "-")) {
      Token op = next();
      Value rhs = term();
      v = add(v, rhs, op.text == "-", op.column);
    }
    return v;
  }

  Value term() {
    Value v = unary();
    while (peek().kind == Tok::Op && (peek().text == "*" || peek().text == "/" || peek().text == ".")) {
      Token op = next();
      if (op.text == ".") {
        Value rhs = term();  // right associative, consumes the rest of the product
        return clifford(v, rhs, op.column);
      }
      Value rhs = unary();
      v = op.text == "*" ? multiply(v, rhs, op.column) : divide(v, rhs, op.column);
    }
    return v;
  }

  Value unary() {
    if (peek().kind == Tok::Op && peek().text == "-") {
      Token op = next();
      Value v = unary();
      return add(Value(FunctionElement(scope_.context(), 0)), v, true, op.column);
    }
    if (accept("+")) return unary();
    return power();
  }

  Value power() {
    Value v = atom();
    while (peek().kind == Tok::Op && peek().text == "^") {
      Token op = next();
      const Token& t = peek();
      if (v.is_scalar() && t.kind == Tok::Number) {
        Token num = next();
        if (num.text.find('.') != std::string::npos) fail("exponent must be a nonnegative integer", num.column);
        v = Value(lift(v.scalar()).pow(static_cast<unsigned>(std::stoul(num.text))));
        continue;
      }
      Value rhs = atom();
      v = Value(form_of(v, op.column).wedge(form_of(rhs, op.column)));
    }
    return v;
  }

  Value number(const Token& t) const {
    const auto dot = t.text.find('.');
    if (dot == std::string::npos) return Value(FunctionElement(scope_.context(), GaussianRational::parse_rational(t.text)));
    std::string digits = t.text.substr(0, dot) + t.text.substr(dot + 1);
    std::string denom = "1" + std::string(t.text.size() - dot - 1, '0');
    return Value(FunctionElement(scope_.context(), GaussianRational::parse_rational(digits + "/" + denom)));
  }

  Value call(const Token& name) {
    expect("(");
    Value arg = expr();
    expect(")");
    const int col = name.column;
    const std::string& f = name.text;
    if (f == "conj") {
      if (arg.is_scalar()) return Value(arg.scalar().conj());
      if (arg.is_section()) return Value(arg.section().conj());
      return Value(arg.form().conj());
    }
    if (f == "Re" || f == "Im") {
      if (!arg.is_scalar()) fail(f + " applies to scalars", col);
      return Value(f == "Re" ? arg.scalar().real_part() : arg.scalar().imag_part());
    }
    if (f == "exp") {
      DifferentialForm form = form_of(arg, col);
      if (form.parity() && *form.parity() == 1) fail("exp needs an even form", col);
      if (!form.coefficient(0).is_zero()) fail("exp needs a form without scalar part", col);
      return Value(form.exp());
    }
    if (f == "d") {
      if (!scope_.model()) fail("d needs a model", col);
      if (arg.is_scalar()) return Value(differential(*scope_.model(), lift(arg.scalar())));
      return Value(exterior_derivative(*scope_.model(), form_of(arg, col)));
    }
    fail("unknown function '" + f + "'", col);
  }

  Value atom() {
    Token t = next();
    if (t.kind == Tok::Number) return number(t);
    if (t.kind == Tok::Op && t.text == "(") {
      Value v = expr();
      expect(")");
      return v;
    }
    if (t.kind != Tok::Ident) fail("unexpected '" + t.text + "'", t.column);
    static const char* functions[] = {"conj", "Re", "Im", "exp", "d"};
    for (const char* fn : functions) {
      if (t.text == fn && peek().kind == Tok::Op && peek().text == "(") return call(t);
    }
    if (const Value* v = scope_.lookup(t.text)) return *v;
    const auto& ctx = scope_.context();
    if (ctx && ctx->find_generator(t.text)) return Value(FunctionElement::generator(ctx, t.text));
    for (std::size_t a = 0; a < scope_.vectors().size(); ++a) {
      if (scope_.vectors()[a] == t.text) {
        GenSection s = zero_section();
        s.vec()[a] = FunctionElement(ctx, 1);
        return Value(s);
      }
    }
    for (std::size_t a = 0; a < scope_.coframe().size(); ++a) {
      if (scope_.coframe()[a] == t.text) return Value(DifferentialForm::coframe(ctx, scope_.dim(), a));
    }
    if (t.text == "i") return Value(FunctionElement(ctx, GaussianRational::i()));
    throw ParseError("unknown symbol '" + t.text + "'", 0, t.column);
  }

  const std::string& text_;
  const Scope& scope_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

Value evaluate_expression(const std::string& text, const Scope& scope) {
  try {
    return Parser(text, scope).parse();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), 0, 0);
  } catch (const std::domain_error& e) {
    throw ParseError(e.what(), 0, 0);
  }
}

GenSection to_section(const Value& v, const Scope& scope) {
  if (v.is_section()) return v.section();
  if (!scope.has_frame()) throw ParseError("expected a section", 0);
  Column z(scope.dim(), FunctionElement(scope.context(), 0));
  GenSection out(z, z);
  if (v.is_scalar()) {
    if (v.scalar().is_zero()) return out;
    throw ParseError("expected a section, got a scalar", 0);
  }
  const auto& f = v.form();
  if (!f.is_zero() && (!f.is_homogeneous() || *f.min_degree() != 1)) throw ParseError("expected a section, got a form", 0);
  for (const auto& [m, u] : f.terms()) out.form()[static_cast<std::size_t>(__builtin_ctz(m))] = u;
  return out;
}

DifferentialForm to_form(const Value& v, const Scope& scope) {
  if (v.is_form()) return v.form();
  if (!scope.has_frame()) throw ParseError("expected a form", 0);
  if (v.is_scalar()) return DifferentialForm::scalar(scope.context(), scope.dim(), v.scalar().lift_to(scope.context()));
  const GenSection& s = v.section();
  if (!s.is_form()) throw ParseError("expected a form, got a section with a vector part", 0);
  DifferentialForm out(scope.context(), scope.dim());
  for (std::size_t a = 0; a < s.dim(); ++a) out.add(Mask{1} << a, s.form()[a]);
  return out;
}

FunctionElement parse_scalar(const std::string& text, const Scope& scope) {
  Value v = evaluate_expression(text, scope);
  if (!v.is_scalar()) throw ParseError("expected a scalar, got a " + v.kind_name(), 0);
  return v.scalar().lift_to(scope.context());
}

GenSection parse_section(const std::string& text, const Scope& scope) {
  return to_section(evaluate_expression(text, scope), scope);
}

DifferentialForm parse_form(const std::string& text, const Scope& scope) {
  return to_form(evaluate_expression(text, scope), scope);
}

}  // namespace gencontact
