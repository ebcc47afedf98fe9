#include <gtest/gtest.h>

#include <random>

#include "gencontact/builtins.hpp"
#include "gencontact/calculus.hpp"
#include "gencontact/document.hpp"
#include "gencontact/errors.hpp"
#include "gencontact/expression.hpp"
#include "gencontact/model_loader.hpp"
#include "gencontact/spinor.hpp"
#include "test_support.hpp"

namespace gencontact {
namespace {

GenSection sec(const ModelPtr& m, const std::string& text) { return parse_section(text, Scope(m)); }
DifferentialForm form(const ModelPtr& m, const std::string& text) { return parse_form(text, Scope(m)); }

int levi_civita(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  return ((j - i + 3) % 3 == 1) ? 1 : -1;  // cyclic on 0,1,2
}

// Closed 3-form used as a twist on each builtin model, or none when the model
// has fewer than three directions.
std::optional<DifferentialForm> sample_twist(const ModelPtr& m) {
  if (m->dim() < 3) return std::nullopt;
  return make_twist(*m, DifferentialForm::monomial(m->context(), m->dim(), 0b111));
}

TEST(Builtins, EveryModelLoadsAndValidates) {
  auto entries = builtin_models();
  ASSERT_GE(entries.size(), 8u);
  for (const auto& e : entries) {
    SCOPED_TRACE(e.name);
    ModelPtr m = builtin_model(e.name);
    EXPECT_EQ(m->name(), e.name);
    EXPECT_GE(m->points().size(), 3u);
    EXPECT_EQ(builtin_model(e.name), m);
  }
  EXPECT_THROW(builtin_model("no-such-model"), UnknownSymbol);
}

TEST(ModelLoader, RejectsJacobiViolation) {
  // [X1,X2] = X1, [X2,X3] = X2: the Jacobi sum on (X1,X2,X3) is X1.
  const char* text = R"(
[model broken]
frame = X1 X2 X3
coframe = a1 a2 a3
bracket X1 X2 = X1
bracket X2 X3 = X2
point a =
point b =
point c =
)";
  auto doc = parse_document(text);
  try {
    build_model(doc.sections.at(0), [](const std::string& n) { return builtin_model(n); });
    FAIL() << "expected a validation error";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("(X1, X2, X3)"), std::string::npos) << e.what();
  }
}

TEST(ModelLoader, ReportsColumnOfBadExpression) {
  const char* text = "[model bad]\nframe = X1 X2 X3\ncoframe = a1 a2 a3\nbracket X1 X2 = 2*$X3\n";
  auto doc = parse_document(text);
  try {
    build_model(doc.sections.at(0), [](const std::string& n) { return builtin_model(n); });
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4);
    EXPECT_EQ(e.column(), 19);
  }
}

TEST(S3, VectorBracketTable) {
  auto m = builtin_model("s3");
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      GenSection expected(*m);
      for (int k = 0; k < 3; ++k) expected.vec()[k] = FunctionElement(m->context(), 2 * levi_civita(i, j, k));
      EXPECT_EQ(dorfman(*m, GenSection::basis_vector(*m, i), GenSection::basis_vector(*m, j)), expected);
    }
  }
}

TEST(S3, OrientationSearchPinsCoframeDifferentials) {
  // Oracle: for constant coframe, d nu^e(V_a, V_b) = -nu^e([V_a, V_b]). Try
  // both global signs s in d nu_k = 2 s eps nu_i nu_j and keep the consistent one.
  auto m = builtin_model("s3");
  std::vector<int> consistent;
  for (int s : {1, -1}) {
    bool ok = true;
    for (int k = 0; k < 3; ++k) {
      for (int a = 0; a < 3; ++a) {
        for (int b = a + 1; b < 3; ++b) {
          const int candidate = 2 * s * levi_civita(a, b, k);
          const int cartan = -2 * levi_civita(a, b, k);
          ok = ok && candidate == cartan;
        }
      }
    }
    if (ok) consistent.push_back(s);
  }
  ASSERT_EQ(consistent, std::vector<int>{-1});
  for (int k = 0; k < 3; ++k) {
    DifferentialForm expected = m->zero_form();
    for (int a = 0; a < 3; ++a) {
      for (int b = a + 1; b < 3; ++b) {
        expected.add((1u << a) | (1u << b), FunctionElement(m->context(), 2 * consistent[0] * levi_civita(a, b, k)));
      }
    }
    EXPECT_EQ(m->coframe_differential(k), expected);
  }
}

TEST(S3, DorfmanVectorOnCoframe) {
  // [V_i, nu_j] = sum_k 2 eps_ijk nu_k
  auto m = builtin_model("s3");
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      GenSection expected(*m);
      for (int k = 0; k < 3; ++k) expected.form()[k] = FunctionElement(m->context(), 2 * levi_civita(i, j, k));
      EXPECT_EQ(dorfman(*m, GenSection::basis_vector(*m, i), GenSection::basis_form(*m, j)), expected);
    }
  }
}

TEST(S3, PairingOfPublishedFrame) {
  auto m = builtin_model("s3-formal");
  auto e1 = sec(m, "-V1");
  auto e2 = sec(m, "-nu1 - f*V2 - g*V3");
  EXPECT_EQ(inner_product(e1, e2), FunctionElement(m->context(), GaussianRational(mpq_class(1, 2))));
  EXPECT_TRUE(inner_product(e1, e1).is_zero());
  EXPECT_TRUE(inner_product(e2, e2).is_zero());
}

TEST(Heisenberg, DorfmanTable) {
  auto m = builtin_model("heisenberg");
  EXPECT_EQ(dorfman(*m, sec(m, "X1"), sec(m, "a3")), sec(m, "a2"));
  EXPECT_EQ(dorfman(*m, sec(m, "X2"), sec(m, "a3")), sec(m, "-a1"));
  EXPECT_EQ(dorfman(*m, sec(m, "X1"), sec(m, "X2")), sec(m, "-X3"));
}

TEST(Dorfman, OneFormTwistOnCone) {
  auto base = builtin_model("torus");
  auto cone = extend_by_line(base, "", "Dt", "dt");
  auto dt_form = form(cone, "dt");
  EXPECT_EQ(dorfman_one_form_twist(*cone, sec(cone, "Dt"), sec(cone, "dt"), dt_form), sec(cone, "dt"));
  EXPECT_EQ(dorfman_one_form_twist(*cone, sec(cone, "Dt"), sec(cone, "a2"), dt_form), sec(cone, "a2"));
  EXPECT_TRUE(dorfman(*cone, sec(cone, "dt"), sec(cone, "Dt")).is_zero());
  EXPECT_TRUE(dorfman(*cone, sec(cone, "Dt"), sec(cone, "dt")).is_zero());
}

TEST(Dorfman, BTransformExamples) {
  auto m = builtin_model("torus");
  auto omega = form(m, "a1^a2");
  auto e1 = sec(m, "X2 + a1");
  EXPECT_TRUE(inner_product(e1, e1).is_zero());
  // Omega = alpha ^ beta with beta(X) = 1 sends X + alpha to X.
  EXPECT_EQ(b_transform(*m, omega, e1), sec(m, "X2"));
  EXPECT_EQ(b_transform(*m, m->zero_form(), e1), e1);
  EXPECT_EQ(b_transform(*m, omega, sec(m, "a3")), sec(m, "a3"));
}

class BuiltinModelTest : public ::testing::TestWithParam<std::string> {};

TEST_P(BuiltinModelTest, CourantAxiomsOnGenerators) {
  auto m = builtin_model(GetParam());
  auto gens = GenSection::generators(*m);
  EXPECT_TRUE(courant_axioms_check(*m, gens).ok());
  if (auto h = sample_twist(m)) {
    EXPECT_TRUE(courant_axioms_check(*m, gens, &*h).ok());
  }
}

TEST_P(BuiltinModelTest, AntisymmetryDefectIsExactAndAnchorKillsIt) {
  auto m = builtin_model(GetParam());
  auto gens = GenSection::generators(*m);
  auto h = sample_twist(m);
  for (const auto& x : gens) {
    for (const auto& y : gens) {
      GenSection twice_d = exact_section(*m, inner_product(x, y)).scaled(FunctionElement(2));
      GenSection defect = dorfman(*m, x, y) + dorfman(*m, y, x);
      EXPECT_EQ(defect, twice_d);
      EXPECT_TRUE(GenSection(defect.vec(), m->zero_column()).is_zero());
      if (h) EXPECT_EQ(dorfman(*m, x, y, &*h) + dorfman(*m, y, x, &*h), twice_d);
      DifferentialForm zero_twist = m->zero_form();
      EXPECT_EQ(dorfman(*m, x, y, &zero_twist), dorfman(*m, x, y));
    }
  }
}

TEST_P(BuiltinModelTest, DSquaredVanishes) {
  auto m = builtin_model(GetParam());
  const bool formal = [&] {
    for (const auto& g : m->context()->generators()) {
      if (g.kind == GeneratorKind::Formal || g.kind == GeneratorKind::Derivative) return true;
    }
    return false;
  }();
  std::mt19937 rng(3);
  auto h = sample_twist(m);
  const Mask full = (Mask(1) << m->dim()) - 1;
  for (Mask mask = 0; mask <= full; ++mask) {
    FunctionElement coeff = formal ? FunctionElement(m->context(), 1) : testing::random_element(m->context(), rng, 2);
    if (coeff.is_zero()) coeff = FunctionElement(m->context(), 1);
    auto rho = DifferentialForm::monomial(m->context(), m->dim(), mask, coeff);
    EXPECT_TRUE(exterior_d(*m, exterior_d(*m, rho)).is_zero());
    if (h) EXPECT_TRUE(exterior_d(*m, exterior_d(*m, rho, &*h), &*h).is_zero());
    if (m->dim() > 5 && mask > 64) break;
  }
}

TEST_P(BuiltinModelTest, BTransformPreservesPairing) {
  auto m = builtin_model(GetParam());
  auto gens = GenSection::generators(*m);
  for (const auto& [name, omega] : m->closed_two_forms()) {
    for (const auto& x : gens) {
      for (const auto& y : gens) {
        EXPECT_EQ(inner_product(b_transform(*m, omega, x), b_transform(*m, omega, y)), inner_product(x, y));
      }
    }
  }
}

std::vector<std::string> builtin_names() {
  std::vector<std::string> out;
  for (const auto& e : builtin_models()) out.push_back(e.name);
  return out;
}

INSTANTIATE_TEST_SUITE_P(All, BuiltinModelTest, ::testing::ValuesIn(builtin_names()),
                         [](const auto& info) {
                           std::string n = info.param;
                           for (auto& c : n) {
                             if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
                           }
                           return n;
                         });

}  // namespace
}  // namespace gencontact
