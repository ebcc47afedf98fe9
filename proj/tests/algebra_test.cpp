#include <gtest/gtest.h>

#include <random>

#include "gencontact/errors.hpp"
#include "gencontact/linear_solve.hpp"
#include "test_support.hpp"

namespace gencontact {
namespace {

using testing::random_element;
using testing::sphere_context;

TEST(GaussianRational, FieldOperations) {
  GaussianRational a(mpq_class(1, 2), 3);
  GaussianRational b(2, -1);
  EXPECT_EQ(a * b, GaussianRational(mpq_class(4), mpq_class(11, 2)));
  EXPECT_EQ((a / b) * b, a);
  EXPECT_EQ(GaussianRational::i() * GaussianRational::i(), GaussianRational(-1));
  EXPECT_EQ(a.conj().imag(), -3);
  EXPECT_THROW(GaussianRational(0).inverse(), std::domain_error);
}

TEST(GaussianRational, Rendering) {
  EXPECT_EQ(GaussianRational(mpq_class(-3, 4)).to_string(), "-3/4");
  EXPECT_EQ(GaussianRational::i().to_string(), "i");
  EXPECT_EQ(GaussianRational(0, -2).to_string(), "-2*i");
  EXPECT_EQ(GaussianRational(1, 2).to_string(), "(1 + 2*i)");
  EXPECT_EQ(GaussianRational(1, -1).to_string(), "(1 - i)");
}

TEST(ScalarContext, SphereNormalFormHasLowX4Degree) {
  auto ctx = sphere_context();
  auto x4 = FunctionElement::generator(ctx, "x4");
  auto x1 = FunctionElement::generator(ctx, "x1");
  auto x2 = FunctionElement::generator(ctx, "x2");
  auto x3 = FunctionElement::generator(ctx, "x3");
  EXPECT_EQ(x4 * x4, FunctionElement(ctx, 1) - x1 * x1 - x2 * x2 - x3 * x3);
  EXPECT_EQ((x1 * x1 + x2 * x2 + x3 * x3 + x4 * x4), FunctionElement(ctx, 1));
  std::mt19937 rng(7);
  const std::size_t i4 = ctx->generator_index("x4");
  for (int trial = 0; trial < 40; ++trial) {
    auto p = random_element(ctx, rng, 3) * random_element(ctx, rng, 3);
    for (const auto& [m, c] : p.terms()) EXPECT_LT(m[i4], 2);
  }
}

TEST(ScalarContext, RingAxiomsModuloRelation) {
  auto ctx = sphere_context();
  std::mt19937 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    auto a = random_element(ctx, rng);
    auto b = random_element(ctx, rng);
    auto c = random_element(ctx, rng);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
  }
}

TEST(ScalarContext, DerivationsOnSphereSatisfyCommutators) {
  auto ctx = sphere_context();
  std::mt19937 rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    auto u = random_element(ctx, rng, 3);
    auto v = random_element(ctx, rng, 2);
    // Leibniz rule.
    EXPECT_EQ((u * v).derive("V1"), u.derive("V1") * v + u * v.derive("V1"));
    // [V1, V2] = 2 V3 and cyclic.
    EXPECT_EQ(u.derive("V2").derive("V1") - u.derive("V1").derive("V2"), u.derive("V3").scaled(2));
    EXPECT_EQ(u.derive("V3").derive("V2") - u.derive("V2").derive("V3"), u.derive("V1").scaled(2));
    EXPECT_EQ(u.derive("V1").derive("V3") - u.derive("V3").derive("V1"), u.derive("V2").scaled(2));
  }
}

TEST(ScalarContext, DerivationNotTangentToRelationIsRejected) {
  ScalarContext::Builder b;
  b.add_generator("x", GeneratorKind::Coordinate);
  b.add_generator("y", GeneratorKind::Coordinate);
  auto pre = b.provisional();
  auto x = FunctionElement::generator(pre, "x");
  b.add_relation("y", 2, (FunctionElement(pre, 1) - x * x).terms());
  auto d = b.add_derivation("D");
  b.set_image(d, "x", FunctionElement(pre, 1).terms());
  EXPECT_THROW(b.build(), ValidationError);
}

TEST(ScalarContext, FormalJetRefusesSecondDerivatives) {
  ScalarContext::Builder b;
  b.add_generator("f", GeneratorKind::Formal);
  b.add_generator("X(f)", GeneratorKind::Derivative);
  b.add_generator("c", GeneratorKind::Parameter);
  auto pre = b.provisional();
  auto d = b.add_derivation("X");
  b.set_image(d, "f", FunctionElement::generator(pre, "X(f)").terms());
  auto ctx = b.build();
  auto f = FunctionElement::generator(ctx, "f");
  auto c = FunctionElement::generator(ctx, "c");
  EXPECT_EQ((c * f * f).derive("X"), c.scaled(2) * f * FunctionElement::generator(ctx, "X(f)"));
  EXPECT_THROW(f.derive("X").derive("X"), SecondOrderDerivativeRequired);
  EXPECT_TRUE(c.derive("X").is_zero());
}

TEST(FunctionElement, AlgebraicConstantInverse) {
  ScalarContext::Builder b;
  b.add_generator("s", GeneratorKind::Algebraic);
  b.add_relation("s", 2, Terms{{Monomial{0}, GaussianRational(2)}});
  auto ctx = b.build();
  auto s = FunctionElement::generator(ctx, "s");
  auto u = FunctionElement(ctx, 1) + s;
  auto inv = u.try_inverse();
  ASSERT_TRUE(inv.has_value());
  EXPECT_EQ(*inv, s - FunctionElement(ctx, 1));
  EXPECT_EQ(u * *inv, FunctionElement(ctx, 1));
  EXPECT_EQ(s * s, FunctionElement(ctx, 2));
}

TEST(FunctionElement, ExactDivision) {
  auto ctx = sphere_context();
  std::mt19937 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    auto p = random_element(ctx, rng, 2, 3, false);
    auto q = random_element(ctx, rng, 2, 3, true);
    if (q.is_zero()) continue;
    auto quotient = (p * q).divide_exact(q);
    ASSERT_TRUE(quotient.has_value());
    EXPECT_EQ(*quotient * q, p * q);
  }
  auto x1 = FunctionElement::generator(ctx, "x1");
  auto x2 = FunctionElement::generator(ctx, "x2");
  EXPECT_FALSE((x1 + FunctionElement(ctx, 1)).divide_exact(x2).has_value());
}

TEST(FunctionElement, EvaluateAtSpherePoint) {
  auto ctx = sphere_context();
  Point p{"p", {GaussianRational(mpq_class(2, 7)), GaussianRational(mpq_class(3, 7)),
                GaussianRational(mpq_class(6, 7)), GaussianRational(0)}};
  auto x4 = FunctionElement::generator(ctx, "x4");
  EXPECT_TRUE((x4 * x4).evaluate(p).is_zero());
  auto x3 = FunctionElement::generator(ctx, "x3");
  EXPECT_EQ((x3 * x3).evaluate(p).constant_value(), GaussianRational(mpq_class(36, 49)));
}

TEST(FunctionElement, RenderingIsStable) {
  auto ctx = sphere_context();
  auto x1 = FunctionElement::generator(ctx, "x1");
  auto x2 = FunctionElement::generator(ctx, "x2");
  auto e = x1 * x1 - x2.scaled(GaussianRational::i()) + FunctionElement(ctx, GaussianRational(mpq_class(1, 2)));
  EXPECT_EQ(e.to_string(), "x1^2 - i*x2 + 1/2");
}

TEST(LinearSolve, PolynomialSystem) {
  auto ctx = sphere_context();
  auto x1 = FunctionElement::generator(ctx, "x1");
  auto x2 = FunctionElement::generator(ctx, "x2");
  Matrix a(2, 2);
  a(0, 0) = x1;
  a(0, 1) = x2;
  a(1, 0) = -x2;
  a(1, 1) = x1;
  Column b{x1 * x1 + x2 * x2, FunctionElement(ctx, 0)};
  auto res = solve_linear(a, b);
  ASSERT_TRUE(std::holds_alternative<LinearSolution>(res));
  const auto& sol = std::get<LinearSolution>(res);
  auto v0 = sol.values[0].as_element();
  auto v1 = sol.values[1].as_element();
  ASSERT_TRUE(v0 && v1);
  EXPECT_EQ(*v0, x1);
  EXPECT_EQ(*v1, x2);
}

TEST(LinearSolve, InconsistentSystemReportsWitness) {
  auto ctx = sphere_context();
  auto x1 = FunctionElement::generator(ctx, "x1");
  Matrix a(2, 1);
  a(0, 0) = x1;
  a(1, 0) = x1.scaled(2);
  Column b{FunctionElement(ctx, 1), FunctionElement(ctx, 3)};
  auto res = solve_linear(a, b);
  ASSERT_TRUE(std::holds_alternative<Inconsistency>(res));
  EXPECT_FALSE(std::get<Inconsistency>(res).residual.is_zero());
}

TEST(LinearSolve, RandomConsistentSystems) {
  auto ctx = sphere_context();
  std::mt19937 rng(19);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t rows = 3;
    const std::size_t cols = 3;
    Matrix a(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) a(r, c) = random_element(ctx, rng, 1, 2);
    }
    Column x0(cols);
    for (auto& v : x0) v = random_element(ctx, rng, 1, 2);
    Column b = a.apply(x0);
    auto res = solve_linear(a, b);
    ASSERT_TRUE(std::holds_alternative<LinearSolution>(res));
    const auto& sol = std::get<LinearSolution>(res);
    // Check A * (num / den) == b by clearing each denominator.
    FunctionElement common(ctx, 1);
    for (const auto& f : sol.values) common *= f.denominator;
    Column scaled(cols);
    for (std::size_t c = 0; c < cols; ++c) {
      auto q = common.divide_exact(sol.values[c].denominator);
      ASSERT_TRUE(q.has_value());
      scaled[c] = sol.values[c].numerator * *q;
    }
    auto lhs = a.apply(scaled);
    for (std::size_t r = 0; r < rows; ++r) EXPECT_EQ(lhs[r], b[r] * common);
  }
}

TEST(LinearSolve, KernelVectorsAreAnnihilated) {
  auto ctx = sphere_context();
  std::mt19937 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix a(2, 4);
    for (std::size_t r = 0; r < 2; ++r) {
      for (std::size_t c = 0; c < 4; ++c) a(r, c) = random_element(ctx, rng, 1, 2);
    }
    const auto r = rank(a);
    auto ker = kernel_basis(a);
    EXPECT_EQ(ker.size(), 4 - r);
    for (const auto& v : ker) {
      for (const auto& e : a.apply(v)) EXPECT_TRUE(e.is_zero());
    }
  }
}

}  // namespace
}  // namespace gencontact
