#pragma once

#include <random>
#include <string>
#include <vector>

#include "gencontact/function_element.hpp"

namespace gencontact::testing {

/// Polynomial coordinates x1..x4 on the unit 3-sphere with the three
/// quaternionic rotation fields as derivations V1, V2, V3.
inline ContextPtr sphere_context() {
  ScalarContext::Builder b;
  for (const char* n : {"x1", "x2", "x3", "x4"}) b.add_generator(n, GeneratorKind::Coordinate);
  auto pre = b.provisional();
  auto x = [&](int i) { return FunctionElement::generator(pre, "x" + std::to_string(i)); };
  b.add_relation("x4", 2, (FunctionElement(pre, 1) - x(1) * x(1) - x(2) * x(2) - x(3) * x(3)).terms());
  const int images[3][4][2] = {
      {{2, 1}, {1, -1}, {4, 1}, {3, -1}},
      {{3, 1}, {4, -1}, {1, -1}, {2, 1}},
      {{4, 1}, {3, 1}, {2, -1}, {1, -1}},
  };
  for (int d = 0; d < 3; ++d) {
    auto idx = b.add_derivation("V" + std::to_string(d + 1));
    for (int g = 0; g < 4; ++g) {
      b.set_image(idx, "x" + std::to_string(g + 1), x(images[d][g][0]).scaled(images[d][g][1]).terms());
    }
  }
  return b.build();
}

/// Random polynomial of bounded degree with small Gaussian integer coefficients.
inline FunctionElement random_element(const ContextPtr& ctx, std::mt19937& rng, unsigned max_degree = 2,
                                      int max_terms = 4, bool complex = true) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::uniform_int_distribution<int> gen(0, static_cast<int>(ctx->generator_count()) - 1);
  std::uniform_int_distribution<unsigned> deg(0, max_degree);
  FunctionElement out(ctx, 0);
  const int n = nterms(rng);
  for (int t = 0; t < n; ++t) {
    FunctionElement term(ctx, GaussianRational(coeff(rng), complex ? coeff(rng) : 0));
    const unsigned d = deg(rng);
    for (unsigned k = 0; k < d; ++k) term *= FunctionElement::generator(ctx, static_cast<std::size_t>(gen(rng)));
    out += term;
  }
  return out;
}

}  // namespace gencontact::testing
