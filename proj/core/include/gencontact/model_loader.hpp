#pragma once

#include <functional>
#include <string>

#include "gencontact/document.hpp"
#include "gencontact/frame_model.hpp"

namespace gencontact {

/// Looks up a model by name; throws UnknownSymbol when it does not exist.
using ModelResolver = std::function<ModelPtr(const std::string&)>;

/// Builds a model from a `[model NAME]` section.
///
///   coordinates = x1 x2          ordinary polynomial generators
///   formal = f g                 first-order jets; each frame derivation D
///                                gets a generator "D(f)" unless its image is given
///   parameters = c               real constants killed by every derivation
///   algebraic = s                constants fixed by a relation
///   relation = x4^2 = 1 - x1^2   substitution rule symbol^k -> polynomial
///   priority = x4 x3             leading-term order of generators
///   frame = V1 V2 V3             frame vectors
///   coframe = nu1 nu2 nu3        dual coframe
///   derivation V1 = x1: x2, x2: -x1
///   bracket V1 V2 = 2*V3
///   d nu3 = -2*nu1^nu2           optional, checked against the brackets
///   point p1 = x1: 1, x2: 0
///   closed omega = nu1^nu2
///
/// Derived models: `cone_of = NAME` with `line = VECTOR FORM`, or
/// `product = FIRST SECOND`.
ModelPtr build_model(const Section& section, const ModelResolver& resolve);

}  // namespace gencontact
