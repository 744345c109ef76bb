#pragma once

#include <optional>
#include <string>
#include <vector>

#include "amex/errors.hpp"

namespace amex {

// Evaluates a complete prefix expression over tokens
//   binary: + - * ^     unary: sin cos log     leaves: x0 x1 <number>
// "^ a b" raises b to the power a.  Returns nullopt when any subexpression
// is non-finite (log of a non-positive value, fractional power of a negative
// base, overflow).  Throws MalformedExpression when the token sequence does
// not parse as a single expression.
std::optional<double> evaluate_prefix(const std::vector<std::string>& symbols, double x0,
                                      double x1);

}  // namespace amex
