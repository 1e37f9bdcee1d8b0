#pragma once

#include <string_view>

namespace qmin {

/// Evaluates a closed-form real expression: numbers, + - * / ^, parentheses, sqrt(),
/// and the constant pi. Throws parse-error on malformed input or a negative sqrt argument.
double evaluate_expression(std::string_view text);

}  // namespace qmin
