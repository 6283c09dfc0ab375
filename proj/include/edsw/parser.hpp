#pragma once

#include "edsw/elem.hpp"

#include <string_view>

namespace edsw {

// Parse `text` over the chart's symbols. Known functions: arctan, ln, exp,
// sech, tanh, sqrt (sugar for ^(1/2)). Integer, decimal and rational literals
// are exact. The printer (ElemExpr::str, RatExpr::str) emits this grammar;
// see docs/grammar.ebnf.
ElemExpr parse(std::string_view text, const ChartPtr& chart);

RatExpr parse_rational(std::string_view text, const ChartPtr& chart);

}  // namespace edsw
