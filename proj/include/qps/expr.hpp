#pragma once

#include <memory>
#include <string>

#include "qps/polynomial.hpp"

namespace qps {

/// Expression AST: complex-rational literals, symbols, unary minus, + - *,
/// division, integer powers (right-associative).
struct ExprAst {
    enum class Kind { Literal, Symbol, Neg, Add, Sub, Mul, Div, Pow };
    Kind kind = Kind::Literal;
    ComplexRat literal;
    std::string symbol;
    std::unique_ptr<ExprAst> lhs, rhs;
    int line = 1, column = 1;
};

/// Grammar notes: `i` is the imaginary unit; a trailing `*` belongs to the
/// preceding symbol when what follows is not an operand ("b* * b", "(p - p*)"),
/// and is multiplication otherwise ("p*p" is p times p). Numeric literals
/// accept "p/qi" as one imaginary rational.
std::unique_ptr<ExprAst> parse_expr(const std::string& text);

/// Lower to an exact polynomial. Division is allowed by constants and by
/// monomials in the reserved parameter `beta` (lowered onto beta_inv);
/// anything else is rejected as non-polynomial. Exponents must be
/// nonnegative integer constants.
PolyExpr lower_to_poly(const ExprAst& ast);

PolyExpr parse_poly(const std::string& text);

/// Canonical form that re-parses to an equal polynomial.
std::string print_poly(const PolyExpr& p);

}  // namespace qps
