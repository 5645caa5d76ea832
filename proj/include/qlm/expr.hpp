#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "qlm/errors.hpp"

namespace qlm::dsl {

/// Expression AST over literals, variables, + - * / ^, unary minus and a
/// fixed set of functions (sqrt, sin, cos, sinh, cosh, asinh, exp, log, abs).
struct Expr {
    enum class Kind { Number, Variable, Unary, Binary, Call };

    Kind kind;
    double number = 0.0;     // Number
    std::string name;        // Variable / Call
    char op = 0;             // Binary: + - * / ^ ; Unary: -
    std::shared_ptr<const Expr> lhs, rhs; // Binary children; Unary/Call use lhs
};

using ExprPtr = std::shared_ptr<const Expr>;

/// Parse a single expression. Throws ParseError with 1-based line/column.
/// Precedence, loosest first:  + -  |  * /  |  unary -  |  ^ (right assoc).
ExprPtr parse_expression(std::string_view src);

/// Evaluate with the given variable bindings. Throws DomainError for unbound
/// names and for out-of-domain function arguments (sqrt of a negative, log of
/// a non-positive).
double eval_expr(const Expr& e, const std::map<std::string, double>& bindings);

/// Render back to parseable text (used for the parse-print-parse property).
std::string to_string(const Expr& e);

} // namespace qlm::dsl
