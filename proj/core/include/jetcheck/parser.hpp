#pragma once

#include <string_view>

#include "jetcheck/expr.hpp"
#include "jetcheck/symbol.hpp"

namespace jetcheck {

/// Parses an expression in the problem-file grammar:
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := primary ('^' exponent)?
///   exponent:= '-'? integer | '(' '-'? integer ')'
///   primary := integer | identifier | jetvar | fn '(' expr ')' | '(' expr ')'
///
/// Identifiers are `[a-z][a-z0-9]*`; a jet variable is `dep_sfx` with every
/// letter of sfx a declared independent variable. `123/456` is read as a
/// division of integers, which folds to the same rational constant.
/// Throws ParseError (with a byte position) or UnknownIdentifierError.
[[nodiscard]] Expr parse(std::string_view text, const Context& ctx);

}  // namespace jetcheck
