#pragma once

#include <string>

#include "rpc/series.hpp"
#include "rpc/vector_field.hpp"

namespace rpc {

// Grammar:
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' integer)?
//   primary := integer | 'i' | variable | '(' expr ')'
// Variables are x, y or u, v (one pair per input). Division is by nonzero
// constants only, which covers rational literals a/b. Juxtaposition is a
// syntax error. Terms above `order` are truncated.
Series2 parse_poly(const std::string& text, int order = kDefaultOrder);

// "A, B" for A d/dx + B d/dy.
VectorField parse_field(const std::string& text, int order = kDefaultOrder);

// "f1, f2"; the linear part must be the identity.
TangentMap parse_map(const std::string& text, int order = kDefaultOrder);

} // namespace rpc
