#pragma once

#include <string_view>

#include "wplab/poly.hpp"

namespace wplab {

// Parses a polynomial literal in d variables.
//
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/' | implicit) unary)*   ('/' by non-zero constants only)
//   unary  := '-' unary | power
//   power  := atom ('^' integer)?
//   atom   := number ['i'] | 'i' | 'z' | 'z'k | '(' expr ')'
//
// Variables are z1..zd (1-based); a bare 'z' means z1. Throws InvalidArgument.
Poly parse_poly(std::string_view text, int d);

}  // namespace wplab
