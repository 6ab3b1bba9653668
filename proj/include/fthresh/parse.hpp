#pragma once

#include <string_view>

#include "fthresh/poly.hpp"

namespace fthresh {

// Parses the ASCII polynomial grammar:
//   expr  := term (('+'|'-') term)*
//   term  := coeff? ('*'? var ('^' nat)?)*
//   coeff := nat
//   var   := [a-zA-Z][a-zA-Z0-9_]*
// Whitespace is insignificant. Coefficients are reduced mod p while
// scanning, so arbitrarily long digit strings are fine. Errors carry the
// 1-based character position.
Polynomial parse_polynomial(std::string_view text, RingPtr ring);

}  // namespace fthresh
