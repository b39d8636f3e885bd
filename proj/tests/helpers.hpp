#pragma once

#include "oracles.hpp"
#include "torsionlab/laurent.hpp"

#include <stdexcept>

namespace testutil {

using torsionlab::LaurentPoly;

inline LaurentPoly P(const char* text, std::size_t nvars = 0) { return torsionlab::parse_poly(text, nvars); }

/// Univariate Laurent polynomial as a plain coefficient vector, shifted so the
/// lowest exponent is zero.
inline oracle::Poly to_plain(const LaurentPoly& f) {
  if (f.nvars() != 1) throw std::invalid_argument("to_plain: univariate only");
  if (f.is_zero()) return {};
  const auto lo = f.min_exponent(0);
  oracle::Poly p(static_cast<std::size_t>(f.max_exponent(0) - lo) + 1);
  for (const auto& [e, c] : f.terms()) p[static_cast<std::size_t>(e[0] - lo)] = c;
  return p;
}

/// Coefficients a, b of f = a(t1) + b(t1) t2 (t1 exponents must be >= 0).
inline void split_linear_t2(const LaurentPoly& f, oracle::Poly& a, oracle::Poly& b) {
  a.clear();
  b.clear();
  for (const auto& [e, c] : f.terms()) {
    if (e[0] < 0 || e[1] < 0 || e[1] > 1) throw std::invalid_argument("split_linear_t2: not a polynomial linear in t2");
    oracle::Poly& dst = e[1] == 0 ? a : b;
    if (dst.size() <= static_cast<std::size_t>(e[0])) dst.resize(e[0] + 1);
    dst[e[0]] = c;
  }
}

}  // namespace testutil
