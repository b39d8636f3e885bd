#include "torsionlab/torsion.hpp"

#include <mpfr.h>

#include <cstdio>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace torsionlab {

IntMatrix expand(const PolyMatrix& p, const FinAbGroup& a) {
  if (p.nvars() != a.nvars()) throw std::invalid_argument("expand: variable count mismatch");
  const std::size_t n = a.order();
  IntMatrix out(p.rows() * n, p.cols() * n);
  for (std::size_t i = 0; i < p.rows(); ++i) {
    for (std::size_t j = 0; j < p.cols(); ++j) {
      const LaurentPoly& f = p(i, j);
      if (f.is_zero()) continue;
      std::vector<std::pair<std::size_t, BigInt>> proj;
      for (const auto& [e, c] : f.terms()) proj.emplace_back(a.project_index(e), c);
      for (std::size_t g = 0; g < n; ++g)
        for (const auto& [h, c] : proj) out(i * n + g, j * n + a.add(g, h)) += c;
    }
  }
  return out;
}

IntMatrix expand(const PolyMatrix& p, const Subgroup& gamma) { return expand(p, FinAbGroup(gamma)); }

void check_size(std::size_t index, std::size_t m0, bool force) {
  if (!force && index * m0 > kSizeGuard) {
    throw std::length_error("expanded matrix would have " + std::to_string(index * m0) + " columns (> " + std::to_string(kSizeGuard) +
                            "); pass --force to run anyway");
  }
}

TorsionResult analyze(const PresentedModule& m, const FinAbGroup& a) {
  TorsionResult r;
  r.index = a.order();
  const std::size_t cols = m.generators() * a.order();
  if (m.relations() == 0 || cols == 0) {
    r.betti = cols;
    return r;
  }
  SnfResult s = snf(expand(m.matrix(), a));
  r.torsion_order = s.torsion_order();
  r.invariant_factors = s.torsion_factors();
  r.betti = cols - s.rank();
  return r;
}

BigInt torsion_order(const PresentedModule& m, const Subgroup& gamma) { return analyze(m, FinAbGroup(gamma)).torsion_order; }

std::size_t betti(const PresentedModule& m, const Subgroup& gamma) { return analyze(m, FinAbGroup(gamma)).betti; }

BigInt chain_torsion(const ChainComplex& c, std::size_t i, const Subgroup& gamma) {
  if (i >= c.top()) return 1;
  return torsion_order(PresentedModule(c.boundary(i + 1)), gamma);
}

// ---------------------------------------------------------------------------
// Cyclotomic polynomials and the product oracle

namespace {

/// RAII wrapper for an MPFR variable.
struct Real {
  mpfr_t v;
  explicit Real(mpfr_prec_t prec) { mpfr_init2(v, prec); }
  ~Real() { mpfr_clear(v); }
  Real(const Real&) = delete;
  Real& operator=(const Real&) = delete;
};

}  // namespace

BigInt cyclic_branched_oracle(const LaurentPoly& delta, std::int64_t l) {
  if (delta.nvars() != 1) throw std::invalid_argument("cyclic_branched_oracle: polynomial must be univariate");
  if (delta.is_zero()) throw std::domain_error("cyclic_branched_oracle: zero polynomial");
  if (l < 1) throw std::invalid_argument("cyclic_branched_oracle: l must be positive");
  if (l == 1) return 1;
  // Exact check first: delta(zeta) = 0 for some zeta of order d | l, d > 1 iff Phi_d | delta.
  const LaurentPoly f = normalize_unit(delta).poly();
  for (std::int64_t d = 2; d <= l; ++d) {
    if (l % d == 0 && divides(cyclotomic(d), f)) {
      throw std::domain_error("cyclic_branched_oracle: delta vanishes at a primitive " + std::to_string(d) + "-th root of unity");
    }
  }

  // Each factor |delta(zeta^j)| is computed with relative error below
  // (terms + 8) 2^-(prec-2); the product then has relative error below
  // l (terms + 8) 2^-(prec-3). Increase the precision until that is < 1/4 absolute.
  const double terms = static_cast<double>(f.size());
  const double log2_l = std::log2(static_cast<double>(l));
  mpfr_prec_t prec = 128;
  for (int attempt = 0; attempt < 16; ++attempt, prec *= 2) {
    Real prod(prec), re(prec), im(prec), angle(prec), s(prec), c(prec), pi2(prec), tmp(prec);
    mpfr_set_ui(prod.v, 1, MPFR_RNDN);
    mpfr_const_pi(pi2.v, MPFR_RNDN);
    mpfr_mul_ui(pi2.v, pi2.v, 2, MPFR_RNDN);
    for (std::int64_t j = 1; j < l; ++j) {
      mpfr_set_ui(re.v, 0, MPFR_RNDN);
      mpfr_set_ui(im.v, 0, MPFR_RNDN);
      for (const auto& [e, coef] : f.terms()) {
        __int128 r = static_cast<__int128>(e[0]) * j % l;
        if (r < 0) r += l;
        mpfr_mul_ui(angle.v, pi2.v, static_cast<unsigned long>(r), MPFR_RNDN);
        mpfr_div_ui(angle.v, angle.v, static_cast<unsigned long>(l), MPFR_RNDN);
        mpfr_sin_cos(s.v, c.v, angle.v, MPFR_RNDN);
        mpfr_set_z(tmp.v, coef.get_mpz_t(), MPFR_RNDN);
        mpfr_fma(re.v, tmp.v, c.v, re.v, MPFR_RNDN);
        mpfr_fma(im.v, tmp.v, s.v, im.v, MPFR_RNDN);
      }
      mpfr_hypot(tmp.v, re.v, im.v, MPFR_RNDN);
      mpfr_mul(prod.v, prod.v, tmp.v, MPFR_RNDN);
    }
    // log2 of the absolute error bound.
    long exp2 = 0;
    mpfr_get_d_2exp(&exp2, prod.v, MPFR_RNDN);
    const double log2_err = static_cast<double>(exp2) + log2_l + std::log2(terms + 8.0) - static_cast<double>(prec - 3);
    if (log2_err >= -2.0) continue;
    mpfr_rint(tmp.v, prod.v, MPFR_RNDN);
    BigInt out;
    mpz_t z;
    mpz_init(z);
    mpfr_get_z(z, tmp.v, MPFR_RNDN);
    out = BigInt(z);
    mpz_clear(z);
    return out;
  }
  throw std::runtime_error("cyclic_branched_oracle: precision budget exhausted");
}

// ---------------------------------------------------------------------------
// Koszul complex

KoszulOrders koszul_orders(const IntMatrix& p, const IntMatrix& q) {
  const std::size_t r = p.rows();
  if (p.cols() != r || q.rows() != r || q.cols() != r) throw std::invalid_argument("koszul_orders: p and q must be square of equal size");
  if (!(p * q == q * p)) throw std::invalid_argument("koszul_orders: p and q do not commute");
  // d1 as an r x 2r matrix acting on columns; its cokernel is H_0.
  IntMatrix d1(r, 2 * r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      d1(i, j) = p(i, j);
      d1(i, r + j) = q(i, j);
    }
  SnfResult s1 = snf(d1);
  if (s1.rank() != r) throw std::domain_error("koszul_orders: H_0 is infinite");
  // ker d1 is saturated of rank r and contains the rank-r image of d2, so
  // |H_1| is the torsion of Z^2r / im d2.
  IntMatrix d2(2 * r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      d2(i, j) = -q(i, j);
      d2(r + i, j) = p(i, j);
    }
  if (!(d1 * d2).is_zero()) throw std::logic_error("koszul_orders: d1 d2 != 0");
  SnfResult s2 = snf(d2);
  if (s2.rank() != r) throw std::domain_error("koszul_orders: p is not injective");
  return {s1.torsion_order(), s2.torsion_order()};
}

// ---------------------------------------------------------------------------
// Samples

std::string GrowthSample::csv_header() { return "gamma;index;min_norm;torsion_order;log_torsion;growth_stat;betti"; }

std::string GrowthSample::csv_row() const {
  char buf[64];
  std::ostringstream os;
  os << gamma << ';' << index << ';';
  std::snprintf(buf, sizeof buf, "%.17g", min_norm);
  os << buf << ';' << to_decimal(torsion_order) << ';';
  std::snprintf(buf, sizeof buf, "%.17g", log_torsion);
  os << buf << ';';
  std::snprintf(buf, sizeof buf, "%.17g", growth_stat);
  os << buf << ';' << betti;
  return os.str();
}

GrowthSample make_sample(const Subgroup& gamma, const FinAbGroup& a, const BigInt& torsion, std::size_t betti_value) {
  GrowthSample s;
  s.gamma = gamma.describe();
  s.index = a.order();
  s.min_norm = min_norm(gamma);
  s.torsion_order = torsion;
  s.log_torsion = log_abs(torsion);
  s.growth_stat = s.log_torsion / static_cast<double>(s.index);
  s.betti = betti_value;
  s.direction = subgroup_direction(a);
  return s;
}

}  // namespace torsionlab
