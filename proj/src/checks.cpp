#include "torsionlab/checks.hpp"

#include "torsionlab/groupalg.hpp"
#include "torsionlab/intmat.hpp"
#include "torsionlab/laurent.hpp"
#include "torsionlab/presmod.hpp"

#include <functional>
#include <random>
#include <sstream>

namespace torsionlab {

namespace {

using Rng = std::mt19937_64;

std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng); }

LaurentPoly random_poly(Rng& rng, std::size_t nvars, int max_terms, std::int64_t emin, std::int64_t emax, std::int64_t cmax) {
  LaurentPoly f(nvars);
  const int terms = static_cast<int>(uniform(rng, 1, max_terms));
  for (int t = 0; t < terms; ++t) {
    Exponent e(nvars);
    for (auto& x : e) x = uniform(rng, emin, emax);
    std::int64_t c = uniform(rng, -cmax, cmax);
    if (c != 0) f.add_term(e, BigInt(static_cast<long>(c)));
  }
  return f;
}

IntMatrix random_int_matrix(Rng& rng, std::size_t r, std::size_t c, std::int64_t bound) {
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (uniform(rng, 0, 3) != 0) m(i, j) = static_cast<long>(uniform(rng, -bound, bound));
  return m;
}

/// A finite quotient Z^n / Gamma with 2 <= |A| <= max_order.
FinAbGroup random_group(Rng& rng, std::size_t max_order) {
  while (true) {
    const std::size_t n = static_cast<std::size_t>(uniform(rng, 1, 3));
    std::vector<IntVec> gens(n, IntVec(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) gens[j][i] = i == j ? uniform(rng, 1, 8) : uniform(rng, -3, 3) * (uniform(rng, 0, 2) == 0);
    Subgroup g(n, gens);
    BigInt det = abs(determinant(g.generator_matrix()));
    if (det < 2 || det > static_cast<long>(max_order)) continue;
    return FinAbGroup(g);
  }
}

std::vector<std::size_t> random_subgroup_gens(Rng& rng, const FinAbGroup& a) {
  const int k = static_cast<int>(uniform(rng, 1, 2));
  std::vector<std::size_t> gens;
  for (int i = 0; i < k; ++i) gens.push_back(static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(a.order()) - 1)));
  return gens;
}

std::string group_text(const FinAbGroup& a) {
  std::ostringstream os;
  os << "A=";
  for (std::size_t i = 0; i < a.invariant_factors().size(); ++i) os << (i ? "+" : "") << "Z/" << a.invariant_factors()[i];
  return os.str();
}

/// Runs `cases` instances of a property; `body` returns an empty string on success.
CheckReport battery(const std::string& name, const CheckOptions& o, std::uint64_t salt, const std::function<std::string(Rng&)>& body) {
  CheckReport rep;
  rep.name = name;
  Rng rng(o.seed ^ (salt * 0x9e3779b97f4a7c15ULL));
  for (std::size_t i = 0; i < o.cases; ++i) {
    std::string err;
    try {
      err = body(rng);
    } catch (const std::exception& e) {
      err = std::string("exception: ") + e.what();
    }
    ++rep.cases;
    if (!err.empty()) {
      if (rep.failures == 0) rep.first_failure = "case " + std::to_string(i) + ": " + err;
      ++rep.failures;
    }
  }
  return rep;
}

bool next_subset(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

/// gcd of all k x k minors of a small integer matrix.
BigInt minor_gcd(const IntMatrix& a, std::size_t k) {
  BigInt g = 0;
  std::vector<std::size_t> rows(k), cols(k);
  for (std::size_t i = 0; i < k; ++i) rows[i] = i;
  do {
    for (std::size_t i = 0; i < k; ++i) cols[i] = i;
    do {
      IntMatrix s(k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) s(i, j) = a(rows[i], cols[j]);
      g = gcd(g, determinant(s));
    } while (next_subset(cols, a.cols()));
  } while (next_subset(rows, a.rows()));
  return g;
}

}  // namespace

CheckReport check_snf_chain(const CheckOptions& o) {
  return battery("snf divisibility chain", o, 1, [](Rng& rng) -> std::string {
    const std::size_t r = static_cast<std::size_t>(uniform(rng, 1, 6)), c = static_cast<std::size_t>(uniform(rng, 1, 6));
    IntMatrix a = random_int_matrix(rng, r, c, 9);
    if (uniform(rng, 0, 2) == 0) {
      // A low-rank product exercises zero invariant factors.
      const std::size_t k = static_cast<std::size_t>(uniform(rng, 1, 3));
      a = random_int_matrix(rng, r, k, 5) * random_int_matrix(rng, k, c, 5);
    }
    SnfResult s = snf(a);
    const std::size_t rk = s.rank();
    if (rk != rank(a)) return "rank mismatch on " + a.to_string();
    for (std::size_t i = 0; i < s.factors.size(); ++i) {
      if (i < rk && sgn(s.factors[i]) <= 0) return "nonpositive factor on " + a.to_string();
      if (i >= rk && sgn(s.factors[i]) != 0) return "nonzero factor after rank on " + a.to_string();
      if (i + 1 < rk && s.factors[i + 1] % s.factors[i] != 0) return "broken divisibility on " + a.to_string();
    }
    if (std::min(r, c) <= 4 && std::max(r, c) <= 5) {
      BigInt prod = 1;
      for (std::size_t k = 1; k <= std::min(r, c); ++k) {
        prod *= s.factors[k - 1];
        if (abs(minor_gcd(a, k)) != prod) return "minor gcd mismatch at k=" + std::to_string(k) + " on " + a.to_string();
      }
    }
    SmithDecomposition d = smith_decompose(a);
    IntMatrix diag = d.left * a * d.right;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) {
        const BigInt want = i == j ? d.diagonal[i] : BigInt(0);
        if (diag(i, j) != want) return "transforms do not diagonalize " + a.to_string();
      }
    if (!(d.left * d.left_inverse == IntMatrix::identity(r))) return "left_inverse is not an inverse";
    if (d.diagonal != s.factors) return "smith_decompose and snf disagree on " + a.to_string();
    return {};
  });
}

CheckReport check_gcd_axioms(const CheckOptions& o) {
  return battery("gcd axioms", o, 2, [](Rng& rng) -> std::string {
    const std::size_t nv = static_cast<std::size_t>(uniform(rng, 1, 2));
    LaurentPoly f = random_poly(rng, nv, 4, -1, 2, 4);
    LaurentPoly g = random_poly(rng, nv, 4, -1, 2, 4);
    LaurentPoly h = random_poly(rng, nv, 3, 0, 2, 3);
    UnitNormalForm d = gcd(f, g);
    if (!divides(d.poly(), f) || !divides(d.poly(), g)) return "gcd does not divide: f=" + f.to_string() + " g=" + g.to_string();
    if (!(gcd(f, LaurentPoly(nv)) == normalize_unit(f))) return "gcd(f, 0) != normalize(f) for f=" + f.to_string();
    if (!(gcd(g, f) == d)) return "gcd not symmetric";
    if (!h.is_zero() && !(f.is_zero() && g.is_zero())) {
      UnitNormalForm lhs = gcd(f * h, g * h);
      UnitNormalForm rhs = normalize_unit(h * d.poly());
      if (!(lhs == rhs)) return "gcd(fh, gh) != h gcd(f, g): f=" + f.to_string() + " g=" + g.to_string() + " h=" + h.to_string();
    }
    // Cofactors are coprime.
    if (!d.is_zero()) {
      auto fa = divide_exact(f, d.poly()), ga = divide_exact(g, d.poly());
      if (!gcd(*fa, *ga).is_one()) return "cofactors not coprime";
    }
    return {};
  });
}

CheckReport check_normalization(const CheckOptions& o) {
  return battery("unit normalization", o, 3, [](Rng& rng) -> std::string {
    const std::size_t nv = static_cast<std::size_t>(uniform(rng, 1, 3));
    LaurentPoly f = random_poly(rng, nv, 5, -3, 3, 5);
    Exponent k(nv);
    for (auto& x : k) x = uniform(rng, -4, 4);
    LaurentPoly u = LaurentPoly::monomial(k, uniform(rng, 0, 1) ? 1 : -1);
    UnitNormalForm a = normalize_unit(f);
    if (!(normalize_unit(u * f) == a)) return "not invariant under units: f=" + f.to_string();
    if (!(normalize_unit(a.poly()) == a)) return "not idempotent: f=" + f.to_string();
    if (!a.is_zero()) {
      for (std::size_t i = 0; i < nv; ++i)
        if (a.poly().min_exponent(i) != 0) return "minimum exponent not zero";
      if (sgn(a.poly().leading_coeff()) <= 0) return "leading coefficient not positive";
    }
    return {};
  });
}

CheckReport check_tau_homomorphism(const CheckOptions& o) {
  return battery("tau_k ring homomorphism", o, 4, [](Rng& rng) -> std::string {
    const std::size_t nv = static_cast<std::size_t>(uniform(rng, 1, 3));
    LaurentPoly f = random_poly(rng, nv, 4, -2, 2, 4), g = random_poly(rng, nv, 4, -2, 2, 4);
    std::vector<std::int64_t> k(nv);
    for (auto& x : k) x = uniform(rng, -6, 6);
    if (!(tau(f * g, k) == tau(f, k) * tau(g, k))) return "not multiplicative";
    if (!(tau(f + g, k) == tau(f, k) + tau(g, k))) return "not additive";
    if (!(tau(LaurentPoly::constant(nv, 1), k) == LaurentPoly::constant(1, 1))) return "not unital";
    return {};
  });
}

CheckReport check_fox_identity(const CheckOptions& o) {
  return battery("fox fundamental identity", o, 5, [](Rng& rng) -> std::string {
    const std::size_t ng = static_cast<std::size_t>(uniform(rng, 1, 3));
    const std::size_t nv = static_cast<std::size_t>(uniform(rng, 1, 2));
    std::vector<LaurentPoly> rho;
    for (std::size_t i = 0; i < ng; ++i) {
      Exponent e(nv);
      for (auto& x : e) x = uniform(rng, -2, 2);
      rho.push_back(LaurentPoly::monomial(e));
    }
    Word w;
    const int len = static_cast<int>(uniform(rng, 0, 12));
    for (int i = 0; i < len; ++i) {
      int g = static_cast<int>(uniform(rng, 1, static_cast<std::int64_t>(ng)));
      w.push_back(uniform(rng, 0, 1) ? g : -g);
    }
    const LaurentPoly one = LaurentPoly::constant(nv, 1);
    LaurentPoly lhs(nv);
    for (std::size_t x = 0; x < ng; ++x) lhs += fox_derivative(w, x, rho) * (rho[x] - one);
    if (!(lhs == rho_of(w, rho) - one)) return "identity fails for a word of length " + std::to_string(w.size());
    // Free reduction does not change the derivative.
    Word r = free_reduce(w);
    for (std::size_t x = 0; x < ng; ++x)
      if (!(fox_derivative(w, x, rho) == fox_derivative(r, x, rho))) return "not invariant under free reduction";
    return {};
  });
}

CheckReport check_alexander_divisibility(const CheckOptions& o) {
  return battery("Delta_j divides Delta_(j-1)", o, 6, [](Rng& rng) -> std::string {
    const std::size_t nv = uniform(rng, 0, 3) == 0 ? 2 : 1;
    const std::size_t m1 = static_cast<std::size_t>(uniform(rng, 0, 3)), m0 = static_cast<std::size_t>(uniform(rng, 1, 3));
    PolyMatrix p(m1, m0, nv);
    for (std::size_t r = 0; r < m1; ++r)
      for (std::size_t c = 0; c < m0; ++c)
        if (uniform(rng, 0, 3) != 0) p(r, c) = random_poly(rng, nv, 3, -1, 2, 3);
    PresentedModule m(p);
    const std::size_t rk = rank(m);
    std::vector<UnitNormalForm> d;
    for (std::size_t j = 0; j <= m0; ++j) d.push_back(alexander(m, j));
    for (std::size_t j = 0; j <= m0; ++j) {
      if (j < rk && !d[j].is_zero()) return "Delta_j nonzero below the rank";
      if (j == rk && d[j].is_zero()) return "Delta_rank vanishes";
      if (j > 0) {
        if (d[j].is_zero() ? !d[j - 1].is_zero() : !divides(d[j].poly(), d[j - 1].poly())) {
          return "Delta_" + std::to_string(j) + " does not divide Delta_" + std::to_string(j - 1) + " for " + p.to_string();
        }
      }
    }
    // delta() is unchanged by an elementary row operation and by stabilization.
    if (m1 >= 2) {
      PolyMatrix q = p;
      LaurentPoly h = random_poly(rng, nv, 2, -1, 1, 2);
      for (std::size_t c = 0; c < m0; ++c) q(0, c) += h * p(1, c);
      if (!(delta(PresentedModule(q)) == delta(m))) return "delta changed under a row operation";
    }
    PolyMatrix s(m1 + 1, m0 + 1, nv);
    for (std::size_t r = 0; r < m1; ++r)
      for (std::size_t c = 0; c < m0; ++c) s(r, c) = p(r, c);
    s(m1, m0) = LaurentPoly::monomial(Exponent(nv, 1), -1);
    if (!(delta(PresentedModule(s)) == delta(m))) return "delta changed under stabilization";
    return {};
  });
}

CheckReport check_alpha_beta_order(const CheckOptions& o) {
  return battery("alpha(B)+beta(B) order", o, 7, [&o](Rng& rng) -> std::string {
    auto a = std::make_shared<const FinAbGroup>(random_group(rng, o.max_order));
    auto gens = random_subgroup_gens(rng, *a);
    const std::size_t b = subgroup_closure(*a, gens).size();
    SubLattice al = alpha_ideal(*a, gens), be = beta_ideal(*a, gens);
    if (al.rank() != a->order() / b) return "rank alpha != |A|/|B| for " + group_text(*a);
    if (be.rank() != a->order() - a->order() / b) return "rank beta != |A| - |A|/|B| for " + group_text(*a);
    BigInt got = index_in_ambient(sum_ideals({al, be}));
    BigInt want = ipow(BigInt(static_cast<unsigned long>(b)), static_cast<unsigned long>(a->order() / b));
    if (got != want) return "order " + to_decimal(got) + " != " + to_decimal(want) + " for " + group_text(*a) + ", |B|=" + std::to_string(b);
    // u_B (1 - b) = 0.
    GroupAlgElem u(a);
    for (std::size_t x : subgroup_closure(*a, gens)) u += GroupAlgElem::basis(a, x);
    for (std::size_t g : gens)
      if (!(u * (GroupAlgElem::identity(a) - GroupAlgElem::basis(a, g))).is_zero()) return "alpha and beta do not annihilate";
    return {};
  });
}

CheckReport check_multi_subgroup_bound(const CheckOptions& o) {
  return battery("multi-subgroup order bound", o, 8, [&o](Rng& rng) -> std::string {
    FinAbGroup a = random_group(rng, o.max_order);
    const int k = static_cast<int>(uniform(rng, 2, 3));
    std::vector<SubLattice> alphas, betas;
    BigInt bound = 1;
    for (int i = 0; i < k; ++i) {
      auto gens = random_subgroup_gens(rng, a);
      const std::size_t b = subgroup_closure(a, gens).size();
      alphas.push_back(alpha_ideal(a, gens));
      betas.push_back(beta_ideal(a, gens));
      bound *= ipow(BigInt(static_cast<unsigned long>(b)), static_cast<unsigned long>(a.order() / b));
    }
    SubLattice l = sum_ideals({sum_ideals(alphas), intersect_ideals(betas)});
    if (l.rank() != a.order()) return "alpha + beta not of full rank for " + group_text(a);
    BigInt got = index_in_ambient(l);
    if (got > bound) return "order " + to_decimal(got) + " exceeds " + to_decimal(bound) + " for " + group_text(a);
    return {};
  });
}

std::vector<CheckReport> run_all_checks(const CheckOptions& o) {
  return {check_snf_chain(o),          check_gcd_axioms(o),         check_normalization(o), check_tau_homomorphism(o),
          check_fox_identity(o),       check_alexander_divisibility(o), check_alpha_beta_order(o), check_multi_subgroup_bound(o)};
}

}  // namespace torsionlab
