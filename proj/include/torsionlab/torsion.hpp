#pragma once

// |Tor_Z(M (x) Z[A])| for a presented module M and a finite quotient A of Z^n,
// via expansion to an integer matrix and Smith normal form.

#include "torsionlab/groupalg.hpp"
#include "torsionlab/intmat.hpp"
#include "torsionlab/lattices.hpp"
#include "torsionlab/presmod.hpp"

#include <string>
#include <vector>

namespace torsionlab {

/// The (m1 |A|) x (m0 |A|) integer matrix of P over Z[A]. Block (i, j), row g,
/// holds the coefficients of g * pr(P(i, j)) in the element basis.
IntMatrix expand(const PolyMatrix& p, const FinAbGroup& a);
IntMatrix expand(const PolyMatrix& p, const Subgroup& gamma);

struct TorsionResult {
  BigInt torsion_order = 1;
  std::size_t betti = 0;
  std::size_t index = 1;
  std::vector<BigInt> invariant_factors;  // the factors > 1
};

/// Default refusal threshold on |A| * m0 (see check_size).
inline constexpr std::size_t kSizeGuard = 5000;

/// Throws std::length_error when |A| * m0 exceeds kSizeGuard and force is false.
void check_size(std::size_t index, std::size_t m0, bool force);

TorsionResult analyze(const PresentedModule& m, const FinAbGroup& a);
BigInt torsion_order(const PresentedModule& m, const Subgroup& gamma);
std::size_t betti(const PresentedModule& m, const Subgroup& gamma);
/// Number of Gamma-fixed points of the dual dynamical system; equals torsion_order.
inline BigInt fixed_components(const PresentedModule& m, const Subgroup& gamma) { return torsion_order(m, gamma); }

/// |Tor_Z H_i(C (x) Z[A])| = torsion of coker del_{i+1}; 1 for i >= top.
BigInt chain_torsion(const ChainComplex& c, std::size_t i, const Subgroup& gamma);

/// prod_{j=1}^{l-1} |delta(zeta_l^j)|, rounded after the product is known to
/// absolute accuracy 1/4. Throws std::domain_error when delta vanishes at a
/// nontrivial l-th root of unity.
BigInt cyclic_branched_oracle(const LaurentPoly& delta, std::int64_t l);

/// Orders of H_0 and H_1 of 0 -> Z^r -> Z^2r -> Z^r -> 0 with
/// d2(a) = (-q a, p a), d1(a, b) = p a + q b, for commuting p, q with p injective.
struct KoszulOrders {
  BigInt h0;
  BigInt h1;
};
KoszulOrders koszul_orders(const IntMatrix& p, const IntMatrix& q);

struct GrowthSample {
  std::string gamma;  // generator matrix, columns = generators
  std::size_t index = 1;
  double min_norm = 0;
  BigInt torsion_order = 1;
  double log_torsion = 0;
  double growth_stat = 0;
  std::size_t betti = 0;
  std::vector<double> direction;
  std::string source = "snf";  // or "oracle"

  static std::string csv_header();
  std::string csv_row() const;
};

GrowthSample make_sample(const Subgroup& gamma, const FinAbGroup& a, const BigInt& torsion, std::size_t betti);

}  // namespace torsionlab
