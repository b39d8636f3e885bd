#pragma once

// The integral group ring Z[A] of a finite abelian group, its regular
// representation, characters and the ideal lattices alpha(B), beta(B).

#include "torsionlab/intmat.hpp"
#include "torsionlab/lattices.hpp"
#include "torsionlab/laurent.hpp"

#include <complex>
#include <memory>
#include <vector>

namespace torsionlab {

using GroupPtr = std::shared_ptr<const FinAbGroup>;

class GroupAlgElem {
 public:
  explicit GroupAlgElem(GroupPtr group);
  GroupAlgElem(GroupPtr group, std::vector<BigInt> coeffs);

  static GroupAlgElem identity(GroupPtr group);
  /// The basis element of the group element with the given index.
  static GroupAlgElem basis(GroupPtr group, std::size_t index);

  const FinAbGroup& group() const noexcept { return *group_; }
  const GroupPtr& group_ptr() const noexcept { return group_; }
  const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }
  const BigInt& operator[](std::size_t i) const { return coeffs_[i]; }

  GroupAlgElem& operator+=(const GroupAlgElem& o);
  GroupAlgElem& operator-=(const GroupAlgElem& o);
  friend GroupAlgElem operator+(GroupAlgElem a, const GroupAlgElem& b) { return a += b; }
  friend GroupAlgElem operator-(GroupAlgElem a, const GroupAlgElem& b) { return a -= b; }
  friend GroupAlgElem operator*(const GroupAlgElem& a, const GroupAlgElem& b);
  bool operator==(const GroupAlgElem& o) const { return coeffs_ == o.coeffs_; }
  bool is_zero() const;

 private:
  void check_same_group(const GroupAlgElem& o) const;
  GroupPtr group_;
  std::vector<BigInt> coeffs_;
};

/// Image of f under Z[t^+-1] -> Z[A]: coefficients summed over exponent classes.
GroupAlgElem project_poly(const LaurentPoly& f, GroupPtr group);

/// Matrix of x -> a x in the element basis; column g holds the image of g.
IntMatrix mult_matrix(const GroupAlgElem& a);

/// A sublattice of Z^N, kept as a Hermite-reduced row basis.
class SubLattice {
 public:
  explicit SubLattice(std::size_t ambient) : ambient_(ambient), basis_(0, ambient) {}
  /// Span of the rows of gens (any generating set; reduced on construction).
  static SubLattice from_rows(const IntMatrix& gens);
  static SubLattice full(std::size_t ambient);

  std::size_t ambient() const noexcept { return ambient_; }
  std::size_t rank() const noexcept { return basis_.rows(); }
  /// Basis vectors as rows.
  const IntMatrix& basis() const noexcept { return basis_; }
  /// Basis vectors as columns.
  IntMatrix generator_matrix() const { return basis_.transpose(); }
  bool contains(const std::vector<BigInt>& v) const;
  bool operator==(const SubLattice& o) const { return ambient_ == o.ambient_ && basis_ == o.basis_; }

 private:
  std::size_t ambient_;
  IntMatrix basis_;
};

/// Subgroup of A generated by the given element indices, as a sorted index list.
std::vector<std::size_t> subgroup_closure(const FinAbGroup& a, const std::vector<std::size_t>& gens);

/// alpha(B): spanned by y u_B, u_B the sum of the elements of B.
SubLattice alpha_ideal(const FinAbGroup& a, const std::vector<std::size_t>& b_gens);
/// beta(B): spanned by y (1 - b).
SubLattice beta_ideal(const FinAbGroup& a, const std::vector<std::size_t>& b_gens);

/// |det Gram|^(1/2) as a double, and the exact squared volume.
double vol(const SubLattice& l);
BigInt vol_squared(const SubLattice& l);

/// [L1 : L2] for L2 contained in L1 of equal rank. Throws on rank mismatch or
/// non-containment.
BigInt quotient_order(const SubLattice& l1, const SubLattice& l2);
/// |Z^N / L| for a full-rank L.
BigInt index_in_ambient(const SubLattice& l);

SubLattice sum_ideals(const std::vector<SubLattice>& ls);
SubLattice intersect_ideals(const std::vector<SubLattice>& ls);
/// {x : x . v = 0 for all v in L}.
SubLattice orthogonal_complement(const SubLattice& l);
/// Z^N / L torsion-free.
bool is_primitive(const SubLattice& l);

/// A character of Z^n trivial on Gamma: z_i = exp(2 pi i num_i / den).
struct Character {
  std::vector<std::int64_t> num;
  std::int64_t den = 1;

  std::complex<double> coordinate(std::size_t i) const;
  /// Value on the exponent vector m, with the angle reduced exactly.
  std::complex<double> at(const IntVec& m) const;
};

/// All |A| characters. The character at position i pairs with element i via the
/// digit-wise dual: chi_xi(g) = exp(2 pi i sum xi_k g_k / d_k).
std::vector<Character> characters(const FinAbGroup& a);

/// f evaluated at a character, angle reduction exact.
std::complex<double> evaluate_at(const LaurentPoly& f, const Character& chi);

}  // namespace torsionlab
