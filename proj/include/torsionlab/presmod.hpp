#pragma once

// Finitely presented modules over Z[t1^+-1, ..., tn^+-1], Alexander polynomials,
// Fox calculus and the chain complex of a group presentation.
//
// Row convention throughout: an m1 x m0 matrix P presents coker(R^m1 -> R^m0,
// v -> v P), so rows are relations and columns are generators.

#include "torsionlab/laurent.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace torsionlab {

class PolyMatrix {
 public:
  explicit PolyMatrix(std::size_t nvars = 1) : nvars_(nvars) {}
  PolyMatrix(std::size_t rows, std::size_t cols, std::size_t nvars);
  static PolyMatrix from_rows(const std::vector<std::vector<LaurentPoly>>& rows, std::size_t nvars);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nvars() const noexcept { return nvars_; }

  LaurentPoly& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const LaurentPoly& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  PolyMatrix operator*(const PolyMatrix& o) const;
  bool operator==(const PolyMatrix& o) const = default;
  bool is_zero() const;
  PolyMatrix transpose() const;
  /// Sub-matrix on the given row and column index lists.
  PolyMatrix select(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t nvars_ = 1;
  std::vector<LaurentPoly> data_;
};

/// Exact determinant of a square polynomial matrix (fraction-free elimination).
LaurentPoly determinant(const PolyMatrix& m);
/// Rank over the fraction field.
std::size_t rank(const PolyMatrix& m);

class PresentedModule {
 public:
  explicit PresentedModule(PolyMatrix matrix) : matrix_(std::move(matrix)) {}
  /// A free module R^m0 (no relations).
  static PresentedModule free(std::size_t m0, std::size_t nvars);
  /// R / (f1, ..., fk): a single generator with one relation per polynomial.
  static PresentedModule cyclic(const std::vector<LaurentPoly>& relations);
  /// Block-diagonal presentation of M1 + M2.
  static PresentedModule direct_sum(const PresentedModule& a, const PresentedModule& b);

  const PolyMatrix& matrix() const noexcept { return matrix_; }
  std::size_t nvars() const noexcept { return matrix_.nvars(); }
  std::size_t generators() const noexcept { return matrix_.cols(); }
  std::size_t relations() const noexcept { return matrix_.rows(); }

 private:
  PolyMatrix matrix_;
};

/// Largest matrix dimension accepted by alexander().
inline constexpr std::size_t kMinorGuard = 8;

std::size_t rank(const PresentedModule& m);
/// gcd of the (m0 - j)-minors; 1 if m0 - j <= 0, 0 if m0 - j > m1.
UnitNormalForm alexander(const PresentedModule& m, std::size_t j);
/// First non-vanishing Alexander polynomial (= Delta_rank).
UnitNormalForm delta(const PresentedModule& m);
/// Delta_0 = 1 for a torsion module. Throws std::domain_error when rank > 0.
bool is_pseudo_zero_torsion(const PresentedModule& m);

/// Boundary maps d[0] = del_1 : C_1 -> C_0, d[1] = del_2 : C_2 -> C_1, ...
/// in the row convention, so del_{i+1} * del_i = 0.
class ChainComplex {
 public:
  ChainComplex(std::size_t nvars, std::vector<PolyMatrix> boundaries);

  std::size_t nvars() const noexcept { return nvars_; }
  /// Highest degree with a chain group.
  std::size_t top() const noexcept { return boundaries_.size(); }
  /// del_i for 1 <= i <= top().
  const PolyMatrix& boundary(std::size_t i) const { return boundaries_.at(i - 1); }
  /// Rank of the free module C_i.
  std::size_t chain_rank(std::size_t i) const;

 private:
  std::size_t nvars_;
  std::vector<PolyMatrix> boundaries_;
};

/// Signed generator indices: +(i+1) for x_i, -(i+1) for x_i^-1.
using Word = std::vector<int>;

/// Cancels adjacent inverse letters until none remain.
Word free_reduce(const Word& w);

struct GroupPresentation {
  std::vector<std::string> gens;
  std::vector<LaurentPoly> rho;  // monomials, one per generator
  std::vector<Word> relators;
  std::size_t nvars = 1;

  /// Parses the text format:
  ///   vars: 2            (optional; inferred from rho otherwise)
  ///   gens: x y
  ///   rho: x -> t1, y -> t2
  ///   rel: x y x^-1 y^-1
  /// One relator per rel line; '#' starts a comment.
  static GroupPresentation parse(std::string_view text);
  static GroupPresentation load(const std::string& path);

  std::string word_to_string(const Word& w) const;
};

/// rho of the Fox derivative of w with respect to generator gen (0-based).
LaurentPoly fox_derivative(const Word& w, std::size_t gen, const std::vector<LaurentPoly>& rho);

/// Image of a word under rho.
LaurentPoly rho_of(const Word& w, const std::vector<LaurentPoly>& rho);

/// 0 -> R^r -> R^(m+1) -> R -> 0: del_1 is the column (1 - rho(a_i)), del_2 the
/// Fox Jacobian with one row per relator.
ChainComplex alexander_complex(const GroupPresentation& p);

/// The module presented by the Fox Jacobian.
PresentedModule alexander_module(const GroupPresentation& p);

/// [[del2, 0], [I, T]] with T = diag(1 - t_i). The i-th row of I has its 1 in
/// column meridians[i]; the default uses columns 0..n-1.
PresentedModule branched_module(const PolyMatrix& del2, std::size_t n, std::vector<std::size_t> meridians = {});
/// Same, choosing for each variable t_i the first generator with rho = t_i.
PresentedModule branched_module(const GroupPresentation& p);

}  // namespace torsionlab
