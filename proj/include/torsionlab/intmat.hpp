#pragma once

// Dense big-integer matrices and the Smith normal form machinery shared by the
// lattice, group-algebra and torsion code.

#include "torsionlab/bigint.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace torsionlab {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  BigInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix& other) const;
  bool operator==(const IntMatrix& other) const = default;

  bool is_zero() const;
  /// Stacks other below this matrix; column counts must agree.
  IntMatrix vstack(const IntMatrix& other) const;
  IntMatrix row_range(std::size_t first, std::size_t count) const;
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

/// Invariant factors of an integer matrix.
///
/// factors holds the diagonal of the Smith form, of length min(rows, cols):
/// the nonzero entries come first, are positive, and satisfy d_i | d_{i+1}.
struct SnfResult {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<BigInt> factors;

  std::size_t rank() const;
  /// Product of the nonzero invariant factors; 1 when there are none.
  BigInt torsion_order() const;
  /// Invariant factors greater than one (the torsion of the cokernel).
  std::vector<BigInt> torsion_factors() const;
};

/// Smith normal form by unimodular elimination.
///
/// Pivots on an entry of minimal absolute value (ties broken by Markowitz cost),
/// clears its row and column, and finally repairs the divisibility chain with
/// gcd/lcm exchanges. O(rows * cols * min(rows, cols)) big-integer operations
/// in the worst case; dense storage.
SnfResult snf(IntMatrix a);

/// Smith form with transforms: left * a * right = diag, left_inverse = left^-1.
/// Intended for small matrices (lattice bases), where transform growth is harmless.
struct SmithDecomposition {
  IntMatrix left;
  IntMatrix left_inverse;
  IntMatrix right;
  std::vector<BigInt> diagonal;  // length min(rows, cols), divisibility chain
};

SmithDecomposition smith_decompose(const IntMatrix& a);

/// Row echelon (Hermite) form with transform: transform * a = echelon, where the
/// transform is unimodular. Pivots are positive and entries above pivots are
/// reduced into [0, pivot).
struct EchelonForm {
  IntMatrix echelon;
  IntMatrix transform;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;
};

EchelonForm hermite_echelon(const IntMatrix& a, bool with_transform = true);

/// Basis (as rows) of the nonzero rows of the Hermite form: a canonical basis of
/// the row lattice.
IntMatrix row_lattice_basis(const IntMatrix& a);

/// Basis (as rows) of {x in Z^cols : a x = 0}. The result is saturated.
IntMatrix integer_kernel(const IntMatrix& a);

/// Basis (as rows) of {y in Z^rows : y a = 0}.
IntMatrix left_kernel(const IntMatrix& a);

/// Exact determinant by fraction-free (Bareiss) elimination.
BigInt determinant(IntMatrix a);

std::size_t rank(const IntMatrix& a);

}  // namespace torsionlab
