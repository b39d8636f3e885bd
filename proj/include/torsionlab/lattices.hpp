#pragma once

// Subgroups of Z^n, finite quotient groups Z^n / Gamma, shortest vectors and the
// subgroup sequences used to approach a direction in the positive orthant.

#include "torsionlab/bigint.hpp"
#include "torsionlab/intmat.hpp"

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace torsionlab {

using IntVec = std::vector<std::int64_t>;

/// Subgroup of Z^n generated by the given vectors (the columns of the
/// generator matrix).
class Subgroup {
 public:
  Subgroup(std::size_t nvars, std::vector<IntVec> gens);

  /// Gamma = d1 Z x d2 Z x ... x dn Z.
  static Subgroup diagonal(const IntVec& d);
  /// Gamma = l Z inside Z^1.
  static Subgroup cyclic(std::int64_t l);

  std::size_t nvars() const noexcept { return nvars_; }
  const std::vector<IntVec>& gens() const noexcept { return gens_; }
  /// n x m matrix whose columns are the generators.
  IntMatrix generator_matrix() const;
  std::size_t rank() const;
  bool has_full_rank() const { return rank() == nvars_; }
  /// The generator matrix as a JSON array of rows, "[[...],[...]]" (columns = generators).
  std::string describe() const;

 private:
  std::size_t nvars_;
  std::vector<IntVec> gens_;
};

/// The finite group A = Z^n / Gamma = Z/d_1 + ... + Z/d_r with d_i | d_{i+1}, d_i >= 2.
///
/// Elements are enumerated lexicographically by their invariant-factor digit
/// vectors (first digit most significant). Projection and section are O(n^2)
/// per element.
class FinAbGroup {
 public:
  explicit FinAbGroup(const Subgroup& gamma);
  static FinAbGroup cyclic(std::int64_t order);

  std::size_t nvars() const noexcept { return nvars_; }
  const IntVec& invariant_factors() const noexcept { return factors_; }
  std::size_t order() const noexcept { return order_; }
  /// Largest invariant factor (1 for the trivial group).
  std::int64_t exponent() const noexcept { return factors_.empty() ? 1 : factors_.back(); }

  IntVec digits_of(std::size_t index) const;
  std::size_t index_of(const IntVec& digits) const;
  /// Image of an exponent vector under the projection Z^n -> A.
  IntVec project(const IntVec& x) const;
  std::size_t project_index(const IntVec& x) const { return index_of(project(x)); }
  /// A preimage in Z^n of the element with the given digits.
  IntVec lift(const IntVec& digits) const;

  std::size_t add(std::size_t a, std::size_t b) const;
  std::size_t negate(std::size_t a) const;
  std::size_t element_order(std::size_t a) const;

  /// Order of the image of the standard basis vector e_i.
  std::int64_t coordinate_order(std::size_t i) const;

 private:
  FinAbGroup() = default;
  void finish();

  std::size_t nvars_ = 0;
  IntVec factors_;
  // Rows of the left Smith transform that land on the nontrivial factors, and the
  // matching columns of its inverse.
  std::vector<IntVec> projection_rows_;
  std::vector<IntVec> section_cols_;
  std::size_t order_ = 1;
};

inline FinAbGroup quotient(const Subgroup& gamma) { return FinAbGroup(gamma); }

inline std::int64_t coordinate_order(const FinAbGroup& a, std::size_t i) {
  return a.coordinate_order(i);
}

/// Unit vector with non-negative entries.
class Direction {
 public:
  explicit Direction(std::vector<double> v);
  const std::vector<double>& values() const noexcept { return v_; }
  std::size_t size() const noexcept { return v_.size(); }
  bool strictly_positive() const;

 private:
  std::vector<double> v_;
};

/// Unit vector positively colinear with a nonzero vector.
std::vector<double> unit_direction(const std::vector<double>& x);

/// Shortest nonzero vector length of a nonzero lattice of rank <= 4, by exhaustive
/// enumeration inside the ball bounded by a size-reduced generator.
double min_norm(const Subgroup& gamma);
/// An actual shortest vector (one of them), same search as min_norm.
IntVec shortest_vector(const Subgroup& gamma);

/// The saturated rank n-1 lattice {m : k.m = 0}. For n = 1 it is the zero lattice.
Subgroup perp(const IntVec& k);

/// The minimum norm of perp(k); +infinity when perp(k) = 0 (n = 1).
double perp_norm(const IntVec& k);

/// Gamma_{k,j} = perp(k) + j k. Requires gcd(k) = 1; the quotient is cyclic of order j |k|^2.
Subgroup gamma_sj(const IntVec& k, std::int64_t j);

struct SearchBudget {
  std::int64_t max_entry = 2000;
};

/// Positive coprime k with perp_norm(k) > s and |dir(1/k_1, ..., 1/k_n) - kappa| < 1/s,
/// scanning vectors by increasing max-entry. Throws std::runtime_error when the
/// budget runs out.
IntVec converging_k_sequence(const Direction& kappa, std::int64_t s, SearchBudget budget = {});

/// dir(d_1(Gamma), ..., d_n(Gamma)).
std::vector<double> subgroup_direction(const FinAbGroup& a);

std::int64_t gcd_of(const IntVec& v);

}  // namespace torsionlab
