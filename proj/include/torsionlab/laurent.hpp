#pragma once

// Multivariate Laurent polynomials over the integers, Z[t1^±1, ..., tn^±1].

#include "torsionlab/bigint.hpp"

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace torsionlab {

using Exponent = std::vector<std::int64_t>;

/// Sparse Laurent polynomial: exponent vector -> nonzero coefficient.
///
/// Terms are kept in a sorted map, so iteration order is lexicographic in the
/// exponent vectors and the last term is the lex-leading one. The zero
/// polynomial is the empty map. Values are immutable in practice; all
/// arithmetic returns new objects.
class LaurentPoly {
 public:
  using TermMap = std::map<Exponent, BigInt>;

  explicit LaurentPoly(std::size_t nvars = 1);
  LaurentPoly(std::size_t nvars, TermMap terms);

  static LaurentPoly constant(std::size_t nvars, const BigInt& c);
  static LaurentPoly monomial(const Exponent& e, const BigInt& c = 1);
  /// t_i^power in nvars variables (i is 0-based).
  static LaurentPoly variable(std::size_t nvars, std::size_t i, std::int64_t power = 1);

  std::size_t nvars() const noexcept { return nvars_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const noexcept { return terms_.size() == 1; }

  BigInt coeff(const Exponent& e) const;
  const Exponent& leading_exponent() const;
  const BigInt& leading_coeff() const;
  std::int64_t min_exponent(std::size_t var) const;
  std::int64_t max_exponent(std::size_t var) const;

  void add_term(const Exponent& e, const BigInt& c);

  /// Multiplication by the monomial t^by.
  LaurentPoly shifted(const Exponent& by) const;

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& other);
  LaurentPoly& operator-=(const LaurentPoly& other);
  LaurentPoly& operator*=(const LaurentPoly& other);
  LaurentPoly& operator*=(const BigInt& scalar);

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(LaurentPoly a, const BigInt& s) { return a *= s; }
  friend LaurentPoly operator*(const BigInt& s, LaurentPoly a) { return a *= s; }

  bool operator==(const LaurentPoly& other) const {
    return nvars_ == other.nvars_ && terms_ == other.terms_;
  }
  bool operator!=(const LaurentPoly& other) const { return !(*this == other); }

  /// Human-readable form, e.g. "t^2 - t + 1" or "t1*t2 - 1".
  std::string to_string() const;

 private:
  void check_same_ring(const LaurentPoly& other) const;

  std::size_t nvars_;
  TermMap terms_;
};

/// Canonical representative of the unit orbit {±t^k f}.
///
/// Every variable's minimum exponent is 0 and the lex-leading coefficient is
/// positive; the zero polynomial is its own normal form.
class UnitNormalForm {
 public:
  const LaurentPoly& poly() const noexcept { return poly_; }
  operator const LaurentPoly&() const noexcept { return poly_; }
  bool is_zero() const noexcept { return poly_.is_zero(); }
  bool is_one() const;
  std::string to_string() const { return poly_.to_string(); }

  bool operator==(const UnitNormalForm& other) const { return poly_ == other.poly_; }
  bool operator!=(const UnitNormalForm& other) const { return !(*this == other); }

 private:
  explicit UnitNormalForm(LaurentPoly p) : poly_(std::move(p)) {}
  friend UnitNormalForm normalize_unit(const LaurentPoly& f);

  LaurentPoly poly_;
};

UnitNormalForm normalize_unit(const LaurentPoly& f);

/// Greatest common divisor in Z[t^±1], unit-normalized. gcd(f, 0) = normalize_unit(f).
UnitNormalForm gcd(const LaurentPoly& f, const LaurentPoly& g);

/// Quotient f / g in the Laurent ring if g divides f exactly.
std::optional<LaurentPoly> divide_exact(const LaurentPoly& f, const LaurentPoly& g);

inline bool divides(const LaurentPoly& g, const LaurentPoly& f) {
  return divide_exact(f, g).has_value();
}

/// Integer gcd of the coefficients (0 for the zero polynomial).
BigInt content(const LaurentPoly& f);
LaurentPoly primitive_part(const LaurentPoly& f);

/// Sum of absolute values of the coefficients.
BigInt one_norm(const LaurentPoly& f);

/// The specialization t^m -> t^(m.k) into Z[t^±1].
LaurentPoly tau(const LaurentPoly& f, std::span<const std::int64_t> k);

/// Formal partial derivative in variable var.
LaurentPoly derivative(const LaurentPoly& f, std::size_t var);

LaurentPoly pow(const LaurentPoly& f, unsigned exponent);

/// Floating-point value at a point of (C^*)^n together with an a-priori bound on
/// the rounding error, of order nterms * eps * sum_m |c_m| |z^m|.
struct Evaluation {
  std::complex<double> value;
  double error_bound;
};

Evaluation evaluate_with_bound(const LaurentPoly& f, std::span<const std::complex<double>> z);

/// Throws std::domain_error if a coordinate is zero.
std::complex<double> evaluate(const LaurentPoly& f, std::span<const std::complex<double>> z);

/// The cyclotomic polynomial Phi_d (univariate).
LaurentPoly cyclotomic(std::int64_t d);

/// Parses expressions such as "3 + t1 + t2", "t^2 - t + 1", "(1 - t1)*t2^-1".
/// Variables are t (= t1), t1, t2, ...; nvars = 0 infers it from the largest index.
LaurentPoly parse_poly(std::string_view text, std::size_t nvars = 0);

}  // namespace torsionlab
