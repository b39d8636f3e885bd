#include "torsionlab/groupalg.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace torsionlab {

GroupAlgElem::GroupAlgElem(GroupPtr group) : group_(std::move(group)) {
  if (!group_) throw std::invalid_argument("GroupAlgElem: null group");
  coeffs_.assign(group_->order(), BigInt(0));
}

GroupAlgElem::GroupAlgElem(GroupPtr group, std::vector<BigInt> coeffs) : group_(std::move(group)), coeffs_(std::move(coeffs)) {
  if (!group_) throw std::invalid_argument("GroupAlgElem: null group");
  if (coeffs_.size() != group_->order()) throw std::invalid_argument("GroupAlgElem: coefficient vector has wrong length");
}

GroupAlgElem GroupAlgElem::identity(GroupPtr group) { return basis(std::move(group), 0); }

GroupAlgElem GroupAlgElem::basis(GroupPtr group, std::size_t index) {
  GroupAlgElem e(std::move(group));
  e.coeffs_.at(index) = 1;
  return e;
}

void GroupAlgElem::check_same_group(const GroupAlgElem& o) const {
  if (group_ != o.group_ && group_->invariant_factors() != o.group_->invariant_factors()) {
    throw std::invalid_argument("group algebra elements over different groups");
  }
}

GroupAlgElem& GroupAlgElem::operator+=(const GroupAlgElem& o) {
  check_same_group(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

GroupAlgElem& GroupAlgElem::operator-=(const GroupAlgElem& o) {
  check_same_group(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

GroupAlgElem operator*(const GroupAlgElem& a, const GroupAlgElem& b) {
  a.check_same_group(b);
  GroupAlgElem out(a.group_);
  const auto& g = *a.group_;
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (sgn(a.coeffs_[i]) == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      if (sgn(b.coeffs_[j]) == 0) continue;
      out.coeffs_[g.add(i, j)] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return out;
}

bool GroupAlgElem::is_zero() const {
  for (const auto& c : coeffs_)
    if (sgn(c) != 0) return false;
  return true;
}

GroupAlgElem project_poly(const LaurentPoly& f, GroupPtr group) {
  if (f.nvars() != group->nvars()) throw std::invalid_argument("project_poly: variable count mismatch");
  std::vector<BigInt> c(group->order(), BigInt(0));
  for (const auto& [e, coef] : f.terms()) c[group->project_index(e)] += coef;
  return GroupAlgElem(std::move(group), std::move(c));
}

IntMatrix mult_matrix(const GroupAlgElem& a) {
  const auto& g = a.group();
  const std::size_t n = g.order();
  IntMatrix m(n, n);
  for (std::size_t h = 0; h < n; ++h) {
    if (sgn(a[h]) == 0) continue;
    for (std::size_t col = 0; col < n; ++col) m(g.add(h, col), col) += a[h];
  }
  return m;
}

// ---------------------------------------------------------------------------
// Sublattices

SubLattice SubLattice::from_rows(const IntMatrix& gens) {
  SubLattice l(gens.cols());
  l.basis_ = row_lattice_basis(gens);
  return l;
}

SubLattice SubLattice::full(std::size_t ambient) { return from_rows(IntMatrix::identity(ambient)); }

bool SubLattice::contains(const std::vector<BigInt>& v) const {
  if (v.size() != ambient_) throw std::invalid_argument("SubLattice::contains: wrong length");
  IntMatrix row(1, ambient_);
  for (std::size_t i = 0; i < ambient_; ++i) row(0, i) = v[i];
  return row_lattice_basis(basis_.vstack(row)) == basis_;
}

std::vector<std::size_t> subgroup_closure(const FinAbGroup& a, const std::vector<std::size_t>& gens) {
  std::vector<char> in(a.order(), 0);
  std::vector<std::size_t> members{0};
  in[0] = 1;
  for (std::size_t q = 0; q < members.size(); ++q) {
    for (std::size_t g : gens) {
      if (g >= a.order()) throw std::invalid_argument("subgroup generator is not an element of A");
      std::size_t s = a.add(members[q], g);
      if (!in[s]) {
        in[s] = 1;
        members.push_back(s);
      }
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < a.order(); ++i)
    if (in[i]) out.push_back(i);
  return out;
}

SubLattice alpha_ideal(const FinAbGroup& a, const std::vector<std::size_t>& b_gens) {
  const auto b = subgroup_closure(a, b_gens);
  const std::size_t n = a.order();
  // y u_B is the indicator vector of the coset y + B; one row per coset.
  std::vector<char> seen(n, 0);
  std::vector<std::vector<std::size_t>> cosets;
  for (std::size_t y = 0; y < n; ++y) {
    if (seen[y]) continue;
    std::vector<std::size_t> c;
    for (std::size_t x : b) {
      std::size_t s = a.add(y, x);
      seen[s] = 1;
      c.push_back(s);
    }
    cosets.push_back(std::move(c));
  }
  IntMatrix rows(cosets.size(), n);
  for (std::size_t r = 0; r < cosets.size(); ++r)
    for (std::size_t s : cosets[r]) rows(r, s) = 1;
  return SubLattice::from_rows(rows);
}

SubLattice beta_ideal(const FinAbGroup& a, const std::vector<std::size_t>& b_gens) {
  const std::size_t n = a.order();
  std::vector<std::size_t> gens;
  for (std::size_t g : b_gens) {
    if (g >= n) throw std::invalid_argument("subgroup generator is not an element of A");
    if (g != 0) gens.push_back(g);
  }
  // 1 - b1 b2 = (1 - b1) + b1 (1 - b2), so generators of B suffice.
  IntMatrix rows(n * gens.size(), n);
  std::size_t r = 0;
  for (std::size_t g : gens) {
    for (std::size_t y = 0; y < n; ++y, ++r) {
      rows(r, y) += 1;
      rows(r, a.add(y, g)) -= 1;
    }
  }
  return SubLattice::from_rows(rows);
}

BigInt vol_squared(const SubLattice& l) {
  const IntMatrix& b = l.basis();
  if (b.rows() == 0) return 1;
  return abs(determinant(b * b.transpose()));
}

double vol(const SubLattice& l) {
  long exp2 = 0;
  BigInt v2 = vol_squared(l);
  double mant = mpz_get_d_2exp(&exp2, v2.get_mpz_t());
  return std::sqrt(mant) * std::pow(2.0, static_cast<double>(exp2) / 2.0);
}

namespace {

/// |Tor(Z^N / L)|.
BigInt torsion_index(const SubLattice& l) {
  if (l.rank() == 0) return 1;
  return snf(l.basis()).torsion_order();
}

}  // namespace

BigInt index_in_ambient(const SubLattice& l) {
  if (l.rank() != l.ambient()) throw std::invalid_argument("index_in_ambient: lattice is not of full rank");
  return torsion_index(l);
}

BigInt quotient_order(const SubLattice& l1, const SubLattice& l2) {
  if (l1.ambient() != l2.ambient()) throw std::invalid_argument("quotient_order: ambient mismatch");
  if (l1.rank() != l2.rank()) throw std::invalid_argument("quotient_order: rank mismatch");
  if (!(sum_ideals({l1, l2}) == l1)) throw std::invalid_argument("quotient_order: L2 is not contained in L1");
  // Both lie in the same saturation S, so [L1:L2] = [S:L2] / [S:L1].
  return torsion_index(l2) / torsion_index(l1);
}

SubLattice sum_ideals(const std::vector<SubLattice>& ls) {
  if (ls.empty()) throw std::invalid_argument("sum_ideals: empty list");
  IntMatrix stacked(0, ls.front().ambient());
  for (const auto& l : ls) {
    if (l.ambient() != stacked.cols()) throw std::invalid_argument("sum_ideals: ambient mismatch");
    stacked = stacked.vstack(l.basis());
  }
  return SubLattice::from_rows(stacked);
}

SubLattice intersect_ideals(const std::vector<SubLattice>& ls) {
  if (ls.empty()) throw std::invalid_argument("intersect_ideals: empty list");
  SubLattice acc = ls.front();
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const SubLattice& other = ls[i];
    if (other.ambient() != acc.ambient()) throw std::invalid_argument("intersect_ideals: ambient mismatch");
    if (acc.rank() == 0 || other.rank() == 0) return SubLattice(acc.ambient());
    // y1 B1 = y2 B2 <=> (y1, y2) in the left kernel of [B1; -B2].
    IntMatrix neg = other.basis();
    for (std::size_t r = 0; r < neg.rows(); ++r)
      for (std::size_t c = 0; c < neg.cols(); ++c) neg(r, c) = -neg(r, c);
    IntMatrix ker = left_kernel(acc.basis().vstack(neg));
    IntMatrix y1(ker.rows(), acc.rank());
    for (std::size_t r = 0; r < ker.rows(); ++r)
      for (std::size_t c = 0; c < acc.rank(); ++c) y1(r, c) = ker(r, c);
    acc = ker.rows() == 0 ? SubLattice(acc.ambient()) : SubLattice::from_rows(y1 * acc.basis());
  }
  return acc;
}

SubLattice orthogonal_complement(const SubLattice& l) {
  if (l.rank() == 0) return SubLattice::full(l.ambient());
  IntMatrix ker = integer_kernel(l.basis());
  if (ker.rows() == 0) return SubLattice(l.ambient());
  return SubLattice::from_rows(ker);
}

bool is_primitive(const SubLattice& l) { return torsion_index(l) == 1; }

// ---------------------------------------------------------------------------
// Characters

namespace {

std::complex<double> root_of_unity(std::int64_t num, std::int64_t den) {
  std::int64_t r = num % den;
  if (r < 0) r += den;
  const long double angle = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(r) / static_cast<long double>(den);
  return {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
}

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  __int128 p = static_cast<__int128>(a) * b % m;
  if (p < 0) p += m;
  return static_cast<std::int64_t>(p);
}

}  // namespace

std::complex<double> Character::coordinate(std::size_t i) const { return root_of_unity(num.at(i), den); }

std::complex<double> Character::at(const IntVec& m) const {
  if (m.size() != num.size()) throw std::invalid_argument("Character::at: wrong length");
  std::int64_t s = 0;
  for (std::size_t i = 0; i < m.size(); ++i) s = (s + mulmod(num[i], m[i], den)) % den;
  return root_of_unity(s, den);
}

std::vector<Character> characters(const FinAbGroup& a) {
  const std::size_t n = a.nvars();
  const std::int64_t e = a.exponent();
  const auto& d = a.invariant_factors();
  std::vector<IntVec> images(n);
  for (std::size_t i = 0; i < n; ++i) {
    IntVec ei(n, 0);
    ei[i] = 1;
    images[i] = a.project(ei);
  }
  std::vector<Character> out;
  out.reserve(a.order());
  for (std::size_t idx = 0; idx < a.order(); ++idx) {
    IntVec xi = a.digits_of(idx);
    Character chi;
    chi.den = e;
    chi.num.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      std::int64_t s = 0;
      for (std::size_t k = 0; k < d.size(); ++k) s = (s + mulmod(mulmod(xi[k], images[i][k], e), e / d[k], e)) % e;
      chi.num[i] = s;
    }
    out.push_back(std::move(chi));
  }
  return out;
}

std::complex<double> evaluate_at(const LaurentPoly& f, const Character& chi) {
  if (f.nvars() != chi.num.size()) throw std::invalid_argument("evaluate_at: variable count mismatch");
  std::complex<double> s = 0;
  for (const auto& [e, c] : f.terms()) s += c.get_d() * chi.at(e);
  return s;
}

}  // namespace torsionlab
