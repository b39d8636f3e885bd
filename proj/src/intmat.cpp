#include "torsionlab/intmat.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace torsionlab {

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
  std::size_t c = rows.empty() ? 0 : rows.front().size();
  IntMatrix m(rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw std::invalid_argument("from_rows: ragged rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<long>(rows[i][j]);
  }
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("matrix product: shape mismatch");
  IntMatrix p(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const BigInt& a = (*this)(i, k);
      if (sgn(a) == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) {
        const BigInt& b = other(k, j);
        if (sgn(b) != 0) mpz_addmul(p(i, j).get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      }
    }
  }
  return p;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const BigInt& x) { return sgn(x) == 0; });
}

IntMatrix IntMatrix::vstack(const IntMatrix& other) const {
  if (rows_ != 0 && other.rows_ != 0 && cols_ != other.cols_) {
    throw std::invalid_argument("vstack: column counts differ");
  }
  if (rows_ == 0) return other;
  if (other.rows_ == 0) return *this;
  IntMatrix s(rows_ + other.rows_, cols_);
  std::copy(data_.begin(), data_.end(), s.data_.begin());
  std::copy(other.data_.begin(), other.data_.end(), s.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
  return s;
}

IntMatrix IntMatrix::row_range(std::size_t first, std::size_t count) const {
  if (first + count > rows_) throw std::out_of_range("row_range");
  IntMatrix s(count, cols_);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < cols_; ++j) s(i, j) = (*this)(first + i, j);
  return s;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) mpz_swap((*this)(a, j).get_mpz_t(), (*this)(b, j).get_mpz_t());
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) mpz_swap((*this)(i, a).get_mpz_t(), (*this)(i, b).get_mpz_t());
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------------------
// SnfResult

std::size_t SnfResult::rank() const {
  return static_cast<std::size_t>(
      std::count_if(factors.begin(), factors.end(), [](const BigInt& d) { return sgn(d) != 0; }));
}

BigInt SnfResult::torsion_order() const {
  BigInt p = 1;
  for (const auto& d : factors)
    if (sgn(d) != 0) p *= d;
  return p;
}

std::vector<BigInt> SnfResult::torsion_factors() const {
  std::vector<BigInt> out;
  for (const auto& d : factors)
    if (d > 1) out.push_back(d);
  return out;
}

namespace {

/// Quotient rounded to nearest, so that |a - q*b| <= |b|/2.
void nearest_quotient(BigInt& q, BigInt& r, const BigInt& a, const BigInt& b) {
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (sgn(r) == 0) return;
  BigInt twice = r;
  twice *= 2;
  if (mpz_cmpabs(twice.get_mpz_t(), b.get_mpz_t()) > 0) {
    if ((sgn(r) > 0) == (sgn(b) > 0)) {
      q += 1;
      r -= b;
    } else {
      q -= 1;
      r += b;
    }
  }
}

/// Chain repair: turns any diagonal into the Smith diagonal with the same product
/// structure, diag(a, b) ~ diag(gcd, lcm).
void repair_divisibility(std::vector<BigInt>& d) {
  std::vector<BigInt> nz;
  std::size_t zeros = 0;
  for (auto& x : d) {
    if (sgn(x) == 0) {
      ++zeros;
    } else {
      nz.push_back(big_abs(x));
    }
  }
  std::sort(nz.begin(), nz.end());
  BigInt g, l;
  for (std::size_t i = 0; i < nz.size(); ++i) {
    if (nz[i] == 1) continue;
    for (std::size_t j = i + 1; j < nz.size(); ++j) {
      if (mpz_divisible_p(nz[j].get_mpz_t(), nz[i].get_mpz_t())) continue;
      mpz_gcd(g.get_mpz_t(), nz[i].get_mpz_t(), nz[j].get_mpz_t());
      mpz_divexact(l.get_mpz_t(), nz[i].get_mpz_t(), g.get_mpz_t());
      l *= nz[j];
      nz[i] = g;
      nz[j] = l;
      if (nz[i] == 1) break;
    }
  }
  std::sort(nz.begin(), nz.end());
  d = std::move(nz);
  d.resize(d.size() + zeros, BigInt(0));
}

/// Elimination state for the invariant-factor computation.
class SnfEliminator {
 public:
  explicit SnfEliminator(IntMatrix a) : a_(std::move(a)) {
    const std::size_t r = a_.rows(), c = a_.cols();
    row_nnz_.assign(r, 0);
    col_nnz_.assign(c, 0);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) {
        if (sgn(a_(i, j)) != 0) {
          ++row_nnz_[i];
          ++col_nnz_[j];
        }
      }
    }
    for (std::size_t i = 0; i < r; ++i) rows_.push_back(i);
    for (std::size_t j = 0; j < c; ++j) cols_.push_back(j);
  }

  std::vector<BigInt> run() {
    std::vector<BigInt> diag;
    std::size_t p = 0, c = 0;
    while (find_pivot(p, c)) {
      settle_pivot(p, c);
      diag.push_back(big_abs(a_(p, c)));
      retire(p, c);
    }
    return diag;
  }

 private:
  bool find_pivot(std::size_t& best_r, std::size_t& best_c) const {
    bool found = false;
    std::size_t best_size = 0;
    std::size_t best_cost = 0;
    const BigInt* best = nullptr;
    for (std::size_t r : rows_) {
      if (row_nnz_[r] == 0) continue;
      for (std::size_t c : cols_) {
        const BigInt& v = a_(r, c);
        if (sgn(v) == 0) continue;
        std::size_t size = mpz_size(v.get_mpz_t());
        std::size_t cost = (row_nnz_[r] - 1) * (col_nnz_[c] - 1);
        bool better = false;
        if (!found) {
          better = true;
        } else if (size != best_size) {
          better = size < best_size;
        } else {
          int cmp = mpz_cmpabs(v.get_mpz_t(), best->get_mpz_t());
          better = cmp < 0 || (cmp == 0 && cost < best_cost);
        }
        if (better) {
          found = true;
          best = &v;
          best_size = size;
          best_cost = cost;
          best_r = r;
          best_c = c;
          if (cost == 0 && mpz_cmpabs_ui(v.get_mpz_t(), 1) == 0) return true;
        }
      }
    }
    return found;
  }

  void touch(std::size_t i, std::size_t j, bool was_zero) {
    bool now_zero = sgn(a_(i, j)) == 0;
    if (was_zero == now_zero) return;
    if (was_zero) {
      ++row_nnz_[i];
      ++col_nnz_[j];
    } else {
      --row_nnz_[i];
      --col_nnz_[j];
    }
  }

  /// Row and column of the pivot end up zero apart from the pivot itself.
  void settle_pivot(std::size_t& p, std::size_t& c) {
    BigInt q, r;
    std::vector<std::size_t> support;
    while (true) {
      // Column pass: row operations against the pivot row.
      support.clear();
      for (std::size_t j : cols_)
        if (sgn(a_(p, j)) != 0) support.push_back(j);
      bool residue = false;
      std::size_t next = p;
      for (std::size_t i : rows_) {
        if (i == p || sgn(a_(i, c)) == 0) continue;
        nearest_quotient(q, r, a_(i, c), a_(p, c));
        if (sgn(q) != 0) {
          for (std::size_t j : support) {
            bool was_zero = sgn(a_(i, j)) == 0;
            mpz_submul(a_(i, j).get_mpz_t(), q.get_mpz_t(), a_(p, j).get_mpz_t());
            touch(i, j, was_zero);
          }
        }
        if (sgn(a_(i, c)) != 0) {
          if (!residue || mpz_cmpabs(a_(i, c).get_mpz_t(), a_(next, c).get_mpz_t()) < 0) next = i;
          residue = true;
        }
      }
      if (residue) {
        p = next;
        continue;
      }
      // Row pass: the column is clear, so column operations only touch row p.
      std::size_t next_c = c;
      for (std::size_t j : cols_) {
        if (j == c || sgn(a_(p, j)) == 0) continue;
        nearest_quotient(q, r, a_(p, j), a_(p, c));
        bool was_zero = false;
        a_(p, j) = r;
        touch(p, j, was_zero);
        if (sgn(r) != 0) {
          if (!residue || mpz_cmpabs(r.get_mpz_t(), a_(p, next_c).get_mpz_t()) < 0) next_c = j;
          residue = true;
        }
      }
      if (!residue) return;
      c = next_c;
    }
  }

  void retire(std::size_t p, std::size_t c) {
    for (std::size_t j : cols_)
      if (sgn(a_(p, j)) != 0) --col_nnz_[j];
    for (std::size_t i : rows_)
      if (i != p && sgn(a_(i, c)) != 0) --row_nnz_[i];
    rows_.erase(std::find(rows_.begin(), rows_.end(), p));
    cols_.erase(std::find(cols_.begin(), cols_.end(), c));
  }

  IntMatrix a_;
  std::vector<std::size_t> row_nnz_;
  std::vector<std::size_t> col_nnz_;
  std::vector<std::size_t> rows_;
  std::vector<std::size_t> cols_;
};

}  // namespace

SnfResult snf(IntMatrix a) {
  SnfResult out;
  out.rows = a.rows();
  out.cols = a.cols();
  const std::size_t n = std::min(out.rows, out.cols);
  SnfEliminator elim(std::move(a));
  out.factors = elim.run();
  out.factors.resize(n, BigInt(0));
  repair_divisibility(out.factors);
  return out;
}

// ---------------------------------------------------------------------------
// Smith decomposition with transforms

namespace {

struct TransformTracker {
  IntMatrix& a;
  IntMatrix& left;
  IntMatrix& left_inv;
  IntMatrix& right;

  // row_i -= q * row_j
  void row_sub(std::size_t i, std::size_t j, const BigInt& q) {
    if (sgn(q) == 0) return;
    for (std::size_t k = 0; k < a.cols(); ++k) mpz_submul(a(i, k).get_mpz_t(), q.get_mpz_t(), a(j, k).get_mpz_t());
    for (std::size_t k = 0; k < left.cols(); ++k)
      mpz_submul(left(i, k).get_mpz_t(), q.get_mpz_t(), left(j, k).get_mpz_t());
    // Inverse update: col_j += q * col_i.
    for (std::size_t k = 0; k < left_inv.rows(); ++k)
      mpz_addmul(left_inv(k, j).get_mpz_t(), q.get_mpz_t(), left_inv(k, i).get_mpz_t());
  }
  void row_swap(std::size_t i, std::size_t j) {
    a.swap_rows(i, j);
    left.swap_rows(i, j);
    left_inv.swap_cols(i, j);
  }
  void row_negate(std::size_t i) {
    for (std::size_t k = 0; k < a.cols(); ++k) a(i, k) = -a(i, k);
    for (std::size_t k = 0; k < left.cols(); ++k) left(i, k) = -left(i, k);
    for (std::size_t k = 0; k < left_inv.rows(); ++k) left_inv(k, i) = -left_inv(k, i);
  }
  // col_i -= q * col_j
  void col_sub(std::size_t i, std::size_t j, const BigInt& q) {
    if (sgn(q) == 0) return;
    for (std::size_t k = 0; k < a.rows(); ++k) mpz_submul(a(k, i).get_mpz_t(), q.get_mpz_t(), a(k, j).get_mpz_t());
    for (std::size_t k = 0; k < right.rows(); ++k)
      mpz_submul(right(k, i).get_mpz_t(), q.get_mpz_t(), right(k, j).get_mpz_t());
  }
  void col_swap(std::size_t i, std::size_t j) {
    a.swap_cols(i, j);
    right.swap_cols(i, j);
  }
};

}  // namespace

SmithDecomposition smith_decompose(const IntMatrix& input) {
  IntMatrix a = input;
  const std::size_t m = a.rows(), n = a.cols();
  SmithDecomposition out{IntMatrix::identity(m), IntMatrix::identity(m), IntMatrix::identity(n), {}};
  TransformTracker ops{a, out.left, out.left_inverse, out.right};
  const std::size_t k = std::min(m, n);
  BigInt q, r;
  for (std::size_t t = 0; t < k; ++t) {
    // Smallest nonzero entry of the trailing block goes to (t, t).
    bool found = false;
    std::size_t bi = t, bj = t;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j) {
        if (sgn(a(i, j)) == 0) continue;
        if (!found || mpz_cmpabs(a(i, j).get_mpz_t(), a(bi, bj).get_mpz_t()) < 0) {
          bi = i;
          bj = j;
          found = true;
        }
      }
    if (!found) break;
    ops.row_swap(t, bi);
    ops.col_swap(t, bj);
    while (true) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < m && !dirty; ++i) {
        if (sgn(a(i, t)) == 0) continue;
        nearest_quotient(q, r, a(i, t), a(t, t));
        ops.row_sub(i, t, q);
        if (sgn(a(i, t)) != 0) {
          ops.row_swap(i, t);
          dirty = true;
        }
      }
      if (dirty) continue;
      for (std::size_t j = t + 1; j < n && !dirty; ++j) {
        if (sgn(a(t, j)) == 0) continue;
        nearest_quotient(q, r, a(t, j), a(t, t));
        ops.col_sub(j, t, q);
        if (sgn(a(t, j)) != 0) {
          ops.col_swap(j, t);
          dirty = true;
        }
      }
      if (dirty) continue;
      // Divisibility: fold in a row whose entries the pivot does not divide.
      for (std::size_t i = t + 1; i < m && !dirty; ++i)
        for (std::size_t j = t + 1; j < n && !dirty; ++j) {
          if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            ops.row_sub(t, i, BigInt(-1));
            dirty = true;
          }
        }
      if (!dirty) break;
    }
    if (sgn(a(t, t)) < 0) ops.row_negate(t);
  }
  out.diagonal.resize(k);
  for (std::size_t t = 0; t < k; ++t) out.diagonal[t] = a(t, t);
  return out;
}

// ---------------------------------------------------------------------------
// Hermite echelon form

EchelonForm hermite_echelon(const IntMatrix& input, bool with_transform) {
  EchelonForm out;
  out.echelon = input;
  IntMatrix& a = out.echelon;
  const std::size_t m = a.rows(), n = a.cols();
  if (with_transform) out.transform = IntMatrix::identity(m);
  IntMatrix& u = out.transform;
  BigInt q, r;

  auto row_sub = [&](std::size_t i, std::size_t j, const BigInt& factor, std::size_t from_col) {
    if (sgn(factor) == 0) return;
    for (std::size_t k = from_col; k < n; ++k) {
      if (sgn(a(j, k)) != 0) mpz_submul(a(i, k).get_mpz_t(), factor.get_mpz_t(), a(j, k).get_mpz_t());
    }
    if (with_transform) {
      for (std::size_t k = 0; k < m; ++k) {
        if (sgn(u(j, k)) != 0) mpz_submul(u(i, k).get_mpz_t(), factor.get_mpz_t(), u(j, k).get_mpz_t());
      }
    }
  };
  auto row_swap = [&](std::size_t i, std::size_t j) {
    a.swap_rows(i, j);
    if (with_transform) u.swap_rows(i, j);
  };

  std::size_t row = 0;
  for (std::size_t c = 0; c < n && row < m; ++c) {
    while (true) {
      std::size_t best = m;
      for (std::size_t i = row; i < m; ++i) {
        if (sgn(a(i, c)) == 0) continue;
        if (best == m || mpz_cmpabs(a(i, c).get_mpz_t(), a(best, c).get_mpz_t()) < 0) best = i;
      }
      if (best == m) break;
      row_swap(row, best);
      bool clean = true;
      for (std::size_t i = row + 1; i < m; ++i) {
        if (sgn(a(i, c)) == 0) continue;
        nearest_quotient(q, r, a(i, c), a(row, c));
        row_sub(i, row, q, c);
        if (sgn(a(i, c)) != 0) clean = false;
      }
      if (clean) break;
    }
    if (sgn(a(row, c)) == 0) continue;
    if (sgn(a(row, c)) < 0) {
      for (std::size_t k = c; k < n; ++k) a(row, k) = -a(row, k);
      if (with_transform)
        for (std::size_t k = 0; k < m; ++k) u(row, k) = -u(row, k);
    }
    for (std::size_t i = 0; i < row; ++i) {
      if (sgn(a(i, c)) == 0) continue;
      mpz_fdiv_q(q.get_mpz_t(), a(i, c).get_mpz_t(), a(row, c).get_mpz_t());
      row_sub(i, row, q, c);
    }
    out.pivot_cols.push_back(c);
    ++row;
  }
  out.rank = row;
  return out;
}

IntMatrix row_lattice_basis(const IntMatrix& a) {
  EchelonForm e = hermite_echelon(a, false);
  if (e.rank == 0) return IntMatrix(0, a.cols());
  return e.echelon.row_range(0, e.rank);
}

IntMatrix left_kernel(const IntMatrix& a) {
  EchelonForm e = hermite_echelon(a, true);
  std::size_t k = a.rows() - e.rank;
  if (k == 0) return IntMatrix(0, a.rows());
  return row_lattice_basis(e.transform.row_range(e.rank, k));
}

IntMatrix integer_kernel(const IntMatrix& a) { return left_kernel(a.transpose()); }

// ---------------------------------------------------------------------------
// Determinant and rank

BigInt determinant(IntMatrix a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (n == 0) return 1;
  int sign = 1;
  BigInt prev = 1;
  BigInt tmp;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a(k, k)) == 0) {
      std::size_t s = k + 1;
      while (s < n && sgn(a(s, k)) == 0) ++s;
      if (s == n) return 0;
      a.swap_rows(k, s);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_mul(tmp.get_mpz_t(), a(i, j).get_mpz_t(), a(k, k).get_mpz_t());
        mpz_submul(tmp.get_mpz_t(), a(i, k).get_mpz_t(), a(k, j).get_mpz_t());
        mpz_divexact(a(i, j).get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  BigInt d = a(n - 1, n - 1);
  return sign < 0 ? BigInt(-d) : d;
}

std::size_t rank(const IntMatrix& input) {
  IntMatrix a = input;
  const std::size_t m = a.rows(), n = a.cols();
  BigInt prev = 1, tmp;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t s = r;
    while (s < m && sgn(a(s, c)) == 0) ++s;
    if (s == m) continue;
    a.swap_rows(r, s);
    for (std::size_t i = r + 1; i < m; ++i) {
      for (std::size_t j = c + 1; j < n; ++j) {
        mpz_mul(tmp.get_mpz_t(), a(i, j).get_mpz_t(), a(r, c).get_mpz_t());
        mpz_submul(tmp.get_mpz_t(), a(i, c).get_mpz_t(), a(r, j).get_mpz_t());
        mpz_divexact(a(i, j).get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, c) = 0;
    }
    prev = a(r, c);
    ++r;
  }
  return r;
}

}  // namespace torsionlab
