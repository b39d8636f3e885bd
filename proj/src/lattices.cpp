#include "torsionlab/lattices.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace torsionlab {

namespace {

std::int64_t mod_floor(__int128 a, std::int64_t m) {
  __int128 r = a % m;
  if (r < 0) r += m;
  return static_cast<std::int64_t>(r);
}

}  // namespace

std::int64_t gcd_of(const IntVec& v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x);
  return g;
}

// ---------------------------------------------------------------------------
// Subgroup

Subgroup::Subgroup(std::size_t nvars, std::vector<IntVec> gens) : nvars_(nvars), gens_(std::move(gens)) {
  if (nvars == 0) throw std::invalid_argument("Subgroup: nvars must be positive");
  for (const auto& g : gens_) {
    if (g.size() != nvars) throw std::invalid_argument("Subgroup: generator has wrong length");
  }
}

Subgroup Subgroup::diagonal(const IntVec& d) {
  std::vector<IntVec> gens;
  for (std::size_t i = 0; i < d.size(); ++i) {
    IntVec v(d.size(), 0);
    v[i] = d[i];
    gens.push_back(v);
  }
  return Subgroup(d.size(), std::move(gens));
}

Subgroup Subgroup::cyclic(std::int64_t l) { return Subgroup(1, {IntVec{l}}); }

IntMatrix Subgroup::generator_matrix() const {
  IntMatrix m(nvars_, gens_.size());
  for (std::size_t j = 0; j < gens_.size(); ++j)
    for (std::size_t i = 0; i < nvars_; ++i) m(i, j) = static_cast<long>(gens_[j][i]);
  return m;
}

std::size_t Subgroup::rank() const { return torsionlab::rank(generator_matrix()); }

std::string Subgroup::describe() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < nvars_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < gens_.size(); ++j) os << (j ? "," : "") << gens_[j][i];
    os << "]";
  }
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------------------
// FinAbGroup

FinAbGroup::FinAbGroup(const Subgroup& gamma) : nvars_(gamma.nvars()) {
  IntMatrix g = gamma.generator_matrix();
  SmithDecomposition sd = smith_decompose(g);
  std::size_t nonzero = 0;
  for (const auto& d : sd.diagonal)
    if (sgn(d) != 0) ++nonzero;
  if (nonzero < nvars_) throw std::invalid_argument("quotient: subgroup does not have full rank");
  for (std::size_t i = 0; i < nvars_; ++i) {
    const BigInt& d = sd.diagonal[i];
    if (d == 1) continue;
    std::int64_t di = to_int64(d);
    factors_.push_back(di);
    IntVec row(nvars_), col(nvars_);
    for (std::size_t k = 0; k < nvars_; ++k) {
      BigInt r;
      mpz_fdiv_r(r.get_mpz_t(), sd.left(i, k).get_mpz_t(), d.get_mpz_t());
      row[k] = to_int64(r);
      col[k] = to_int64(sd.left_inverse(k, i));
    }
    projection_rows_.push_back(std::move(row));
    section_cols_.push_back(std::move(col));
  }
  finish();
}

FinAbGroup FinAbGroup::cyclic(std::int64_t order) {
  if (order < 1) throw std::invalid_argument("cyclic group order must be positive");
  return FinAbGroup(Subgroup::cyclic(order));
}

void FinAbGroup::finish() {
  order_ = 1;
  for (auto d : factors_) {
    if (order_ > std::numeric_limits<std::size_t>::max() / static_cast<std::size_t>(d)) {
      throw std::overflow_error("quotient group too large to enumerate");
    }
    order_ *= static_cast<std::size_t>(d);
  }
}

IntVec FinAbGroup::digits_of(std::size_t index) const {
  if (index >= order_) throw std::out_of_range("group element index out of range");
  IntVec digits(factors_.size());
  for (std::size_t i = factors_.size(); i-- > 0;) {
    auto d = static_cast<std::size_t>(factors_[i]);
    digits[i] = static_cast<std::int64_t>(index % d);
    index /= d;
  }
  return digits;
}

std::size_t FinAbGroup::index_of(const IntVec& digits) const {
  if (digits.size() != factors_.size()) throw std::invalid_argument("digit vector has wrong length");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    idx = idx * static_cast<std::size_t>(factors_[i]) + static_cast<std::size_t>(mod_floor(digits[i], factors_[i]));
  }
  return idx;
}

IntVec FinAbGroup::project(const IntVec& x) const {
  if (x.size() != nvars_) throw std::invalid_argument("project: vector has wrong length");
  IntVec digits(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    __int128 s = 0;
    for (std::size_t k = 0; k < nvars_; ++k) s += static_cast<__int128>(projection_rows_[i][k]) * mod_floor(x[k], factors_[i]);
    digits[i] = mod_floor(s, factors_[i]);
  }
  return digits;
}

IntVec FinAbGroup::lift(const IntVec& digits) const {
  if (digits.size() != factors_.size()) throw std::invalid_argument("lift: digit vector has wrong length");
  IntVec x(nvars_, 0);
  for (std::size_t i = 0; i < factors_.size(); ++i)
    for (std::size_t k = 0; k < nvars_; ++k) x[k] += digits[i] * section_cols_[i][k];
  return x;
}

std::size_t FinAbGroup::add(std::size_t a, std::size_t b) const {
  IntVec da = digits_of(a), db = digits_of(b);
  for (std::size_t i = 0; i < da.size(); ++i) da[i] = (da[i] + db[i]) % factors_[i];
  return index_of(da);
}

std::size_t FinAbGroup::negate(std::size_t a) const {
  IntVec d = digits_of(a);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = (factors_[i] - d[i]) % factors_[i];
  return index_of(d);
}

std::size_t FinAbGroup::element_order(std::size_t a) const {
  IntVec d = digits_of(a);
  std::int64_t ord = 1;
  for (std::size_t i = 0; i < d.size(); ++i) {
    std::int64_t o = factors_[i] / std::gcd(d[i], factors_[i]);
    ord = std::lcm(ord, o);
  }
  return static_cast<std::size_t>(ord);
}

std::int64_t FinAbGroup::coordinate_order(std::size_t i) const {
  if (i >= nvars_) throw std::out_of_range("coordinate index out of range");
  IntVec e(nvars_, 0);
  e[i] = 1;
  return static_cast<std::int64_t>(element_order(project_index(e)));
}

// ---------------------------------------------------------------------------
// Directions

Direction::Direction(std::vector<double> v) : v_(std::move(v)) {
  if (v_.empty()) throw std::invalid_argument("Direction: empty vector");
  double s = 0;
  for (double x : v_) {
    if (x < 0) throw std::invalid_argument("Direction: negative entry");
    s += x * x;
  }
  if (std::fabs(std::sqrt(s) - 1.0) > 1e-9) throw std::invalid_argument("Direction: not a unit vector");
}

bool Direction::strictly_positive() const {
  return std::all_of(v_.begin(), v_.end(), [](double x) { return x > 0; });
}

std::vector<double> unit_direction(const std::vector<double>& x) {
  double s = 0;
  for (double v : x) s += v * v;
  if (s == 0) throw std::invalid_argument("unit_direction of the zero vector");
  s = std::sqrt(s);
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] / s;
  return out;
}

std::vector<double> subgroup_direction(const FinAbGroup& a) {
  std::vector<double> d(a.nvars());
  for (std::size_t i = 0; i < a.nvars(); ++i) d[i] = static_cast<double>(a.coordinate_order(i));
  return unit_direction(d);
}

// ---------------------------------------------------------------------------
// Shortest vectors

namespace {

__int128 dot(const IntVec& a, const IntVec& b) {
  __int128 s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<__int128>(a[i]) * b[i];
  return s;
}

/// Lattice basis (rows) from the generators, then iterated pairwise size reduction.
std::vector<IntVec> reduced_basis(const Subgroup& gamma) {
  IntMatrix rows(gamma.gens().size(), gamma.nvars());
  for (std::size_t j = 0; j < gamma.gens().size(); ++j)
    for (std::size_t i = 0; i < gamma.nvars(); ++i) rows(j, i) = static_cast<long>(gamma.gens()[j][i]);
  IntMatrix b = row_lattice_basis(rows);
  std::vector<IntVec> basis(b.rows(), IntVec(b.cols()));
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) basis[r][c] = to_int64(b(r, c));

  for (int sweep = 0; sweep < 1000; ++sweep) {
    bool changed = false;
    std::sort(basis.begin(), basis.end(), [](const IntVec& x, const IntVec& y) { return dot(x, x) < dot(y, y); });
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = 0; j < basis.size(); ++j) {
        if (i == j) continue;
        __int128 bj2 = dot(basis[j], basis[j]);
        long double mu = static_cast<long double>(dot(basis[i], basis[j])) / static_cast<long double>(bj2);
        auto q = static_cast<std::int64_t>(std::llround(mu));
        if (q == 0) continue;
        IntVec cand = basis[i];
        for (std::size_t k = 0; k < cand.size(); ++k) cand[k] -= q * basis[j][k];
        if (dot(cand, cand) < dot(basis[i], basis[i])) {
          basis[i] = std::move(cand);
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  return basis;
}

/// Inverse of a small symmetric positive definite matrix by Gauss-Jordan.
std::vector<std::vector<long double>> invert(std::vector<std::vector<long double>> g) {
  const std::size_t n = g.size();
  std::vector<std::vector<long double>> inv(n, std::vector<long double>(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::fabs(g[r][c]) > std::fabs(g[p][c])) p = r;
    std::swap(g[c], g[p]);
    std::swap(inv[c], inv[p]);
    long double d = g[c][c];
    for (std::size_t k = 0; k < n; ++k) {
      g[c][k] /= d;
      inv[c][k] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      long double f = g[r][c];
      for (std::size_t k = 0; k < n; ++k) {
        g[r][k] -= f * g[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

}  // namespace

IntVec shortest_vector(const Subgroup& gamma) {
  std::vector<IntVec> basis = reduced_basis(gamma);
  const std::size_t r = basis.size();
  if (r == 0) throw std::invalid_argument("min_norm: zero lattice");
  if (r > 4) throw std::invalid_argument("min_norm: enumeration is limited to rank <= 4");

  __int128 best = dot(basis[0], basis[0]);
  IntVec best_vec = basis[0];
  for (const auto& b : basis) {
    if (dot(b, b) < best) {
      best = dot(b, b);
      best_vec = b;
    }
  }
  std::vector<std::vector<long double>> gram(r, std::vector<long double>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) gram[i][j] = static_cast<long double>(dot(basis[i], basis[j]));
  auto ginv = invert(gram);
  // For x = sum c_i b_i with |x| <= R: |c_i| <= R sqrt((G^-1)_ii).
  std::vector<std::int64_t> bound(r);
  long double radius2 = static_cast<long double>(best);
  long double boxes = 1;
  for (std::size_t i = 0; i < r; ++i) {
    bound[i] = static_cast<std::int64_t>(std::floor(std::sqrt(radius2 * ginv[i][i]) + 1e-9L));
    boxes *= static_cast<long double>(2 * bound[i] + 1);
  }
  if (boxes > 5e7L) throw std::runtime_error("min_norm: enumeration box too large");

  IntVec coeff(r);
  for (std::size_t i = 0; i < r; ++i) coeff[i] = -bound[i];
  IntVec x(gamma.nvars());
  while (true) {
    bool nonzero = std::any_of(coeff.begin(), coeff.end(), [](std::int64_t c) { return c != 0; });
    if (nonzero) {
      std::fill(x.begin(), x.end(), 0);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < x.size(); ++k) x[k] += coeff[i] * basis[i][k];
      __int128 n2 = dot(x, x);
      if (n2 < best) {
        best = n2;
        best_vec = x;
      }
    }
    std::size_t i = 0;
    while (i < r && coeff[i] == bound[i]) {
      coeff[i] = -bound[i];
      ++i;
    }
    if (i == r) break;
    ++coeff[i];
  }
  return best_vec;
}

double min_norm(const Subgroup& gamma) {
  IntVec v = shortest_vector(gamma);
  return std::sqrt(static_cast<double>(dot(v, v)));
}

// ---------------------------------------------------------------------------
// Perpendicular lattices and converging sequences

Subgroup perp(const IntVec& k) {
  if (k.empty() || std::all_of(k.begin(), k.end(), [](std::int64_t x) { return x == 0; })) {
    throw std::invalid_argument("perp: zero vector");
  }
  IntMatrix row(1, k.size());
  for (std::size_t i = 0; i < k.size(); ++i) row(0, i) = static_cast<long>(k[i]);
  IntMatrix ker = integer_kernel(row);
  std::vector<IntVec> gens(ker.rows(), IntVec(k.size()));
  for (std::size_t r = 0; r < ker.rows(); ++r)
    for (std::size_t c = 0; c < k.size(); ++c) gens[r][c] = to_int64(ker(r, c));
  return Subgroup(k.size(), std::move(gens));
}

double perp_norm(const IntVec& k) {
  Subgroup p = perp(k);
  if (p.gens().empty()) return std::numeric_limits<double>::infinity();
  return min_norm(p);
}

Subgroup gamma_sj(const IntVec& k, std::int64_t j) {
  if (j < 1) throw std::invalid_argument("gamma_sj: j must be positive");
  if (gcd_of(k) != 1) throw std::invalid_argument("gamma_sj: entries of k must be coprime");
  Subgroup p = perp(k);
  std::vector<IntVec> gens = p.gens();
  IntVec jk = k;
  for (auto& x : jk) x *= j;
  gens.push_back(jk);
  return Subgroup(k.size(), std::move(gens));
}

IntVec converging_k_sequence(const Direction& kappa, std::int64_t s, SearchBudget budget) {
  const std::size_t n = kappa.size();
  if (s < 1) throw std::invalid_argument("converging_k_sequence: s must be positive");
  if (n == 1) return {1};
  const double tol = 1.0 / static_cast<double>(s);
  IntVec k(n);
  std::vector<double> inv(n);
  for (std::int64_t top = 1; top <= budget.max_entry; ++top) {
    // All vectors in [1, top]^n with max entry exactly top, lexicographically.
    std::fill(k.begin(), k.end(), 1);
    while (true) {
      bool has_top = std::any_of(k.begin(), k.end(), [top](std::int64_t x) { return x == top; });
      if (has_top && gcd_of(k) == 1) {
        for (std::size_t i = 0; i < n; ++i) inv[i] = 1.0 / static_cast<double>(k[i]);
        std::vector<double> d = unit_direction(inv);
        double err = 0;
        for (std::size_t i = 0; i < n; ++i) err += (d[i] - kappa.values()[i]) * (d[i] - kappa.values()[i]);
        if (std::sqrt(err) < tol && perp_norm(k) > static_cast<double>(s)) return k;
      }
      std::size_t i = n;
      while (i-- > 0) {
        if (k[i] < top) {
          ++k[i];
          for (std::size_t t = i + 1; t < n; ++t) k[t] = 1;
          break;
        }
        if (i == 0) {
          i = n + 1;
          break;
        }
      }
      if (i == n + 1) break;
    }
  }
  throw std::runtime_error("converging_k_sequence: search budget exhausted");
}

}  // namespace torsionlab
