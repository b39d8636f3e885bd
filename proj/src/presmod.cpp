#include "torsionlab/presmod.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace torsionlab {

// ---------------------------------------------------------------------------
// PolyMatrix

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, std::size_t nvars)
    : rows_(rows), cols_(cols), nvars_(nvars), data_(rows * cols, LaurentPoly(nvars)) {}

PolyMatrix PolyMatrix::from_rows(const std::vector<std::vector<LaurentPoly>>& rows, std::size_t nvars) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  PolyMatrix m(rows.size(), cols, nvars);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("PolyMatrix: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) {
      if (rows[r][c].nvars() != nvars) throw std::invalid_argument("PolyMatrix: entry has wrong variable count");
      m(r, c) = rows[r][c];
    }
  }
  return m;
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("PolyMatrix product: shape mismatch");
  if (nvars_ != o.nvars_) throw std::invalid_argument("PolyMatrix product: variable count mismatch");
  PolyMatrix out(rows_, o.cols_, nvars_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const LaurentPoly& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) out(i, j) += a * o(k, j);
    }
  return out;
}

bool PolyMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const LaurentPoly& p) { return p.is_zero(); });
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix t(cols_, rows_, nvars_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

PolyMatrix PolyMatrix::select(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
  PolyMatrix s(rows.size(), cols.size(), nvars_);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) s(r, c) = (*this)(rows[r], cols[c]);
  return s;
}

std::string PolyMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ", [" : "[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? ", " : "") << (*this)(r, c).to_string();
    os << "]";
  }
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------------------
// Fraction-free elimination

namespace {

LaurentPoly exact_quotient(const LaurentPoly& f, const LaurentPoly& g) {
  auto q = divide_exact(f, g);
  if (!q) throw std::logic_error("fraction-free elimination: inexact division");
  return *q;
}

/// Bareiss elimination in place. Returns the rank; for square input, sign and
/// the last pivot give the determinant.
std::size_t bareiss(PolyMatrix& a, int* sign) {
  const std::size_t m = a.rows(), n = a.cols();
  LaurentPoly prev = LaurentPoly::constant(a.nvars(), 1);
  std::size_t r = 0;
  int s = 1;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t p = m;
    for (std::size_t i = r; i < m; ++i) {
      if (a(i, c).is_zero()) continue;
      if (p == m || a(i, c).size() < a(p, c).size()) p = i;
    }
    if (p == m) continue;
    if (p != r) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a(p, k), a(r, k));
      s = -s;
    }
    for (std::size_t i = r + 1; i < m; ++i) {
      for (std::size_t k = c + 1; k < n; ++k) {
        LaurentPoly v = a(r, c) * a(i, k) - a(i, c) * a(r, k);
        a(i, k) = exact_quotient(v, prev);
      }
      a(i, c) = LaurentPoly(a.nvars());
    }
    prev = a(r, c);
    ++r;
  }
  if (sign) *sign = s;
  return r;
}

}  // namespace

LaurentPoly determinant(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix is not square");
  if (m.rows() == 0) return LaurentPoly::constant(m.nvars(), 1);
  PolyMatrix a = m;
  int sign = 1;
  std::size_t r = bareiss(a, &sign);
  if (r < m.rows()) return LaurentPoly(m.nvars());
  LaurentPoly d = a(m.rows() - 1, m.cols() - 1);
  if (sign < 0) d = -d;
  return d;
}

std::size_t rank(const PolyMatrix& m) {
  PolyMatrix a = m;
  return bareiss(a, nullptr);
}

// ---------------------------------------------------------------------------
// PresentedModule

PresentedModule PresentedModule::free(std::size_t m0, std::size_t nvars) { return PresentedModule(PolyMatrix(0, m0, nvars)); }

PresentedModule PresentedModule::cyclic(const std::vector<LaurentPoly>& relations) {
  if (relations.empty()) throw std::invalid_argument("PresentedModule::cyclic: no relations");
  const std::size_t nv = relations.front().nvars();
  PolyMatrix m(relations.size(), 1, nv);
  for (std::size_t i = 0; i < relations.size(); ++i) {
    if (relations[i].nvars() != nv) throw std::invalid_argument("PresentedModule::cyclic: variable count mismatch");
    m(i, 0) = relations[i];
  }
  return PresentedModule(std::move(m));
}

PresentedModule PresentedModule::direct_sum(const PresentedModule& a, const PresentedModule& b) {
  if (a.nvars() != b.nvars()) throw std::invalid_argument("direct_sum: variable count mismatch");
  const auto& x = a.matrix();
  const auto& y = b.matrix();
  PolyMatrix m(x.rows() + y.rows(), x.cols() + y.cols(), a.nvars());
  for (std::size_t r = 0; r < x.rows(); ++r)
    for (std::size_t c = 0; c < x.cols(); ++c) m(r, c) = x(r, c);
  for (std::size_t r = 0; r < y.rows(); ++r)
    for (std::size_t c = 0; c < y.cols(); ++c) m(x.rows() + r, x.cols() + c) = y(r, c);
  return PresentedModule(std::move(m));
}

std::size_t rank(const PresentedModule& m) { return m.generators() - rank(m.matrix()); }

namespace {

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
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

}  // namespace

UnitNormalForm alexander(const PresentedModule& m, std::size_t j) {
  const std::size_t m0 = m.generators(), m1 = m.relations();
  const std::size_t nv = m.nvars();
  if (j >= m0) return normalize_unit(LaurentPoly::constant(nv, 1));
  const std::size_t k = m0 - j;
  if (k > m1) return normalize_unit(LaurentPoly(nv));
  if (m0 > kMinorGuard || m1 > kMinorGuard) {
    throw std::length_error("alexander: minor enumeration is limited to " + std::to_string(kMinorGuard) + " rows and columns");
  }
  std::vector<std::size_t> rows(k), cols(k);
  UnitNormalForm acc = normalize_unit(LaurentPoly(nv));
  for (std::size_t i = 0; i < k; ++i) rows[i] = i;
  do {
    for (std::size_t i = 0; i < k; ++i) cols[i] = i;
    do {
      LaurentPoly d = determinant(m.matrix().select(rows, cols));
      if (d.is_zero()) continue;
      acc = gcd(acc.poly(), d);
      if (acc.is_one()) return acc;
    } while (next_combination(cols, m0));
  } while (next_combination(rows, m1));
  return acc;
}

UnitNormalForm delta(const PresentedModule& m) {
  for (std::size_t j = 0;; ++j) {
    UnitNormalForm d = alexander(m, j);
    if (!d.is_zero()) return d;
  }
}

bool is_pseudo_zero_torsion(const PresentedModule& m) {
  if (rank(m) != 0) throw std::domain_error("is_pseudo_zero_torsion: module has positive rank");
  return alexander(m, 0).is_one();
}

// ---------------------------------------------------------------------------
// Chain complexes

ChainComplex::ChainComplex(std::size_t nvars, std::vector<PolyMatrix> boundaries) : nvars_(nvars), boundaries_(std::move(boundaries)) {
  for (std::size_t i = 0; i < boundaries_.size(); ++i) {
    if (boundaries_[i].nvars() != nvars_) throw std::invalid_argument("ChainComplex: variable count mismatch");
    if (i > 0) {
      const PolyMatrix& lower = boundaries_[i - 1];
      const PolyMatrix& upper = boundaries_[i];
      if (upper.cols() != lower.rows()) throw std::invalid_argument("ChainComplex: boundary shapes do not compose");
      if (!(upper * lower).is_zero()) throw std::invalid_argument("ChainComplex: consecutive boundaries do not compose to zero");
    }
  }
}

std::size_t ChainComplex::chain_rank(std::size_t i) const {
  if (boundaries_.empty()) return 0;
  if (i == 0) return boundaries_.front().cols();
  if (i > boundaries_.size()) return 0;
  return boundaries_[i - 1].rows();
}

// ---------------------------------------------------------------------------
// Words and Fox calculus

Word free_reduce(const Word& w) {
  Word out;
  for (int x : w) {
    if (x == 0) throw std::invalid_argument("word letter 0 is not a generator");
    if (!out.empty() && out.back() == -x) {
      out.pop_back();
    } else {
      out.push_back(x);
    }
  }
  return out;
}

namespace {

LaurentPoly monomial_inverse(const LaurentPoly& m) {
  if (!m.is_monomial() || abs(m.leading_coeff()) != 1) throw std::invalid_argument("rho image is not a unit monomial");
  Exponent e = m.leading_exponent();
  for (auto& x : e) x = -x;
  return LaurentPoly::monomial(e, m.leading_coeff());
}

void check_letter(int x, std::size_t ngens) {
  if (x == 0 || static_cast<std::size_t>(std::abs(x)) > ngens) throw std::invalid_argument("word uses an unknown generator");
}

}  // namespace

LaurentPoly rho_of(const Word& w, const std::vector<LaurentPoly>& rho) {
  if (rho.empty()) throw std::invalid_argument("rho_of: empty rho");
  LaurentPoly p = LaurentPoly::constant(rho.front().nvars(), 1);
  for (int x : w) {
    check_letter(x, rho.size());
    const LaurentPoly& g = rho[static_cast<std::size_t>(std::abs(x)) - 1];
    p *= x > 0 ? g : monomial_inverse(g);
  }
  return p;
}

LaurentPoly fox_derivative(const Word& w, std::size_t gen, const std::vector<LaurentPoly>& rho) {
  if (gen >= rho.size()) throw std::invalid_argument("fox_derivative: generator index out of range");
  const std::size_t nv = rho.front().nvars();
  LaurentPoly prefix = LaurentPoly::constant(nv, 1);
  LaurentPoly out(nv);
  for (int x : w) {
    check_letter(x, rho.size());
    const std::size_t g = static_cast<std::size_t>(std::abs(x)) - 1;
    const LaurentPoly inv = monomial_inverse(rho[g]);
    if (x > 0) {
      if (g == gen) out += prefix;
      prefix *= rho[g];
    } else {
      // d(x^-1)/dx = -x^-1
      if (g == gen) out -= prefix * inv;
      prefix *= inv;
    }
  }
  return out;
}

ChainComplex alexander_complex(const GroupPresentation& p) {
  const std::size_t ng = p.gens.size();
  if (p.rho.size() != ng) throw std::invalid_argument("alexander_complex: rho must be defined on every generator");
  PolyMatrix d1(ng, 1, p.nvars);
  for (std::size_t i = 0; i < ng; ++i) d1(i, 0) = LaurentPoly::constant(p.nvars, 1) - p.rho[i];
  PolyMatrix d2(p.relators.size(), ng, p.nvars);
  for (std::size_t r = 0; r < p.relators.size(); ++r) {
    if (!(rho_of(p.relators[r], p.rho) == LaurentPoly::constant(p.nvars, 1))) {
      throw std::invalid_argument("alexander_complex: relator " + p.word_to_string(p.relators[r]) + " is not in the kernel of rho");
    }
    for (std::size_t g = 0; g < ng; ++g) d2(r, g) = fox_derivative(p.relators[r], g, p.rho);
  }
  return ChainComplex(p.nvars, {d1, d2});
}

PresentedModule alexander_module(const GroupPresentation& p) { return PresentedModule(alexander_complex(p).boundary(2)); }

PresentedModule branched_module(const PolyMatrix& del2, std::size_t n, std::vector<std::size_t> meridians) {
  const std::size_t m = del2.rows(), g = del2.cols();
  if (n == 0 || n != del2.nvars()) throw std::invalid_argument("branched_module: n must equal the number of variables");
  if (g < n) throw std::invalid_argument("branched_module: fewer generators than link components");
  if (meridians.empty()) {
    for (std::size_t i = 0; i < n; ++i) meridians.push_back(i);
  }
  if (meridians.size() != n) throw std::invalid_argument("branched_module: need one meridian per component");
  PolyMatrix out(m + n, g + n, n);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < g; ++c) out(r, c) = del2(r, c);
  for (std::size_t i = 0; i < n; ++i) {
    if (meridians[i] >= g) throw std::invalid_argument("branched_module: meridian column out of range");
    out(m + i, meridians[i]) = LaurentPoly::constant(n, 1);
    out(m + i, g + i) = LaurentPoly::constant(n, 1) - LaurentPoly::variable(n, i);
  }
  return PresentedModule(std::move(out));
}

PresentedModule branched_module(const GroupPresentation& p) {
  std::vector<std::size_t> meridians;
  for (std::size_t i = 0; i < p.nvars; ++i) {
    const LaurentPoly ti = LaurentPoly::variable(p.nvars, i);
    auto it = std::find(p.rho.begin(), p.rho.end(), ti);
    if (it == p.rho.end()) throw std::invalid_argument("branched_module: no generator maps to t" + std::to_string(i + 1));
    meridians.push_back(static_cast<std::size_t>(it - p.rho.begin()));
  }
  return branched_module(alexander_complex(p).boundary(2), p.nvars, meridians);
}

// ---------------------------------------------------------------------------
// Presentation text format

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

std::vector<std::string> words_of(std::string_view s) {
  std::istringstream is{std::string(s)};
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

}  // namespace

GroupPresentation GroupPresentation::parse(std::string_view text) {
  GroupPresentation p;
  std::size_t declared_vars = 0;
  std::vector<std::pair<std::string, std::string>> rho_text;
  std::vector<std::string> rel_text;
  std::istringstream in{std::string(text)};
  std::size_t lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string t = trim(line);
    if (t.empty()) continue;
    auto colon = t.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("presentation line " + std::to_string(lineno) + ": expected 'key: value'");
    std::string key = trim(std::string_view(t).substr(0, colon));
    std::string value = trim(std::string_view(t).substr(colon + 1));
    if (key == "vars") {
      declared_vars = std::stoul(value);
      if (declared_vars == 0) throw std::invalid_argument("presentation: vars must be positive");
    } else if (key == "gens") {
      if (!p.gens.empty()) throw std::invalid_argument("presentation: duplicate gens line");
      p.gens = words_of(value);
    } else if (key == "rho") {
      for (const auto& item : split(value, ',')) {
        auto arrow = item.find("->");
        if (arrow == std::string::npos) throw std::invalid_argument("presentation line " + std::to_string(lineno) + ": expected 'gen -> monomial'");
        rho_text.emplace_back(trim(std::string_view(item).substr(0, arrow)), trim(std::string_view(item).substr(arrow + 2)));
      }
    } else if (key == "rel") {
      rel_text.push_back(value);
    } else {
      throw std::invalid_argument("presentation line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  if (p.gens.empty()) throw std::invalid_argument("presentation: missing gens line");
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < p.gens.size(); ++i) {
    if (!index.emplace(p.gens[i], i).second) throw std::invalid_argument("presentation: duplicate generator " + p.gens[i]);
  }

  std::size_t nv = declared_vars;
  if (nv == 0) {
    nv = 1;
    for (const auto& [g, m] : rho_text) nv = std::max(nv, parse_poly(m).nvars());
  }
  p.nvars = nv;
  p.rho.assign(p.gens.size(), LaurentPoly(nv));
  std::vector<char> assigned(p.gens.size(), 0);
  for (const auto& [g, m] : rho_text) {
    auto it = index.find(g);
    if (it == index.end()) throw std::invalid_argument("presentation: rho for unknown generator " + g);
    LaurentPoly img = parse_poly(m, nv);
    if (!img.is_monomial() || abs(img.leading_coeff()) != 1) throw std::invalid_argument("presentation: rho(" + g + ") is not a monomial");
    p.rho[it->second] = img;
    assigned[it->second] = 1;
  }
  for (std::size_t i = 0; i < p.gens.size(); ++i) {
    if (!assigned[i]) throw std::invalid_argument("presentation: rho undefined on " + p.gens[i]);
  }

  for (const auto& r : rel_text) {
    Word w;
    for (const auto& tok : words_of(r)) {
      std::string name = tok;
      long power = 1;
      if (auto caret = tok.find('^'); caret != std::string::npos) {
        name = tok.substr(0, caret);
        std::size_t used = 0;
        const std::string ptxt = tok.substr(caret + 1);
        try {
          power = std::stol(ptxt, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used == 0 || used != ptxt.size()) throw std::invalid_argument("presentation: malformed power in '" + tok + "'");
      }
      auto it = index.find(name);
      if (it == index.end()) throw std::invalid_argument("presentation: relator uses unknown generator '" + name + "'");
      const int letter = static_cast<int>(it->second) + 1;
      for (long k = 0; k < std::labs(power); ++k) w.push_back(power > 0 ? letter : -letter);
    }
    p.relators.push_back(free_reduce(w));
  }
  return p;
}

GroupPresentation GroupPresentation::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open presentation file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

std::string GroupPresentation::word_to_string(const Word& w) const {
  std::string out;
  for (int x : w) {
    if (!out.empty()) out += ' ';
    out += gens.at(static_cast<std::size_t>(std::abs(x)) - 1);
    if (x < 0) out += "^-1";
  }
  return out.empty() ? "1" : out;
}

}  // namespace torsionlab
