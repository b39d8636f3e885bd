#include "torsionlab/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace torsionlab {

// ---------------------------------------------------------------------------
// LaurentPoly

LaurentPoly::LaurentPoly(std::size_t nvars) : nvars_(nvars) {
  if (nvars == 0) throw std::invalid_argument("LaurentPoly needs at least one variable");
}

LaurentPoly::LaurentPoly(std::size_t nvars, TermMap terms) : LaurentPoly(nvars) {
  for (auto& [e, c] : terms) {
    if (e.size() != nvars) throw std::invalid_argument("exponent length does not match nvars");
    if (c != 0) terms_.emplace(e, std::move(c));
  }
}

LaurentPoly LaurentPoly::constant(std::size_t nvars, const BigInt& c) {
  LaurentPoly p(nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

LaurentPoly LaurentPoly::monomial(const Exponent& e, const BigInt& c) {
  LaurentPoly p(e.size());
  p.add_term(e, c);
  return p;
}

LaurentPoly LaurentPoly::variable(std::size_t nvars, std::size_t i, std::int64_t power) {
  if (i >= nvars) throw std::out_of_range("variable index out of range");
  Exponent e(nvars, 0);
  e[i] = power;
  return monomial(e);
}

bool LaurentPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() != 1) return false;
  const Exponent& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](std::int64_t x) { return x == 0; });
}

BigInt LaurentPoly::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? BigInt(0) : it->second;
}

const Exponent& LaurentPoly::leading_exponent() const {
  if (terms_.empty()) throw std::domain_error("zero polynomial has no leading term");
  return terms_.rbegin()->first;
}

const BigInt& LaurentPoly::leading_coeff() const {
  if (terms_.empty()) throw std::domain_error("zero polynomial has no leading term");
  return terms_.rbegin()->second;
}

std::int64_t LaurentPoly::min_exponent(std::size_t var) const {
  if (terms_.empty()) throw std::domain_error("zero polynomial has no exponents");
  std::int64_t m = std::numeric_limits<std::int64_t>::max();
  for (const auto& [e, c] : terms_) m = std::min(m, e[var]);
  return m;
}

std::int64_t LaurentPoly::max_exponent(std::size_t var) const {
  if (terms_.empty()) throw std::domain_error("zero polynomial has no exponents");
  std::int64_t m = std::numeric_limits<std::int64_t>::min();
  for (const auto& [e, c] : terms_) m = std::max(m, e[var]);
  return m;
}

void LaurentPoly::add_term(const Exponent& e, const BigInt& c) {
  if (e.size() != nvars_) throw std::invalid_argument("exponent length does not match nvars");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPoly LaurentPoly::shifted(const Exponent& by) const {
  if (by.size() != nvars_) throw std::invalid_argument("shift length does not match nvars");
  LaurentPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    Exponent s = e;
    for (std::size_t i = 0; i < nvars_; ++i) s[i] += by[i];
    r.terms_.emplace_hint(r.terms_.end(), std::move(s), c);
  }
  return r;
}

void LaurentPoly::check_same_ring(const LaurentPoly& other) const {
  if (nvars_ != other.nvars_) throw std::invalid_argument("polynomials live in different rings");
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
  check_same_ring(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& other) {
  check_same_ring(other);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  a.check_same_ring(b);
  LaurentPoly r(a.nvars_);
  Exponent s(a.nvars_);
  BigInt prod;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < a.nvars_; ++i) s[i] = ea[i] + eb[i];
      mpz_mul(prod.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
      r.add_term(s, prod);
    }
  }
  return r;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& other) {
  *this = *this * other;
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const BigInt& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= scalar;
  return *this;
}

namespace {

std::string var_name(std::size_t nvars, std::size_t i) {
  return nvars == 1 ? std::string("t") : "t" + std::to_string(i + 1);
}

}  // namespace

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    bool unit_exp = std::all_of(e.begin(), e.end(), [](std::int64_t x) { return x == 0; });
    BigInt mag = big_abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (mag != 1 || unit_exp) {
      os << mag.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << "*";
      os << var_name(nvars_, i);
      if (e[i] != 1) os << "^" << e[i];
      wrote = true;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Unit normalization

bool UnitNormalForm::is_one() const {
  return poly_.is_constant() && !poly_.is_zero() && poly_.leading_coeff() == 1;
}

UnitNormalForm normalize_unit(const LaurentPoly& f) {
  if (f.is_zero()) return UnitNormalForm(f);
  Exponent shift(f.nvars());
  for (std::size_t i = 0; i < f.nvars(); ++i) shift[i] = -f.min_exponent(i);
  LaurentPoly g = f.shifted(shift);
  if (g.leading_coeff() < 0) g = -g;
  return UnitNormalForm(std::move(g));
}

// ---------------------------------------------------------------------------
// Scalar helpers

BigInt content(const LaurentPoly& f) {
  BigInt g = 0;
  for (const auto& [e, c] : f.terms()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

LaurentPoly primitive_part(const LaurentPoly& f) {
  if (f.is_zero()) return f;
  BigInt c = content(f);
  LaurentPoly r(f.nvars());
  for (const auto& [e, v] : f.terms()) {
    BigInt q;
    mpz_divexact(q.get_mpz_t(), v.get_mpz_t(), c.get_mpz_t());
    r.add_term(e, q);
  }
  return r;
}

BigInt one_norm(const LaurentPoly& f) {
  BigInt s = 0;
  for (const auto& [e, c] : f.terms()) s += big_abs(c);
  return s;
}

LaurentPoly tau(const LaurentPoly& f, std::span<const std::int64_t> k) {
  if (k.size() != f.nvars()) throw std::invalid_argument("tau: k has wrong length");
  LaurentPoly r(1);
  for (const auto& [e, c] : f.terms()) {
    std::int64_t d = 0;
    for (std::size_t i = 0; i < k.size(); ++i) d += e[i] * k[i];
    r.add_term(Exponent{d}, c);
  }
  return r;
}

LaurentPoly derivative(const LaurentPoly& f, std::size_t var) {
  if (var >= f.nvars()) throw std::out_of_range("derivative: variable out of range");
  LaurentPoly r(f.nvars());
  for (const auto& [e, c] : f.terms()) {
    if (e[var] == 0) continue;
    Exponent d = e;
    d[var] -= 1;
    r.add_term(d, c * BigInt(static_cast<long>(e[var])));
  }
  return r;
}

LaurentPoly pow(const LaurentPoly& f, unsigned exponent) {
  LaurentPoly result = LaurentPoly::constant(f.nvars(), 1);
  LaurentPoly base = f;
  while (exponent != 0) {
    if (exponent & 1u) result *= base;
    exponent >>= 1;
    if (exponent != 0) base = base * base;
  }
  return result;
}

LaurentPoly cyclotomic(std::int64_t d) {
  if (d < 1) throw std::invalid_argument("cyclotomic: order must be positive");
  // Phi_d = prod_{e | d} (t^e - 1)^mu(d/e).
  LaurentPoly num = LaurentPoly::constant(1, 1), den = LaurentPoly::constant(1, 1);
  for (std::int64_t e = 1; e <= d; ++e) {
    if (d % e != 0) continue;
    std::int64_t m = d / e;
    int mu = 1;
    for (std::int64_t q = 2; q * q <= m; ++q) {
      if (m % q != 0) continue;
      m /= q;
      if (m % q == 0) {
        mu = 0;
        break;
      }
      mu = -mu;
    }
    if (mu == 0) continue;
    if (m > 1) mu = -mu;
    const LaurentPoly b = LaurentPoly::variable(1, 0, e) - LaurentPoly::constant(1, 1);
    (mu == 1 ? num : den) *= b;
  }
  return normalize_unit(*divide_exact(num, den)).poly();
}

// ---------------------------------------------------------------------------
// Polynomial (non-negative exponent) machinery behind gcd and exact division.

namespace {

/// Exact division of polynomials with non-negative exponents, lex-leading term
/// first. Returns nullopt as soon as a leading term fails to divide.
std::optional<LaurentPoly> poly_divide(const LaurentPoly& f, const LaurentPoly& g) {
  if (g.is_zero()) throw std::domain_error("division by zero polynomial");
  const std::size_t n = f.nvars();
  LaurentPoly q(n);
  if (f.is_zero()) return q;
  if (g.is_constant()) {
    const BigInt& d = g.leading_coeff();
    for (const auto& [e, c] : f.terms()) {
      if (!mpz_divisible_p(c.get_mpz_t(), d.get_mpz_t())) return std::nullopt;
      BigInt t;
      mpz_divexact(t.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
      q.add_term(e, t);
    }
    return q;
  }
  LaurentPoly r = f;
  const Exponent& lg = g.leading_exponent();
  const BigInt& cg = g.leading_coeff();
  Exponent qe(n);
  BigInt qc;
  while (!r.is_zero()) {
    const Exponent& lr = r.leading_exponent();
    for (std::size_t i = 0; i < n; ++i) {
      qe[i] = lr[i] - lg[i];
      if (qe[i] < 0) return std::nullopt;
    }
    const BigInt& cr = r.leading_coeff();
    if (!mpz_divisible_p(cr.get_mpz_t(), cg.get_mpz_t())) return std::nullopt;
    mpz_divexact(qc.get_mpz_t(), cr.get_mpz_t(), cg.get_mpz_t());
    q.add_term(qe, qc);
    r -= g.shifted(qe) * qc;
  }
  return q;
}

LaurentPoly poly_divide_exact(const LaurentPoly& f, const LaurentPoly& g) {
  auto q = poly_divide(f, g);
  if (!q) throw std::logic_error("internal: expected exact polynomial division");
  return *std::move(q);
}

std::int64_t degree_in(const LaurentPoly& f, std::size_t var) {
  return f.is_zero() ? -1 : f.max_exponent(var);
}

/// Coefficients of f as a polynomial in var; each coefficient has var-exponent 0.
std::map<std::int64_t, LaurentPoly> split(const LaurentPoly& f, std::size_t var) {
  std::map<std::int64_t, LaurentPoly> out;
  for (const auto& [e, c] : f.terms()) {
    Exponent rest = e;
    rest[var] = 0;
    auto [it, ins] = out.try_emplace(e[var], f.nvars());
    it->second.add_term(rest, c);
  }
  return out;
}

LaurentPoly lead_coeff_in(const LaurentPoly& f, std::size_t var) {
  std::int64_t d = degree_in(f, var);
  LaurentPoly r(f.nvars());
  for (const auto& [e, c] : f.terms()) {
    if (e[var] != d) continue;
    Exponent rest = e;
    rest[var] = 0;
    r.add_term(rest, c);
  }
  return r;
}

LaurentPoly x_power(std::size_t nvars, std::size_t var, std::int64_t d) {
  return LaurentPoly::variable(nvars, var, d);
}

/// Pseudo-remainder of a by b with respect to var.
LaurentPoly pseudo_remainder(const LaurentPoly& a, const LaurentPoly& b, std::size_t var) {
  const std::int64_t db = degree_in(b, var);
  LaurentPoly lb = lead_coeff_in(b, var);
  LaurentPoly r = a;
  std::int64_t e = degree_in(a, var) - db + 1;
  while (!r.is_zero() && degree_in(r, var) >= db) {
    LaurentPoly s = lead_coeff_in(r, var) * x_power(a.nvars(), var, degree_in(r, var) - db);
    r = lb * r - s * b;
    --e;
  }
  if (e > 0) r *= pow(lb, static_cast<unsigned>(e));
  return r;
}

LaurentPoly poly_gcd(const LaurentPoly& f, const LaurentPoly& g, std::size_t level);

/// gcd of the coefficients of f viewed as a polynomial in var = level - 1.
LaurentPoly content_in(const LaurentPoly& f, std::size_t level) {
  LaurentPoly c(f.nvars());
  for (auto& [d, coeff] : split(f, level - 1)) {
    c = poly_gcd(c, coeff, level - 1);
    if (c.is_constant() && !c.is_zero() && big_abs(c.leading_coeff()) == 1) break;
  }
  return c;
}

/// gcd of polynomials in which only variables 0..level-1 occur. Sign unnormalized.
LaurentPoly poly_gcd(const LaurentPoly& f, const LaurentPoly& g, std::size_t level) {
  const std::size_t n = f.nvars();
  if (f.is_zero()) return g;
  if (g.is_zero()) return f;
  if (level == 0) return LaurentPoly::constant(n, big_gcd(f.leading_coeff(), g.leading_coeff()));
  const std::size_t x = level - 1;
  if (degree_in(f, x) == 0 && degree_in(g, x) == 0) return poly_gcd(f, g, level - 1);

  LaurentPoly cf = content_in(f, level);
  LaurentPoly cg = content_in(g, level);
  LaurentPoly c = poly_gcd(cf, cg, level - 1);
  LaurentPoly a = poly_divide_exact(f, cf);
  LaurentPoly b = poly_divide_exact(g, cg);
  if (degree_in(a, x) < degree_in(b, x)) std::swap(a, b);
  if (degree_in(b, x) == 0) return c;

  // Subresultant polynomial remainder sequence.
  LaurentPoly gs = LaurentPoly::constant(n, 1);
  LaurentPoly hs = LaurentPoly::constant(n, 1);
  while (true) {
    const std::int64_t delta = degree_in(a, x) - degree_in(b, x);
    LaurentPoly r = pseudo_remainder(a, b, x);
    if (r.is_zero()) break;
    if (degree_in(r, x) == 0) return c;
    a = std::move(b);
    b = poly_divide_exact(r, gs * pow(hs, static_cast<unsigned>(delta)));
    gs = lead_coeff_in(a, x);
    if (delta > 0) {
      hs = poly_divide_exact(pow(gs, static_cast<unsigned>(delta)),
                             pow(hs, static_cast<unsigned>(delta - 1)));
    }
  }
  return c * poly_divide_exact(b, content_in(b, level));
}

}  // namespace

UnitNormalForm gcd(const LaurentPoly& f, const LaurentPoly& g) {
  if (f.nvars() != g.nvars()) throw std::invalid_argument("gcd: polynomials live in different rings");
  if (g.is_zero()) return normalize_unit(f);
  if (f.is_zero()) return normalize_unit(g);
  UnitNormalForm nf = normalize_unit(f);
  UnitNormalForm ng = normalize_unit(g);
  return normalize_unit(poly_gcd(nf.poly(), ng.poly(), f.nvars()));
}

std::optional<LaurentPoly> divide_exact(const LaurentPoly& f, const LaurentPoly& g) {
  if (f.nvars() != g.nvars()) throw std::invalid_argument("divide_exact: different rings");
  if (g.is_zero()) throw std::domain_error("division by zero polynomial");
  if (f.is_zero()) return LaurentPoly(f.nvars());
  const std::size_t n = f.nvars();
  Exponent sf(n), sg(n), back(n);
  for (std::size_t i = 0; i < n; ++i) {
    sf[i] = -f.min_exponent(i);
    sg[i] = -g.min_exponent(i);
    back[i] = sg[i] - sf[i];
  }
  auto q = poly_divide(f.shifted(sf), g.shifted(sg));
  if (!q) return std::nullopt;
  return q->shifted(back);
}

// ---------------------------------------------------------------------------
// Evaluation

Evaluation evaluate_with_bound(const LaurentPoly& f, std::span<const std::complex<double>> z) {
  if (z.size() != f.nvars()) throw std::invalid_argument("evaluate: point has wrong dimension");
  for (const auto& zi : z) {
    if (zi == std::complex<double>(0.0, 0.0)) throw std::domain_error("evaluate: zero coordinate");
  }
  std::complex<double> sum = 0.0;
  double magnitude = 0.0;
  std::int64_t max_deg = 0;
  for (const auto& [e, c] : f.terms()) {
    std::complex<double> term = c.get_d();
    std::int64_t deg = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] != 0) term *= std::pow(z[i], static_cast<int>(e[i]));
      deg += std::abs(e[i]);
    }
    max_deg = std::max(max_deg, deg);
    sum += term;
    magnitude += std::abs(term);
  }
  const double eps = std::numeric_limits<double>::epsilon();
  double scale = static_cast<double>(f.size() + static_cast<std::size_t>(max_deg) + 2);
  return {sum, 2.0 * scale * eps * magnitude};
}

std::complex<double> evaluate(const LaurentPoly& f, std::span<const std::complex<double>> z) {
  return evaluate_with_bound(f, z).value;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, std::size_t nvars) : text_(text), nvars_(nvars) {}

  LaurentPoly parse() {
    if (nvars_ == 0) nvars_ = std::max<std::size_t>(1, scan_max_variable());
    LaurentPoly p = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("parse_poly: " + what + " at position " + std::to_string(pos_) +
                                " in \"" + std::string(text_) + "\"");
  }

  std::size_t scan_max_variable() const {
    std::size_t best = 0;
    for (std::size_t i = 0; i < text_.size(); ++i) {
      if (text_[i] != 't') continue;
      std::size_t j = i + 1;
      std::size_t idx = 0;
      while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) {
        idx = idx * 10 + static_cast<std::size_t>(text_[j] - '0');
        ++j;
      }
      best = std::max(best, j == i + 1 ? std::size_t{1} : idx);
    }
    return best;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  LaurentPoly expr() {
    LaurentPoly acc(nvars_);
    bool negate = false;
    if (peek('-')) {
      negate = true;
      ++pos_;
    } else if (peek('+')) {
      ++pos_;
    }
    LaurentPoly t = term();
    acc += negate ? -t : t;
    while (true) {
      if (peek('+')) {
        ++pos_;
        acc += term();
      } else if (peek('-')) {
        ++pos_;
        acc -= term();
      } else {
        break;
      }
    }
    return acc;
  }

  bool starts_factor() {
    skip_space();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return c == '(' || c == 't' || std::isdigit(static_cast<unsigned char>(c));
  }

  LaurentPoly term() {
    LaurentPoly acc = factor();
    while (true) {
      if (peek('*')) {
        ++pos_;
        acc *= factor();
      } else if (starts_factor()) {
        acc *= factor();
      } else {
        break;
      }
    }
    return acc;
  }

  std::int64_t signed_int() {
    skip_space();
    bool neg = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      neg = text_[pos_] == '-';
      ++pos_;
    }
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      fail("expected integer exponent");
    }
    std::int64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      ++pos_;
    }
    return neg ? -v : v;
  }

  LaurentPoly factor() {
    LaurentPoly b = base();
    if (peek('^')) {
      ++pos_;
      bool paren = peek('(');
      if (paren) ++pos_;
      std::int64_t e = signed_int();
      if (paren) {
        if (!peek(')')) fail("expected ')'");
        ++pos_;
      }
      if (e >= 0) return pow(b, static_cast<unsigned>(e));
      if (!b.is_monomial() || big_abs(b.leading_coeff()) != 1) {
        fail("negative power of a non-unit");
      }
      Exponent inv = b.leading_exponent();
      for (auto& x : inv) x = -x * (-e);
      return LaurentPoly::monomial(inv, (-e) % 2 == 0 ? BigInt(1) : BigInt(b.leading_coeff()));
    }
    return b;
  }

  LaurentPoly base() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      LaurentPoly inner = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return LaurentPoly::constant(nvars_, BigInt(std::string(text_.substr(start, pos_ - start))));
    }
    if (c == 't') {
      ++pos_;
      std::size_t idx = 0;
      bool has_digits = false;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        idx = idx * 10 + static_cast<std::size_t>(text_[pos_] - '0');
        has_digits = true;
        ++pos_;
      }
      if (!has_digits) idx = 1;
      if (idx == 0 || idx > nvars_) fail("variable index out of range");
      return LaurentPoly::variable(nvars_, idx - 1);
    }
    fail("unexpected character");
  }

  std::string_view text_;
  std::size_t nvars_;
  std::size_t pos_ = 0;
};

}  // namespace

LaurentPoly parse_poly(std::string_view text, std::size_t nvars) {
  return PolyParser(text, nvars).parse();
}

}  // namespace torsionlab
