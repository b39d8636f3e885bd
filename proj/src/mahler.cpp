#include "torsionlab/mahler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace torsionlab {

using cld = std::complex<long double>;

nlohmann::json MahlerEstimate::to_json() const {
  return {{"value", value}, {"method", method}, {"error_bound", error_bound}, {"diagnostics", diagnostics}};
}

// ---------------------------------------------------------------------------
// Squarefree decomposition

namespace {

/// Shift to min exponent 0 and drop the sign; univariate.
LaurentPoly normalized_univariate(const LaurentPoly& f) { return normalize_unit(f).poly(); }

LaurentPoly quotient(const LaurentPoly& f, const LaurentPoly& g) {
  auto q = divide_exact(f, g);
  if (!q) throw std::logic_error("squarefree decomposition: inexact division");
  return *q;
}

}  // namespace

SquarefreeFactors squarefree_decomposition(const LaurentPoly& f) {
  if (f.nvars() != 1) throw std::invalid_argument("squarefree_decomposition: polynomial must be univariate");
  if (f.is_zero()) throw std::invalid_argument("squarefree_decomposition: zero polynomial");
  SquarefreeFactors out;
  out.content = content(f);
  LaurentPoly p = normalized_univariate(primitive_part(f));
  if (p.is_constant()) return out;
  // Yun's algorithm. Every polynomial below has a nonzero constant term, so the
  // unit-normalized gcds agree with the true gcds up to sign, which cancels.
  LaurentPoly dp = derivative(p, 0);
  LaurentPoly a = gcd(p, dp).poly();
  LaurentPoly b = quotient(p, a);
  LaurentPoly c = quotient(dp, a);
  LaurentPoly d = c - derivative(b, 0);
  while (!b.is_constant()) {
    LaurentPoly g = gcd(b, d).poly();
    out.factors.push_back(g);
    b = quotient(b, g);
    c = quotient(d, g);
    d = c - derivative(b, 0);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Aberth iteration with inclusion disks

namespace {

long double ld_of(const BigInt& x) {
  long e = 0;
  double m = mpz_get_d_2exp(&e, x.get_mpz_t());
  return std::ldexp(static_cast<long double>(m), static_cast<int>(e));
}

/// Newton ratio p(z)/p'(z), using the reversed polynomial outside the unit disk.
cld newton_ratio(const std::vector<long double>& c, cld z) {
  const std::size_t n = c.size() - 1;
  if (std::abs(z) <= 1.0L) {
    cld p = c[n], dp = 0;
    for (std::size_t i = n; i-- > 0;) {
      dp = dp * z + p;
      p = p * z + c[i];
    }
    return p / dp;
  }
  // p(z) = z^n r(w), w = 1/z, r(w) = sum c_i w^(n-i); p'(z) = z^(n-1) (n r(w) - w r'(w)).
  cld w = 1.0L / z;
  cld r = c[0], dr = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    dr = dr * w + r;
    r = r * w + c[i];
  }
  return z * r / (static_cast<long double>(n) * r - w * dr);
}

/// log|p(z)| and log of a rounding bound for its evaluation.
std::pair<long double, long double> log_residual(const std::vector<long double>& c, cld z) {
  const std::size_t n = c.size() - 1;
  const long double eps = std::numeric_limits<long double>::epsilon();
  const long double gamma = (2.0L * static_cast<long double>(n) + 2.0L) * eps;
  const long double az = std::abs(z);
  if (az <= 1.0L) {
    cld p = c[n];
    long double bound = std::fabs(c[n]);
    for (std::size_t i = n; i-- > 0;) {
      p = p * z + c[i];
      bound = bound * az + std::fabs(c[i]);
    }
    return {std::log(std::abs(p)), std::log(gamma * bound)};
  }
  cld w = 1.0L / z;
  const long double aw = std::abs(w);
  cld r = c[0];
  long double bound = std::fabs(c[0]);
  for (std::size_t i = 1; i <= n; ++i) {
    r = r * w + c[i];
    bound = bound * aw + std::fabs(c[i]);
  }
  const long double shift = static_cast<long double>(n) * std::log(az);
  return {std::log(std::abs(r)) + shift, std::log(gamma * bound) + shift};
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace

RootEnclosure aberth_roots(const std::vector<BigInt>& coeffs, int max_iterations) {
  if (coeffs.size() < 2) throw std::invalid_argument("aberth_roots: degree must be positive");
  if (sgn(coeffs.back()) == 0 || sgn(coeffs.front()) == 0) throw std::invalid_argument("aberth_roots: leading and constant coefficients must be nonzero");
  const std::size_t n = coeffs.size() - 1;
  std::vector<long double> c(n + 1);
  for (std::size_t i = 0; i <= n; ++i) c[i] = ld_of(coeffs[i]);

  RootEnclosure out;
  out.roots.resize(n);
  // Start on a circle of radius |c0/cn|^(1/n), rotated off the real axis.
  const long double rad = std::pow(std::fabs(c[0] / c[n]), 1.0L / static_cast<long double>(n));
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  for (std::size_t j = 0; j < n; ++j) {
    out.roots[j] = std::polar(rad, two_pi * static_cast<long double>(j) / static_cast<long double>(n) + 0.4L);
  }
  const long double eps = std::numeric_limits<long double>::epsilon();
  std::vector<char> done(n, 0);
  for (out.iterations = 0; out.iterations < max_iterations; ++out.iterations) {
    bool all_done = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (done[j]) continue;
      cld& z = out.roots[j];
      cld ratio = newton_ratio(c, z);
      if (!std::isfinite(ratio.real()) || !std::isfinite(ratio.imag())) {
        z *= cld(1.0L + 1e-6L, 1e-6L);
        all_done = false;
        continue;
      }
      cld s = 0;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) s += 1.0L / (z - out.roots[k]);
      cld step = ratio / (1.0L - ratio * s);
      z -= step;
      if (std::abs(step) <= 8.0L * eps * std::max(1.0L, std::abs(z))) {
        done[j] = 1;
      } else {
        all_done = false;
      }
    }
    if (all_done) {
      out.converged = true;
      break;
    }
  }

  // Weierstrass disks: |z_j - root| <= n |p(z_j)| / (|c_n| prod_{k != j} |z_j - z_k|)
  // holds for a set of roots after grouping overlapping disks.
  out.radius.resize(n);
  const long double log_n = std::log(static_cast<long double>(n));
  for (std::size_t j = 0; j < n; ++j) {
    auto [lp, lb] = log_residual(c, out.roots[j]);
    long double lnum = std::max(lp, lb) + std::log1p(std::exp(std::min(lp, lb) - std::max(lp, lb)));
    long double lden = std::log(std::fabs(c[n]));
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) lden += std::log(std::abs(out.roots[j] - out.roots[k]));
    out.radius[j] = std::exp(log_n + lnum - lden);
    if (!std::isfinite(out.radius[j])) out.radius[j] = std::numeric_limits<long double>::infinity();
  }
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i + 1; k < n; ++k)
      if (std::abs(out.roots[i] - out.roots[k]) <= out.radius[i] + out.radius[k]) parent[find_root(parent, i)] = find_root(parent, k);
  out.component.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.component[i] = find_root(parent, i);
  return out;
}

// ---------------------------------------------------------------------------
// Jensen

namespace {

struct JensenPart {
  long double value = 0;
  long double error = 0;
  int iterations = 0;
  long double max_radius = 0;
  std::size_t max_cluster = 0;
  bool converged = true;
};

/// log|lead| + sum log max(1, |root|) for a squarefree polynomial with nonzero
/// constant term.
JensenPart jensen_squarefree(const LaurentPoly& g) {
  JensenPart part;
  const std::int64_t deg = g.max_exponent(0);
  std::vector<BigInt> c(static_cast<std::size_t>(deg) + 1, BigInt(0));
  for (const auto& [e, coef] : g.terms()) c[static_cast<std::size_t>(e[0])] = coef;
  part.value = static_cast<long double>(log_abs(c.back()));
  if (deg == 0) return part;
  RootEnclosure enc = aberth_roots(c);
  part.iterations = enc.iterations;
  const std::size_t n = enc.roots.size();
  std::vector<long double> hi(n, 0), lo(n, std::numeric_limits<long double>::infinity());
  std::vector<std::size_t> size(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    const long double a = std::abs(enc.roots[j]);
    part.value += std::max(0.0L, std::log(a));
    part.max_radius = std::max(part.max_radius, enc.radius[j]);
    const std::size_t r = enc.component[j];
    hi[r] = std::max(hi[r], a + enc.radius[j]);
    lo[r] = std::min(lo[r], a - enc.radius[j]);
    ++size[r];
  }
  for (std::size_t r = 0; r < n; ++r) {
    if (size[r] == 0) continue;
    part.max_cluster = std::max(part.max_cluster, size[r]);
    const long double top = std::log(std::max(1.0L, hi[r]));
    const long double bottom = lo[r] > 1.0L ? std::log(lo[r]) : 0.0L;
    part.error += static_cast<long double>(size[r]) * (top - bottom);
  }
  // The disks are an a posteriori enclosure; a stalled iteration only shows up
  // as larger radii.
  part.converged = enc.converged;
  return part;
}

MahlerEstimate jensen_estimate(const LaurentPoly& f) {
  if (f.nvars() != 1) throw std::invalid_argument("mahler_univariate: polynomial must be univariate");
  if (f.is_zero()) throw std::invalid_argument("mahler_univariate: zero polynomial");
  MahlerEstimate est;
  est.method = "jensen";
  SquarefreeFactors sf = squarefree_decomposition(f);
  long double value = static_cast<long double>(log_abs(sf.content));
  long double error = 0;
  int iterations = 0;
  long double max_radius = 0;
  std::size_t max_cluster = 0, degree = 0;
  bool converged = true;
  for (std::size_t i = 0; i < sf.factors.size(); ++i) {
    const LaurentPoly& g = sf.factors[i];
    if (g.is_constant()) continue;
    JensenPart part = jensen_squarefree(g);
    const long double mult = static_cast<long double>(i + 1);
    value += mult * part.value;
    error += mult * part.error;
    iterations = std::max(iterations, part.iterations);
    max_radius = std::max(max_radius, part.max_radius);
    max_cluster = std::max(max_cluster, part.max_cluster);
    converged = converged && part.converged;
    degree += static_cast<std::size_t>(g.max_exponent(0)) * (i + 1);
  }
  // Tiny negative values come only from rounding; m(f) >= 0 for integer f.
  est.value = std::max(0.0, static_cast<double>(value));
  est.error_bound = static_cast<double>(error) + 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + est.value);
  est.diagnostics = {{"degree", degree},
                     {"squarefree_factors", sf.factors.size()},
                     {"iterations", iterations},
                     {"max_disk_radius", static_cast<double>(max_radius)},
                     {"max_cluster", max_cluster},
                     {"converged", converged}};
  return est;
}

}  // namespace

MahlerEstimate mahler_univariate(const LaurentPoly& f, double tol) {
  MahlerEstimate est = jensen_estimate(f);
  if (!(est.error_bound <= tol)) {
    throw std::runtime_error("mahler_univariate: certified error " + std::to_string(est.error_bound) + " exceeds tolerance");
  }
  return est;
}

// ---------------------------------------------------------------------------
// Lawton

std::vector<IntVec> default_lawton_schedule(const LaurentPoly& f, std::int64_t max_degree) {
  const std::size_t n = f.nvars();
  if (n == 1) return {IntVec{1}};
  std::vector<IntVec> out;
  for (std::int64_t m : {10, 20, 40, 80}) {
    IntVec k(n);
    std::int64_t p = 1;
    for (std::size_t i = 0; i < n; ++i, p *= m) k[i] = p;
    if (!f.is_zero() && !out.empty()) {
      LaurentPoly t = tau(f, k);
      if (t.max_exponent(0) - t.min_exponent(0) > max_degree) break;
    }
    out.push_back(std::move(k));
  }
  return out;
}

MahlerEstimate mahler_lawton(const LaurentPoly& f, const std::vector<IntVec>& schedule) {
  if (schedule.empty()) throw std::invalid_argument("mahler_lawton: empty schedule");
  if (f.is_zero()) throw std::invalid_argument("mahler_lawton: zero polynomial");
  MahlerEstimate est;
  est.method = "lawton";
  std::vector<double> values, norms, errors;
  nlohmann::json ks = nlohmann::json::array();
  double prev_norm = -1;
  for (const auto& k : schedule) {
    if (k.size() != f.nvars()) throw std::invalid_argument("mahler_lawton: k has wrong length");
    const double norm = perp_norm(k);
    // One variable: perp(k) = 0 and every k is admissible.
    if (f.nvars() > 1 && !(norm > prev_norm)) throw std::invalid_argument("mahler_lawton: schedule must have strictly increasing <k_perp>");
    prev_norm = norm;
    MahlerEstimate e = jensen_estimate(tau(f, k));
    values.push_back(e.value);
    errors.push_back(e.error_bound);
    norms.push_back(norm);
    ks.push_back(k);
  }
  const std::size_t last = values.size() - 1;
  const std::size_t first = values.size() >= 3 ? values.size() - 3 : 0;
  double gap = 0;
  for (std::size_t i = first; i <= last; ++i)
    for (std::size_t j = i + 1; j <= last; ++j) gap = std::max(gap, std::fabs(values[i] - values[j]));
  est.value = values[last];
  est.error_bound = gap + errors[last];
  est.diagnostics = {{"k", ks}, {"perp_norm", norms}, {"values", values}, {"root_error", errors}};
  return est;
}

// ---------------------------------------------------------------------------
// Quadrature

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Uniform [0, 1) keyed by (seed, group, index, coordinate).
double counter_uniform(std::uint64_t seed, std::uint64_t group, std::uint64_t index, std::uint64_t coord) {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ group);
  h = mix64(h ^ index);
  h = mix64(h ^ coord);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace

MahlerEstimate mahler_quadrature(const LaurentPoly& f, std::uint64_t samples, std::uint64_t seed, unsigned groups) {
  if (f.is_zero()) throw std::invalid_argument("mahler_quadrature: zero polynomial");
  if (groups == 0 || samples < groups) throw std::invalid_argument("mahler_quadrature: need at least one sample per group");
  MahlerEstimate est;
  est.method = "quadrature";
  const std::size_t n = f.nvars();
  std::vector<std::pair<std::vector<double>, double>> terms;
  for (const auto& [e, c] : f.terms()) terms.emplace_back(std::vector<double>(e.begin(), e.end()), c.get_d());
  const std::uint64_t per_group = samples / groups;
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<double> means(groups);
  std::uint64_t rejected = 0;
  std::vector<double> theta(n);
  for (unsigned g = 0; g < groups; ++g) {
    double sum = 0;
    std::uint64_t counter = 0;
    for (std::uint64_t s = 0; s < per_group; ++s) {
      while (true) {
        for (std::size_t i = 0; i < n; ++i) theta[i] = counter_uniform(seed, g, counter, i);
        ++counter;
        double re = 0, im = 0;
        for (const auto& [e, c] : terms) {
          double a = 0;
          for (std::size_t i = 0; i < n; ++i) a += e[i] * theta[i];
          a -= std::floor(a);
          re += c * std::cos(two_pi * a);
          im += c * std::sin(two_pi * a);
        }
        const double v = 0.5 * std::log(re * re + im * im);
        if (std::isfinite(v)) {
          sum += v;
          break;
        }
        ++rejected;
      }
    }
    means[g] = sum / static_cast<double>(per_group);
  }
  std::vector<double> sorted = means;
  std::sort(sorted.begin(), sorted.end());
  const double median = groups % 2 ? sorted[groups / 2] : 0.5 * (sorted[groups / 2 - 1] + sorted[groups / 2]);
  double mu = std::accumulate(means.begin(), means.end(), 0.0) / groups;
  double var = 0;
  for (double m : means) var += (m - mu) * (m - mu);
  var = groups > 1 ? var / (groups - 1) : 0;
  est.value = median;
  est.error_bound = std::sqrt(var);
  est.diagnostics = {{"samples", per_group * groups}, {"groups", groups}, {"seed", seed}, {"rejected", rejected}};
  return est;
}

// ---------------------------------------------------------------------------
// Kronecker test

bool is_kronecker(const LaurentPoly& f) {
  if (f.nvars() != 1) throw std::invalid_argument("is_kronecker: polynomial must be univariate");
  if (f.is_zero()) throw std::invalid_argument("is_kronecker: zero polynomial");
  LaurentPoly p = normalized_univariate(f);
  if (abs(p.leading_coeff()) != 1 || abs(p.terms().begin()->second) != 1) return false;
  if (p.is_constant()) return true;
  // A certified positive measure rules the polynomial out.
  MahlerEstimate est = jensen_estimate(p);
  if (est.value - est.error_bound > 0) return false;
  // Otherwise peel cyclotomic factors exactly. Any Phi_d that divides p has
  // phi(d) <= deg p, and phi(d) >= sqrt(d / 2).
  const std::int64_t deg = p.max_exponent(0);
  const std::int64_t dmax = 2 * deg * deg + 2;
  std::vector<std::int64_t> phi(static_cast<std::size_t>(dmax) + 1);
  std::iota(phi.begin(), phi.end(), 0);
  for (std::int64_t i = 2; i <= dmax; ++i) {
    if (phi[static_cast<std::size_t>(i)] != i) continue;
    for (std::int64_t j = i; j <= dmax; j += i) phi[static_cast<std::size_t>(j)] -= phi[static_cast<std::size_t>(j)] / i;
  }
  for (std::int64_t d = 1; d <= dmax && !p.is_constant(); ++d) {
    if (phi[static_cast<std::size_t>(d)] > p.max_exponent(0)) continue;
    const LaurentPoly phi_d = cyclotomic(d);
    while (true) {
      auto q = divide_exact(p, phi_d);
      if (!q) break;
      p = normalized_univariate(*q);
    }
  }
  return p.is_constant();
}

// ---------------------------------------------------------------------------

MahlerEstimate mahler(const LaurentPoly& f, const MahlerOptions& options) {
  std::string method = options.method;
  if (method == "auto") method = f.nvars() == 1 ? "jensen" : "lawton";
  if (method == "jensen") {
    if (f.nvars() != 1) throw std::invalid_argument("jensen method needs a univariate polynomial; use lawton or quadrature");
    return mahler_univariate(f, options.tol);
  }
  if (method == "lawton") return mahler_lawton(f, options.schedule.empty() ? default_lawton_schedule(f) : options.schedule);
  if (method == "quadrature") return mahler_quadrature(f, options.samples, options.seed);
  throw std::invalid_argument("unknown Mahler method '" + options.method + "'");
}

}  // namespace torsionlab
