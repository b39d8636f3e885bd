#pragma once

// Additive Mahler measure m(f) = integral of log|f| over the unit torus.

#include "torsionlab/lattices.hpp"
#include "torsionlab/laurent.hpp"

#include "json.hpp"

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace torsionlab {

struct MahlerEstimate {
  double value = 0;
  std::string method;  // "jensen", "lawton" or "quadrature"
  double error_bound = 0;
  nlohmann::json diagnostics = nlohmann::json::object();

  nlohmann::json to_json() const;
};

/// Roots of a squarefree polynomial with inclusion radii.
struct RootEnclosure {
  std::vector<std::complex<long double>> roots;
  /// Radius of each Weierstrass inclusion disk.
  std::vector<long double> radius;
  /// Connected component id of each disk; a component of m disks holds m roots.
  std::vector<std::size_t> component;
  int iterations = 0;
  bool converged = false;
};

/// Aberth iteration on coefficients c[0..n] (c[n] != 0, c[0] != 0), followed by
/// Weierstrass-correction inclusion disks that account for rounding in the
/// residual evaluation.
RootEnclosure aberth_roots(const std::vector<BigInt>& coeffs, int max_iterations = 500);

/// Jensen's formula after exact squarefree decomposition. Throws
/// std::runtime_error if the certified error exceeds tol.
MahlerEstimate mahler_univariate(const LaurentPoly& f, double tol = 1e-9);

/// Default k-schedule: (1, m, ..., m^(n-1)) for m = 10, 20, 40, 80, dropping
/// entries whose tau_k image would exceed max_degree (the first is always kept).
std::vector<IntVec> default_lawton_schedule(const LaurentPoly& f, std::int64_t max_degree = 2000);

/// m(tau_k f) along the schedule. The value is the last point; error_bound is the
/// largest pairwise gap among the last three points plus the last root error.
MahlerEstimate mahler_lawton(const LaurentPoly& f, const std::vector<IntVec>& schedule);
inline MahlerEstimate mahler_lawton(const LaurentPoly& f) { return mahler_lawton(f, default_lawton_schedule(f)); }

/// Median of group means of log|f| at pseudo-random torus points. error_bound is
/// the standard deviation of the group means. Deterministic in (samples, seed, groups).
MahlerEstimate mahler_quadrature(const LaurentPoly& f, std::uint64_t samples, std::uint64_t seed, unsigned groups = 32);

/// True iff f is a unit times a product of cyclotomic polynomials (univariate).
bool is_kronecker(const LaurentPoly& f);

/// Squarefree decomposition f = c * prod g_i^i with g_i primitive and squarefree.
/// Entry i-1 holds g_i (possibly constant 1). f must be univariate and nonzero; the
/// monomial part is discarded.
struct SquarefreeFactors {
  BigInt content;
  std::vector<LaurentPoly> factors;
};
SquarefreeFactors squarefree_decomposition(const LaurentPoly& f);

struct MahlerOptions {
  std::string method = "auto";  // auto | jensen | lawton | quadrature
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 1;
  std::vector<IntVec> schedule;  // empty: default Lawton schedule
  double tol = 1e-9;
};

/// Dispatch on options.method; auto picks jensen for one variable, lawton otherwise.
MahlerEstimate mahler(const LaurentPoly& f, const MahlerOptions& options = {});

}  // namespace torsionlab
