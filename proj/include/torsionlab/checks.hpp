#pragma once

// Seeded randomized property batteries. Each battery reports how many cases it
// ran and how many failed, with a description of the first failure.

#include <cstdint>
#include <string>
#include <vector>

namespace torsionlab {

struct CheckReport {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;

  bool passed() const { return failures == 0 && cases > 0; }
};

struct CheckOptions {
  std::uint64_t seed = 20240501;
  std::size_t cases = 200;
  /// Largest |A| for the group-algebra batteries.
  std::size_t max_order = 50;
};

CheckReport check_snf_chain(const CheckOptions& o);
CheckReport check_gcd_axioms(const CheckOptions& o);
CheckReport check_normalization(const CheckOptions& o);
CheckReport check_tau_homomorphism(const CheckOptions& o);
CheckReport check_fox_identity(const CheckOptions& o);
CheckReport check_alexander_divisibility(const CheckOptions& o);
/// |Z[A] / (alpha(B) + beta(B))| = |B|^(|A|/|B|), and alpha(B) beta(B) = 0.
CheckReport check_alpha_beta_order(const CheckOptions& o);
/// |Z[A] / (beta(B_1..B_k) + alpha(B_1..B_k))| <= prod |B_j|^(|A|/|B_j|).
CheckReport check_multi_subgroup_bound(const CheckOptions& o);

/// Every battery above, in a fixed order.
std::vector<CheckReport> run_all_checks(const CheckOptions& o);

}  // namespace torsionlab
