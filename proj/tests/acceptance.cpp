// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fail.
// Usage: acceptance [criterion numbers...]

#include "helpers.hpp"
#include "oracles.hpp"

#include "torsionlab/checks.hpp"
#include "torsionlab/groupalg.hpp"
#include "torsionlab/mahler.hpp"
#include "torsionlab/presmod.hpp"
#include "torsionlab/torsion.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

using namespace torsionlab;
using testutil::P;

namespace {

const char* kTrefoil = "gens: x y\nrho: x -> t, y -> t\nrel: x y x y^-1 x^-1 y^-1\n";
const char* kFigureEight = "gens: x y\nrho: x -> t, y -> t\nrel: x^-1 y x y^-1 x y x^-1 y^-1 x y^-1\n";

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double budget_seconds;
  std::function<Outcome()> run;
};

std::string fmt(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

double growth(const PresentedModule& m, const Subgroup& g) {
  TorsionResult r = analyze(m, FinAbGroup(g));
  return log_abs(r.torsion_order) / static_cast<double>(r.index);
}

mpz_class branched_norm(const LaurentPoly& f, std::int64_t l) {
  return abs(oracle::resultant(testutil::to_plain(f), oracle::geometric(l)));
}

Outcome exact_growth() {
  Outcome o;
  PresentedModule m = PresentedModule::cyclic({P("t - 2")});
  int bad = 0;
  for (std::int64_t l = 1; l <= 30; ++l)
    if (torsion_order(m, Subgroup::cyclic(l)) != (BigInt(1) << l) - 1) ++bad;
  const double g50 = growth(m, Subgroup::cyclic(50));
  o.ok = bad == 0 && std::abs(g50 - std::log(2.0)) < 1e-3;
  o.detail = "torsion = 2^l - 1 for l=1..30 (" + std::to_string(30 - bad) + "/30); growth(50) = " + fmt(g50, 9);
  return o;
}

Outcome knot_delta() {
  Outcome o;
  GroupPresentation tp = GroupPresentation::parse(kTrefoil), fp = GroupPresentation::parse(kFigureEight);
  // Fox Jacobians computed by hand.
  const std::vector<LaurentPoly> tref_hand{P("1 - t + t^2"), P("-1 + t - t^2")};
  const std::vector<LaurentPoly> fig8_hand{P("-t^-1 + 3 - t"), P("t^-1 - 3 + t")};
  PolyMatrix td = alexander_complex(tp).boundary(2), fd = alexander_complex(fp).boundary(2);
  bool fox = true;
  for (std::size_t c = 0; c < 2; ++c) fox = fox && td(0, c) == tref_hand[c] && fd(0, c) == fig8_hand[c];
  // Delta_1 of a 1 x 2 matrix is the gcd of its entries.
  UnitNormalForm tref = delta(alexander_module(tp)), fig8 = delta(alexander_module(fp));
  o.ok = fox && tref.poly() == P("t^2 - t + 1") && fig8.poly() == P("t^2 - 3*t + 1") && tref == gcd(tref_hand[0], tref_hand[1]) &&
         fig8 == gcd(fig8_hand[0], fig8_hand[1]);
  o.detail = "Fox matrices match hand calculus: " + std::string(fox ? "yes" : "no") + "; trefoil " + tref.to_string() + ", figure-eight " + fig8.to_string();
  return o;
}

Outcome figure_eight_branched() {
  Outcome o;
  PresentedModule b = branched_module(GroupPresentation::parse(kFigureEight));
  const LaurentPoly d = P("t^2 - 3*t + 1");
  int agree = 0;
  for (std::int64_t l = 2; l <= 30; ++l) {
    BigInt t = torsion_order(b, Subgroup::cyclic(l));
    if (t == cyclic_branched_oracle(d, l) && t == branched_norm(d, l)) ++agree;
  }
  const double g100 = growth(b, Subgroup::cyclic(100));
  o.ok = agree == 29 && std::abs(g100 - 0.962424) < 0.05;
  o.detail = "SNF = product oracle for l=2..30 (" + std::to_string(agree) + "/29); growth(100) = " + fmt(g100) + " vs 0.962424";
  return o;
}

Outcome trefoil_branched() {
  Outcome o;
  PresentedModule b = branched_module(GroupPresentation::parse(kTrefoil));
  const LaurentPoly d = P("t^2 - t + 1");
  std::ostringstream got, orc;
  bool ok = true;
  for (std::int64_t l = 2; l <= 8; ++l) {
    TorsionResult r = analyze(b, FinAbGroup(Subgroup::cyclic(l)));
    const mpz_class norm = branched_norm(d, l);
    got << (l > 2 ? "," : "") << to_decimal(r.torsion_order);
    if (norm != 0) {
      orc << (l > 2 ? "," : "") << norm.get_str();
      ok = ok && r.torsion_order == norm && cyclic_branched_oracle(d, l) == norm;
    } else {
      // Delta vanishes at the primitive 6th roots: the product is 0 and the
      // cover has first Betti number 2, so the torsion comes from SNF alone.
      orc << (l > 2 ? "," : "") << "-";
      std::size_t zeros = 0;
      for (std::int64_t j = 1; j < l; ++j)
        if (std::gcd(j, l) * 6 == l) ++zeros;
      ok = ok && r.betti == static_cast<std::size_t>(l) + zeros;
    }
  }
  const double g200 = growth(b, Subgroup::cyclic(200));
  o.ok = ok && g200 < 0.02;
  o.detail = "l=2..8 SNF (" + got.str() + "), oracle (" + orc.str() + "); growth(200) = " + fmt(g200);
  return o;
}

Outcome torus_nonvanishing() {
  Outcome o;
  const LaurentPoly f = P("3 + t1 + t2");
  PresentedModule m = PresentedModule::cyclic({f});
  oracle::Poly a, b;
  testutil::split_linear_t2(f, a, b);
  bool exact = true;
  for (std::int64_t d = 1; d <= 6; ++d) exact = exact && torsion_order(m, Subgroup::diagonal({d, d})) == oracle::diagonal_norm_linear_t2(a, b, d);
  MahlerEstimate q = mahler_quadrature(f, 10'000'000, 1);
  const double g20 = growth(m, Subgroup::diagonal({20, 20}));
  o.ok = exact && q.error_bound < 0.005 && std::abs(g20 - q.value) < 0.02;
  o.detail = "character norms exact for d<=6: " + std::string(exact ? "yes" : "no") + "; growth(20) = " + fmt(g20) + ", quadrature = " + fmt(q.value) + " +- " + fmt(q.error_bound, 2);
  return o;
}

Outcome torus_vanishing() {
  Outcome o;
  const LaurentPoly f = P("1 + t1 + t2");
  MahlerEstimate q = mahler_quadrature(f, 1'000'000, 1);
  const double g16 = growth(PresentedModule::cyclic({f}), Subgroup::diagonal({16, 16}));
  o.ok = std::abs(g16 - q.value) < 0.1 && std::abs(g16 - 0.3231) < 0.1;
  o.detail = "growth(16) = " + fmt(g16) + ", quadrature = " + fmt(q.value);
  return o;
}

Outcome pseudo_zero_invariance() {
  Outcome o;
  PresentedModule m1 = PresentedModule::cyclic({P("3 + t1 + t2")});
  PresentedModule m2 = PresentedModule::direct_sum(m1, PresentedModule::cyclic({P("2", 2), P("t1 - 1", 2)}));
  std::vector<double> gaps;
  std::ostringstream os;
  for (std::int64_t d : {4, 8, 12, 16}) {
    Subgroup g = Subgroup::diagonal({d, d});
    gaps.push_back(std::abs(growth(m1, g) - growth(m2, g)));
    os << (d > 4 ? ", " : "") << "d=" << d << ": " << fmt(gaps.back(), 4);
  }
  o.ok = gaps.back() < 0.05 && gaps.back() < gaps.front();
  o.detail = "gaps " + os.str();
  return o;
}

Outcome alpha_beta_identities() {
  Outcome o;
  std::mt19937_64 rng(20240501);
  int exact = 0, bound = 0, trials = 0;
  while (trials < 20) {
    std::uniform_int_distribution<int> e(1, 20);
    Subgroup sg = rng() % 2 ? Subgroup::diagonal({e(rng), e(rng)}) : Subgroup::cyclic(e(rng) * e(rng));
    auto a = std::make_shared<const FinAbGroup>(sg);
    if (a->order() > 200 || a->order() < 2) continue;
    ++trials;
    std::vector<std::size_t> gens{rng() % a->order(), rng() % a->order()};
    const std::size_t b = subgroup_closure(*a, gens).size();
    const BigInt want = ipow(BigInt(static_cast<unsigned long>(b)), static_cast<unsigned long>(a->order() / b));
    if (index_in_ambient(sum_ideals({alpha_ideal(*a, gens), beta_ideal(*a, gens)})) == want) ++exact;

    std::vector<SubLattice> alphas, betas;
    BigInt cap = 1;
    for (int k = 0; k < 3; ++k) {
      std::vector<std::size_t> g{rng() % a->order()};
      const std::size_t bk = subgroup_closure(*a, g).size();
      alphas.push_back(alpha_ideal(*a, g));
      betas.push_back(beta_ideal(*a, g));
      cap *= ipow(BigInt(static_cast<unsigned long>(bk)), static_cast<unsigned long>(a->order() / bk));
    }
    SubLattice l = sum_ideals({sum_ideals(alphas), intersect_ideals(betas)});
    if (l.rank() == a->order() && index_in_ambient(l) <= cap) ++bound;
  }
  o.ok = exact == 20 && bound == 20;
  o.detail = "|Z[A]/(alpha+beta)| = |B|^(|A|/|B|) in " + std::to_string(exact) + "/20, multi-subgroup bound in " + std::to_string(bound) + "/20";
  return o;
}

Outcome lawton_and_koszul() {
  Outcome o;
  const LaurentPoly f = P("1 + t1 + t2");
  MahlerEstimate l = mahler_lawton(f, {{1, 10}, {1, 20}, {1, 40}, {1, 80}});
  MahlerEstimate q = mahler_quadrature(f, 1'000'000, 1);
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> c(-3, 3), e(0, 4);
  int pairs = 0, balanced = 0;
  while (pairs < 10) {
    auto a = std::make_shared<const FinAbGroup>(Subgroup::diagonal({2 + static_cast<int>(rng() % 4), 2 + static_cast<int>(rng() % 4)}));
    LaurentPoly pf(2), qf(2);
    for (int i = 0; i < 3; ++i) {
      pf.add_term({e(rng), e(rng)}, c(rng));
      qf.add_term({e(rng), e(rng)}, c(rng));
    }
    IntMatrix pm = mult_matrix(project_poly(pf, a)), qm = mult_matrix(project_poly(qf, a));
    if (determinant(pm) == 0) continue;
    KoszulOrders k;
    try {
      k = koszul_orders(pm, qm);
    } catch (const std::domain_error&) {
      continue;  // common character zero: not a coprime pair
    }
    ++pairs;
    if (k.h0 == k.h1) ++balanced;
  }
  o.ok = std::abs(l.value - q.value) <= 0.02 && balanced == 10;
  o.detail = "m(tau_(1,80) f) = " + fmt(l.value) + " vs quadrature " + fmt(q.value) + "; Koszul |H1| = |H0| on " + std::to_string(balanced) + "/10";
  return o;
}

Outcome property_suites() {
  Outcome o;
  CheckOptions opts;
  opts.cases = 200;
  std::size_t failures = 0, batteries = 0, min_cases = SIZE_MAX;
  for (const auto& r : run_all_checks(opts)) {
    ++batteries;
    failures += r.failures;
    min_cases = std::min(min_cases, r.cases);
    if (!r.passed() && o.detail.empty()) o.detail = r.name + ": " + r.first_failure + "; ";
  }
  o.ok = failures == 0 && min_cases >= 200;
  o.detail += std::to_string(batteries) + " batteries, >= " + std::to_string(min_cases) + " cases each, " + std::to_string(failures) + " failures";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "exact growth of R/(t-2)", 10, exact_growth},
      {2, "knot Alexander polynomials from Fox calculus", 1, knot_delta},
      {3, "figure-eight branched covers", 120, figure_eight_branched},
      {4, "trefoil branched covers", 120, trefoil_branched},
      {5, "R2/(3+t1+t2) along dZ x dZ", 600, torus_nonvanishing},
      {6, "R2/(1+t1+t2) along dZ x dZ", 600, torus_vanishing},
      {7, "pseudo-zero summand does not change growth", 600, pseudo_zero_invariance},
      {8, "alpha/beta order identities", 60, alpha_beta_identities},
      {9, "Lawton convergence and Koszul balance", 600, lawton_and_koszul},
      {10, "randomized property batteries", 120, property_suites},
  };
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::stoi(argv[i]));

  int failed = 0;
  for (const auto& c : all) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = out.ok && secs <= c.budget_seconds;
    if (!ok) ++failed;
    std::printf("%s %2d  %s: %s [%.2f s / %.0f s]\n", ok ? "PASS" : "FAIL", c.id, c.title.c_str(), out.detail.c_str(), secs, c.budget_seconds);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
