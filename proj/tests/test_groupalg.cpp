#include "doctest.h"
#include "helpers.hpp"

#include "torsionlab/groupalg.hpp"

#include <cmath>
#include <random>

using namespace torsionlab;
using testutil::P;

namespace {

GroupPtr group(const Subgroup& g) { return std::make_shared<const FinAbGroup>(g); }

std::vector<BigInt> v(std::initializer_list<long> xs) {
  std::vector<BigInt> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

// Random subgroup generators (element indices) of a.
std::vector<std::size_t> random_gens(std::mt19937_64& rng, const FinAbGroup& a) {
  std::vector<std::size_t> g;
  for (int i = 0; i < 2; ++i) g.push_back(rng() % a.order());
  return g;
}

GroupPtr random_group(std::mt19937_64& rng, std::size_t max_order) {
  for (;;) {
    std::uniform_int_distribution<int> e(1, 14);
    Subgroup g = rng() % 2 ? Subgroup::diagonal({e(rng), e(rng)}) : Subgroup::cyclic(e(rng) * e(rng));
    GroupPtr a = group(g);
    if (a->order() <= max_order) return a;
  }
}

}  // namespace

TEST_CASE("projection of polynomials") {
  GroupPtr z3 = group(Subgroup::cyclic(3));
  CHECK(project_poly(P("t - 2"), z3).coeffs() == v({-2, 1, 0}));
  CHECK(project_poly(P("t^3"), z3) == GroupAlgElem::identity(z3));
  CHECK(project_poly(P("t^-1"), z3) == GroupAlgElem::basis(z3, 2));
  GroupPtr k4 = group(Subgroup::diagonal({2, 2}));
  CHECK(project_poly(P("t1*t2"), k4) == GroupAlgElem::basis(k4, k4->project_index({1, 1})));
}

TEST_CASE("multiplication matrices") {
  GroupPtr z2 = group(Subgroup::cyclic(2));
  CHECK(mult_matrix(project_poly(P("1 + t"), z2)) == IntMatrix::from_rows({{1, 1}, {1, 1}}));
  GroupPtr z3 = group(Subgroup::cyclic(3));
  CHECK(mult_matrix(GroupAlgElem::identity(z3)) == IntMatrix::identity(3));
  IntMatrix g = mult_matrix(project_poly(P("t"), z3));
  CHECK(g == IntMatrix::from_rows({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}));

  GroupPtr a = group(Subgroup::diagonal({3, 4}));
  GroupAlgElem x = project_poly(P("2 - t1 + 3*t1*t2^2", 2), a), y = project_poly(P("t2^-1 + 5*t1^2", 2), a);
  CHECK(mult_matrix(x * y) == mult_matrix(x) * mult_matrix(y));
  CHECK(x * y == y * x);
}

TEST_CASE("determinant equals the character product") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> c(-3, 3), e(-2, 2);
  for (int trial = 0; trial < 20; ++trial) {
    GroupPtr a = random_group(rng, 16);
    LaurentPoly f(2);
    for (int i = 0; i < 3; ++i) f.add_term({e(rng), e(rng)}, c(rng));
    if (a->nvars() == 1) f = tau(f, std::vector<std::int64_t>{1, 2});
    BigInt det = determinant(mult_matrix(project_poly(f, a)));
    std::complex<double> prod = 1;
    auto chars = characters(*a);
    CHECK(chars.size() == a->order());
    for (const auto& chi : chars) prod *= evaluate_at(f, chi);
    const double d = det.get_d();
    CHECK(std::abs(prod.imag()) <= 1e-6 * std::max(1.0, std::abs(prod)));
    CHECK(std::abs(prod.real() - d) <= 1e-6 * std::max(1.0, std::abs(d)));
  }
}

TEST_CASE("characters") {
  auto c2 = characters(FinAbGroup(Subgroup::cyclic(2)));
  REQUIRE(c2.size() == 2);
  CHECK(c2[1].coordinate(0).real() == doctest::Approx(-1));
  auto c3 = characters(FinAbGroup(Subgroup::cyclic(3)));
  std::vector<std::int64_t> nums;
  for (const auto& c : c3) {
    CHECK(c.den == 3);
    nums.push_back(c.num[0]);
  }
  CHECK(nums == std::vector<std::int64_t>{0, 1, 2});
  // Each character is trivial on Gamma.
  Subgroup g(2, {{2, 1}, {-1, 3}});
  for (const auto& chi : characters(FinAbGroup(g)))
    for (const auto& gen : g.gens()) CHECK(std::abs(chi.at(gen) - std::complex<double>(1)) < 1e-12);
}

TEST_CASE("alpha and beta ideals") {
  GroupPtr z2 = group(Subgroup::cyclic(2));
  CHECK(alpha_ideal(*z2, {1}) == SubLattice::from_rows(IntMatrix::from_rows({{1, 1}})));
  CHECK(beta_ideal(*z2, {1}) == SubLattice::from_rows(IntMatrix::from_rows({{1, -1}})));
  CHECK(vol(alpha_ideal(*z2, {1})) == doctest::Approx(std::sqrt(2.0)));
  CHECK(alpha_ideal(*z2, {}) == SubLattice::full(2));
  CHECK(beta_ideal(*z2, {}).rank() == 0);

  GroupPtr z4 = group(Subgroup::cyclic(4));
  CHECK(alpha_ideal(*z4, {2}).rank() == 2);
  CHECK(beta_ideal(*z4, {2}).rank() == 2);

  GroupPtr k4 = group(Subgroup::diagonal({2, 2}));
  const std::size_t e1 = k4->project_index({1, 0}), e2 = k4->project_index({0, 1});
  CHECK(sum_ideals({alpha_ideal(*k4, {e1}), alpha_ideal(*k4, {e2})}).rank() == 3);
}

TEST_CASE("alpha(B) + beta(B) has order |B|^(|A|/|B|) and alpha beta = 0") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    GroupPtr a = random_group(rng, 60);
    auto gens = random_gens(rng, *a);
    const std::size_t b = subgroup_closure(*a, gens).size();
    SubLattice al = alpha_ideal(*a, gens), be = beta_ideal(*a, gens);
    CHECK(al.rank() == a->order() / b);
    SubLattice sum = sum_ideals({al, be});
    const BigInt expected = ipow(BigInt(static_cast<unsigned long>(b)), static_cast<unsigned long>(a->order() / b));
    CHECK(index_in_ambient(sum) == expected);
    // Independent route: SNF of the stacked spanning vectors.
    CHECK(snf(al.basis().vstack(be.basis())).torsion_order() == expected);
    for (std::size_t i = 0; i < al.rank(); ++i)
      for (std::size_t j = 0; j < be.rank(); ++j) {
        std::vector<BigInt> x(a->order()), y(a->order());
        for (std::size_t k = 0; k < a->order(); ++k) {
          x[k] = al.basis()(i, k);
          y[k] = be.basis()(j, k);
        }
        CHECK((GroupAlgElem(a, x) * GroupAlgElem(a, y)).is_zero());
      }
  }
}

TEST_CASE("lattice operations") {
  SubLattice z2 = SubLattice::full(2), l = SubLattice::from_rows(IntMatrix::from_rows({{2, 0}, {0, 3}}));
  CHECK(vol(z2) == doctest::Approx(1));
  CHECK(quotient_order(z2, l) == 6);
  CHECK(sum_ideals({l, SubLattice(2)}) == l);
  CHECK(intersect_ideals({l, l}) == l);
  CHECK_THROWS(quotient_order(l, z2));
  CHECK_THROWS(quotient_order(z2, SubLattice::from_rows(IntMatrix::from_rows({{1, 1}}))));
  CHECK_THROWS(sum_ideals({z2, SubLattice::full(3)}));

  SubLattice a = SubLattice::from_rows(IntMatrix::from_rows({{2, 0}})), b = SubLattice::from_rows(IntMatrix::from_rows({{3, 0}}));
  CHECK(intersect_ideals({a, b}) == SubLattice::from_rows(IntMatrix::from_rows({{6, 0}})));
  CHECK(sum_ideals({a, b}) == SubLattice::from_rows(IntMatrix::from_rows({{1, 0}})));
  CHECK(l.contains(v({4, -3})));
  CHECK_FALSE(l.contains(v({1, 3})));
}

TEST_CASE("vol squared of a primitive lattice is the index of L + L^perp") {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<int> e(-4, 4);
  int tested = 0;
  while (tested < 20) {
    const std::size_t n = 2 + rng() % 3, r = 1 + rng() % (n - 1);
    IntMatrix m(r, n);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = e(rng);
    SubLattice l = SubLattice::from_rows(m);
    if (l.rank() != r || !is_primitive(l)) continue;
    SubLattice perp = orthogonal_complement(l);
    CHECK(perp.rank() == n - r);
    CHECK(vol_squared(l) == index_in_ambient(sum_ideals({l, perp})));
    CHECK(vol(l) * vol(l) == doctest::Approx(vol_squared(l).get_d()));
    ++tested;
  }
  // alpha(B) is primitive; check the identity on it too.
  GroupPtr a = group(Subgroup::diagonal({2, 4}));
  SubLattice al = alpha_ideal(*a, {a->project_index({0, 2})});
  REQUIRE(is_primitive(al));
  CHECK(vol_squared(al) == index_in_ambient(sum_ideals({al, orthogonal_complement(al)})));
}
