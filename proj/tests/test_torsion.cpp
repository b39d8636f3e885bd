#include "doctest.h"
#include "helpers.hpp"

#include "torsionlab/groupalg.hpp"
#include "torsionlab/torsion.hpp"

#include <cmath>
#include <random>

using namespace torsionlab;
using testutil::P;

namespace {

const char* kTrefoil = "gens: x y\nrho: x -> t, y -> t\nrel: x y x y^-1 x^-1 y^-1\n";
const char* kFigureEight = "gens: x y\nrho: x -> t, y -> t\nrel: x^-1 y x y^-1 x y x^-1 y^-1 x y^-1\n";

// |prod_{j=1}^{l-1} f(zeta^j)| as a resultant with 1 + t + ... + t^(l-1).
mpz_class branched_norm(const LaurentPoly& f, std::int64_t l) {
  return abs(oracle::resultant(testutil::to_plain(f), oracle::geometric(l)));
}

}  // namespace

TEST_CASE("expansion over Z[A]") {
  PolyMatrix m = PolyMatrix::from_rows({{P("t - 2"), P("t^2")}}, 1);
  IntMatrix e = expand(m, Subgroup::cyclic(3));
  CHECK(e.rows() == 3);
  CHECK(e.cols() == 6);
  // first block is the multiplication matrix of pr(t - 2), transposed to the row convention
  auto ptr = std::make_shared<const FinAbGroup>(Subgroup::cyclic(3));
  IntMatrix mm = mult_matrix(project_poly(P("t - 2"), ptr));
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) CHECK(e(r, c) == mm(c, r));
}

TEST_CASE("R/(t - 2): torsion 2^l - 1") {
  PresentedModule m = PresentedModule::cyclic({P("t - 2")});
  for (std::int64_t l = 1; l <= 30; ++l) {
    TorsionResult r = analyze(m, FinAbGroup(Subgroup::cyclic(l)));
    CHECK(r.torsion_order == (BigInt(1) << l) - 1);
    CHECK(r.torsion_order == oracle::cyclic_norm(testutil::to_plain(P("t - 2")), l));
    CHECK(r.betti == 0);
    CHECK(r.index == static_cast<std::size_t>(l));
  }
}

TEST_CASE("R2/(3 + t1 + t2) equals the character norm for d <= 6") {
  LaurentPoly f = P("3 + t1 + t2");
  PresentedModule m = PresentedModule::cyclic({f});
  oracle::Poly a, b;
  testutil::split_linear_t2(f, a, b);
  CHECK(torsion_order(m, Subgroup::diagonal({2, 2})) == 45);
  for (std::int64_t d = 1; d <= 6; ++d) CHECK(torsion_order(m, Subgroup::diagonal({d, d})) == oracle::diagonal_norm_linear_t2(a, b, d));
  // 1 + t1 + t2 vanishes at (w, w^2) for w a primitive cube root of unity
  PresentedModule g = PresentedModule::cyclic({P("1 + t1 + t2")});
  CHECK(betti(g, Subgroup::diagonal({3, 3})) == 2);
  CHECK(betti(g, Subgroup::diagonal({2, 2})) == 0);
  CHECK(torsion_order(g, Subgroup::diagonal({2, 2})) == 3);  // values 3, 1, 1, -1
  CHECK(fixed_components(m, Subgroup::diagonal({3, 3})) == torsion_order(m, Subgroup::diagonal({3, 3})));
}

TEST_CASE("free and torsion-free modules") {
  PresentedModule f = PresentedModule::free(2, 2);
  TorsionResult r = analyze(f, FinAbGroup(Subgroup::diagonal({3, 4})));
  CHECK(r.torsion_order == 1);
  CHECK(r.betti == 24);

  // The augmentation ideal (t1 - 1, t2 - 1) presented by its Koszul relation.
  PresentedModule ideal(PolyMatrix::from_rows({{P("t2 - 1", 2), P("1 - t1", 2)}}, 2));
  for (std::int64_t d : {4, 8, 16}) {
    TorsionResult s = analyze(ideal, FinAbGroup(Subgroup::diagonal({d, d})));
    CHECK(log_abs(s.torsion_order) / static_cast<double>(s.index) < 0.05);
  }
}

TEST_CASE("torsion is invariant under presentation changes") {
  PolyMatrix m = PolyMatrix::from_rows({{P("t1 - 3", 2), P("t2", 2)}, {P("2", 2), P("t1*t2 + 1", 2)}}, 2);
  PolyMatrix ops = m;
  for (std::size_t c = 0; c < 2; ++c) ops(1, c) = m(1, c) + P("t1^-1 - 5", 2) * m(0, c);
  for (std::size_t r = 0; r < 2; ++r) ops(r, 0) = ops(r, 0) + P("t2 + 2", 2) * ops(r, 1);
  for (auto g : {Subgroup::diagonal({2, 3}), Subgroup(2, {{2, 1}, {-1, 2}}), Subgroup::diagonal({4, 4})}) {
    CHECK(torsion_order(PresentedModule(m), g) == torsion_order(PresentedModule(ops), g));
    CHECK(betti(PresentedModule(m), g) == betti(PresentedModule(ops), g));
  }
}

TEST_CASE("trefoil branched covers") {
  GroupPresentation p = GroupPresentation::parse(kTrefoil);
  PresentedModule b = branched_module(p);
  const LaurentPoly delta = P("t^2 - t + 1");
  const std::vector<long> expected{3, 4, 3, 1, 1, 1, 3};  // l = 2..8
  for (std::int64_t l = 2; l <= 8; ++l) {
    BigInt t = torsion_order(b, Subgroup::cyclic(l));
    CHECK(t == expected[l - 2]);
    const mpz_class norm = branched_norm(delta, l);
    if (norm != 0) {
      CHECK(t == norm);
      CHECK(cyclic_branched_oracle(delta, l) == norm);
    } else {
      CHECK(l % 6 == 0);
      CHECK_THROWS_AS(cyclic_branched_oracle(delta, l), std::domain_error);
    }
  }
}

TEST_CASE("figure-eight branched covers match the product formula") {
  GroupPresentation p = GroupPresentation::parse(kFigureEight);
  PresentedModule b = branched_module(p);
  ChainComplex c = alexander_complex(p);
  const LaurentPoly delta = P("t^2 - 3*t + 1");
  for (std::int64_t l = 2; l <= 30; ++l) {
    BigInt t = torsion_order(b, Subgroup::cyclic(l));
    CHECK(t == branched_norm(delta, l));
    CHECK(t == cyclic_branched_oracle(delta, l));
    // H_1 of the unbranched cover is Z plus the same torsion.
    if (l <= 12) CHECK(chain_torsion(c, 1, Subgroup::cyclic(l)) == t);
  }
  // Lucas-type closed form: |H_1| = L_{2l} - 2 for the figure-eight knot
  CHECK(torsion_order(b, Subgroup::cyclic(5)) == 121);
  CHECK(chain_torsion(c, 2, Subgroup::cyclic(5)) == 1);
  CHECK(chain_torsion(c, 0, Subgroup::cyclic(5)) == 1);
}

TEST_CASE("product oracle") {
  CHECK(cyclic_branched_oracle(P("t - 2"), 10) == 1023);
  CHECK(cyclic_branched_oracle(P("t^2 - 3*t + 1"), 100) == branched_norm(P("t^2 - 3*t + 1"), 100));
  CHECK(cyclic_branched_oracle(P("2*t^3 - t + 5"), 17) == branched_norm(P("2*t^3 - t + 5"), 17));
  CHECK_THROWS(cyclic_branched_oracle(P("t + 1"), 4));
}

TEST_CASE("Koszul balance") {
  std::mt19937_64 rng(37);
  std::uniform_int_distribution<int> c(-3, 3), e(0, 3);
  int tested = 0;
  while (tested < 15) {
    auto a = std::make_shared<const FinAbGroup>(rng() % 2 ? Subgroup::diagonal({2 + static_cast<int>(rng() % 3), 2 + static_cast<int>(rng() % 3)}) : Subgroup::cyclic(2 + rng() % 9));
    LaurentPoly pf(a->nvars()), qf(a->nvars());
    for (int i = 0; i < 3; ++i) {
      Exponent x(a->nvars()), y(a->nvars());
      for (auto& v : x) v = e(rng);
      for (auto& v : y) v = e(rng);
      pf.add_term(x, c(rng));
      qf.add_term(y, c(rng));
    }
    IntMatrix pm = mult_matrix(project_poly(pf, a)), qm = mult_matrix(project_poly(qf, a));
    if (determinant(pm) == 0) continue;
    try {
      KoszulOrders k = koszul_orders(pm, qm);
      CHECK(k.h0 == k.h1);
      ++tested;
    } catch (const std::domain_error&) {
      // common character zero: H_0 infinite, not a coprime pair
    }
  }
  IntMatrix p = IntMatrix::from_rows({{2, 0}, {0, 3}}), q = IntMatrix::from_rows({{1, 0}, {0, 1}});
  KoszulOrders k = koszul_orders(p, q);
  CHECK(k.h0 == 1);
  CHECK(k.h1 == 1);
  CHECK_THROWS(koszul_orders(IntMatrix::from_rows({{1, 1}, {0, 1}}), IntMatrix::from_rows({{1, 0}, {1, 1}})));
}

TEST_CASE("size guard") {
  CHECK_NOTHROW(check_size(5000, 1, false));
  CHECK_THROWS_AS(check_size(2501, 2, false), std::length_error);
  CHECK_NOTHROW(check_size(2501, 2, true));
}

TEST_CASE("growth samples") {
  Subgroup g = Subgroup::diagonal({3, 4});
  FinAbGroup a(g);
  GrowthSample s = make_sample(g, a, BigInt(1000), 2);
  CHECK(s.index == 12);
  CHECK(s.min_norm == doctest::Approx(3));
  CHECK(s.log_torsion == doctest::Approx(std::log(1000.0)));
  CHECK(s.growth_stat == doctest::Approx(std::log(1000.0) / 12));
  CHECK(GrowthSample::csv_header() == "gamma;index;min_norm;torsion_order;log_torsion;growth_stat;betti");
  const std::string row = s.csv_row();
  CHECK(row.rfind(s.gamma + ";12;3;1000;", 0) == 0);
  CHECK(row.substr(row.size() - 2) == ";2");
  CHECK(std::count(row.begin(), row.end(), ';') == 6);
}
