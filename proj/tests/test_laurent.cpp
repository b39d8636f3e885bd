#include "doctest.h"
#include "helpers.hpp"

#include "torsionlab/laurent.hpp"

#include <random>

using namespace torsionlab;
using testutil::P;

TEST_CASE("parse and print") {
  CHECK(P("t^2 - t + 1").to_string() == "t^2 - t + 1");
  CHECK(P("3 + t1 + t2").nvars() == 2);
  CHECK(P("t1^-1*t2^2 - 4").coeff({-1, 2}) == 1);
  CHECK(P("0").is_zero());
  CHECK(P("2*t - 2*t").is_zero());
  CHECK(P("t", 3).nvars() == 3);
  CHECK_THROWS(P("t^"));
  CHECK_THROWS(P("t5", 2));
  for (const char* s : {"t1^3*t2 - 7*t2^-2 + 1", "-t^-5 + 12", "4*t1*t2*t3 - t3"}) {
    LaurentPoly f = P(s);
    CHECK(parse_poly(f.to_string(), f.nvars()) == f);
  }
}

TEST_CASE("ring arithmetic") {
  LaurentPoly f = P("t - 1"), g = P("t + 1");
  CHECK(f * g == P("t^2 - 1"));
  CHECK(pow(f, 3) == P("t^3 - 3*t^2 + 3*t - 1"));
  CHECK(P("t^-1") * P("t") == P("1"));
  CHECK(f - f == LaurentPoly(1));
  CHECK_THROWS(P("t1", 2) + P("t"));
  CHECK(derivative(P("t1^2*t2 + 3*t2^-1"), 1) == P("t1^2 - 3*t2^-2"));
}

TEST_CASE("unit normalization") {
  CHECK(normalize_unit(P("-t1^-1*t2^-2 + 3*t2^-1")).poly() == P("3*t1*t2 - 1"));
  CHECK(normalize_unit(P("-t^3 + t^4 - t^5")).poly() == P("t^2 - t + 1"));
  CHECK(normalize_unit(P("-t^9")).is_one());
  CHECK(normalize_unit(P("-7*t^9")).poly() == P("7"));
  LaurentPoly f = P("2*t1^-3 - t1*t2^4 + 5");
  CHECK(normalize_unit(normalize_unit(f)) == normalize_unit(f));
  CHECK(normalize_unit(P("-t2^2", 2) * f) == normalize_unit(f));
}

TEST_CASE("gcd and exact division") {
  LaurentPoly d = P("t^2 - 3*t + 1");
  CHECK(gcd(d * P("t + 2"), d * P("t^3 - 1")).poly() == d);
  CHECK(gcd(P("2*t + 2"), P("4*t^2 - 4")).poly() == P("2*t + 2"));
  CHECK(gcd(P("t1 + t2"), P("t1 - t2")).is_one());
  LaurentPoly a = P("t1*t2 - 1"), b = P("t1 + 3*t2^2");
  CHECK(gcd(a * b * P("t1 - 2", 2), a * P("t2 + 5")).poly() == normalize_unit(a).poly());
  CHECK(gcd(P("0"), P("-t + 3")).poly() == P("t - 3"));

  auto q = divide_exact(P("t^2 - 1"), P("t - 1"));
  REQUIRE(q);
  CHECK(*q == P("t + 1"));
  CHECK_FALSE(divide_exact(P("t^2 + 1"), P("t - 1")));
  CHECK(divides(P("t1 - 1", 2), P("t1^3*t2 - t2")));
  CHECK(content(P("6*t - 4")) == 2);
  CHECK(primitive_part(P("6*t - 4")) == P("3*t - 2"));
}

TEST_CASE("tau is a ring homomorphism") {
  const std::vector<std::int64_t> k{2, -3};
  LaurentPoly f = P("1 + t1 + t2"), g = P("t1*t2^-1 - 4");
  CHECK(tau(f * g, k) == tau(f, k) * tau(g, k));
  CHECK(tau(f + g, k) == tau(f, k) + tau(g, k));
  CHECK(tau(P("t1*t2 - 1"), std::vector<std::int64_t>{1, 10}) == P("t^11 - 1"));
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic(1) == P("t - 1"));
  CHECK(cyclotomic(6) == P("t^2 - t + 1"));
  CHECK(cyclotomic(12) == P("t^4 - t^2 + 1"));
  CHECK(cyclotomic(30) == P("t^8 + t^7 - t^5 - t^4 - t^3 + t + 1"));
  // prod over d | n of Phi_d = t^n - 1
  for (std::int64_t n : {1, 8, 12, 36, 105}) {
    LaurentPoly prod = P("1");
    for (std::int64_t d = 1; d <= n; ++d)
      if (n % d == 0) prod *= cyclotomic(d);
    CHECK(prod == pow(P("t"), static_cast<unsigned>(n)) - P("1"));
  }
}

TEST_CASE("evaluation") {
  std::vector<std::complex<double>> z{{0, 1}, {2, 0}};
  auto v = evaluate(P("t1^2*t2 + t2^-1"), z);
  CHECK(v.real() == doctest::Approx(-1.5));
  CHECK(v.imag() == doctest::Approx(0.0));
}

TEST_CASE("random gcd divides both and is maximal") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coef(-3, 3), ex(0, 2);
  auto rnd = [&]() {
    LaurentPoly f(2);
    for (int i = 0; i < 3; ++i) f.add_term({ex(rng), ex(rng)}, coef(rng));
    return f.is_zero() ? P("1", 2) : f;
  };
  for (int i = 0; i < 30; ++i) {
    LaurentPoly c = rnd(), a = rnd() * c, b = rnd() * c;
    UnitNormalForm g = gcd(a, b);
    CHECK(divides(g, a));
    CHECK(divides(g, b));
    CHECK(divides(c, g.poly()));
  }
}
