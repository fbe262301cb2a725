#include "doctest.h"

#include <random>

#include "hurwitz/halphen.hpp"

using namespace hurwitz;

namespace {

QuadPoly poly(long D, std::initializer_list<Quad> c) { return QuadPoly(D, std::vector<Quad>(c)); }

QuadPoly random_poly(std::mt19937& rng, long D, int deg) {
  std::uniform_int_distribution<int> coef(-5, 5);
  std::vector<Quad> c;
  for (int i = 0; i <= deg; ++i) c.emplace_back(mpq_class(coef(rng)), D == 1 ? mpq_class(0) : mpq_class(coef(rng)));
  if (c.back().is_zero()) c.back() = Quad(1);
  return QuadPoly(D, c);
}

std::string data_file(const char* name) { return std::string(HURWITZ_DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("coefficients") {
  CHECK(parse_quad("3/4") == Quad(mpq_class(3, 4)));
  CHECK(parse_quad("-2√D") == Quad(0, -2));
  CHECK(parse_quad("1/2+3/5√D") == Quad(mpq_class(1, 2), mpq_class(3, 5)));
  CHECK(parse_quad("1-√D") == Quad(1, -1));
  CHECK(parse_quad("-sqrtD") == Quad(0, -1));
  CHECK_THROWS(parse_quad("x"));
  for (const char* s : {"0", "-7/3", "5√D", "2-1/3√D", "-1+√D"}) CHECK(parse_quad(format_quad(parse_quad(s))) == parse_quad(s));
  CHECK(mul(-3, Quad(0, 1), Quad(0, 1)) == Quad(-3));
  CHECK(mul(-3, inv(-3, Quad(1, 2)), Quad(1, 2)) == Quad(1));
  CHECK_THROWS_AS(inv(5, Quad(0)), FieldError);
  CHECK(qpow(2, Quad(1, 1), 2) == Quad(3, 2));
}

TEST_CASE("field parameter") {
  CHECK_NOTHROW(QuadPoly(-3));
  CHECK_THROWS_AS(QuadPoly(0), FieldError);
  CHECK_THROWS_AS(QuadPoly(4), FieldError);
  CHECK_THROWS_AS(QuadPoly(-12), FieldError);
  CHECK_THROWS_AS(poly(1, {Quad(0, 1)}), FieldError);
  CHECK_THROWS_AS(QuadPoly::z(2) + QuadPoly::z(3), FieldError);
}

TEST_CASE("polynomial arithmetic") {
  const auto z = QuadPoly::z(1);
  const auto one = QuadPoly::constant(1, 1);
  CHECK(gcd(z * z - one, z - one) == z - one);
  CHECK(gcd(QuadPoly(1), QuadPoly(1)).is_zero());
  const auto w = QuadPoly::z(-3);
  const auto r = QuadPoly::constant(-3, Quad(0, 1));
  CHECK((w + r) * (w - r) == poly(-3, {3, 0, 1}));
  CHECK(compose(z * z, z + one) == poly(1, {1, 2, 1}));
  const auto [q, rem] = divmod(poly(1, {1, 0, 0, 1}), poly(1, {1, 1}));
  CHECK(q == poly(1, {1, -1, 1}));
  CHECK(rem.is_zero());
  CHECK_THROWS_AS(divmod(z, QuadPoly(1)), FieldError);
  CHECK(coprime(z, z + one));
  CHECK_FALSE(coprime(z * z - one, z + one));
  CHECK(homogenize(poly(1, {1, 2}), z, one, 3) == poly(1, {1, 2}));
}

TEST_CASE("modular coprimality agrees with exact gcd") {
  std::mt19937 rng(13);
  for (long D : {1L, -1L, -3L, 2L, 5L}) {
    for (int it = 0; it < 60; ++it) {
      auto a = random_poly(rng, D, 1 + it % 4);
      auto b = random_poly(rng, D, 1 + it % 3);
      if (it % 3 == 0) {
        const auto f = random_poly(rng, D, 1);
        a = a * f;
        b = b * f;
      }
      CHECK(coprime(a, b) == (gcd(a, b).degree() == 0));
    }
  }
}

TEST_CASE("verify_fermat") {
  const auto z = QuadPoly::z(1);
  const auto one = QuadPoly::constant(1, 1);
  CHECK(verify_fermat(z * z - one, z.scaled(2), z * z + one, 2, 2, 2));
  CHECK_FALSE(verify_fermat(one, z, z, 2, 2, 2));
  CHECK_FALSE(verify_fermat(z * z - one, z.scaled(2), z * z + one, 2, 2, 3));
  // Shared factor z.
  CHECK_FALSE(verify_fermat(z * z - z * z, z, z, 2, 2, 2));
}

TEST_CASE("dihedral coverings") {
  for (int d = 2; d <= 20; ++d) {
    INFO(d);
    const auto cov = dihedral_covering(d);
    CHECK(cov.a == 2);
    CHECK(cov.b == d);
    CHECK(cov.c == 2);
    CHECK(cov.P.degree() == 2);
    CHECK(cov.Q.degree() == d);
    CHECK(cov.R.degree() == d);
    CHECK(verify_covering_data(cov.P, cov.Q, cov.R, cov.a, cov.b, cov.c));
  }
  CHECK_THROWS(dihedral_covering(1));
}

TEST_CASE("shipped coverings") {
  struct Case {
    const char* file;
    long D;
    int a, b, c, n;
  };
  for (const Case& k : {Case{"dihedral_d2.cov", 1, 2, 2, 2, 4}, Case{"tetrahedral.cov", -3, 2, 3, 3, 12},
                        Case{"octahedral.cov", -3, 2, 3, 4, 24}, Case{"icosahedral.cov", 1, 2, 3, 5, 60}}) {
    INFO(std::string(k.file));
    const auto cov = load_covering(data_file(k.file));
    CHECK(cov.D == k.D);
    CHECK(std::tie(cov.a, cov.b, cov.c) == std::tie(k.a, k.b, k.c));
    CHECK(cov.Q.degree() * k.a == k.n);
    CHECK(cov.P.degree() * k.b == k.n);
    CHECK(cov.R.degree() * k.c == k.n);
    CHECK(verify_covering_data(cov.P, cov.Q, cov.R, cov.a, cov.b, cov.c));
    // Swapping the exponents breaks the degree bookkeeping.
    if (k.a != k.b) CHECK_FALSE(verify_covering_data(cov.P, cov.Q, cov.R, cov.b, cov.a, cov.c));
    const auto again = parse_covering(format_covering(cov));
    CHECK(again.P == cov.P);
    CHECK(again.Q == cov.Q);
    CHECK(again.R == cov.R);
    // Perturbing a coefficient breaks the identity.
    CHECK_FALSE(verify_covering_data(cov.P, cov.Q + QuadPoly::constant(cov.D, 1), cov.R, cov.a, cov.b, cov.c));
  }
  CHECK_THROWS(parse_covering("D=1 a=2 b=2\nP: 1\nQ: 1\nR: 1\n"));
  CHECK_THROWS_AS(parse_covering("D=9 a=2 b=2 c=2\nP: -1, 0, 1\nQ: 1\nR: 1\n"), FieldError);
}

TEST_CASE("build_solution") {
  const auto z = QuadPoly::z(1);
  const auto one = QuadPoly::constant(1, 1);
  for (int d : {2, 3, 5}) {
    const auto cov = dihedral_covering(d);
    for (const auto& [U, V] : {std::pair{z, one}, std::pair{z * z + one, z}}) {
      const auto [X, Y, Zs] = build_solution(cov.P, cov.Q, cov.R, U, V, 1, 1, 1, cov.a, cov.b, cov.c);
      CHECK(verify_fermat(X, Y, Zs, cov.a, cov.b, cov.c));
      const int m = std::max(U.degree(), V.degree());
      CHECK(X.degree() <= m * cov.Q.degree());
    }
  }
  const auto cov = dihedral_covering(3);
  CHECK_THROWS_AS(build_solution(cov.P, cov.Q, cov.R, z, z, 1, 1, 1, 2, 3, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_solution(cov.P, cov.Q, cov.R, one, one, 1, 1, 1, 2, 3, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_solution(cov.P, cov.Q, cov.R, z, one, 2, 1, 1, 2, 3, 2), std::invalid_argument);
  // alpha^2 = beta^3 = gamma^2 = 64.
  const auto [X, Y, Zs] = build_solution(cov.P, cov.Q, cov.R, z, one, 8, 4, -8, 2, 3, 2);
  CHECK(verify_fermat(X, Y, Zs, 2, 3, 2));
}

TEST_CASE("tetrahedral solutions from random U, V") {
  const auto cov = load_covering(data_file("tetrahedral.cov"));
  std::mt19937 rng(5);
  int built = 0;
  for (int it = 0; it < 8; ++it) {
    const auto U = random_poly(rng, cov.D, 1 + it % 2);
    const auto V = random_poly(rng, cov.D, it % 2);
    if (!coprime(U, V)) continue;
    const auto [X, Y, Zs] = build_solution(cov.P, cov.Q, cov.R, U, V, 1, 1, 1, cov.a, cov.b, cov.c);
    CHECK(verify_fermat(X, Y, Zs, cov.a, cov.b, cov.c));
    ++built;
  }
  CHECK(built > 0);
}

TEST_CASE("scaling the variable preserves the identity") {
  const auto cov = load_covering(data_file("octahedral.cov"));
  const auto lz = QuadPoly::z(cov.D).scaled(Quad(2, 1));
  CHECK(verify_covering_data(compose(cov.P, lz), compose(cov.Q, lz), compose(cov.R, lz), cov.a, cov.b, cov.c));
}
