#include <doctest.h>

#include "k3b/error.hpp"
#include "k3b/kernels.hpp"
#include "k3b/matrix.hpp"
#include "oracles.hpp"

using namespace k3b;

TEST_CASE("rational parsing is canonical") {
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(to_string(parse_rational("-6/4")) == "-3/2");
  CHECK(to_string(parse_rational(" +7 ")) == "7");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("1.5"), Error);
  CHECK_THROWS_AS(parse_rational("3/-4"), Error);
  CHECK(parse_rational_list("1/2,0,-3") == QVector{Rational(1, 2), 0, -3});
  CHECK(primitive_integral({Rational(-1, 2), 0, Rational(1, 8), 0}) == QVector{-4, 0, 1, 0});
}

TEST_CASE("parallel kernels agree with serial references") {
  oracle::RandomRationals rnd(11);
  for (size_t n : {3, 9, 17}) {
    const QMatrix a = rnd.matrix(n, n + 2), b = rnd.matrix(n + 2, n), g = rnd.matrix(n, n);
    CHECK(kernels::matmul(a, b) == kernels::serial::matmul(a, b));
    CHECK(kernels::matmul(a, b) == oracle::naive_product(a, b));
    CHECK(kernels::congruence(a, g) == kernels::serial::congruence(a, g));
    QMatrix e1 = rnd.matrix(n, n), e2 = e1;
    e1(0, 0) = e2(0, 0) = 1;
    kernels::eliminate_column(e1, 0, 0);
    kernels::serial::eliminate_column(e2, 0, 0);
    CHECK(e1 == e2);
  }
  std::vector<int> hit(100, 0);
  kernels::parallel_for(hit.size(), [&](size_t i) { hit[i] = static_cast<int>(i); });
  for (size_t i = 0; i < hit.size(); ++i) CHECK(hit[i] == static_cast<int>(i));
  CHECK_THROWS_AS(kernels::parallel_for(10,
                                        [](size_t i) {
                                          if (i == 7) throw Error(ErrorCode::InvalidArgument, "boom");
                                        }),
                  Error);
}

TEST_CASE("determinant and inverse match cofactor oracle") {
  oracle::RandomRationals rnd(5);
  for (int trial = 0; trial < 20; ++trial) {
    const QMatrix a = rnd.matrix(5, 5);
    CHECK(determinant(a) == oracle::cofactor_det(a));
    auto inv = inverse(a);
    if (oracle::cofactor_det(a) == 0) {
      CHECK(!inv);
    } else {
      REQUIRE(inv);
      CHECK(*inv * a == QMatrix::identity(5));
    }
  }
  const QMatrix singular{{1, 2}, {2, 4}};
  CHECK(!inverse(singular));
  CHECK(rank(singular) == 1);
}

TEST_CASE("nullspace and solve") {
  oracle::RandomRationals rnd(9);
  for (int trial = 0; trial < 20; ++trial) {
    const QMatrix a = rnd.matrix(3, 6);
    const auto ns = nullspace(a);
    CHECK(ns.size() == 6 - rank(a));
    for (const auto& v : ns) CHECK(is_zero(a * v));
    const QVector x0 = rnd.vector(6);
    const QVector b = a * x0;
    auto x = solve(a, b);
    REQUIRE(x);
    CHECK(a * *x == b);
  }
  const QMatrix a{{1, 0}, {1, 0}};
  CHECK(!solve(a, {1, 2}));
  const auto basis = span_basis({{2, 4, 0}, {1, 2, 0}, {0, 0, 3}}, 3);
  CHECK(basis.size() == 2);
  CHECK(basis[0] == QVector{1, 2, 0});
  auto c = coordinates_in(basis, {3, 6, 9});
  REQUIRE(c);
  CHECK(*c == QVector{3, 9});
  CHECK(!coordinates_in(basis, {0, 1, 0}));
}
