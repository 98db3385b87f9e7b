#include "pav/exterior.hpp"
#include "pav/matrix.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace pav;

namespace {

ExteriorClass gen(std::size_t n, std::size_t i) {  // x_i, 1-based
  return ExteriorClass::monomial(n, GenMask(1) << (i - 1), 1);
}

ExteriorClass random_class(std::size_t n, std::mt19937_64& rng,
                           int max_terms = 6) {
  ExteriorClass c(n);
  const int terms = 1 + static_cast<int>(rng() % max_terms);
  for (int t = 0; t < terms; ++t) {
    const GenMask mask = rng() & ((GenMask(1) << n) - 1);
    const long long num = static_cast<long long>(rng() % 19) - 9;
    const long long den = 1 + static_cast<long long>(rng() % 4);
    c.add_term(mask, Rat(num, den));
  }
  return c;
}

ExteriorClass random_homogeneous(std::size_t n, std::size_t degree,
                                 std::mt19937_64& rng) {
  ExteriorClass c(n);
  for (int t = 0; t < 4; ++t) {
    GenMask mask = 0;
    while (static_cast<std::size_t>(std::popcount(mask)) < degree)
      mask |= GenMask(1) << (rng() % n);
    const long long num = static_cast<long long>(rng() % 9) - 4;
    c.add_term(mask, Rat(num));
  }
  return c;
}

}  // namespace

TEST_CASE("wedge basics") {
  const std::size_t n = 4;
  CHECK(gen(n, 1) * gen(n, 2) == ExteriorClass::monomial(n, 0b11, 1));
  CHECK(gen(n, 2) * gen(n, 1) == ExteriorClass::monomial(n, 0b11, -1));
  CHECK((gen(n, 1) * gen(n, 1)).is_zero());

  CHECK_THROWS_AS(wedge(ExteriorClass(4), ExteriorClass(6)), error);
}

TEST_CASE("graded anticommutativity") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 6;
    const std::size_t p = 1 + rng() % 3;
    const std::size_t q = 1 + rng() % 3;
    const ExteriorClass u = random_homogeneous(n, p, rng);
    const ExteriorClass v = random_homogeneous(n, q, rng);
    const Rat sign((p * q) % 2 ? -1 : 1);
    CHECK(u * v == sign * (v * u));
  }
}

TEST_CASE("associativity and bilinearity") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 15; ++trial) {
    const ExteriorClass a = random_class(6, rng);
    const ExteriorClass b = random_class(6, rng);
    const ExteriorClass c = random_class(6, rng);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("algebra laws at twelve generators") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const ExteriorClass a = random_class(12, rng, 10);
    const ExteriorClass b = random_class(12, rng, 10);
    const ExteriorClass c = random_class(12, rng, 10);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    const std::size_t p = 1 + rng() % 4;
    const std::size_t q = 1 + rng() % 4;
    const ExteriorClass u = random_homogeneous(12, p, rng);
    const ExteriorClass v = random_homogeneous(12, q, rng);
    const Rat sign((p * q) % 2 ? -1 : 1);
    CHECK(u * v == sign * (v * u));
  }
}

TEST_CASE("squares of generators vanish in products") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const ExteriorClass a = random_homogeneous(6, 1, rng);
    CHECK((a * a).is_zero());
  }
}

TEST_CASE("exponential") {
  CHECK(exp_class(ExteriorClass(4)) == ExteriorClass::scalar(4, 1));

  // g = 1, type (2): exp(2 x1 x2) = 1 + 2 x1 x2, the square vanishes
  ExteriorClass c(2);
  c.add_term(0b11, 2);
  ExteriorClass expect = ExteriorClass::scalar(2, 1);
  expect.add_term(0b11, 2);
  CHECK(exp_class(c) == expect);

  // g = 2, type (1,1): expanding (x1 x3 + x2 x4)^2 / 2 by hand gives
  // -(x1 x2 x3 x4); the oracle fixes the sign of the top coefficient.
  ExteriorClass c2(4);
  c2.add_term(0b0101, 1);  // x1 x3
  c2.add_term(0b1010, 1);  // x2 x4
  const ExteriorClass e2 = exp_class(c2);
  CHECK(e2.coefficient(0b1111) == Rat(-1));
  CHECK(e2.coefficient(0) == Rat(1));

  ExteriorClass odd(2);
  odd.add_term(0b01, 1);
  CHECK_THROWS_AS(exp_class(odd), error);
}

TEST_CASE("pullback") {
  std::mt19937_64 rng(4);
  const ExteriorClass c = random_class(4, rng);
  CHECK(pullback(c, IntMatrix::identity(4)) == c);

  // scaling: degree-2 parts scale by n^2 under n*I
  ExteriorClass deg2(4);
  deg2.add_term(0b0011, 3);
  deg2.add_term(0b1100, Rat(-1, 2));
  const IntMatrix three = Int(3) * IntMatrix::identity(4);
  CHECK(pullback(deg2, three) == Rat(9) * deg2);

  // top class under E of type (2), g = 1 scales by det E = 4
  ExteriorClass top(2);
  top.add_term(0b11, 1);
  const IntMatrix e{{0, 2}, {-2, 0}};
  CHECK(pullback(top, e) == Rat(4) * top);

  CHECK_THROWS_AS(pullback(c, IntMatrix::identity(5)), error);
}

TEST_CASE("pushforward composition contract") {
  std::mt19937_64 rng(5);
  const IntMatrix m{{1, 1, 0, 0}, {0, 2, 0, 0}, {0, 0, 1, 0}, {1, 0, 0, 3}};
  const Int deg = abs(det(m));
  REQUIRE(deg == 6);
  for (int trial = 0; trial < 10; ++trial) {
    const ExteriorClass c = random_class(4, rng);
    CHECK(pushforward_isogeny(pullback(c, m), m) == Rat(deg) * c);
    CHECK(pullback(pushforward_isogeny(c, m), m) == Rat(deg) * c);
  }
  const ExteriorClass c2 = random_class(4, rng);
  CHECK(pushforward_isogeny(c2, IntMatrix::identity(4)) == c2);
  CHECK_THROWS_AS(pushforward_isogeny(ExteriorClass(2), IntMatrix{{1, 1}, {1, 1}}),
                  error);
}

TEST_CASE("degree bookkeeping under substitution") {
  std::mt19937_64 rng(6);
  const IntMatrix m{{2, 1}, {1, 1}};
  for (int trial = 0; trial < 10; ++trial) {
    const ExteriorClass c = random_homogeneous(2, 1, rng);
    const ExteriorClass image = pullback(c, m);
    for (const auto& [mask, coeff] : image.terms())
      CHECK(std::popcount(mask) == 1);
  }
}
