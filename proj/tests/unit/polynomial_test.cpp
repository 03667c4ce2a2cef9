#include <gtest/gtest.h>

#include "support/corpus.hpp"

namespace {

using namespace lieshear;

Polynomial poly(std::initializer_list<int> low_first) {
  std::vector<Rational> c;
  for (int v : low_first) c.emplace_back(v);
  return Polynomial(std::move(c));
}

TEST(Polynomial, EvalAndDerivative) {
  const Polynomial p = poly({1, -3, 0, 2});  // 2x³ - 3x + 1
  EXPECT_EQ(p.degree(), 3);
  EXPECT_EQ(p(Rational(2)), 11);
  EXPECT_EQ(p.derivative(), poly({-3, 0, 6}));
}

TEST(Polynomial, DivmodReconstructs) {
  const Polynomial a = poly({-1, 0, 0, 1});
  const Polynomial b = poly({-1, 1});
  const auto [q, rem] = divmod(a, b);
  EXPECT_EQ(q, poly({1, 1, 1}));
  EXPECT_TRUE(rem.is_zero());
  EXPECT_EQ(gcd(a, poly({-1, 0, 1})).monic(), poly({-1, 1}));
}

TEST(Polynomial, CharacteristicPolynomialMatchesDeterminant) {
  corpus::Random r(5);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = r.uniform(1, 5);
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = r.rational();
    const Polynomial chi = characteristic_polynomial(m);
    EXPECT_EQ(chi.degree(), n);
    // χ(t) = det(tI - m) at several integer points
    for (int t = -2; t <= 2; ++t) {
      Matrix s = Rational(-1) * m;
      for (int i = 0; i < n; ++i) s(i, i) += t;
      EXPECT_EQ(chi(Rational(t)), determinant(s));
    }
  }
}

TEST(Polynomial, RationalRootsAndMultiplicity) {
  // (x - 1/2)² (x + 3)(x² - 2)
  Polynomial p = poly({1});
  p = p * Polynomial::linear_factor(Rational(1, 2)) * Polynomial::linear_factor(Rational(1, 2));
  p = p * Polynomial::linear_factor(Rational(-3)) * poly({-2, 0, 1});
  const auto roots = rational_roots(p);
  ASSERT_EQ(roots.size(), 2u);
  EXPECT_EQ(roots[0], Rational(-3));
  EXPECT_EQ(roots[1], Rational(1, 2));
  EXPECT_EQ(root_multiplicity(p, Rational(1, 2)), 2);
  EXPECT_EQ(count_distinct_real_roots(poly({-2, 0, 1})), 2);
  EXPECT_EQ(count_distinct_real_roots(poly({2, 0, 1})), 0);
  EXPECT_EQ(count_distinct_real_roots(p), 4);
}

TEST(Polynomial, ZeroRoot) {
  const Polynomial p = poly({0, 0, 1, 1});  // x²(x+1)
  const auto roots = rational_roots(p);
  ASSERT_EQ(roots.size(), 2u);
  EXPECT_EQ(roots[0], -1);
  EXPECT_EQ(roots[1], 0);
}

}  // namespace
