#include "plr/basis.hpp"

#include <random>

#include <gtest/gtest.h>

using namespace plr;

TEST(Basis, UnivariateOrder) {
  auto b = build_basis(1, 2);
  ASSERT_EQ(b->size(), 3);
  EXPECT_EQ(b->at(0).exponents, std::vector<int>{0});
  EXPECT_EQ(b->at(1).exponents, std::vector<int>{1});
  EXPECT_EQ(b->at(2).exponents, std::vector<int>{2});
}

TEST(Basis, BivariateOrderMatchesCanonicalListing) {
  auto b = build_basis(2, 2);
  ASSERT_EQ(b->size(), 6);
  std::vector<std::vector<int>> expect = {{0, 0}, {1, 0}, {0, 1},
                                          {2, 0}, {1, 1}, {0, 2}};
  for (int i = 0; i < 6; ++i) EXPECT_EQ(b->at(i).exponents, expect[i]);
}

TEST(Basis, SizeIsBinomial) {
  EXPECT_EQ(build_basis(3, 4)->size(), 35);
  for (int d = 1; d <= 4; ++d)
    for (int n = 0; n <= 8; ++n)
      EXPECT_EQ(build_basis(d, n)->size(), binomial(n + d, d));
}

TEST(Basis, IndexOfInvertsOrder) {
  for (int d = 1; d <= 3; ++d) {
    auto b = build_basis(d, 5);
    for (int i = 0; i < b->size(); ++i) EXPECT_EQ(b->index_of(b->at(i)), i);
  }
}

TEST(Basis, IndexOfExamples) {
  auto b1 = build_basis(1, 2);
  EXPECT_EQ(b1->index_of(MultiIndex{{2}}), 2);
  auto b2 = build_basis(2, 2);
  EXPECT_EQ(b2->index_of(MultiIndex{{1, 1}}), 4);
  EXPECT_THROW(b2->index_of(MultiIndex{{0, 3}}), std::out_of_range);
}

TEST(Polynomial, MultiplyDifferenceOfSquares) {
  auto b1 = build_basis(1, 1);
  auto b2 = build_basis(1, 2);
  Vector cp(2), cq(2);
  cp << 1, 1;
  cq << 1, -1;
  Polynomial p(b1, cp), q(b1, cq);
  Polynomial r = multiply(p, q, b2);
  Vector expect(3);
  expect << 1, 0, -1;
  EXPECT_LT((r.coeffs() - expect).lpNorm<Eigen::Infinity>(), 1e-15);
}

TEST(Polynomial, MultiplyByOneIsIdentity) {
  auto b = build_basis(1, 3);
  Vector c(4);
  c << 0.5, -2.0, 3.25, 1.0;
  Polynomial p(b, c);
  Polynomial r = multiply(p, Polynomial::constant(b, 1.0), b);
  EXPECT_LT((r.coeffs() - c).lpNorm<Eigen::Infinity>(), 1e-15);
}

TEST(Polynomial, BivariateSquare) {
  auto b1 = build_basis(2, 1);
  auto b2 = build_basis(2, 2);
  Vector c(3);
  c << 0, 1, 1;  // t1 + t2
  Polynomial p(b1, c);
  Polynomial r = multiply(p, p, b2);
  // t1^2 + 2 t1 t2 + t2^2
  Vector expect(6);
  expect << 0, 0, 0, 1, 2, 1;
  EXPECT_LT((r.coeffs() - expect).lpNorm<Eigen::Infinity>(), 1e-15);
}

TEST(Polynomial, MultiplyOverflowThrows) {
  auto b = build_basis(1, 2);
  Vector c(3);
  c << 0, 0, 1;
  Polynomial p(b, c);
  EXPECT_THROW(multiply(p, p, b), std::out_of_range);
}

TEST(Polynomial, EvaluateExamples) {
  auto b = build_basis(1, 1);
  Vector c(2);
  c << 1.0, 0.6;
  Polynomial p(b, c);
  EXPECT_NEAR(p.evaluate(1.0), 1.6, 1e-15);
  EXPECT_NEAR(p.evaluate(0.0), 1.0, 1e-15);

  // Gaussian tilt solution at mu = 0.6 is tangent to zero at t = -3.
  auto b2 = build_basis(1, 2);
  Vector c2(3);
  c2 << 0.9, 0.6, 0.1;
  Polynomial xi(b2, c2);
  EXPECT_NEAR(xi.evaluate(-3.0), 0.0, 1e-14);
}

TEST(Polynomial, EvaluateIsMultiplicative) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    int d = 1 + static_cast<int>(rng() % 3);
    auto bp = build_basis(d, 2);
    auto bq = build_basis(d, 3);
    auto bt = build_basis(d, 5);
    Vector cp(bp->size()), cq(bq->size());
    for (int i = 0; i < cp.size(); ++i) cp[i] = u(rng);
    for (int i = 0; i < cq.size(); ++i) cq[i] = u(rng);
    Polynomial p(bp, cp), q(bq, cq);
    Polynomial r = multiply(p, q, bt);
    Vector pt(d);
    for (int i = 0; i < d; ++i) pt[i] = u(rng);
    const double lhs = r.evaluate(pt);
    const double rhs = p.evaluate(pt) * q.evaluate(pt);
    EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, std::abs(rhs)));
  }
}

TEST(Polynomial, DegreeIgnoresZeroCoeffs) {
  auto b = build_basis(1, 4);
  Vector c = Vector::Zero(5);
  c[2] = 1.0;
  EXPECT_EQ(Polynomial(b, c).degree(), 2);
  EXPECT_EQ(Polynomial::zero(b).degree(), -1);
}
