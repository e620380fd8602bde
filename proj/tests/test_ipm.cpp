#include "plr/ipm.hpp"

#include <random>

#include <gtest/gtest.h>

using namespace plr;
using namespace plr::ipm;

namespace {

Matrix random_psd_interior(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = u(rng);
  return m * m.transpose() + 0.3 * Matrix::Identity(n, n);
}

Vector random_soc_interior(int q, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vector v(q);
  for (int i = 1; i < q; ++i) v[i] = u(rng);
  v[0] = v.tail(q - 1).norm() + 0.2 + std::abs(u(rng));
  return v;
}

}  // namespace

TEST(Svec, RoundTripPreservesInnerProduct) {
  std::mt19937_64 rng(1);
  Matrix x = random_psd_interior(4, rng);
  Matrix y = random_psd_interior(4, rng);
  Vector vx = svec(x), vy = svec(y);
  EXPECT_LT((smat(vx, 4) - x).lpNorm<Eigen::Infinity>(), 1e-14);
  EXPECT_NEAR(vx.dot(vy), (x * y).trace(), 1e-12);
}

TEST(Scaling, NesterovToddIdentities) {
  std::mt19937_64 rng(2);
  ConeSpec cone;
  cone.orthant = 3;
  cone.soc = {4};
  cone.psd = {3};
  for (int trial = 0; trial < 20; ++trial) {
    Vector x(cone.dim()), s(cone.dim());
    std::uniform_real_distribution<double> u(0.1, 2.0);
    for (int i = 0; i < 3; ++i) {
      x[i] = u(rng);
      s[i] = u(rng);
    }
    x.segment(3, 4) = random_soc_interior(4, rng);
    s.segment(3, 4) = random_soc_interior(4, rng);
    x.tail(6) = svec(random_psd_interior(3, rng));
    s.tail(6) = svec(random_psd_interior(3, rng));

    detail::Scaling w(cone, x, s);
    Vector lhs = w.apply(x, true, true);    // W^-T x
    Vector rhs = w.apply(s, false, false);  // W s
    EXPECT_LT((lhs - rhs).lpNorm<Eigen::Infinity>(), 1e-9);
    EXPECT_LT((lhs - w.lambda()).lpNorm<Eigen::Infinity>(), 1e-9);

    // W^-1 (W u) = u and W'^-1 (W' u) = u
    Vector uvec(cone.dim());
    for (int i = 0; i < uvec.size(); ++i)
      uvec[i] = std::uniform_real_distribution<double>(-1, 1)(rng);
    Vector a = w.apply(w.apply(uvec, false, false), false, true);
    Vector b = w.apply(w.apply(uvec, true, false), true, true);
    EXPECT_LT((a - uvec).lpNorm<Eigen::Infinity>(), 1e-10);
    EXPECT_LT((b - uvec).lpNorm<Eigen::Infinity>(), 1e-10);
  }
}

TEST(Jordan, SolveInvertsProduct) {
  std::mt19937_64 rng(3);
  ConeSpec cone;
  cone.orthant = 2;
  cone.soc = {3};
  cone.psd = {3};
  Vector lam(cone.dim()), w(cone.dim());
  lam[0] = 0.7;
  lam[1] = 1.4;
  lam.segment(2, 3) = random_soc_interior(3, rng);
  lam.tail(6) = svec(random_psd_interior(3, rng));
  for (int i = 0; i < w.size(); ++i)
    w[i] = std::uniform_real_distribution<double>(-1, 1)(rng);
  Vector rhs = detail::jordan_product(cone, lam, w);
  Vector back = detail::jordan_solve(cone, lam, rhs);
  EXPECT_LT((back - w).lpNorm<Eigen::Infinity>(), 1e-10);
}

TEST(MaxStep, StaysInsideCone) {
  std::mt19937_64 rng(4);
  ConeSpec cone;
  cone.orthant = 2;
  cone.soc = {3};
  cone.psd = {2};
  Vector x(cone.dim());
  x[0] = 0.5;
  x[1] = 2.0;
  x.segment(2, 3) = random_soc_interior(3, rng);
  x.tail(3) = svec(random_psd_interior(2, rng));
  for (int trial = 0; trial < 20; ++trial) {
    Vector dx(cone.dim());
    for (int i = 0; i < dx.size(); ++i)
      dx[i] = std::uniform_real_distribution<double>(-1, 1)(rng);
    double a = detail::max_step(cone, x, dx);
    if (a > 1e5) continue;
    // just inside is fine, just outside is not
    Vector inside = x + 0.999 * a * dx;
    EXPECT_GT(detail::max_step(cone, inside, dx), 0.0);
    Vector probe = x + 1.01 * a * dx;
    bool ok = true;
    for (int i = 0; i < cone.orthant; ++i) ok = ok && probe[i] >= 0;
    auto sb = probe.segment(2, 3);
    ok = ok && sb[0] >= sb.tail(2).norm();
    Eigen::LLT<Matrix> llt(smat(probe.tail(3), 2));
    ok = ok && llt.info() == Eigen::Success;
    EXPECT_FALSE(ok);
  }
}

TEST(Solve, SimpleLp) {
  // min -x1 - 2 x2  s.t.  x1 + x2 + x3 = 1, x >= 0  ->  x = (0,1,0), obj -2
  Matrix a(1, 3);
  a << 1, 1, 1;
  Vector b(1), c(3);
  b << 1;
  c << -1, -2, 0;
  ConeSpec cone;
  cone.orthant = 3;
  auto res = solve(a, b, c, cone);
  ASSERT_EQ(res.status, Status::Optimal);
  EXPECT_NEAR(res.x[0], 0.0, 1e-7);
  EXPECT_NEAR(res.x[1], 1.0, 1e-7);
  EXPECT_NEAR(res.primal_obj, -2.0, 1e-7);
  EXPECT_NEAR(res.dual_obj, -2.0, 1e-7);
}

TEST(Solve, InfeasibleLp) {
  // x1 + x2 = -1, x >= 0 is infeasible
  Matrix a(1, 2);
  a << 1, 1;
  Vector b(1), c(2);
  b << -1;
  c << 1, 1;
  ConeSpec cone;
  cone.orthant = 2;
  auto res = solve(a, b, c, cone);
  EXPECT_EQ(res.status, Status::PrimalInfeasible);
  // Farkas: A'y <= 0, b'y > 0
  EXPECT_GT(b.dot(res.y), 0.5);
  EXPECT_LE((a.transpose() * res.y).maxCoeff(), 1e-8);
}

TEST(Solve, UnboundedLpIsDualInfeasible) {
  //   min -x1 s.t. x1 - x2 = 0, x >= 0 is unbounded below
  Matrix a(1, 2);
  a << 1, -1;
  Vector b(1), c(2);
  b << 0;
  c << -1, 0;
  ConeSpec cone;
  cone.orthant = 2;
  auto res = solve(a, b, c, cone);
  EXPECT_EQ(res.status, Status::DualInfeasible);
}

TEST(Solve, SocProjection) {
  // min -a'xbar s.t. x0 = 1, (x0, xbar) in SOC -> obj = -||a||
  Vector aa(3);
  aa << 0.3, -1.2, 0.5;
  Matrix a(1, 4);
  a << 1, 0, 0, 0;
  Vector b(1), c(4);
  b << 1;
  c << 0, -aa[0], -aa[1], -aa[2];
  ConeSpec cone;
  cone.soc = {4};
  auto res = solve(a, b, c, cone);
  ASSERT_EQ(res.status, Status::Optimal);
  EXPECT_NEAR(res.primal_obj, -aa.norm(), 1e-7);
  EXPECT_LT((res.x.tail(3) - aa / aa.norm()).lpNorm<Eigen::Infinity>(), 1e-6);
}

TEST(Solve, SdpMinEigenvalue) {
  // min <C, X> s.t. tr X = 1, X psd  ->  lambda_min(C)
  Matrix cmat(3, 3);
  cmat << 2, 1, 0, 1, 3, -1, 0, -1, 1;
  ConeSpec cone;
  cone.psd = {3};
  Matrix a(1, svec_dim(3));
  a.row(0) = svec(Matrix::Identity(3, 3)).transpose();
  Vector b(1);
  b << 1;
  Vector c = svec(cmat);
  auto res = solve(a, b, c, cone);
  ASSERT_EQ(res.status, Status::Optimal);
  Eigen::SelfAdjointEigenSolver<Matrix> es(cmat, Eigen::EigenvaluesOnly);
  EXPECT_NEAR(res.primal_obj, es.eigenvalues().minCoeff(), 1e-7);
}

TEST(Solve, MixedConesWithEquality) {
  // min x_orth + p0 + <I, X>
  //  s.t. x_orth + p0 + X_11 = 2, p in SOC(3), X psd(2), x_orth >= 0
  ConeSpec cone;
  cone.orthant = 1;
  cone.soc = {3};
  cone.psd = {2};
  const int n = cone.dim();
  Matrix a = Matrix::Zero(1, n);
  a(0, 0) = 1;
  a(0, 1) = 1;
  Matrix e11 = Matrix::Zero(2, 2);
  e11(0, 0) = 1;
  a.block(0, 4, 1, 3) = svec(e11).transpose();
  Vector b(1);
  b << 2;
  Vector c = Vector::Zero(n);
  c[0] = 1;
  c[1] = 1;
  c.segment(4, 3) = svec(Matrix::Identity(2, 2));
  auto res = solve(a, b, c, cone);
  ASSERT_EQ(res.status, Status::Optimal);
  EXPECT_NEAR(res.primal_obj, 2.0, 1e-6);
  EXPECT_NEAR(res.primal_obj, res.dual_obj, 1e-6);
}

TEST(Solve, FeasibilityProblemZeroObjective) {
  // find X psd with X_11 = 1, X_12 = 0.3 (feasible)
  ConeSpec cone;
  cone.psd = {2};
  Matrix a(2, 3);
  Matrix e11 = Matrix::Zero(2, 2), e12 = Matrix::Zero(2, 2);
  e11(0, 0) = 1;
  e12(0, 1) = e12(1, 0) = 0.5;
  a.row(0) = svec(e11).transpose();
  a.row(1) = svec(e12).transpose();
  Vector b(2);
  b << 1.0, 0.3;
  Vector c = Vector::Zero(3);
  auto res = solve(a, b, c, cone);
  ASSERT_EQ(res.status, Status::Optimal);
  Matrix x = smat(res.x, 2);
  EXPECT_NEAR(x(0, 0), 1.0, 1e-7);
  EXPECT_NEAR(x(0, 1), 0.3, 1e-7);
}

TEST(Solve, InfeasiblePsdConstraint) {
  // X psd with X_11 = 1, X_22 = 1, X_12 = 2 is infeasible
  ConeSpec cone;
  cone.psd = {2};
  Matrix a(3, 3);
  Matrix e11 = Matrix::Zero(2, 2), e22 = Matrix::Zero(2, 2),
         e12 = Matrix::Zero(2, 2);
  e11(0, 0) = 1;
  e22(1, 1) = 1;
  e12(0, 1) = e12(1, 0) = 0.5;
  a.row(0) = svec(e11).transpose();
  a.row(1) = svec(e22).transpose();
  a.row(2) = svec(e12).transpose();
  Vector b(3);
  b << 1, 1, 2;
  Vector c = Vector::Zero(3);
  auto res = solve(a, b, c, cone);
  EXPECT_EQ(res.status, Status::PrimalInfeasible);
}

TEST(Solve, RandomLpWeakDuality) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 3, n = 8;
    Matrix a(m, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = u(rng);
    Vector x0(n);
    for (int i = 0; i < n; ++i) x0[i] = 0.5 + std::abs(u(rng));
    Vector b = a * x0;  // feasible by construction
    Vector c(n);
    for (int i = 0; i < n; ++i) c[i] = u(rng) + 1.5;  // bounded below
    ConeSpec cone;
    cone.orthant = n;
    auto res = solve(a, b, c, cone);
    ASSERT_EQ(res.status, Status::Optimal) << "trial " << trial;
    EXPECT_LE(res.dual_obj, res.primal_obj + 1e-7);
    EXPECT_NEAR(res.primal_obj, res.dual_obj,
                1e-6 * std::max(1.0, std::abs(res.primal_obj)));
    EXPECT_LT((a * res.x - b).lpNorm<Eigen::Infinity>(), 1e-6);
  }
}
