#pragma once

// Primal-dual path-following interior-point solver for linear conic programs
//
//   (P) min c'x  s.t.  Ax = b, x in K
//   (D) max b'y  s.t.  A'y + s = c, s in K*
//
// over products of the nonnegative orthant, second-order cones, and dense
// PSD blocks (svec-packed). Uses the homogeneous self-dual embedding with
// Nesterov-Todd scalings and a Mehrotra predictor-corrector, so infeasible
// problems terminate with a Farkas certificate instead of diverging.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "plr/basis.hpp"

namespace plr::ipm {

inline constexpr double kSqrt2 = 1.4142135623730951;

inline int svec_dim(int n) { return n * (n + 1) / 2; }

// Column-major lower triangle with off-diagonals scaled by sqrt(2), so that
// <X, Y> = svec(X)' svec(Y).
inline Vector svec(const Matrix& x) {
  const int n = static_cast<int>(x.rows());
  Vector v(svec_dim(n));
  int k = 0;
  for (int j = 0; j < n; ++j) {
    v[k++] = x(j, j);
    for (int i = j + 1; i < n; ++i) v[k++] = kSqrt2 * x(i, j);
  }
  return v;
}

inline Matrix smat(const Eigen::Ref<const Vector>& v, int n) {
  Matrix x(n, n);
  int k = 0;
  for (int j = 0; j < n; ++j) {
    x(j, j) = v[k++];
    for (int i = j + 1; i < n; ++i) {
      x(i, j) = x(j, i) = v[k++] / kSqrt2;
    }
  }
  return x;
}

struct ConeSpec {
  int orthant = 0;
  std::vector<int> soc;  // block dimensions, each >= 2
  std::vector<int> psd;  // matrix side lengths

  int dim() const {
    int d = orthant;
    for (int q : soc) d += q;
    for (int p : psd) d += svec_dim(p);
    return d;
  }
  // Barrier degree: orthant dim + one per SOC block + PSD side lengths.
  int degree() const {
    int d = orthant + static_cast<int>(soc.size());
    for (int p : psd) d += p;
    return d;
  }
};

enum class Status {
  Optimal,
  PrimalInfeasible,
  DualInfeasible,
  MaxIterations,
  NumericalFailure,
};

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Optimal: return "Optimal";
    case Status::PrimalInfeasible: return "PrimalInfeasible";
    case Status::DualInfeasible: return "DualInfeasible";
    case Status::MaxIterations: return "MaxIterations";
    case Status::NumericalFailure: return "NumericalFailure";
  }
  return "?";
}

struct Options {
  double tol_feas = 1e-10;
  double tol_gap = 1e-10;
  double tol_infeas = 1e-10;
  // Degenerate problems (no strictly complementary pair) stall near machine
  // precision; the best iterate is still accepted within this factor.
  double loose_factor = 1e3;
  int max_iterations = 200;
  double step_fraction = 0.99;
  double initial_scale = 1.0;  // iterates start at initial_scale * e
};

struct Result {
  Status status = Status::NumericalFailure;
  Vector x, y, s;  // divided by tau when Optimal; Farkas ray when infeasible
  double tau = 0.0, kappa = 0.0;
  int iterations = 0;
  double primal_obj = 0.0, dual_obj = 0.0;
  double primal_res = 0.0, dual_res = 0.0, rel_gap = 0.0;
};

namespace detail {

struct SocScaling {
  double beta;  // (res_x / res_s)^(1/4)
  Vector v;     // J-unit scaling point, W = beta * (2 v v' - J)
};

struct PsdScaling {
  Matrix r, rinv;
  Vector sigma;  // scaled eigenvalues, lambda = svec(diag(sigma))
};

// J u = (u0, -u1).
inline Vector jmul(const Eigen::Ref<const Vector>& u) {
  Vector r = -u;
  r[0] = u[0];
  return r;
}

class Scaling {
 public:
  Scaling(const ConeSpec& cone, const Vector& x, const Vector& s)
      : cone_(cone) {
    int off = 0;
    w_orth_ = (x.head(cone.orthant).array() / s.head(cone.orthant).array())
                  .sqrt()
                  .matrix();
    lambda_.resize(cone.dim());
    lambda_.head(cone.orthant) =
        (x.head(cone.orthant).array() * s.head(cone.orthant).array())
            .sqrt()
            .matrix();
    off = cone.orthant;
    for (int q : cone.soc) {
      auto xb = x.segment(off, q);
      auto sb = s.segment(off, q);
      const double resx = xb[0] * xb[0] - xb.tail(q - 1).squaredNorm();
      const double ress = sb[0] * sb[0] - sb.tail(q - 1).squaredNorm();
      if (resx <= 0.0 || ress <= 0.0)
        throw std::runtime_error("ipm: SOC iterate left the cone");
      Vector xh = xb / std::sqrt(resx);
      Vector sh = sb / std::sqrt(ress);
      const double gamma = std::sqrt((1.0 + xh.dot(sh)) / 2.0);
      Vector wbar = (xh + jmul(sh)) / (2.0 * gamma);
      Vector v = wbar;
      v[0] += 1.0;
      v /= std::sqrt(2.0 * (wbar[0] + 1.0));
      SocScaling sc;
      sc.beta = std::pow(resx / ress, 0.25);
      sc.v = v;
      soc_.push_back(sc);
      // lambda = W s
      lambda_.segment(off, q) = apply_soc(sc, sb, false, false);
      off += q;
    }
    for (int p : cone.psd) {
      const int sd = svec_dim(p);
      Matrix xm = smat(x.segment(off, sd), p);
      Matrix sm = smat(s.segment(off, sd), p);
      Eigen::LLT<Matrix> lx(xm), ls(sm);
      if (lx.info() != Eigen::Success || ls.info() != Eigen::Success)
        throw std::runtime_error("ipm: PSD iterate left the cone");
      Matrix l = lx.matrixL();
      Matrix m = ls.matrixL();
      Eigen::JacobiSVD<Matrix> svd(m.transpose() * l,
                                   Eigen::ComputeFullU | Eigen::ComputeFullV);
      Vector sig = svd.singularValues();
      PsdScaling sc;
      sc.sigma = sig;
      Matrix sig_isqrt = sig.array().sqrt().inverse().matrix().asDiagonal();
      sc.r = l * svd.matrixV() * sig_isqrt;
      sc.rinv = sig_isqrt * svd.matrixU().transpose() * m.transpose();
      psd_.push_back(sc);
      lambda_.segment(off, sd) = svec(Matrix(sig.asDiagonal()));
      off += sd;
    }
  }

  const Vector& lambda() const { return lambda_; }

  // W u (transpose=false) or W' u (transpose=true); inverse selects W^-1/W^-T.
  Vector apply(const Eigen::Ref<const Vector>& u, bool transpose,
               bool inverse) const {
    Vector r(u.size());
    auto wo = w_orth_.array();
    if (!inverse)
      r.head(cone_.orthant) = (u.head(cone_.orthant).array() * wo).matrix();
    else
      r.head(cone_.orthant) = (u.head(cone_.orthant).array() / wo).matrix();
    int off = cone_.orthant;
    for (std::size_t k = 0; k < soc_.size(); ++k) {
      const int q = static_cast<int>(soc_[k].v.size());
      r.segment(off, q) =
          apply_soc(soc_[k], u.segment(off, q), transpose, inverse);
      off += q;
    }
    for (std::size_t k = 0; k < psd_.size(); ++k) {
      const int p = static_cast<int>(psd_[k].r.rows());
      const int sd = svec_dim(p);
      Matrix um = smat(u.segment(off, sd), p);
      const Matrix& rm = psd_[k].r;
      const Matrix& ri = psd_[k].rinv;
      Matrix res;
      if (!inverse) {
        // W  : U -> R' U R,  W' : U -> R U R'
        res = transpose ? Matrix(rm * um * rm.transpose())
                        : Matrix(rm.transpose() * um * rm);
      } else {
        // W^-1: U -> R^-T U R^-1 (inverts W), W^-T: U -> R^-1 U R^-T
        res = transpose ? Matrix(ri * um * ri.transpose())
                        : Matrix(ri.transpose() * um * ri);
      }
      res = ((res + res.transpose()) / 2.0).eval();
      r.segment(off, sd) = svec(res);
      off += sd;
    }
    return r;
  }

 private:
  static Vector apply_soc(const SocScaling& sc,
                          const Eigen::Ref<const Vector>& u, bool /*sym*/,
                          bool inverse) {
    // W = beta (2 v v' - J); W^-1 = (1/beta) (2 (Jv)(Jv)' - J)
    if (!inverse) {
      Vector r = 2.0 * sc.v.dot(u) * sc.v - jmul(u);
      return sc.beta * r;
    }
    Vector jv = jmul(sc.v);
    Vector r = 2.0 * jv.dot(u) * jv - jmul(u);
    return r / sc.beta;
  }

  ConeSpec cone_;
  Vector w_orth_;
  Vector lambda_;
  std::vector<SocScaling> soc_;
  std::vector<PsdScaling> psd_;
};

// Jordan product u o v per cone.
inline Vector jordan_product(const ConeSpec& cone,
                             const Eigen::Ref<const Vector>& u,
                             const Eigen::Ref<const Vector>& v) {
  Vector r(u.size());
  r.head(cone.orthant) =
      (u.head(cone.orthant).array() * v.head(cone.orthant).array()).matrix();
  int off = cone.orthant;
  for (int q : cone.soc) {
    auto ub = u.segment(off, q);
    auto vb = v.segment(off, q);
    r[off] = ub.dot(vb);
    r.segment(off + 1, q - 1) =
        ub[0] * vb.tail(q - 1) + vb[0] * ub.tail(q - 1);
    off += q;
  }
  for (int p : cone.psd) {
    const int sd = svec_dim(p);
    Matrix um = smat(u.segment(off, sd), p);
    Matrix vm = smat(v.segment(off, sd), p);
    Matrix prod = (um * vm + vm * um) / 2.0;
    r.segment(off, sd) = svec(prod);
    off += sd;
  }
  return r;
}

// Solve lambda o w = rhs for w.
inline Vector jordan_solve(const ConeSpec& cone, const Vector& lambda,
                           const Eigen::Ref<const Vector>& rhs) {
  Vector w(rhs.size());
  w.head(cone.orthant) = (rhs.head(cone.orthant).array() /
                          lambda.head(cone.orthant).array())
                             .matrix();
  int off = cone.orthant;
  for (int q : cone.soc) {
    auto lb = lambda.segment(off, q);
    auto rb = rhs.segment(off, q);
    const double det = lb[0] * lb[0] - lb.tail(q - 1).squaredNorm();
    const double w0 = (lb[0] * rb[0] - lb.tail(q - 1).dot(rb.tail(q - 1))) / det;
    w[off] = w0;
    w.segment(off + 1, q - 1) = (rb.tail(q - 1) - w0 * lb.tail(q - 1)) / lb[0];
    off += q;
  }
  for (int p : cone.psd) {
    const int sd = svec_dim(p);
    Matrix lm = smat(lambda.segment(off, sd), p);
    Matrix rm = smat(rhs.segment(off, sd), p);
    // lambda is diagonal in the scaled frame up to numerical symmetry; solve
    // the Sylvester system entrywise via its eigen-basis.
    Eigen::SelfAdjointEigenSolver<Matrix> es(lm);
    const Matrix& u = es.eigenvectors();
    Vector ev = es.eigenvalues();
    Matrix rt = u.transpose() * rm * u;
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) rt(i, j) *= 2.0 / (ev[i] + ev[j]);
    Matrix wm = u * rt * u.transpose();
    wm = ((wm + wm.transpose()) / 2.0).eval();
    w.segment(off, sd) = svec(wm);
    off += sd;
  }
  return w;
}

// Identity element of the cone's Jordan algebra.
inline Vector identity(const ConeSpec& cone) {
  Vector e = Vector::Zero(cone.dim());
  e.head(cone.orthant).setOnes();
  int off = cone.orthant;
  for (int q : cone.soc) {
    e[off] = 1.0;
    off += q;
  }
  for (int p : cone.psd) {
    e.segment(off, svec_dim(p)) = svec(Matrix::Identity(p, p));
    off += svec_dim(p);
  }
  return e;
}

// Largest step a with u + a du in the cone (capped).
inline double max_step(const ConeSpec& cone, const Vector& u,
                       const Vector& du, double cap = 1e6) {
  double alpha = cap;
  for (int i = 0; i < cone.orthant; ++i)
    if (du[i] < 0.0) alpha = std::min(alpha, -u[i] / du[i]);
  int off = cone.orthant;
  for (int q : cone.soc) {
    auto ub = u.segment(off, q);
    auto db = du.segment(off, q);
    const double a = db[0] * db[0] - db.tail(q - 1).squaredNorm();
    const double b = 2.0 * (ub[0] * db[0] - ub.tail(q - 1).dot(db.tail(q - 1)));
    const double c = ub[0] * ub[0] - ub.tail(q - 1).squaredNorm();
    // first positive root of a t^2 + b t + c = 0, if any
    double root = cap;
    const double disc = b * b - 4.0 * a * c;
    if (std::abs(a) < 1e-300) {
      if (b < 0.0) root = -c / b;
    } else if (disc >= 0.0) {
      const double sq = std::sqrt(disc);
      const double r1 = (-b - sq) / (2.0 * a);
      const double r2 = (-b + sq) / (2.0 * a);
      root = cap;
      if (r1 > 0.0) root = std::min(root, r1);
      if (r2 > 0.0) root = std::min(root, r2);
    }
    if (db[0] < 0.0) root = std::min(root, -ub[0] / db[0]);
    alpha = std::min(alpha, root);
    off += q;
  }
  for (int p : cone.psd) {
    const int sd = svec_dim(p);
    Matrix um = smat(u.segment(off, sd), p);
    Matrix dm = smat(du.segment(off, sd), p);
    Eigen::LLT<Matrix> llt(um);
    if (llt.info() != Eigen::Success) return 0.0;
    Matrix l = llt.matrixL();
    Matrix t = l.triangularView<Eigen::Lower>().solve(dm);
    Matrix w =
        l.triangularView<Eigen::Lower>().solve(t.transpose()).transpose();
    Eigen::SelfAdjointEigenSolver<Matrix> es((w + w.transpose()) / 2.0,
                                             Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues().minCoeff();
    if (lmin < 0.0) alpha = std::min(alpha, -1.0 / lmin);
    off += sd;
  }
  return alpha;
}

}  // namespace detail

class Solver {
 public:
  Solver(Matrix a, Vector b, Vector c, ConeSpec cone, Options opt = {})
      : a_(std::move(a)),
        b_(std::move(b)),
        c_(std::move(c)),
        cone_(std::move(cone)),
        opt_(opt) {
    if (a_.rows() != b_.size() || a_.cols() != c_.size() ||
        a_.cols() != cone_.dim())
      throw std::invalid_argument("ipm: inconsistent problem dimensions");
  }

  Result solve() {
    const int m = static_cast<int>(a_.rows());
    const int n = static_cast<int>(a_.cols());
    const double nu = cone_.degree() + 1;

    Vector x = opt_.initial_scale * detail::identity(cone_);
    Vector s = x;
    Vector y = Vector::Zero(m);
    double tau = 1.0, kappa = opt_.initial_scale;

    Result best;
    double best_score = std::numeric_limits<double>::infinity();

    Result res;
    for (int iter = 0; iter <= opt_.max_iterations; ++iter) {
      res.iterations = iter;

      // Residuals of the homogeneous model.
      Vector rp = a_ * x - b_ * tau;
      Vector rd = -a_.transpose() * y - s + c_ * tau;
      double rg = b_.dot(y) - c_.dot(x) - kappa;
      const double mu = (x.dot(s) + tau * kappa) / nu;

      // Scaled convergence measures.
      const double pobj = c_.dot(x) / tau;
      const double dobj = b_.dot(y) / tau;
      const double pres =
          (a_ * (x / tau) - b_).lpNorm<Eigen::Infinity>() / (1.0 + bnorm());
      const double dres =
          (a_.transpose() * (y / tau) + s / tau - c_).lpNorm<Eigen::Infinity>() /
          (1.0 + cnorm());
      const double gap = x.dot(s) / (tau * tau);
      const double relgap =
          std::min(gap, std::abs(pobj - dobj)) /
          std::max(1.0, std::min(std::abs(pobj), std::abs(dobj)));

      const double score = std::max({pres, dres, relgap});
      if (score < best_score) {
        best_score = score;
        best = res;
        best.x = x / tau;
        best.y = y / tau;
        best.s = s / tau;
        best.tau = tau;
        best.kappa = kappa;
        best.primal_obj = pobj;
        best.dual_obj = dobj;
        best.primal_res = pres;
        best.dual_res = dres;
        best.rel_gap = relgap;
      }

      if (pres <= opt_.tol_feas && dres <= opt_.tol_feas &&
          relgap <= opt_.tol_gap) {
        res.status = Status::Optimal;
        finalize(res, x, y, s, tau, kappa, pobj, dobj, pres, dres, relgap);
        return res;
      }

      // Infeasibility certificates.
      const double by = b_.dot(y);
      if (by > 0.0) {
        const double inf_res =
            (a_.transpose() * y + s).lpNorm<Eigen::Infinity>() / by;
        if (inf_res <= opt_.tol_infeas * (1.0 + cnorm())) {
          res.status = Status::PrimalInfeasible;
          res.x = x;
          res.y = y / by;
          res.s = s / by;
          res.tau = tau;
          res.kappa = kappa;
          return res;
        }
      }
      const double cx = c_.dot(x);
      if (cx < 0.0) {
        const double inf_res = (a_ * x).lpNorm<Eigen::Infinity>() / (-cx);
        if (inf_res <= opt_.tol_infeas * (1.0 + bnorm())) {
          res.status = Status::DualInfeasible;
          res.x = x / (-cx);
          res.y = y;
          res.s = s;
          res.tau = tau;
          res.kappa = kappa;
          return res;
        }
      }

      if (iter == opt_.max_iterations) break;

      try {
        detail::Scaling scaling(cone_, x, s);
        const Vector& lambda = scaling.lambda();

        if (!factorize(scaling)) break;

        // System 2 depends only on the scaling.
        Vector u2, v2;
        solve_kkt(scaling, -c_, b_, u2, v2);
        const double denom = b_.dot(v2) - c_.dot(u2) + kappa / tau;

        // Affine (predictor) direction.
        Vector lam_lam = detail::jordan_product(cone_, lambda, lambda);
        Vector dx_a, dy_a, ds_a;
        double dtau_a, dkappa_a;
        {
          Vector rhs4 = -lam_lam;
          double rhs5 = -tau * kappa;
          newton_step(scaling, rp, rd, rg, rhs4, rhs5, tau, kappa, u2, v2,
                      denom, dx_a, dy_a, ds_a, dtau_a, dkappa_a);
        }
        double alpha_a = step_length(x, s, tau, kappa, dx_a, ds_a, dtau_a,
                                     dkappa_a);
        alpha_a = std::min(1.0, alpha_a);
        const double mu_a =
            ((x + alpha_a * dx_a).dot(s + alpha_a * ds_a) +
             (tau + alpha_a * dtau_a) * (kappa + alpha_a * dkappa_a)) /
            nu;
        double sigma = std::pow(std::max(0.0, mu_a / mu), 3.0);
        sigma = std::min(1.0, sigma);

        // Combined (corrector) direction.
        Vector dx, dy, ds;
        double dtau, dkappa;
        {
          Vector wdx = scaling.apply(dx_a, true, true);    // W^-T dx_aff
          Vector wds = scaling.apply(ds_a, false, false);  // W ds_aff
          Vector corr = detail::jordan_product(cone_, wdx, wds);
          Vector e = detail::identity(cone_);
          Vector rhs4 = -lam_lam - corr + sigma * mu * e;
          double rhs5 = -tau * kappa - dtau_a * dkappa_a + sigma * mu;
          newton_step(scaling, rp, rd, rg, rhs4, rhs5, tau, kappa, u2, v2,
                      denom, dx, dy, ds, dtau, dkappa);
        }
        double alpha = step_length(x, s, tau, kappa, dx, ds, dtau, dkappa);
        alpha = std::min(1.0, opt_.step_fraction * alpha);
        if (alpha < 1e-12 || !std::isfinite(alpha) ||
            !dx.allFinite() || !ds.allFinite() || !dy.allFinite())
          break;

        x += alpha * dx;
        y += alpha * dy;
        s += alpha * ds;
        tau += alpha * dtau;
        kappa += alpha * dkappa;
      } catch (const std::runtime_error&) {
        break;  // an iterate grazed the cone boundary; keep the best point
      }
    }

    // Loop ended without meeting the strict tolerances: accept the best
    // iterate within the loose band, otherwise report the stop reason.
    if (best.primal_res <= opt_.loose_factor * opt_.tol_feas &&
        best.dual_res <= opt_.loose_factor * opt_.tol_feas &&
        best.rel_gap <= opt_.loose_factor * opt_.tol_gap) {
      best.status = Status::Optimal;
    } else if (res.iterations >= opt_.max_iterations) {
      best.status = Status::MaxIterations;
    } else {
      best.status = Status::NumericalFailure;
    }
    best.iterations = res.iterations;
    return best;
  }

 private:
  double bnorm() const { return b_.size() ? b_.lpNorm<Eigen::Infinity>() : 0.0; }
  double cnorm() const { return c_.size() ? c_.lpNorm<Eigen::Infinity>() : 0.0; }

  void finalize(Result& r, const Vector& x, const Vector& y, const Vector& s,
                double tau, double kappa, double pobj, double dobj,
                double pres, double dres, double relgap) const {
    r.x = x / tau;
    r.y = y / tau;
    r.s = s / tau;
    r.tau = tau;
    r.kappa = kappa;
    r.primal_obj = pobj;
    r.dual_obj = dobj;
    r.primal_res = pres;
    r.dual_res = dres;
    r.rel_gap = relgap;
  }

  bool factorize(const detail::Scaling& scaling) {
    const int m = static_cast<int>(a_.rows());
    bw_.resize(m, a_.cols());
    for (int i = 0; i < m; ++i)
      bw_.row(i) = scaling.apply(a_.row(i).transpose(), false, false)
                       .transpose();
    Matrix mm = bw_ * bw_.transpose();
    const double shift0 = mm.diagonal().cwiseAbs().maxCoeff();
    llt_.compute(mm);
    double bump = 1e-14;
    while (llt_.info() != Eigen::Success && bump <= 1e-6) {
      Matrix mreg = mm + bump * shift0 * Matrix::Identity(m, m);
      llt_.compute(mreg);
      bump *= 100.0;
    }
    return llt_.info() == Eigen::Success;
  }

  // Solve  Phi u - A' v = f,  A u = g  with Phi = W^-1 W^-T.
  void solve_kkt(const detail::Scaling& scaling, const Vector& f,
                 const Vector& g, Vector& u, Vector& v) const {
    auto pass = [&](const Vector& ff, const Vector& gg, Vector& uu,
                    Vector& vv) {
      Vector wf = scaling.apply(ff, false, false);  // W f
      vv = llt_.solve(gg - bw_ * wf);
      uu = scaling.apply(wf + bw_.transpose() * vv, true, false);  // W'( . )
    };
    pass(f, g, u, v);
    // one round of iterative refinement
    Vector rf = f - (scaling.apply(scaling.apply(u, true, true), false, true)) +
                a_.transpose() * v;
    Vector rg2 = g - a_ * u;
    Vector du, dv;
    pass(rf, rg2, du, dv);
    u += du;
    v += dv;
  }

  void newton_step(const detail::Scaling& scaling, const Vector& rp,
                   const Vector& rd, double rg, const Vector& rhs4,
                   double rhs5, double tau, double kappa, const Vector& u2,
                   const Vector& v2, double denom, Vector& dx, Vector& dy,
                   Vector& ds, double& dtau, double& dkappa) const {
    Vector dc = detail::jordan_solve(cone_, scaling.lambda(), rhs4);
    Vector winv_dc = scaling.apply(dc, false, true);  // W^-1 dc
    Vector f1 = -rd + winv_dc;
    Vector u1, v1;
    solve_kkt(scaling, f1, -rp, u1, v1);
    dtau = (-rg - b_.dot(v1) + c_.dot(u1) + rhs5 / tau) / denom;
    dx = u1 + dtau * u2;
    dy = v1 + dtau * v2;
    // ds = W^-1 (dc - W^-T dx)
    ds = scaling.apply(dc - scaling.apply(dx, true, true), false, true);
    dkappa = (rhs5 - kappa * dtau) / tau;
  }

  double step_length(const Vector& x, const Vector& s, double tau,
                     double kappa, const Vector& dx, const Vector& ds,
                     double dtau, double dkappa) const {
    double alpha = detail::max_step(cone_, x, dx);
    alpha = std::min(alpha, detail::max_step(cone_, s, ds));
    if (dtau < 0.0) alpha = std::min(alpha, -tau / dtau);
    if (dkappa < 0.0) alpha = std::min(alpha, -kappa / dkappa);
    return alpha;
  }

  Matrix a_;
  Vector b_, c_;
  ConeSpec cone_;
  Options opt_;
  Matrix bw_;
  Eigen::LLT<Matrix> llt_;
};

inline Result solve(const Matrix& a, const Vector& b, const Vector& c,
                    const ConeSpec& cone, const Options& opt = {}) {
  return Solver(a, b, c, cone, opt).solve();
}

}  // namespace plr::ipm
