#include "curvlayer/krylov.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace curvlayer {
namespace {

Eigen::VectorXd default_start(Eigen::Index n) {
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = 1.0 + 0.5 * std::sin(0.7 * static_cast<double>(i) + 0.3);
  return v.normalized();
}

void orthogonalize(Eigen::VectorXd& w, const Eigen::MatrixXd& basis, Eigen::Index count) {
  for (int pass = 0; pass < 2; ++pass) {
    for (Eigen::Index i = 0; i < count; ++i) w -= basis.col(i).dot(w) * basis.col(i);
  }
}

}  // namespace

SolveReport gmres(const LinearMap& A, const Eigen::VectorXd& b, Eigen::VectorXd& x, double tol, int restart,
                  int max_iterations) {
  const Eigen::Index n = b.size();
  SolveReport rep;
  if (x.size() != n) x = Eigen::VectorXd::Zero(n);
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    x.setZero();
    rep.converged = true;
    return rep;
  }
  const int m = std::max(1, restart);
  Eigen::MatrixXd V(n, m + 1);
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(m + 1, m);
  Eigen::VectorXd cs(m), sn(m), g(m + 1), w(n), r(n);
  while (rep.iterations < max_iterations) {
    A(x, r);
    r = b - r;
    const double beta = r.norm();
    rep.relative_residual = beta / bnorm;
    if (rep.relative_residual < tol) {
      rep.converged = true;
      return rep;
    }
    V.col(0) = r / beta;
    H.setZero();
    g.setZero();
    g[0] = beta;
    int k = 0;
    for (; k < m && rep.iterations < max_iterations; ++k) {
      A(V.col(k), w);
      ++rep.iterations;
      for (int pass = 0; pass < 2; ++pass) {
        for (int i = 0; i <= k; ++i) {
          const double hij = V.col(i).dot(w);
          H(i, k) += hij;
          w -= hij * V.col(i);
        }
      }
      const double hn = w.norm();
      H(k + 1, k) = hn;
      if (hn > 0.0) V.col(k + 1) = w / hn;
      for (int i = 0; i < k; ++i) {
        const double t = cs[i] * H(i, k) + sn[i] * H(i + 1, k);
        H(i + 1, k) = -sn[i] * H(i, k) + cs[i] * H(i + 1, k);
        H(i, k) = t;
      }
      const double denom = std::hypot(H(k, k), H(k + 1, k));
      cs[k] = denom > 0.0 ? H(k, k) / denom : 1.0;
      sn[k] = denom > 0.0 ? H(k + 1, k) / denom : 0.0;
      H(k, k) = denom;
      H(k + 1, k) = 0.0;
      g[k + 1] = -sn[k] * g[k];
      g[k] = cs[k] * g[k];
      rep.relative_residual = std::abs(g[k + 1]) / bnorm;
      if (rep.relative_residual < tol || hn == 0.0) {
        ++k;
        break;
      }
    }
    const Eigen::VectorXd y =
        H.topLeftCorner(k, k).triangularView<Eigen::Upper>().solve(g.head(k));
    x += V.leftCols(k) * y;
    if (rep.relative_residual < tol) {
      A(x, r);
      rep.relative_residual = (b - r).norm() / bnorm;
      if (rep.relative_residual < 10.0 * tol) {
        rep.converged = true;
        return rep;
      }
    }
  }
  return rep;
}

EigenPair lanczos_extreme(const LinearMap& A, Eigen::Index n, Extreme which, const Eigen::VectorXd& start,
                          double tol, int krylov_dim, int max_restarts) {
  // Thick restart: each cycle keeps half the basis as Ritz vectors nearest the
  // target plus the common residual direction. A V is stored, so the projected
  // matrix is formed explicitly and no tridiagonal bookkeeping is needed.
  EigenPair out;
  if (n == 1) {
    Eigen::VectorXd one = Eigen::VectorXd::Ones(1), r(1);
    A(one, r);
    out.value = r[0];
    out.vector = one;
    out.iterations = 1;
    out.converged = true;
    return out;
  }
  const int m = static_cast<int>(std::max<Eigen::Index>(2, std::min<Eigen::Index>(krylov_dim, n)));
  const int keep = m / 2;
  Eigen::MatrixXd V(n, m + 1), AV(n, m);
  V.col(0) = (start.size() == n && start.norm() > 0.0) ? start.normalized() : default_start(n);
  Eigen::VectorXd w(n);
  int kept = 0;
  for (int cycle = 0; cycle < max_restarts; ++cycle) {
    int dim = m;
    bool invariant = false;
    for (int k = kept; k < m; ++k) {
      A(V.col(k), w);
      ++out.iterations;
      AV.col(k) = w;
      orthogonalize(w, V, k + 1);
      const double nw = w.norm();
      if (nw <= 1e-14 * std::max(1.0, AV.col(k).norm())) {
        dim = k + 1;
        invariant = true;
        break;
      }
      V.col(k + 1) = w / nw;
    }
    Eigen::MatrixXd T = V.leftCols(dim).transpose() * AV.leftCols(dim);
    T = 0.5 * (T + T.transpose()).eval();
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    const int idx = (which == Extreme::Largest) ? dim - 1 : 0;
    const double theta = es.eigenvalues()[idx];
    const Eigen::VectorXd s = es.eigenvectors().col(idx);
    Eigen::VectorXd v = V.leftCols(dim) * s;
    const double nv = v.norm();
    v /= nv;
    const Eigen::VectorXd r = AV.leftCols(dim) * s / nv - theta * v;
    out.value = theta;
    out.residual = r.norm();
    out.vector = v;
    if (out.residual <= tol * std::max(1.0, std::abs(theta)) || invariant) {
      out.converged = out.residual <= 10.0 * tol * std::max(1.0, std::abs(theta));
      return out;
    }
    // Ritz vectors nearest the target, then the residual direction V(:, m).
    kept = std::min(keep, dim);
    Eigen::MatrixXd S(dim, kept);
    for (int i = 0; i < kept; ++i) S.col(i) = es.eigenvectors().col(which == Extreme::Largest ? dim - 1 - i : i);
    const Eigen::MatrixXd Y = V.leftCols(dim) * S;
    const Eigen::MatrixXd AY = AV.leftCols(dim) * S;
    Eigen::VectorXd next = V.col(m);
    V.leftCols(kept) = Y;
    AV.leftCols(kept) = AY;
    orthogonalize(next, V, kept);
    V.col(kept) = next.normalized();
  }
  return out;
}

EigenPair arnoldi_smallest_real(const LinearMap& A, Eigen::Index n, const Eigen::VectorXd& start, double tol,
                                int krylov_dim, int max_restarts) {
  EigenPair out;
  Eigen::VectorXd v = (start.size() == n && start.norm() > 0.0) ? start.normalized() : default_start(n);
  const int m = static_cast<int>(std::min<Eigen::Index>(krylov_dim, n));
  Eigen::MatrixXd V(n, m + 1);
  Eigen::VectorXd w(n);
  for (int restart = 0; restart < max_restarts; ++restart) {
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(m + 1, m);
    V.col(0) = v;
    int k = 0;
    for (; k < m; ++k) {
      A(V.col(k), w);
      ++out.iterations;
      for (int pass = 0; pass < 2; ++pass) {
        for (int i = 0; i <= k; ++i) {
          const double h = V.col(i).dot(w);
          H(i, k) += h;
          w -= h * V.col(i);
        }
      }
      H(k + 1, k) = w.norm();
      if (H(k + 1, k) <= 1e-14 * H.col(k).norm()) {
        ++k;
        break;
      }
      V.col(k + 1) = w / H(k + 1, k);
    }
    const int dim = std::min(k, m);
    Eigen::EigenSolver<Eigen::MatrixXd> es(H.topLeftCorner(dim, dim));
    int idx = 0;
    for (int i = 1; i < dim; ++i) {
      if (es.eigenvalues()[i].real() < es.eigenvalues()[idx].real()) idx = i;
    }
    const double theta = es.eigenvalues()[idx].real();
    const Eigen::VectorXd y = es.eigenvectors().col(idx).real();
    v = (V.leftCols(dim) * y).normalized();
    const double est = std::abs(H(dim, dim - 1) * y[dim - 1]) / y.norm();
    out.value = theta;
    if (est < tol * std::max(1.0, std::abs(theta)) || dim < m) {
      A(v, w);
      ++out.iterations;
      out.residual = (w - theta * v).norm();
      if (out.residual < 10.0 * tol * std::max(1.0, std::abs(theta)) || dim < m) {
        out.vector = v;
        out.converged = out.residual < 10.0 * tol * std::max(1.0, std::abs(theta));
        return out;
      }
    }
  }
  A(v, w);
  out.residual = (w - out.value * v).norm();
  out.vector = v;
  return out;
}

EigenPair lobpcg_smallest(const LinearMap& A, const Preconditioner& T, const Eigen::VectorXd& start, double tol,
                          int max_iterations, double shift_cap) {
  EigenPair out;
  const Eigen::Index n = start.size();
  Eigen::VectorXd x = start.normalized();
  Eigen::VectorXd Ax(n), w(n), Aw(n), p, Ap, r(n);
  A(x, Ax);
  ++out.iterations;
  double theta = x.dot(Ax);
  bool have_p = false;
  for (int it = 0; it < max_iterations; ++it) {
    if (it > 0 && it % 25 == 0) {  // refresh against drift
      x.normalize();
      A(x, Ax);
      ++out.iterations;
      theta = x.dot(Ax);
    }
    r = Ax - theta * x;
    out.residual = r.norm();
    out.value = theta;
    if (out.residual < tol * std::max(1.0, std::abs(theta))) {
      out.vector = x;
      out.converged = true;
      return out;
    }
    T(r, w, std::min(theta, shift_cap));
    // orthonormal basis [x, w, p]
    w -= x.dot(w) * x;
    w -= x.dot(w) * x;
    const double wn = w.norm();
    if (!(wn > 0.0)) break;
    w /= wn;
    A(w, Aw);
    ++out.iterations;
    Eigen::Index k = 2;
    if (have_p) {
      const double px = x.dot(p), pw = w.dot(p);
      p -= px * x + pw * w;
      Ap -= px * Ax + pw * Aw;
      const double pn = p.norm();
      if (pn > 1e-8) {
        p /= pn;
        Ap /= pn;
        k = 3;
      }
    }
    Eigen::MatrixXd G(k, k);
    G(0, 0) = x.dot(Ax);
    G(0, 1) = G(1, 0) = 0.5 * (x.dot(Aw) + w.dot(Ax));
    G(1, 1) = w.dot(Aw);
    if (k == 3) {
      G(0, 2) = G(2, 0) = 0.5 * (x.dot(Ap) + p.dot(Ax));
      G(1, 2) = G(2, 1) = 0.5 * (w.dot(Ap) + p.dot(Aw));
      G(2, 2) = p.dot(Ap);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
    const Eigen::VectorXd c = es.eigenvectors().col(0);
    theta = es.eigenvalues()[0];
    Eigen::VectorXd pn = c[1] * w;
    Eigen::VectorXd Apn = c[1] * Aw;
    if (k == 3) {
      pn += c[2] * p;
      Apn += c[2] * Ap;
    }
    x = c[0] * x + pn;
    Ax = c[0] * Ax + Apn;
    const double xn = x.norm();
    x /= xn;
    Ax /= xn;
    theta = x.dot(Ax);
    p = std::move(pn);
    Ap = std::move(Apn);
    have_p = true;
  }
  out.value = theta;
  out.vector = x;
  r = Ax - theta * x;
  out.residual = r.norm();
  out.converged = out.residual < tol * std::max(1.0, std::abs(theta));
  return out;
}

}  // namespace curvlayer
