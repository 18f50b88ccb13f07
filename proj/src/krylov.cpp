#include "helmsweep/krylov.hpp"

#include <cmath>
#include <sstream>

namespace helmsweep {

std::string IterationReport::to_json() const {
  std::ostringstream os;
  os.precision(17);
  os << "{\"method\":\"" << method << "\",\"iters\":" << iters
     << ",\"converged\":" << (converged ? "true" : "false")
     << ",\"diverged\":" << (diverged ? "true" : "false")
     << ",\"final_res\":" << final_res << ",\"history\":[";
  for (std::size_t i = 0; i < history.size(); ++i) {
    if (i) os << ",";
    os << history[i];
  }
  os << "],\"wall_ms\":" << wall_ms << "}";
  return os.str();
}

std::pair<Vector, IterationReport> gmres(const LinearMap& A,
                                         const LinearMap& precond,
                                         const Vector& b,
                                         const SolverOptions& opts) {
  IterationReport rep;
  rep.method = "gmres";
  const bool left = opts.side == PrecondSide::Left;
  auto M = [&](const Vector& v) { return precond ? precond(v) : v; };

  const Eigen::Index n = b.size();
  Vector x = Vector::Zero(n);

  const Vector r0 = left ? M(b) : b;
  const double beta = r0.norm();
  if (beta == 0.0 || opts.tol >= 1.0) {
    rep.converged = true;
    rep.history = {beta == 0.0 ? 0.0 : 1.0};
    return {x, rep};
  }

  const int maxit = std::min<int>(opts.maxit, static_cast<int>(n));
  std::vector<Vector> V;
  V.push_back(r0 / beta);
  Matrix H = Matrix::Zero(maxit + 1, maxit);
  std::vector<Complex> cs(maxit), sn(maxit);
  Vector g = Vector::Zero(maxit + 1);
  g(0) = beta;
  rep.history.push_back(1.0);

  int k = 0;
  for (; k < maxit; ++k) {
    Vector w = left ? M(A(V[k])) : A(M(V[k]));
    for (int i = 0; i <= k; ++i) {  // modified Gram-Schmidt
      H(i, k) = V[i].dot(w);        // conjugated inner product
      w -= H(i, k) * V[i];
    }
    const double hnorm = w.norm();
    H(k + 1, k) = hnorm;

    // apply accumulated rotations, then the new one
    for (int i = 0; i < k; ++i) {
      const Complex t = cs[i] * H(i, k) + sn[i] * H(i + 1, k);
      H(i + 1, k) = -std::conj(sn[i]) * H(i, k) + cs[i] * H(i + 1, k);
      H(i, k) = t;
    }
    {
      const Complex a = H(k, k);
      const double bb = hnorm;
      const double rho = std::sqrt(std::norm(a) + bb * bb);
      if (rho == 0.0) {
        cs[k] = 1.0;
        sn[k] = 0.0;
      } else {
        cs[k] = std::abs(a) / rho;
        const Complex phase =
            std::abs(a) == 0.0 ? Complex(1.0, 0.0) : a / std::abs(a);
        sn[k] = phase * bb / rho;
        H(k, k) = phase * rho;
      }
      const Complex t = cs[k] * g(k);
      g(k + 1) = -std::conj(sn[k]) * g(k);
      g(k) = t;
    }

    const double rel = std::abs(g(k + 1)) / beta;
    rep.history.push_back(rel);
    const bool happy = hnorm <= 1e-14 * std::abs(H(k, k));
    if (rel <= opts.tol || happy) {
      rep.converged = true;
      rep.exact_breakdown = happy && rel > opts.tol;
      ++k;
      break;
    }
    if (k + 1 < maxit) V.push_back(w / hnorm);
  }
  rep.iters = k;
  rep.final_res = rep.history.back();

  // assemble the iterate from the triangularized least-squares system
  if (k > 0) {
    Vector y = Vector::Zero(k);
    for (int i = k - 1; i >= 0; --i) {
      Complex s = g(i);
      for (int j = i + 1; j < k; ++j) s -= H(i, j) * y(j);
      y(i) = s / H(i, i);
    }
    Vector z = Vector::Zero(n);
    for (int i = 0; i < k; ++i) z += y(i) * V[i];
    x = left ? z : M(z);
  }
  return {x, rep};
}

std::pair<Vector, IterationReport> richardson(const LinearMap& A,
                                              const LinearMap& precond,
                                              const Vector& b,
                                              const SolverOptions& opts) {
  IterationReport rep;
  rep.method = "richardson";
  auto M = [&](const Vector& v) { return precond ? precond(v) : v; };

  Vector x = Vector::Zero(b.size());
  const Vector z0 = M(b);
  const double nrm0 = opts.monitor_true_residual ? b.norm() : z0.norm();
  if (nrm0 == 0.0 || opts.tol >= 1.0) {
    rep.converged = true;
    rep.history = {nrm0 == 0.0 ? 0.0 : 1.0};
    return {x, rep};
  }
  rep.history.push_back(1.0);
  Vector z = z0;
  for (int n = 1; n <= opts.maxit; ++n) {
    x += z;
    const Vector r = b - A(x);
    z = M(r);
    const double rel =
        (opts.monitor_true_residual ? r.norm() : z.norm()) / nrm0;
    rep.history.push_back(rel);
    rep.iters = n;
    if (rel <= opts.tol) {
      rep.converged = true;
      break;
    }
    if (rel > opts.divergence_guard || !std::isfinite(rel)) {
      rep.diverged = true;
      break;
    }
  }
  rep.final_res = rep.history.back();
  return {x, rep};
}

}  // namespace helmsweep
