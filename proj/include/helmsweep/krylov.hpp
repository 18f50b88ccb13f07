#ifndef HELMSWEEP_KRYLOV_HPP
#define HELMSWEEP_KRYLOV_HPP

#include <functional>
#include <string>
#include <vector>

#include "helmsweep/types.hpp"

namespace helmsweep {

using LinearMap = std::function<Vector(const Vector&)>;

struct IterationReport {
  std::string method;
  int iters = 0;
  bool converged = false;
  bool exact_breakdown = false;  ///< happy breakdown: iterate is exact
  bool diverged = false;
  std::vector<double> history;  ///< relative residual per iteration
  double final_res = 0.0;
  double wall_ms = 0.0;
  bool resolution_warning = false;

  std::string to_json() const;
};

enum class PrecondSide { Left, Right };

struct SolverOptions {
  double tol = 1e-6;
  int maxit = 100;
  PrecondSide side = PrecondSide::Left;
  double divergence_guard = 1e6;  ///< declare divergence past this rel. res.
  /// Richardson only: stop on the plain relative residual |b-Ax|/|b|
  /// instead of the preconditioned one.
  bool monitor_true_residual = false;
};

/// Unrestarted GMRES with modified Gram-Schmidt and Givens-rotation
/// residual estimates.  precond may be empty (unpreconditioned).  The
/// stopping quantity is the relative preconditioned residual for left
/// preconditioning and the relative true residual for right.
std::pair<Vector, IterationReport> gmres(const LinearMap& A,
                                         const LinearMap& precond,
                                         const Vector& b,
                                         const SolverOptions& opts);

/// Preconditioned Richardson iteration x <- x + M^{-1}(b - A x) from a zero
/// initial guess, stopping on the relative preconditioned residual.
std::pair<Vector, IterationReport> richardson(const LinearMap& A,
                                              const LinearMap& precond,
                                              const Vector& b,
                                              const SolverOptions& opts);

}  // namespace helmsweep

#endif
