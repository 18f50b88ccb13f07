#include "helmsweep/dense_linalg.hpp"

#include <limits>

namespace helmsweep {

LUFactors::LUFactors(const Matrix& M, const std::string& what) {
  if (M.rows() != M.cols())
    throw DimensionError("dense_lu_factor: matrix not square");
  lu_.compute(M);
  const auto& U = lu_.matrixLU();
  double umax = 0.0, umin = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < U.rows(); ++i) {
    const double d = std::abs(U(i, i));
    umax = std::max(umax, d);
    umin = std::min(umin, d);
  }
  const double eps = std::numeric_limits<double>::epsilon();
  if (umax == 0.0 || umin <= 32.0 * U.rows() * eps * umax)
    throw SingularMatrixError(what + " is singular to working precision");
}

Vector LUFactors::solve(const Vector& b) const {
  if (b.size() != lu_.rows())
    throw DimensionError("LUFactors::solve: dimension mismatch");
  return lu_.solve(b);
}

Matrix LUFactors::solve(const Matrix& B) const {
  if (B.rows() != lu_.rows())
    throw DimensionError("LUFactors::solve: dimension mismatch");
  return lu_.solve(B);
}

LUFactors dense_lu_factor(const Matrix& M, const std::string& what) {
  return LUFactors(M, what);
}

}  // namespace helmsweep
