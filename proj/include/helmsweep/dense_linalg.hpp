#ifndef HELMSWEEP_DENSE_LINALG_HPP
#define HELMSWEEP_DENSE_LINALG_HPP

#include "helmsweep/types.hpp"

namespace helmsweep {

/// Partial-pivoting LU of a square complex matrix with a singularity check
/// against working precision.
class LUFactors {
 public:
  LUFactors() = default;
  explicit LUFactors(const Matrix& M, const std::string& what = "matrix");

  Vector solve(const Vector& b) const;
  Matrix solve(const Matrix& B) const;
  Eigen::Index rows() const { return lu_.rows(); }
  /// reconstruction P^T L U (test hook)
  Matrix reconstruct() const { return lu_.reconstructedMatrix(); }

 private:
  Eigen::PartialPivLU<Matrix> lu_;
};

/// Factor M, throwing SingularMatrixError when M is singular to working
/// precision (smallest |U_ii| below n*eps times the largest).
LUFactors dense_lu_factor(const Matrix& M, const std::string& what = "matrix");

}  // namespace helmsweep

#endif
