#ifndef HELMSWEEP_BLOCK_TRIDIAG_HPP
#define HELMSWEEP_BLOCK_TRIDIAG_HPP

#include <vector>

#include "helmsweep/dense_linalg.hpp"
#include "helmsweep/line_operator.hpp"

namespace helmsweep {

/// Factored Schur-complement sequence T_1 = D_1,
/// T_l = D_l - C_{l-1} T_{l-1}^{-1} C_{l-1} of a block-tridiagonal system
/// with diagonal coupling blocks; one factored T per gridline.
class SchurSequence {
 public:
  std::vector<LUFactors> T;   ///< factored Schur blocks
  std::vector<Vector> cpl;    ///< couplings (n-1), shared with the operator
  int block = 0;

  int n_blocks() const { return static_cast<int>(T.size()); }
  Eigen::Index size() const {
    return static_cast<Eigen::Index>(n_blocks()) * block;
  }
  /// unfactored T_l (recomputed; test hook)
  const std::vector<Matrix>& dense_T() const { return denseT_; }
  std::vector<Matrix> denseT_;
  bool keep_dense = false;
};

/// Factor the gridline blocks of op.  Throws SingularMatrixError naming the
/// offending block when a T_l is singular.
SchurSequence block_tridiag_factor(const LineOperator& op,
                                   bool keep_dense = false);

/// Generic variant over explicit block lists (used by subdomain systems and
/// exterior factorizations).
SchurSequence block_tridiag_factor_blocks(const std::vector<Matrix>& D,
                                          const std::vector<Vector>& cpl,
                                          bool keep_dense = false);

/// Solve via one forward substitution (T_l v_l = f_l - C_{l-1} v_{l-1}) and
/// one backward substitution (T_l u_l = T_l v_l - C_l u_{l+1}).  The last
/// block of the forward sweep is already the solution there.
Vector block_lu_solve(const SchurSequence& seq, const Vector& f);

/// Forward sweep only; returns the intermediate v (whose transferred
/// sources satisfy f~_l = f_l - C_{l-1} T_{l-1}^{-1} f~_{l-1}).
Vector block_forward_sweep(const SchurSequence& seq, const Vector& f);

}  // namespace helmsweep

#endif
