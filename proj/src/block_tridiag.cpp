#include "helmsweep/block_tridiag.hpp"

namespace helmsweep {

SchurSequence block_tridiag_factor_blocks(const std::vector<Matrix>& D,
                                          const std::vector<Vector>& cpl,
                                          bool keep_dense) {
  SchurSequence seq;
  seq.block = D.empty() ? 0 : static_cast<int>(D[0].rows());
  seq.cpl = cpl;
  seq.keep_dense = keep_dense;
  Matrix Tprev;
  for (std::size_t l = 0; l < D.size(); ++l) {
    Matrix Tl = D[l];
    if (l > 0) {
      // C T^{-1} C with diagonal C
      Matrix Tinv_c = seq.T.back().solve(Matrix(cpl[l - 1].asDiagonal()));
      Tl.noalias() -= Matrix(cpl[l - 1].asDiagonal()) * Tinv_c;
    }
    if (keep_dense) seq.denseT_.push_back(Tl);
    try {
      seq.T.emplace_back(Tl, "Schur block " + std::to_string(l + 1));
    } catch (const SingularMatrixError&) {
      throw SingularMatrixError("block_tridiag_factor: T_" +
                                std::to_string(l + 1) + " is singular");
    }
  }
  return seq;
}

SchurSequence block_tridiag_factor(const LineOperator& op, bool keep_dense) {
  std::vector<Matrix> D;
  D.reserve(op.n_lines());
  for (const auto& blk : op.D) D.push_back(blk.dense());
  return block_tridiag_factor_blocks(D, op.cpl, keep_dense);
}

Vector block_forward_sweep(const SchurSequence& seq, const Vector& f) {
  if (f.size() != seq.size())
    throw DimensionError("block_forward_sweep: dimension mismatch");
  const int b = seq.block;
  Vector v(f.size());
  for (int l = 0; l < seq.n_blocks(); ++l) {
    Vector r = f.segment(static_cast<Eigen::Index>(l) * b, b);
    if (l > 0)
      r -= seq.cpl[l - 1].cwiseProduct(
          v.segment(static_cast<Eigen::Index>(l - 1) * b, b));
    v.segment(static_cast<Eigen::Index>(l) * b, b) = seq.T[l].solve(r);
  }
  return v;
}

Vector block_lu_solve(const SchurSequence& seq, const Vector& f) {
  const int b = seq.block;
  const int n = seq.n_blocks();
  Vector u(f.size());
  // forward sweep, keeping the per-block right-hand sides r_l = T_l v_l
  std::vector<Vector> r(n);
  Vector v(f.size());
  for (int l = 0; l < n; ++l) {
    r[l] = f.segment(static_cast<Eigen::Index>(l) * b, b);
    if (l > 0)
      r[l] -= seq.cpl[l - 1].cwiseProduct(
          v.segment(static_cast<Eigen::Index>(l - 1) * b, b));
    v.segment(static_cast<Eigen::Index>(l) * b, b) = seq.T[l].solve(r[l]);
  }
  // backward sweep: T_l u_l = T_l v_l - C_l u_{l+1}
  u.segment(static_cast<Eigen::Index>(n - 1) * b, b) =
      v.segment(static_cast<Eigen::Index>(n - 1) * b, b);
  for (int l = n - 2; l >= 0; --l) {
    Vector rhs = r[l] - seq.cpl[l].cwiseProduct(
                            u.segment(static_cast<Eigen::Index>(l + 1) * b, b));
    u.segment(static_cast<Eigen::Index>(l) * b, b) = seq.T[l].solve(rhs);
  }
  return u;
}

}  // namespace helmsweep
