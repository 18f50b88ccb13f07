#include "helmsweep/preconditioners.hpp"

namespace helmsweep {

LuSweepPreconditioner::LuSweepPreconditioner(const LineOperator& op,
                                             const StripPartition& p,
                                             const TransmissionSet& ts,
                                             const TransmissionConfig& left_kind)
    : op_(&op), p_(&p) {
  // per-line Schur recurrence that restarts at every strip interface with
  // the approximate interface operator; with exact Schur operators this
  // reproduces the plain block LU factorization line by line
  seq_.block = op.block;
  seq_.cpl = op.cpl;
  std::vector<int> restart(op.n_lines(), 0);
  for (int j = 2; j <= p.J(); ++j) restart[p.first(j)] = j;
  for (int l = 0; l < op.n_lines(); ++l) {
    Matrix Tl;
    if (restart[l] != 0) {
      Tl = ts.get(restart[l], InterfaceSide::Left, left_kind).S;
    } else {
      Tl = op.D[l].dense();
      if (l > 0) {
        Matrix Tinv_c =
            seq_.T.back().solve(Matrix(op.cpl[l - 1].asDiagonal()));
        Tl.noalias() -= Matrix(op.cpl[l - 1].asDiagonal()) * Tinv_c;
      }
    }
    try {
      seq_.T.emplace_back(Tl, "sweep block");
    } catch (const SingularMatrixError&) {
      throw SingularMatrixError("lu_sweep: singular block at line " +
                                std::to_string(l));
    }
  }
}

Vector LuSweepPreconditioner::apply(const Vector& f) const {
  return block_lu_solve(seq_, f);
}

}  // namespace helmsweep
