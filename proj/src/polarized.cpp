#include "helmsweep/preconditioners.hpp"

namespace helmsweep {

PolarizedTracesPreconditioner::PolarizedTracesPreconditioner(
    const LineOperator& op, const StripPartition& p,
    const TransmissionSet& ts, const TransmissionConfig& kind,
    double split_fraction)
    : op_(&op), p_(&p), t_(split_fraction) {
  if (p.overlap_lines_ != 0)
    throw ConfigError("polarized traces: non-overlapping decomposition");
  sys_ = build_subdomain_systems(op, p, ts, KindPair{kind, kind});
}

Vector PolarizedTracesPreconditioner::apply(const Vector& f) const {
  const int J = p_->J();
  const int blk = p_->block();

  // independent local solves v_j^0 = G^{(j)} f_j
  std::vector<Vector> v0(J);
  for (int j = 1; j <= J; ++j)
    v0[j - 1] = sys_[j - 1].solve(restrict_lines(*p_, f, j));

  auto seg = [blk](const Vector& x, Eigen::Index off) {
    return x.segment(off * blk, blk);
  };

  // Forward recursion of the left Dirichlet/Neumann trace pairs.  z is the
  // forward field of subdomain j-1 reconstructed from its incoming traces
  // (its own interface row shifted by the Dirichlet datum); its readings at
  // the shared interface propagate the pair one subdomain to the right.
  std::vector<Vector> lamD_left(J + 1), lamN_left(J + 1);
  // forward-field readings kept for the backward recursion: the forward
  // field of subdomain jj at its own left interface row and the row next
  // to it, minus the corresponding local-solve values
  std::vector<Vector> fwdD(J + 1), fwdD1(J + 1);
  for (int j = 2; j <= J; ++j) {
    const int pa = p_->first_closed(j - 1);
    const int g = p_->first(j);  // = last(j-1)
    Vector z;
    if (j == 2) {
      z = v0[0];
    } else {
      Vector rhs = Vector::Zero(sys_[j - 2].size());
      const int a_prev = p_->first(j - 1);
      rhs.segment(static_cast<Eigen::Index>(a_prev - pa) * blk, blk) =
          lamN_left[j - 1] - t_ * op_->D[a_prev].apply(lamD_left[j - 1]);
      rhs.segment(static_cast<Eigen::Index>(a_prev + 1 - pa) * blk, blk) =
          -op_->cpl[a_prev].cwiseProduct(lamD_left[j - 1]);
      z = sys_[j - 2].solve(rhs) + v0[j - 2];
      // readings of the forward field at subdomain j-1's own left
      // interface, for the backward recursion
      fwdD[j - 1] = Vector(seg(z, a_prev - pa)) + lamD_left[j - 1] -
                    seg(v0[j - 2], a_prev - pa);
      fwdD1[j - 1] = Vector(seg(z, a_prev + 1 - pa)) -
                     seg(v0[j - 2], a_prev + 1 - pa);
    }
    lamD_left[j] = seg(z, g - pa);
    lamN_left[j] = -(1.0 - t_) * op_->D[g].apply(seg(z, g - pa)) -
                   op_->cpl[g - 1].cwiseProduct(seg(z, g - 1 - pa));
  }

  // Backward recursion of the right pairs.  The traces carry the full
  // backward iterate (the correction field plus the stored forward-field
  // readings), which keeps the recursion exact for any family of interface
  // operators; the seed is the last subdomain's field, solved once.
  std::vector<Vector> lamD_right(J + 1), lamN_right(J + 1);
  for (int j = J - 1; j >= 1; --j) {
    const int pa = p_->first_closed(j + 1);
    const int g = p_->last(j);  // = first(j+1)
    Vector lamD, uint1;
    if (j == J - 1) {
      Vector rhs = Vector::Zero(sys_[J - 1].size());
      const int aJ = p_->first(J);
      rhs.segment(static_cast<Eigen::Index>(aJ - pa) * blk, blk) =
          lamN_left[J] - t_ * op_->D[aJ].apply(lamD_left[J]);
      rhs.segment(static_cast<Eigen::Index>(aJ + 1 - pa) * blk, blk) =
          -op_->cpl[aJ].cwiseProduct(lamD_left[J]);
      Vector z = sys_[J - 1].solve(rhs) + v0[J - 1];
      lamD = Vector(seg(z, aJ - pa)) + lamD_left[J];
      uint1 = seg(z, aJ + 1 - pa);
    } else {
      Vector rhs = Vector::Zero(sys_[j].size());
      const int b_next = p_->last(j + 1);
      rhs.segment(static_cast<Eigen::Index>(b_next - pa) * blk, blk) =
          lamN_right[j + 1] - t_ * op_->D[b_next].apply(lamD_right[j + 1]);
      rhs.segment(static_cast<Eigen::Index>(b_next - 1 - pa) * blk, blk) =
          -op_->cpl[b_next - 1].cwiseProduct(lamD_right[j + 1]);
      Vector z = sys_[j].solve(rhs) + v0[j];  // the correction field w_{j+1}
      lamD = Vector(seg(z, g - pa)) + fwdD[j + 1];
      uint1 = Vector(seg(z, g + 1 - pa)) + fwdD1[j + 1];
    }
    lamD_right[j] = lamD;
    lamN_right[j] = -(1.0 - t_) * op_->D[g].apply(lamD) -
                    op_->cpl[g].cwiseProduct(uint1);
  }

  // recovery: one representation-formula solve per subdomain
  Vector u = Vector::Zero(op_->size());
  for (int j = 1; j <= J; ++j) {
    const int a = p_->first_closed(j);
    const int b = p_->last_closed(j);
    Vector rhs = Vector::Zero(sys_[j - 1].size());
    if (j > 1) {
      const int g = p_->first(j);
      rhs.segment(static_cast<Eigen::Index>(g - a) * blk, blk) +=
          lamN_left[j] - t_ * op_->D[g].apply(lamD_left[j]);
      rhs.segment(static_cast<Eigen::Index>(g + 1 - a) * blk, blk) -=
          op_->cpl[g].cwiseProduct(lamD_left[j]);
    }
    if (j < J) {
      const int g = p_->last(j);
      rhs.segment(static_cast<Eigen::Index>(g - a) * blk, blk) +=
          lamN_right[j] - t_ * op_->D[g].apply(lamD_right[j]);
      rhs.segment(static_cast<Eigen::Index>(g - 1 - a) * blk, blk) -=
          op_->cpl[g - 1].cwiseProduct(lamD_right[j]);
    }
    Vector vloc = sys_[j - 1].solve(rhs) + v0[j - 1];

    // the recovery solve carries the full backward iterate on the interior
    // rows; on its own interface rows the representation identity picks up
    // the propagated Dirichlet trace, which restores the iterate there
    const int lo = j > 1 ? p_->first(j) + 1 : a;
    const int hi = j < J ? p_->last(j) - 1 : b;
    for (int l = lo; l <= hi; ++l)
      u.segment(static_cast<Eigen::Index>(l) * blk, blk) =
          vloc.segment(static_cast<Eigen::Index>(l - a) * blk, blk);
    if (j > 1)
      u.segment(static_cast<Eigen::Index>(p_->first(j)) * blk, blk) =
          vloc.segment(static_cast<Eigen::Index>(p_->first(j) - a) * blk,
                       blk) +
          lamD_left[j];
  }
  return u;
}

}  // namespace helmsweep
