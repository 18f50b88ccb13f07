#include "helmsweep/preconditioners.hpp"

namespace helmsweep {

PosmIterator::PosmIterator(const LineOperator& op, const StripPartition& p,
                           const TransmissionSet& ts, const KindPair& kinds)
    : op_(&op), p_(&p) {
  sys_ = build_subdomain_systems(op, p, ts, kinds);
  // reuse the DOSM interface bookkeeping
  DosmConfig dc;
  dc.forward = kinds;
  dc.backward = kinds;
  DosmPreconditioner helper(op, p, ts, dc);
  if_ = helper.fwd_if_;
  glue_ = weighting(p, SweepDirection::Backward);
}

std::vector<Vector> PosmIterator::zero_iterates() const {
  std::vector<Vector> z;
  for (int j = 1; j <= p_->J(); ++j)
    z.push_back(Vector::Zero(
        static_cast<Eigen::Index>(p_->last_closed(j) - p_->first_closed(j) + 1) *
        p_->block()));
  return z;
}

std::vector<Vector> PosmIterator::iterate(const std::vector<Vector>& prev,
                                          const Vector& f,
                                          bool reverse_schedule) const {
  const int J = p_->J();
  const int blk = p_->block();
  std::vector<Vector> next(J);
  auto nb_value = [blk](const Vector& nb, int nb_first, int line) {
    return nb.segment(static_cast<Eigen::Index>(line - nb_first) * blk, blk);
  };
  auto solve_one = [&](int j) {
    const int a = p_->first_closed(j);
    const int b = p_->last_closed(j);
    Vector r = f.segment(static_cast<Eigen::Index>(a) * blk,
                         static_cast<Eigen::Index>(b - a + 1) * blk);
    const auto& si = if_[j - 1];
    if (si.left.has) {
      auto row = r.segment(0, blk);
      const int nf = p_->first_closed(j - 1);
      if (si.left.dirichlet) {
        row = nb_value(prev[j - 2], nf, a);
      } else {
        row -= op_->cpl[a - 1].cwiseProduct(nb_value(prev[j - 2], nf, a - 1));
        row += si.left.SmA * nb_value(prev[j - 2], nf, a);
      }
    }
    if (si.right.has) {
      auto row = r.segment(static_cast<Eigen::Index>(b - a) * blk, blk);
      const int nf = p_->first_closed(j + 1);
      if (si.right.dirichlet) {
        row = nb_value(prev[j], nf, b);
      } else {
        row -= op_->cpl[b].cwiseProduct(nb_value(prev[j], nf, b + 1));
        row += si.right.SmA * nb_value(prev[j], nf, b);
      }
    }
    next[j - 1] = sys_[j - 1].solve(r);
  };
  if (reverse_schedule)
    for (int j = J; j >= 1; --j) solve_one(j);
  else
    for (int j = 1; j <= J; ++j) solve_one(j);
  return next;
}

Vector PosmIterator::glue(const std::vector<Vector>& locals) const {
  return glue_.glue(*p_, locals);
}

}  // namespace helmsweep
