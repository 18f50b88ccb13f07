#include "helmsweep/preconditioners.hpp"

namespace helmsweep {

SourceTransferPreconditioner::SourceTransferPreconditioner(
    const LineOperator& op, const StripPartition& p,
    const TransmissionSet& ts, const TransmissionConfig& kind)
    : op_(&op), p_(&p) {
  if (p.overlap_lines_ != -1)
    throw ConfigError(
        "source transfer needs the generous-overlap layout "
        "(make_source_transfer_partition)");
  KindPair fwd_kinds{kind, kind};
  KindPair bwd_kinds{kind, TransmissionConfig{TransmissionKind::Dirichlet}};
  fwd_ = build_subdomain_systems(op, p, ts, fwd_kinds);
  bwd_ = build_subdomain_systems(op, p, ts, bwd_kinds);
  glue_ = weighting(p, SweepDirection::Backward);

  // damping weights over the right-overlap closure [q..b]: one on the
  // near-interface half, zero on the far half, which is what a five-point
  // stencil needs for the transfer to leave the downstream field unchanged
  for (int j = 1; j < p.J(); ++j) {
    const int q = p.first(j + 1);
    const int b = p.last(j);
    Vector d = Vector::Zero(b - q + 1);
    d(0) = 1.0;  // the interface line itself
    const int interior = b - q - 1;
    for (int i = 1; i <= interior; ++i)
      d(i) = (2 * i <= interior) ? 1.0 : 0.0;
    // d(b-q), the far interface, stays zero
    damping_.push_back(d);
  }
}

double SourceTransferPreconditioner::std_constraint_residual(int j) const {
  // the four validity products reduce to conditions on the damping values:
  // zero on the far interface and its adjacent layer, one on the near
  // interface and its adjacent layer
  const Vector& d = damping_[j - 1];
  const Eigen::Index n = d.size();
  double r = 0.0;
  r = std::max(r, std::abs(d(n - 1)));          // zero on the far interface
  r = std::max(r, std::abs(d(n - 2)));          // zero next to it
  r = std::max(r, std::abs(d(0) - 1.0));        // one on the near interface
  r = std::max(r, std::abs(d(1) - 1.0));        // one next to it
  return r;
}

Vector SourceTransferPreconditioner::apply(const Vector& f) const {
  const int J = p_->J();
  const int blk = p_->block();

  // transferred sources, stored as a modified global right-hand side; the
  // forward sweep reads f~ on the left overlap and zeros on the right one
  Vector ftil = f;
  std::vector<Vector> v(J), u(J);

  auto line_seg = [blk](Vector& x, int line) {
    return x.segment(static_cast<Eigen::Index>(line) * blk, blk);
  };

  for (int j = 1; j <= J - 1; ++j) {
    const int a = p_->first_closed(j);
    const int b = p_->last_closed(j);
    const int q = p_->first(j + 1);
    Vector r = ftil.segment(static_cast<Eigen::Index>(a) * blk,
                            static_cast<Eigen::Index>(b - a + 1) * blk);
    // interface rows and the right overlap carry no source forward
    if (j > 1) r.segment(0, blk).setZero();
    for (int l = q + 1; l <= b; ++l)
      r.segment(static_cast<Eigen::Index>(l - a) * blk, blk).setZero();
    v[j - 1] = fwd_[j - 1].solve(r);

    // transfer the source into the next subdomain's left overlap:
    // f~ <- f - A (D v) on the overlap interior, using the damped field
    const Vector& d = damping_[j - 1];
    auto dv = [&](int line) -> Vector {
      if (line < q || line > b) return Vector::Zero(blk);
      return d(line - q) *
             v[j - 1].segment(static_cast<Eigen::Index>(line - a) * blk, blk);
    };
    for (int l = q + 1; l <= b - 1; ++l) {
      Vector acc = op_->D[l].apply(dv(l));
      acc += op_->cpl[l - 1].cwiseProduct(dv(l - 1));
      acc += op_->cpl[l].cwiseProduct(dv(l + 1));
      line_seg(ftil, l) = f.segment(static_cast<Eigen::Index>(l) * blk, blk) -
                          acc;
    }
  }

  for (int j = J; j >= 1; --j) {
    const int a = p_->first_closed(j);
    const int b = p_->last_closed(j);
    Vector r = ftil.segment(static_cast<Eigen::Index>(a) * blk,
                            static_cast<Eigen::Index>(b - a + 1) * blk);
    if (j > 1) r.segment(0, blk).setZero();
    if (j < J) {
      // restore the true source on the right overlap interior, then the
      // Dirichlet row takes the neighbor's trace at the far interface
      const int q = p_->first(j + 1);
      for (int l = q + 1; l <= b - 1; ++l)
        r.segment(static_cast<Eigen::Index>(l - a) * blk, blk) =
            f.segment(static_cast<Eigen::Index>(l) * blk, blk);
      r.segment(static_cast<Eigen::Index>(b - a) * blk, blk) =
          u[j].segment(static_cast<Eigen::Index>(b - p_->first_closed(j + 1)) *
                           blk,
                       blk);
    }
    u[j - 1] = bwd_[j - 1].solve(r);
  }
  return glue_.glue(*p_, u);
}

}  // namespace helmsweep
