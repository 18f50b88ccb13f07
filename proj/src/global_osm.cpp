#include "helmsweep/preconditioners.hpp"

namespace helmsweep {

GlobalOsmPreconditioner::GlobalOsmPreconditioner(const LineOperator& op,
                                                 const StripPartition& p,
                                                 const TransmissionSet& ts)
    : op_(&op), p_(&p) {
  if (p.overlap_lines_ != 0)
    throw ConfigError("global OSM: non-overlapping strips required");
  TransmissionConfig exact{TransmissionKind::ExactSchur};
  sys_ = build_subdomain_systems(op, p, ts, KindPair{exact, exact});
  S_left_.resize(p.J());
  S_right_.resize(p.J());
  InterfaceOperator none;
  for (int j = 1; j <= p.J(); ++j) {
    const auto& L = ts.get(j, InterfaceSide::Left, exact);
    const auto& R = ts.get(j, InterfaceSide::Right, exact);
    if (!L.empty) S_left_[j - 1] = L.S;
    if (!R.empty) S_right_[j - 1] = R.S;
    // factored exteriors realizing the trace maps F_{l,j}
    if (j > 1)
      ext_left_.emplace_back(op, 0, p.first(j) - 1, none, none);
    else
      ext_left_.emplace_back();
    if (j < p.J())
      ext_right_.emplace_back(op, p.last(j) + 1, op.n_lines() - 1, none,
                              none);
    else
      ext_right_.emplace_back();
  }
  glue_ = weighting(p, SweepDirection::Backward);
}

Vector GlobalOsmPreconditioner::apply(const Vector& f) const {
  const int J = p_->J();
  const int blk = p_->block();

  // source ownership: subdomain j owns its left interface row and its
  // interior rows; right interface rows belong to the right neighbor
  auto phase_rhs = [&](int j, const std::vector<Vector>* incoming) {
    const int a = p_->first_closed(j);
    const int b = p_->last_closed(j);
    Vector r = f.segment(static_cast<Eigen::Index>(a) * blk,
                         static_cast<Eigen::Index>(b - a + 1) * blk);
    if (j < J)
      r.segment(static_cast<Eigen::Index>(b - a) * blk, blk).setZero();
    if (incoming) {
      if (j > 1) r.segment(0, blk) += (*incoming)[2 * (j - 1)];
      if (j < J)
        r.segment(static_cast<Eigen::Index>(b - a) * blk, blk) +=
            (*incoming)[2 * (j - 1) + 1];
    }
    return r;
  };

  // phase 1: independent solves with homogeneous transparent data
  std::vector<Vector> v(J);
  for (int j = 1; j <= J; ++j)
    v[j - 1] = sys_[j - 1].solve(phase_rhs(j, nullptr));

  // all-to-all trace exchange: accumulate incoming generalized Robin data
  // lambda_{l<} and lambda_{l>} from every other subdomain's field
  std::vector<Vector> incoming(2 * J, Vector::Zero(blk));
  for (int j = 1; j <= J; ++j) {
    const int a = p_->first_closed(j);
    auto vj = [&](int line) {
      return v[j - 1].segment(static_cast<Eigen::Index>(line - a) * blk, blk);
    };
    // field of source j continued into the exteriors
    Vector wL, wR;
    if (j > 1) {
      Vector rhs = Vector::Zero(ext_left_[j - 1].size());
      rhs.tail(blk) =
          -op_->cpl[p_->first(j) - 1].cwiseProduct(vj(p_->first(j)));
      wL = ext_left_[j - 1].solve(rhs);
    }
    if (j < J) {
      Vector rhs = Vector::Zero(ext_right_[j - 1].size());
      rhs.head(blk) = -op_->cpl[p_->last(j)].cwiseProduct(vj(p_->last(j)));
      wR = ext_right_[j - 1].solve(rhs);
    }
    auto field_at = [&](int line) -> Vector {
      if (line >= p_->first_closed(j) && line <= p_->last_closed(j))
        return vj(line);
      if (line < p_->first_closed(j))
        return wL.segment(static_cast<Eigen::Index>(line) * blk, blk);
      return wR.segment(
          static_cast<Eigen::Index>(line - (p_->last(j) + 1)) * blk, blk);
    };
    for (int l = 1; l <= J; ++l) {
      if (l == j) continue;
      if (l > 1) {
        const int g = p_->first(l);
        incoming[2 * (l - 1)] +=
            S_left_[l - 1] * field_at(g) +
            op_->cpl[g].cwiseProduct(field_at(g + 1));
      }
      if (l < J) {
        const int g = p_->last(l);
        incoming[2 * (l - 1) + 1] +=
            S_right_[l - 1] * field_at(g) +
            op_->cpl[g - 1].cwiseProduct(field_at(g - 1));
      }
    }
  }

  // phase 2: independent solves with the summed incoming data
  std::vector<Vector> u(J);
  for (int j = 1; j <= J; ++j)
    u[j - 1] = sys_[j - 1].solve(phase_rhs(j, &incoming));
  return glue_.glue(*p_, u);
}

}  // namespace helmsweep
