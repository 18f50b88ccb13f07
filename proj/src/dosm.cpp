#include "helmsweep/preconditioners.hpp"

namespace helmsweep {

namespace {

bool same_config(const TransmissionConfig& a, const TransmissionConfig& b) {
  return a.kind == b.kind && a.pml.width_cells == b.pml.width_cells &&
         a.pml.sigma0 == b.pml.sigma0 &&
         a.pml.profile_exponent == b.pml.profile_exponent;
}

}  // namespace

DosmPreconditioner::SweepIfaces DosmPreconditioner::make_ifaces(
    int j, const TransmissionSet& ts, const KindPair& kinds) const {
  SweepIfaces si;
  const InterfaceOperator& L = ts.get(j, InterfaceSide::Left, kinds.left);
  const InterfaceOperator& R = ts.get(j, InterfaceSide::Right, kinds.right);
  if (!L.empty) {
    si.left.has = true;
    si.left.dirichlet = L.is_dirichlet();
    if (!si.left.dirichlet) si.left.SmA = L.S - op_->D[L.line].dense();
  }
  if (!R.empty) {
    si.right.has = true;
    si.right.dirichlet = R.is_dirichlet();
    if (!si.right.dirichlet) si.right.SmA = R.S - op_->D[R.line].dense();
  }
  return si;
}

DosmPreconditioner::DosmPreconditioner(const LineOperator& op,
                                       const StripPartition& p,
                                       const TransmissionSet& ts,
                                       DosmConfig cfg)
    : op_(&op), p_(&p), cfg_(cfg) {
  fwd_ = build_subdomain_systems(op, p, ts, cfg.forward);
  same_kinds_ = same_config(cfg.forward.left, cfg.backward.left) &&
                same_config(cfg.forward.right, cfg.backward.right);
  if (!same_kinds_) bwd_ = build_subdomain_systems(op, p, ts, cfg.backward);
  for (int j = 1; j <= p.J(); ++j) {
    fwd_if_.push_back(make_ifaces(j, ts, cfg.forward));
    bwd_if_.push_back(same_kinds_ ? fwd_if_.back()
                                  : make_ifaces(j, ts, cfg.backward));
  }
  glue_ = weighting(p, SweepDirection::Backward);
}

// Per-subdomain right-hand side of the transmission-augmented system.
// left_nb/right_nb are the neighbor subdomains' current local iterates
// (null means a zero iterate, the preconditioner's initial data).
Vector DosmPreconditioner::local_rhs(int j, const Vector& f,
                                     const Vector* left_nb,
                                     const Vector* right_nb,
                                     bool forward_sweep) const {
  const int a = p_->first_closed(j);
  const int b = p_->last_closed(j);
  const int blk = p_->block();
  Vector r = f.segment(static_cast<Eigen::Index>(a) * blk,
                       static_cast<Eigen::Index>(b - a + 1) * blk);

  if (cfg_.zero_right_overlap_forward && forward_sweep && j < p_->J()) {
    // the right overlap's sources move with the transferred field instead
    const int q = p_->first(j + 1);
    for (int l = q + 1; l <= b; ++l)
      r.segment(static_cast<Eigen::Index>(l - a) * blk, blk).setZero();
  }

  auto nb_value = [blk](const Vector& nb, int nb_first, int line) {
    return nb.segment(static_cast<Eigen::Index>(line - nb_first) * blk, blk);
  };

  const SweepIfaces& si = forward_sweep ? fwd_if_[j - 1] : bwd_if_[j - 1];
  if (si.left.has) {
    auto row = r.segment(0, blk);
    const int nb_first = p_->first_closed(j - 1);
    if (si.left.dirichlet) {
      row = left_nb ? Vector(nb_value(*left_nb, nb_first, a))
                    : Vector(Vector::Zero(blk));
    } else if (left_nb) {
      row -= op_->cpl[a - 1].cwiseProduct(nb_value(*left_nb, nb_first, a - 1));
      row += si.left.SmA * nb_value(*left_nb, nb_first, a);
    }
  }
  if (si.right.has) {
    auto row = r.segment(static_cast<Eigen::Index>(b - a) * blk, blk);
    const int nb_first = p_->first_closed(j + 1);
    if (si.right.dirichlet) {
      row = right_nb ? Vector(nb_value(*right_nb, nb_first, b))
                     : Vector(Vector::Zero(blk));
    } else if (right_nb) {
      row -= op_->cpl[b].cwiseProduct(nb_value(*right_nb, nb_first, b + 1));
      row += si.right.SmA * nb_value(*right_nb, nb_first, b);
    }
  }
  return r;
}

Vector DosmPreconditioner::apply(const Vector& f) const {
  return apply_collect(f, nullptr);
}

Vector DosmPreconditioner::apply_collect(const Vector& f,
                                         Iterates* out) const {
  const int J = p_->J();
  const auto& bwd = same_kinds_ ? fwd_ : bwd_;
  std::vector<Vector> half(J), full(J);

  // forward sweep over 1..J-1; the last subdomain is solved once, below
  for (int j = 1; j <= J - 1; ++j) {
    const Vector* lnb = j > 1 ? &half[j - 2] : nullptr;
    half[j - 1] = fwd_[j - 1].solve(local_rhs(j, f, lnb, nullptr, true));
  }
  for (int j = J; j >= 1; --j) {
    const Vector* lnb = j > 1 ? &half[j - 2] : nullptr;
    const Vector* rnb = j < J ? &full[j] : nullptr;
    full[j - 1] = bwd[j - 1].solve(local_rhs(j, f, lnb, rnb, false));
  }
  if (out) {
    out->half.assign(half.begin(), half.end() - 1);
    out->full = full;
  }
  return glue_.glue(*p_, full);
}

GdcPreconditioner::GdcPreconditioner(const LineOperator& op,
                                     const StripPartition& p,
                                     const TransmissionSet& ts,
                                     const KindPair& kinds, GdcVariant variant)
    : op_(&op), p_(&p), variant_(variant) {
  sys_ = build_subdomain_systems(op, p, ts, kinds);
  for (int j = 1; j <= p.J(); ++j) {
    const auto& L = ts.get(j, InterfaceSide::Left, kinds.left);
    const auto& R = ts.get(j, InterfaceSide::Right, kinds.right);
    dir_left_.push_back(!L.empty && L.is_dirichlet());
    dir_right_.push_back(!R.empty && R.is_dirichlet());
  }
  fwd_w_ = weighting(p, SweepDirection::Forward);
  bwd_w_ = weighting(p, SweepDirection::Backward);
}

Vector GdcPreconditioner::apply(const Vector& f) const {
  const int J = p_->J();
  const int blk = p_->block();
  Vector u = Vector::Zero(op_->size());

  auto zero_dirichlet_rows = [&](Vector& rloc, int j) {
    const int a = p_->first_closed(j);
    if (dir_left_[j - 1] && j > 1)
      rloc.segment(static_cast<Eigen::Index>(p_->first(j) - a) * blk, blk)
          .setZero();
    if (dir_right_[j - 1] && j < J)
      rloc.segment(static_cast<Eigen::Index>(p_->last(j) - a) * blk, blk)
          .setZero();
  };

  if (variant_ == GdcVariant::Ras) {
    // sequential corrections from the current global residual, glued with
    // the restricted weights
    auto substep = [&](int j, const WeightingOperator& w) {
      const int a = p_->first_closed(j);
      Vector rloc = restrict_lines(*p_, f - op_->apply(u), j);
      zero_dirichlet_rows(rloc, j);
      Vector v = w.phi(*p_, j).cwiseProduct(sys_[j - 1].solve(rloc));
      u.segment(static_cast<Eigen::Index>(a) * blk, v.size()) += v;
    };
    for (int j = 1; j <= J - 1; ++j) substep(j, fwd_w_);
    for (int j = J; j >= 1; --j) substep(j, bwd_w_);
    return u;
  }

  // harmonic-extension variant: the transpose of the restricted form for
  // a symmetric operator.  Corrections use weight-restricted data and full
  // extension; the working residual is deflated after every substep, and
  // the substep order and weights are the transposed ones.
  Vector w = f;
  auto substep = [&](int j, const WeightingOperator& wt) {
    const int a = p_->first_closed(j);
    Vector rloc = wt.phi(*p_, j).cwiseProduct(restrict_lines(*p_, w, j));
    zero_dirichlet_rows(rloc, j);
    Vector v = sys_[j - 1].solve(rloc);
    Vector g = Vector::Zero(op_->size());
    g.segment(static_cast<Eigen::Index>(a) * blk, v.size()) = v;
    u += g;
    w -= op_->apply(g);
  };
  for (int j = 1; j <= J; ++j) substep(j, bwd_w_);
  for (int j = J - 1; j >= 1; --j) substep(j, fwd_w_);
  return u;
}

SubstructuredDosm::SubstructuredDosm(const LineOperator& op,
                                     const StripPartition& p,
                                     const TransmissionSet& ts,
                                     const KindPair& kinds)
    : op_(&op), p_(&p) {
  sys_ = build_subdomain_systems(op, p, ts, kinds);
  SmA_left_.resize(p.J());
  SmA_right_.resize(p.J());
  for (int j = 1; j <= p.J(); ++j) {
    const auto& L = ts.get(j, InterfaceSide::Left, kinds.left);
    const auto& R = ts.get(j, InterfaceSide::Right, kinds.right);
    if (!L.empty) SmA_left_[j - 1] = L.S - op.D[L.line].dense();
    if (!R.empty) SmA_right_[j - 1] = R.S - op.D[R.line].dense();
  }
  glue_ = weighting(p, SweepDirection::Backward);
}

Eigen::Index SubstructuredDosm::trace_size() const {
  return static_cast<Eigen::Index>(p_->J() - 1) * p_->block();
}

Vector SubstructuredDosm::map(const Vector& lambda, const Vector& f,
                              Vector* volume_out) const {
  const int J = p_->J();
  const int blk = p_->block();
  if (lambda.size() != trace_size())
    throw DimensionError("SubstructuredDosm::map: bad trace size");

  // lambda_right(j) is the data block for subdomain j's right interface
  auto lam_in = [&](int j) {
    return lambda.segment(static_cast<Eigen::Index>(j - 1) * blk, blk);
  };
  std::vector<Vector> lam_left(J + 1);  // lam_left[j] for subdomain j
  Vector out = Vector::Zero(trace_size());
  std::vector<Vector> u(J);

  auto local_rhs = [&](int j, bool forward) {
    const int a = p_->first_closed(j);
    const int b = p_->last_closed(j);
    Vector r = f.segment(static_cast<Eigen::Index>(a) * blk,
                         static_cast<Eigen::Index>(b - a + 1) * blk);
    if (j > 1) r.segment(0, blk) += lam_left[j];
    if (j < J) {
      auto row = r.segment(static_cast<Eigen::Index>(b - a) * blk, blk);
      if (forward)
        row += lam_in(j);
      else
        row += out.segment(static_cast<Eigen::Index>(j - 1) * blk, blk);
    }
    return r;
  };

  for (int j = 1; j <= J - 1; ++j) {
    const int a = p_->first_closed(j);
    Vector uj = sys_[j - 1].solve(local_rhs(j, true));
    // data for the next subdomain's left interface
    const int q = p_->first(j + 1);
    lam_left[j + 1] =
        SmA_left_[j] * uj.segment(static_cast<Eigen::Index>(q - a) * blk,
                                  blk) -
        op_->cpl[q - 1].cwiseProduct(
            uj.segment(static_cast<Eigen::Index>(q - 1 - a) * blk, blk));
    u[j - 1] = std::move(uj);
  }
  for (int j = J; j >= 1; --j) {
    const int a = p_->first_closed(j);
    u[j - 1] = sys_[j - 1].solve(local_rhs(j, false));
    if (j > 1) {
      // data for the previous subdomain's right interface
      const int g = p_->last(j - 1);
      out.segment(static_cast<Eigen::Index>(j - 2) * blk, blk) =
          SmA_right_[j - 2] *
              u[j - 1].segment(static_cast<Eigen::Index>(g - a) * blk, blk) -
          op_->cpl[g].cwiseProduct(
              u[j - 1].segment(static_cast<Eigen::Index>(g + 1 - a) * blk,
                               blk));
    }
  }
  if (volume_out) *volume_out = glue_.glue(*p_, u);
  return out;
}

Vector SubstructuredDosm::volume(const Vector& lambda, const Vector& f) const {
  Vector vol;
  map(lambda, f, &vol);
  return vol;
}

}  // namespace helmsweep
