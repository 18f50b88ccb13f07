#include "helmsweep/preconditioners.hpp"

namespace helmsweep {

SlpPreconditioner::SlpPreconditioner(const LineOperator& op,
                                     const StripPartition& p,
                                     const TransmissionSet& ts,
                                     const TransmissionConfig& kind, int form)
    : op_(&op), p_(&p), form_(form) {
  if (form != 1 && form != 2) throw ConfigError("slp: form must be 1 or 2");
  if (p.overlap_lines_ != 0)
    throw ConfigError("slp: non-overlapping decomposition required");

  if (form == 2) {
    sys_ = build_subdomain_systems(op, p, ts, KindPair{kind, kind});
    return;
  }

  // form 1: subdomains extended one layer beyond each interface, with
  // Schur operators on the extended lines
  for (int j = 1; j <= p.J(); ++j) {
    const int a = p.first_closed(j);
    const int b = p.last_closed(j);
    const int lo = j > 1 ? p.first(j) - 1 : a;
    const int hi = j < p.J() ? p.last(j) + 1 : b;
    ext_lo_.push_back(lo);
    ext_hi_.push_back(hi);
    InterfaceOperator L, R;
    if (j > 1) L = ts.get_at_line(lo, true, kind);
    if (j < p.J()) R = ts.get_at_line(hi, false, kind);
    sys_.emplace_back(op, lo, hi, L, R);
  }
}

Vector SlpPreconditioner::forward_field(const Vector& f,
                                        std::vector<Vector>* locals) const {
  const int J = p_->J();
  const int blk = p_->block();
  std::vector<Vector>& v = *locals;
  v.resize(J);

  for (int j = 1; j <= J; ++j) {
    if (form_ == 2) {
      const int a = p_->first_closed(j);
      const int b = p_->last_closed(j);
      Vector r = f.segment(static_cast<Eigen::Index>(a) * blk,
                           static_cast<Eigen::Index>(b - a + 1) * blk);
      if (j > 1) {
        // doubled Neumann source from the previous field across the
        // shared interface operator
        auto row = r.segment(0, blk);
        const int nf = p_->first_closed(j - 1);
        const Vector& vp = v[j - 2];
        auto val = [&](int line) {
          return vp.segment(static_cast<Eigen::Index>(line - nf) * blk, blk);
        };
        row -= 2.0 * op_->cpl[a - 1].cwiseProduct(val(a - 1));
        row -= op_->D[a].apply(val(a));
      }
      if (j < J)
        r.segment(static_cast<Eigen::Index>(b - a) * blk, blk).setZero();
      v[j - 1] = sys_[j - 1].solve(r);
    } else {
      const int lo = ext_lo_[j - 1];
      const int hi = ext_hi_[j - 1];
      const int a = p_->first(j);
      Vector r = f.segment(static_cast<Eigen::Index>(lo) * blk,
                           static_cast<Eigen::Index>(hi - lo + 1) * blk);
      if (j > 1) {
        const Vector& vp = v[j - 2];
        const int plo = ext_lo_[j - 2];
        auto val = [&](int line) {
          return vp.segment(static_cast<Eigen::Index>(line - plo) * blk, blk);
        };
        // extended row: data for the extra layer and the interface row
        r.segment(0, blk) =
            val(lo) + op_->cpl[lo].cwiseProduct(val(a));
        r.segment(blk, blk) = f.segment(static_cast<Eigen::Index>(a) * blk,
                                        blk) -
                              op_->cpl[lo].cwiseProduct(val(lo)) - val(a);
      }
      if (j < p_->J()) {
        r.segment(static_cast<Eigen::Index>(hi - 1 - lo) * blk, blk)
            .setZero();
        r.segment(static_cast<Eigen::Index>(hi - lo) * blk, blk).setZero();
      }
      v[j - 1] = sys_[j - 1].solve(r);
    }
  }

  // ASH-style gluing: each subdomain contributes its left interface and
  // interior; the right interface belongs to the next subdomain
  Vector glued = Vector::Zero(op_->size());
  for (int j = 1; j <= J; ++j) {
    const int lo_glue = p_->first_closed(j);
    const int hi_glue = j < J ? p_->last(j) - 1 : p_->last_closed(j);
    const int base = form_ == 2 ? p_->first_closed(j) : ext_lo_[j - 1];
    for (int l = lo_glue; l <= hi_glue; ++l)
      glued.segment(static_cast<Eigen::Index>(l) * blk, blk) =
          v[j - 1].segment(static_cast<Eigen::Index>(l - base) * blk, blk);
  }
  return glued;
}

Vector SlpPreconditioner::intermediate_residual(const Vector& f) const {
  std::vector<Vector> locals;
  Vector vg = forward_field(f, &locals);
  return f - op_->apply(vg);
}

Vector SlpPreconditioner::apply(const Vector& f) const {
  const int J = p_->J();
  const int blk = p_->block();
  std::vector<Vector> v;
  Vector vg = forward_field(f, &v);
  Vector ftil = f - op_->apply(vg);

  std::vector<Vector> w(J);
  // w_J = 0
  {
    const int lo = form_ == 2 ? p_->first_closed(J) : ext_lo_[J - 1];
    const int hi = form_ == 2 ? p_->last_closed(J) : ext_hi_[J - 1];
    w[J - 1] = Vector::Zero(static_cast<Eigen::Index>(hi - lo + 1) * blk);
  }
  for (int j = J - 1; j >= 1; --j) {
    if (form_ == 2) {
      const int a = p_->first_closed(j);
      const int b = p_->last_closed(j);
      Vector r = ftil.segment(static_cast<Eigen::Index>(a) * blk,
                              static_cast<Eigen::Index>(b - a + 1) * blk);
      if (j > 1) r.segment(0, blk).setZero();
      {
        auto row = r.segment(static_cast<Eigen::Index>(b - a) * blk, blk);
        const int nf = p_->first_closed(j + 1);
        const Vector& wn = w[j];
        auto val = [&](int line) {
          return wn.segment(static_cast<Eigen::Index>(line - nf) * blk, blk);
        };
        row -= 2.0 * op_->cpl[b].cwiseProduct(val(b + 1));
        row -= op_->D[b].apply(val(b));
      }
      w[j - 1] = sys_[j - 1].solve(r);
    } else {
      const int lo = ext_lo_[j - 1];
      const int hi = ext_hi_[j - 1];
      const int b = p_->last(j);
      Vector r = ftil.segment(static_cast<Eigen::Index>(lo) * blk,
                              static_cast<Eigen::Index>(hi - lo + 1) * blk);
      if (j > 1) {
        r.segment(0, blk).setZero();
        r.segment(blk, blk).setZero();
      }
      {
        const Vector& wn = w[j];
        const int nlo = ext_lo_[j];
        auto val = [&](int line) {
          return wn.segment(static_cast<Eigen::Index>(line - nlo) * blk, blk);
        };
        r.segment(static_cast<Eigen::Index>(b - lo) * blk, blk) =
            ftil.segment(static_cast<Eigen::Index>(b) * blk, blk) -
            op_->cpl[b].cwiseProduct(val(hi)) - val(b);
        r.segment(static_cast<Eigen::Index>(hi - lo) * blk, blk) =
            val(hi) + op_->cpl[b].cwiseProduct(val(b));
      }
      w[j - 1] = sys_[j - 1].solve(r);
    }
  }

  // output: corrections glued over interior + right interface
  Vector u = vg;
  for (int j = 1; j <= J - 1; ++j) {
    const int lo_glue = j > 1 ? p_->first(j) + 1 : p_->first_closed(j);
    const int hi_glue = p_->last(j);
    const int base = form_ == 2 ? p_->first_closed(j) : ext_lo_[j - 1];
    for (int l = lo_glue; l <= hi_glue; ++l)
      u.segment(static_cast<Eigen::Index>(l) * blk, blk) +=
          w[j - 1].segment(static_cast<Eigen::Index>(l - base) * blk, blk);
  }
  return u;
}

}  // namespace helmsweep
