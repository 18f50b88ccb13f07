#include "helmsweep/subdomain.hpp"

namespace helmsweep {

SubdomainSystem::SubdomainSystem(const LineOperator& op, int a, int b,
                                 const InterfaceOperator& left,
                                 const InterfaceOperator& right) {
  a_ = a;
  n_lines_ = b - a + 1;
  block_ = op.block;
  D_.reserve(n_lines_);
  for (int l = a; l <= b; ++l) D_.push_back(op.D[l].dense());
  lower_.reserve(n_lines_ - 1);
  upper_.reserve(n_lines_ - 1);
  for (int l = a; l < b; ++l) {
    lower_.push_back(op.cpl[l]);
    upper_.push_back(op.cpl[l]);
  }
  if (!left.empty) {
    if (left.line != a)
      throw DimensionError("SubdomainSystem: left interface line mismatch");
    D_.front() = left.S;
    if (left.is_dirichlet() && n_lines_ > 1) upper_.front().setZero();
  }
  if (!right.empty) {
    if (right.line != b)
      throw DimensionError("SubdomainSystem: right interface line mismatch");
    D_.back() = right.S;
    if (right.is_dirichlet() && n_lines_ > 1) lower_.back().setZero();
  }
  factor();
}

SubdomainSystem::SubdomainSystem(std::vector<Matrix> D,
                                 std::vector<Vector> lower,
                                 std::vector<Vector> upper, int first_line)
    : D_(std::move(D)), lower_(std::move(lower)), upper_(std::move(upper)),
      a_(first_line) {
  n_lines_ = static_cast<int>(D_.size());
  block_ = n_lines_ > 0 ? static_cast<int>(D_[0].rows()) : 0;
  factor();
}

void SubdomainSystem::factor() {
  T_.reserve(n_lines_);
  Matrix Tl;
  for (int l = 0; l < n_lines_; ++l) {
    Tl = D_[l];
    if (l > 0) {
      Matrix Tinv_u = T_[l - 1].solve(Matrix(upper_[l - 1].asDiagonal()));
      Tl.noalias() -= Matrix(lower_[l - 1].asDiagonal()) * Tinv_u;
    }
    try {
      T_.emplace_back(Tl, "subdomain line block");
    } catch (const SingularMatrixError&) {
      throw SingularMatrixError(
          "SubdomainSystem: singular block at line " +
          std::to_string(a_ + l) + " (non-well-posed subdomain problem)");
    }
  }
}

Vector SubdomainSystem::solve(const Vector& rhs) const {
  if (rhs.size() != size())
    throw DimensionError("SubdomainSystem::solve: dimension mismatch");
  const int b = block_;
  Vector v(rhs.size());
  std::vector<Vector> r(n_lines_);
  for (int l = 0; l < n_lines_; ++l) {
    r[l] = rhs.segment(static_cast<Eigen::Index>(l) * b, b);
    if (l > 0)
      r[l] -= lower_[l - 1].cwiseProduct(
          v.segment(static_cast<Eigen::Index>(l - 1) * b, b));
    v.segment(static_cast<Eigen::Index>(l) * b, b) = T_[l].solve(r[l]);
  }
  Vector u(rhs.size());
  u.segment(static_cast<Eigen::Index>(n_lines_ - 1) * b, b) =
      v.segment(static_cast<Eigen::Index>(n_lines_ - 1) * b, b);
  for (int l = n_lines_ - 2; l >= 0; --l) {
    Vector rr = r[l] - upper_[l].cwiseProduct(
                           u.segment(static_cast<Eigen::Index>(l + 1) * b, b));
    u.segment(static_cast<Eigen::Index>(l) * b, b) = T_[l].solve(rr);
  }
  return u;
}

std::vector<SubdomainSystem> build_subdomain_systems(
    const LineOperator& op, const StripPartition& p,
    const TransmissionSet& ts, const KindPair& kinds) {
  std::vector<SubdomainSystem> sys;
  sys.reserve(p.J());
  for (int j = 1; j <= p.J(); ++j) {
    const InterfaceOperator& L = ts.get(j, InterfaceSide::Left, kinds.left);
    const InterfaceOperator& R = ts.get(j, InterfaceSide::Right, kinds.right);
    sys.emplace_back(op, p.first_closed(j), p.last_closed(j), L, R);
  }
  return sys;
}

UnfoldedPmlSystem::UnfoldedPmlSystem(const Grid2D& grid,
                                     const MediumProfile& medium,
                                     const BoundarySpec& bc,
                                     const LineOperator& op,
                                     const StripPartition& p, int j,
                                     const PmlSpec& pml) {
  const int a = p.first_closed(j);
  const int b = p.last_closed(j);
  block_ = op.block;
  phys_lines_ = b - a + 1;
  std::vector<Matrix> D;
  std::vector<Vector> lower, upper;

  auto push_cpl = [&](const Vector& c) {
    lower.push_back(c);
    upper.push_back(c);
  };

  ExteriorOperator extL, extR;
  if (j > 1) {
    ExteriorSpec spec;
    spec.interface_line = a;
    spec.left_side = true;
    spec.pml_truncation = pml;
    extL = assemble_truncated(grid, medium, bc, spec);
    pml_left_ = extL.n_lines();
    for (int l = 0; l < extL.n_lines(); ++l) {
      D.push_back(extL.D[l].dense());
      if (l + 1 < extL.n_lines()) push_cpl(extL.cpl[l]);
    }
    push_cpl(extL.cpl_interface);
  }
  for (int l = a; l <= b; ++l) {
    // the interface lines use the PML-modified diagonal so the unfolded
    // system matches the folded Schur exactly
    if (l == a && j > 1)
      D.push_back(extL.interface_diag.dense());
    else if (l == b && j < p.J())
      D.push_back(Matrix());  // placeholder, replaced below
    else
      D.push_back(op.D[l].dense());
    if (l < b) push_cpl(op.cpl[l]);
  }
  if (j < p.J()) {
    ExteriorSpec spec;
    spec.interface_line = b;
    spec.left_side = false;
    spec.pml_truncation = pml;
    extR = assemble_truncated(grid, medium, bc, spec);
    pml_right_ = extR.n_lines();
    D[pml_left_ + phys_lines_ - 1] = extR.interface_diag.dense();
    push_cpl(extR.cpl_interface);
    // exterior lines come ordered far-first; reverse to near-first
    for (int l = extR.n_lines() - 1; l >= 0; --l) {
      D.push_back(extR.D[l].dense());
      if (l > 0) push_cpl(extR.cpl[l - 1]);
    }
  }
  sys_ = SubdomainSystem(std::move(D), std::move(lower), std::move(upper),
                         a - pml_left_);
}

Vector UnfoldedPmlSystem::solve_physical(const Vector& rhs) const {
  Vector full = Vector::Zero(sys_.size());
  full.segment(static_cast<Eigen::Index>(pml_left_) * block_,
               static_cast<Eigen::Index>(phys_lines_) * block_) = rhs;
  Vector u = sys_.solve(full);
  return u.segment(static_cast<Eigen::Index>(pml_left_) * block_,
                   static_cast<Eigen::Index>(phys_lines_) * block_);
}

}  // namespace helmsweep
