#include "helmsweep/transmission.hpp"

namespace helmsweep {

namespace {

// S = D_interface - C T_last^{-1} C from an exterior operator, eliminating
// the exterior lines far-to-near with the Schur recurrence
Matrix schur_from_exterior(const ExteriorOperator& ext) {
  Matrix S = ext.interface_diag.dense();
  if (ext.n_lines() == 0) return S;
  std::vector<Matrix> D;
  D.reserve(ext.n_lines());
  for (const auto& blk : ext.D) D.push_back(blk.dense());
  SchurSequence seq = block_tridiag_factor_blocks(D, ext.cpl);
  Matrix Tinv_c =
      seq.T.back().solve(Matrix(ext.cpl_interface.asDiagonal()));
  S.noalias() -= Matrix(ext.cpl_interface.asDiagonal()) * Tinv_c;
  return S;
}

bool side_exists(const StripPartition& p, int j, InterfaceSide side) {
  return side == InterfaceSide::Left ? j > 1 : j < p.J();
}

int interface_line(const StripPartition& p, int j, InterfaceSide side) {
  return side == InterfaceSide::Left ? p.first(j) : p.last(j);
}

}  // namespace

InterfaceOperator exact_schur_at_line(const LineOperator& op, int line,
                                      bool left_side) {
  InterfaceOperator io;
  io.kind = TransmissionKind::ExactSchur;
  io.side = left_side ? InterfaceSide::Left : InterfaceSide::Right;
  io.line = line;
  io.empty = false;

  const int g = line;
  // exterior lines swept far -> near
  std::vector<Matrix> D;
  std::vector<Vector> cpl;
  if (left_side) {
    for (int l = 0; l < g; ++l) {
      D.push_back(op.D[l].dense());
      if (l + 1 < g) cpl.push_back(op.cpl[l]);
    }
  } else {
    for (int l = op.n_lines() - 1; l > g; --l) {
      D.push_back(op.D[l].dense());
      if (l - 1 > g) cpl.push_back(op.cpl[l - 1]);
    }
  }
  io.S = op.D[g].dense();
  if (!D.empty()) {
    SchurSequence seq = block_tridiag_factor_blocks(D, cpl);
    const Vector& c = left_side ? op.cpl[g - 1] : op.cpl[g];
    Matrix Tinv_c = seq.T.back().solve(Matrix(c.asDiagonal()));
    io.S.noalias() -= Matrix(c.asDiagonal()) * Tinv_c;
  }
  return io;
}

InterfaceOperator exact_schur(const LineOperator& op, const StripPartition& p,
                              int j, InterfaceSide side) {
  InterfaceOperator io;
  io.kind = TransmissionKind::ExactSchur;
  io.side = side;
  if (!side_exists(p, j, side)) return io;
  try {
    io = exact_schur_at_line(op, interface_line(p, j, side),
                             side == InterfaceSide::Left);
  } catch (const SingularMatrixError&) {
    throw SingularMatrixError(
        "exact_schur: singular exterior block for subdomain " +
        std::to_string(j));
  }
  return io;
}

InterfaceOperator ident_ext_schur(const Grid2D& grid,
                                  const MediumProfile& medium,
                                  const BoundarySpec& bc,
                                  const StripPartition& p, int j,
                                  InterfaceSide side) {
  InterfaceOperator io;
  io.kind = TransmissionKind::IdentExtSchur;
  io.side = side;
  if (!side_exists(p, j, side)) return io;
  io.line = interface_line(p, j, side);
  io.empty = false;

  const bool left = side == InterfaceSide::Left;
  ExteriorSpec spec;
  spec.interface_line = io.line;
  spec.left_side = left;
  // the medium immediately on the exterior side of the interface, extended
  // over the whole exterior
  const int lext = ext_lines(bc.left, bc.pml);
  const double x_if = (io.line - lext + 1) * grid.h;
  spec.medium_override = evaluate_k_clamped(
      medium, left ? x_if - 0.5 * grid.h : x_if + 0.5 * grid.h);
  ExteriorOperator ext = assemble_truncated(grid, medium, bc, spec);
  try {
    io.S = schur_from_exterior(ext);
  } catch (const SingularMatrixError&) {
    throw SingularMatrixError(
        "ident_ext_schur: singular exterior block for subdomain " +
        std::to_string(j));
  }
  return io;
}

InterfaceOperator pml_schur_at_line(const Grid2D& grid,
                                    const MediumProfile& medium,
                                    const BoundarySpec& bc, const PmlSpec& pml,
                                    int line, bool left_side) {
  InterfaceOperator io;
  io.kind = TransmissionKind::PmlSchur;
  io.side = left_side ? InterfaceSide::Left : InterfaceSide::Right;
  io.line = line;
  io.empty = false;
  ExteriorSpec spec;
  spec.interface_line = line;
  spec.left_side = left_side;
  spec.pml_truncation = pml;
  ExteriorOperator ext = assemble_truncated(grid, medium, bc, spec);
  io.S = schur_from_exterior(ext);
  return io;
}

InterfaceOperator pml_schur(const Grid2D& grid, const MediumProfile& medium,
                            const BoundarySpec& bc, const PmlSpec& pml,
                            const StripPartition& p, int j,
                            InterfaceSide side) {
  if (pml.width_cells < 1) throw ConfigError("pml_schur: width >= 1");
  InterfaceOperator io;
  io.kind = TransmissionKind::PmlSchur;
  io.side = side;
  if (!side_exists(p, j, side)) return io;
  io = pml_schur_at_line(grid, medium, bc, pml, interface_line(p, j, side),
                         side == InterfaceSide::Left);
  io.side = side;
  return io;
}

InterfaceOperator robin_operator(const Grid2D& grid,
                                 const MediumProfile& medium,
                                 const BoundarySpec& bc,
                                 const StripPartition& p, int j,
                                 InterfaceSide side) {
  InterfaceOperator io;
  io.kind = TransmissionKind::Robin;
  io.side = side;
  if (!side_exists(p, j, side)) return io;
  io.line = interface_line(p, j, side);
  io.empty = false;

  // mirrored outer-Robin closure with k from the exterior side
  ExteriorSpec spec;
  spec.interface_line = io.line;
  spec.left_side = side == InterfaceSide::Left;
  spec.robin_truncation = true;
  ExteriorOperator ext = assemble_truncated(grid, medium, bc, spec);
  io.S = ext.interface_diag.dense();
  return io;
}

InterfaceOperator dirichlet_operator(const StripPartition& p, int j,
                                     InterfaceSide side) {
  InterfaceOperator io;
  io.kind = TransmissionKind::Dirichlet;
  io.side = side;
  if (!side_exists(p, j, side)) return io;
  io.line = interface_line(p, j, side);
  io.empty = false;
  io.S = Matrix::Identity(p.block(), p.block());
  return io;
}

TransmissionSet::TransmissionSet(const Grid2D& grid,
                                 const MediumProfile& medium,
                                 const BoundarySpec& bc,
                                 const LineOperator& op,
                                 const StripPartition& p)
    : grid_(grid), medium_(medium), bc_(bc), op_(op), p_(p) {}

const InterfaceOperator& TransmissionSet::get(
    int j, InterfaceSide side, const TransmissionConfig& cfg) const {
  const auto key = std::make_tuple(j, static_cast<int>(side),
                                   static_cast<int>(cfg.kind));
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;

  InterfaceOperator io;
  switch (cfg.kind) {
    case TransmissionKind::ExactSchur:
      io = exact_schur(op_, p_, j, side);
      break;
    case TransmissionKind::IdentExtSchur:
      io = ident_ext_schur(grid_, medium_, bc_, p_, j, side);
      break;
    case TransmissionKind::PmlSchur:
      io = pml_schur(grid_, medium_, bc_, cfg.pml, p_, j, side);
      break;
    case TransmissionKind::Robin:
      io = robin_operator(grid_, medium_, bc_, p_, j, side);
      break;
    case TransmissionKind::Dirichlet:
      io = dirichlet_operator(p_, j, side);
      break;
  }
  return cache_.emplace(key, std::move(io)).first->second;
}

InterfaceOperator TransmissionSet::get_at_line(
    int line, bool left_side, const TransmissionConfig& cfg) const {
  switch (cfg.kind) {
    case TransmissionKind::ExactSchur:
      return exact_schur_at_line(op_, line, left_side);
    case TransmissionKind::PmlSchur:
      return pml_schur_at_line(grid_, medium_, bc_, cfg.pml, line, left_side);
    default:
      throw ConfigError("get_at_line: exact or PML Schur kinds only");
  }
}

void TransmissionSet::share_across_interfaces(const TransmissionConfig& cfg,
                                              InterfaceSide source_side) {
  // overwrite the opposite side's cache entry at each interface with the
  // source side's operator, so S_{j>} == S_{j+1<} holds exactly
  for (int j = 1; j <= p_.J(); ++j) {
    if (source_side == InterfaceSide::Right && j < p_.J()) {
      const InterfaceOperator& src = get(j, InterfaceSide::Right, cfg);
      InterfaceOperator dst = src;
      dst.side = InterfaceSide::Left;
      cache_[std::make_tuple(j + 1, static_cast<int>(InterfaceSide::Left),
                             static_cast<int>(cfg.kind))] = dst;
    }
    if (source_side == InterfaceSide::Left && j > 1) {
      const InterfaceOperator& src = get(j, InterfaceSide::Left, cfg);
      InterfaceOperator dst = src;
      dst.side = InterfaceSide::Right;
      cache_[std::make_tuple(j - 1, static_cast<int>(InterfaceSide::Right),
                             static_cast<int>(cfg.kind))] = dst;
    }
  }
}

}  // namespace helmsweep
