#include "helmsweep/assemble.hpp"

#include <cmath>

namespace helmsweep {

namespace {

// Stretch along one axis: s(pos) = 1 away from Pml sides, complex inside.
// pos is the coordinate along the axis; the physical interval is (0,1).
struct AxisClosure {
  SideCondition lo = SideCondition::Dirichlet;
  SideCondition hi = SideCondition::Dirichlet;
  PmlSpec pml;
  double h = 0.0;
  bool robin_first_order = true;

  int ext_lo() const {
    if (lo == SideCondition::Robin) return robin_first_order ? 0 : 1;
    if (lo == SideCondition::Pml) return pml.width_cells;
    return 0;
  }
  int ext_hi() const {
    if (hi == SideCondition::Robin) return robin_first_order ? 0 : 1;
    if (hi == SideCondition::Pml) return pml.width_cells;
    return 0;
  }
  Complex stretch(double pos, double omega) const {
    if (lo == SideCondition::Pml && pos < 0.0)
      return pml.stretch(-pos, pml.width_cells * h, omega);
    if (hi == SideCondition::Pml && pos > 1.0)
      return pml.stretch(pos - 1.0, pml.width_cells * h, omega);
    return Complex(1.0, 0.0);
  }
  bool robin_at(double pos) const {
    if (robin_first_order) return false;
    return (lo == SideCondition::Robin && pos == 0.0) ||
           (hi == SideCondition::Robin && pos == 1.0);
  }
  /// first-order fold: the eliminated boundary neighbor of a point next to
  /// a Robin side contributes 1/(h^2 (1 + h p0)) to its diagonal
  bool fold_at(double pos) const {
    if (!robin_first_order) return false;
    return (lo == SideCondition::Robin && std::abs(pos - h) < 0.5 * h) ||
           (hi == SideCondition::Robin && std::abs(pos - (1.0 - h)) < 0.5 * h);
  }
};

struct LineContext {
  double x = 0.0;
  double k = 0.0;        // medium value at this line
  Complex sxC, sxL, sxR;  // stretch at center and the two midpoints
  bool robin_line = false;
  bool fold_line = false;  // first-order Robin neighbor folded in
};

// Builds one gridline's tridiagonal diagonal block.  yc describes the
// vertical closure; the horizontal closure enters through ctx.
TriDiagBlock build_diag_block(const LineContext& ctx, const AxisClosure& yc,
                              int block, int bottom_ext, double h) {
  TriDiagBlock blk;
  blk.diag = Vector::Zero(block);
  blk.off = Vector::Zero(block > 0 ? block - 1 : 0);
  const double h2 = h * h;
  const Complex p0 = -I1 * ctx.k;  // Robin coefficient at this line

  for (int m = 0; m < block; ++m) {
    const double y = (m - bottom_ext + 1) * h;
    const bool robin_row = yc.robin_at(y);
    const double scale =
        (ctx.robin_line ? 0.5 : 1.0) * (robin_row ? 0.5 : 1.0);
    const Complex syC = yc.stretch(y, ctx.k);
    const Complex syD = yc.stretch(y - 0.5 * h, ctx.k);
    const Complex syU = yc.stretch(y + 0.5 * h, ctx.k);

    Complex diag = scale * ctx.k * ctx.k * ctx.sxC * syC;

    // horizontal part
    if (ctx.robin_line) {
      // ghost point eliminated via the centered Robin condition; the
      // full row is halved (in `scale`) to keep the matrix symmetric
      diag -= scale * (2.0 / h2) * syC;
      diag -= scale * (2.0 * p0 / h) * syC;
    } else {
      diag -= scale * syC / (h2 * ctx.sxL);
      diag -= scale * syC / (h2 * ctx.sxR);
      if (ctx.fold_line)
        diag += scale * syC / (h2 * (1.0 + h * p0));
    }

    // vertical part
    if (robin_row) {
      diag -= scale * (2.0 / h2) * ctx.sxC;
      diag -= scale * (2.0 * p0 / h) * ctx.sxC;
    } else {
      diag -= scale * ctx.sxC / (h2 * syD);
      diag -= scale * ctx.sxC / (h2 * syU);
      if (yc.fold_at(y))
        diag += scale * ctx.sxC / (h2 * (1.0 + h * p0));
    }
    blk.diag(m) = diag;

    if (m + 1 < block) {
      // symmetric coupling to the row above; the Robin fold's factor 2
      // cancels against the half row scale on either end row
      const double sxscale = ctx.robin_line ? 0.5 : 1.0;
      blk.off(m) = sxscale * ctx.sxC / (h2 * syU);
    }
  }
  return blk;
}

// coupling diagonal between a line and its right neighbor, evaluated at the
// midpoint xm
Vector build_coupling(double xm, double k_mid, const AxisClosure& yc,
                      int block, int bottom_ext, double h,
                      const AxisClosure& xc) {
  Vector c(block);
  const Complex sxM = xc.stretch(xm, k_mid);
  for (int m = 0; m < block; ++m) {
    const double y = (m - bottom_ext + 1) * h;
    const double rowscale = yc.robin_at(y) ? 0.5 : 1.0;
    c(m) = rowscale * yc.stretch(y, k_mid) / (h * h * sxM);
  }
  return c;
}

}  // namespace

int ext_lines(SideCondition side, const PmlSpec& pml) {
  if (side == SideCondition::Robin) return 1;
  if (side == SideCondition::Pml) return pml.width_cells;
  return 0;
}

LineOperator assemble_helmholtz(const Grid2D& grid,
                                const MediumProfile& medium,
                                const BoundarySpec& bc) {
  if (bc.any_pml() && bc.pml.width_cells < 1)
    throw ConfigError("assemble_helmholtz: PML width must be >= 1");

  AxisClosure xc{bc.left, bc.right, bc.pml, grid.h, bc.robin_first_order};
  AxisClosure yc{bc.bottom, bc.top, bc.pml, grid.h, bc.robin_first_order};

  LineOperator op;
  op.nx = grid.nx;
  op.ny = grid.ny;
  op.h = grid.h;
  op.left_ext = xc.ext_lo();
  op.right_ext = xc.ext_hi();
  op.bottom_ext = yc.ext_lo();
  op.top_ext = yc.ext_hi();
  op.block = grid.ny + op.bottom_ext + op.top_ext;

  const int n_lines = grid.nx + op.left_ext + op.right_ext;
  op.D.reserve(n_lines);
  op.cpl.reserve(n_lines - 1);

  for (int l = 0; l < n_lines; ++l) {
    const double x = (l - op.left_ext + 1) * grid.h;
    LineContext ctx;
    ctx.x = x;
    ctx.k = evaluate_k_clamped(medium, x);
    ctx.sxC = xc.stretch(x, ctx.k);
    ctx.sxL = xc.stretch(x - 0.5 * grid.h, ctx.k);
    ctx.sxR = xc.stretch(x + 0.5 * grid.h, ctx.k);
    ctx.robin_line = xc.robin_at(x);
    ctx.fold_line = xc.fold_at(x);
    op.D.push_back(
        build_diag_block(ctx, yc, op.block, op.bottom_ext, grid.h));
    if (l + 1 < n_lines) {
      const double xm = x + 0.5 * grid.h;
      op.cpl.push_back(build_coupling(xm, evaluate_k_clamped(medium, xm), yc,
                                      op.block, op.bottom_ext, grid.h, xc));
    }
  }
  return op;
}

ExteriorOperator assemble_truncated(const Grid2D& grid,
                                    const MediumProfile& medium,
                                    const BoundarySpec& bc,
                                    const ExteriorSpec& spec) {
  AxisClosure xc{bc.left, bc.right, bc.pml, grid.h, bc.robin_first_order};
  AxisClosure yc{bc.bottom, bc.top, bc.pml, grid.h, bc.robin_first_order};
  const int left_ext = xc.ext_lo();
  const int right_ext = xc.ext_hi();
  const int bottom_ext = yc.ext_lo();
  const int block = grid.ny + bottom_ext + yc.ext_hi();
  const int n_lines = grid.nx + left_ext + right_ext;
  const double h = grid.h;

  auto kval = [&](double x) -> double {
    if (spec.medium_override) return *spec.medium_override;
    return evaluate_k_clamped(medium, x);
  };
  const double x_if = (spec.interface_line - left_ext + 1) * h;

  ExteriorOperator ext;

  if (spec.robin_truncation) {
    // mirrored outer-Robin closure: no exterior lines, the interface row is
    // the halved ghost-folded Robin row with the exterior-side wavenumber
    const double k_ext =
        spec.medium_override
            ? *spec.medium_override
            : evaluate_k_clamped(medium, x_if + (spec.left_side ? -0.5 * h
                                                                : 0.5 * h));
    LineContext ctx;
    ctx.x = x_if;
    ctx.k = k_ext;
    ctx.sxC = Complex(1.0, 0.0);
    ctx.robin_line = true;
    ext.interface_diag = build_diag_block(ctx, yc, block, bottom_ext, h);
    return ext;
  }

  if (spec.pml_truncation) {
    // replace the geometric exterior by a PML strip: width_cells stretched
    // lines at depths h..w*h behind the interface, Dirichlet wall beyond
    const PmlSpec& ps = *spec.pml_truncation;
    const int w = ps.width_cells;
    const double delta = (w + 1) * h;
    const double k_ext = spec.medium_override
                             ? *spec.medium_override
                             : evaluate_k_clamped(
                                   medium, x_if + (spec.left_side ? -0.5 * h
                                                                  : 0.5 * h));
    const double omega = spec.pml_omega > 0.0 ? spec.pml_omega : k_ext;
    const double dir = spec.left_side ? -1.0 : 1.0;

    auto sx_at = [&](double depth) { return ps.stretch(depth, delta, omega); };
    auto pml_coupling = [&](double mid_depth) {
      Vector c(block);
      const Complex sxM = sx_at(mid_depth);
      for (int m = 0; m < block; ++m) {
        const double y = (m - bottom_ext + 1) * h;
        const double rowscale = yc.robin_at(y) ? 0.5 : 1.0;
        c(m) = rowscale * yc.stretch(y, k_ext) / (h * h * sxM);
      }
      return c;
    };
    // lines ordered far end first (depth w*h down to h)
    for (int d = w; d >= 1; --d) {
      LineContext ctx;
      ctx.x = x_if + dir * d * h;
      ctx.k = k_ext;
      ctx.sxC = sx_at(d * h);
      ctx.sxL = sx_at((d + (spec.left_side ? 0.5 : -0.5)) * h);
      ctx.sxR = sx_at((d - (spec.left_side ? 0.5 : -0.5)) * h);
      ext.D.push_back(build_diag_block(ctx, yc, block, bottom_ext, h));
      if (d > 1) ext.cpl.push_back(pml_coupling((d - 0.5) * h));
    }
    ext.cpl_interface = pml_coupling(0.5 * h);
    // interface diagonal block in the PML-extended system: the stretch
    // touches only the exterior-facing midpoint coefficient
    {
      LineContext ctx;
      ctx.x = x_if;
      ctx.k = evaluate_k_clamped(medium, x_if);
      ctx.sxC = Complex(1.0, 0.0);
      const Complex smid = sx_at(0.5 * h);
      if (spec.left_side) {
        ctx.sxL = smid;
        ctx.sxR = xc.stretch(x_if + 0.5 * h, ctx.k);
      } else {
        ctx.sxR = smid;
        ctx.sxL = xc.stretch(x_if - 0.5 * h, ctx.k);
      }
      ext.interface_diag = build_diag_block(ctx, yc, block, bottom_ext, h);
    }
    return ext;
  }

  // geometric exterior with the true outer closure
  const int first = spec.left_side ? 0 : spec.interface_line + 1;
  const int last = spec.left_side ? spec.interface_line - 1 : n_lines - 1;
  const int count = last - first + 1;
  if (count <= 0) {
    // empty exterior: deleted block, interface diag from the true operator
    LineContext ctx;
    ctx.x = x_if;
    ctx.k = evaluate_k_clamped(medium, x_if);
    ctx.sxC = xc.stretch(x_if, ctx.k);
    ctx.sxL = xc.stretch(x_if - 0.5 * h, ctx.k);
    ctx.sxR = xc.stretch(x_if + 0.5 * h, ctx.k);
    ctx.robin_line = xc.robin_at(x_if);
    ctx.fold_line = xc.fold_at(ctx.x);
    ext.interface_diag = build_diag_block(ctx, yc, block, bottom_ext, h);
    return ext;
  }

  // ordered far end -> adjacent to the interface
  for (int i = 0; i < count; ++i) {
    const int l = spec.left_side ? first + i : last - i;
    const double x = (l - left_ext + 1) * h;
    LineContext ctx;
    ctx.x = x;
    ctx.k = kval(x);
    ctx.sxC = xc.stretch(x, ctx.k);
    ctx.sxL = xc.stretch(x - 0.5 * h, ctx.k);
    ctx.sxR = xc.stretch(x + 0.5 * h, ctx.k);
    ctx.robin_line = xc.robin_at(x);
    ctx.fold_line = xc.fold_at(ctx.x);
    ext.D.push_back(build_diag_block(ctx, yc, block, bottom_ext, h));
    if (i + 1 < count) {
      const double xm = spec.left_side ? x + 0.5 * h : x - 0.5 * h;
      ext.cpl.push_back(
          build_coupling(xm, kval(xm), yc, block, bottom_ext, h, xc));
    }
  }
  {
    const double xm = spec.left_side ? x_if - 0.5 * h : x_if + 0.5 * h;
    ext.cpl_interface =
        build_coupling(xm, kval(xm), yc, block, bottom_ext, h, xc);
  }
  {
    LineContext ctx;
    ctx.x = x_if;
    ctx.k = evaluate_k_clamped(medium, x_if);
    ctx.sxC = xc.stretch(x_if, ctx.k);
    ctx.sxL = xc.stretch(x_if - 0.5 * h, ctx.k);
    ctx.sxR = xc.stretch(x_if + 0.5 * h, ctx.k);
    ctx.robin_line = xc.robin_at(x_if);
    ctx.fold_line = xc.fold_at(ctx.x);
    ext.interface_diag = build_diag_block(ctx, yc, block, bottom_ext, h);
  }
  return ext;
}

Matrix ExteriorOperator::dense() const {
  const int b = n_lines() > 0 ? D[0].size() : 0;
  Matrix M = Matrix::Zero(static_cast<Eigen::Index>(n_lines()) * b,
                          static_cast<Eigen::Index>(n_lines()) * b);
  for (int l = 0; l < n_lines(); ++l) {
    M.block(l * b, l * b, b, b) = D[l].dense();
    if (l + 1 < n_lines()) {
      M.block(l * b, (l + 1) * b, b, b) = cpl[l].asDiagonal();
      M.block((l + 1) * b, l * b, b, b) = cpl[l].asDiagonal();
    }
  }
  return M;
}

}  // namespace helmsweep
