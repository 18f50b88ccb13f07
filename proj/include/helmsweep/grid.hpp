#ifndef HELMSWEEP_GRID_HPP
#define HELMSWEEP_GRID_HPP

#include <optional>

#include "helmsweep/types.hpp"

namespace helmsweep {

/// Uniform interior-point grid on the unit square.  Unknowns are ordered by
/// vertical gridline (all y for x=h, then x=2h, ...); the homogeneous
/// Dirichlet boundary ring is eliminated.  Only square cells are supported,
/// so nx == ny is required and h = 1/(nx+1).
struct Grid2D {
  int nx = 0;  ///< interior gridlines along x
  int ny = 0;  ///< interior points per gridline
  double h = 0.0;

  int n_interior() const { return nx * ny; }
};

Grid2D build_grid(int nx, int ny);

enum class SideCondition { Dirichlet, Robin, Pml };

/// Complex-stretching layer parameters.  The stretch is
/// s(t) = 1 + i*sigma(t)/omega with sigma(t) = sigma0*(t/delta)^p and
/// delta = width_cells*h.  sigma0 defaults so the round-trip amplitude
/// factor exp(-2*integral sigma) is 1e-4 when omega matches the local
/// wavenumber.
struct PmlSpec {
  int width_cells = 5;
  double sigma0 = 0.0;  ///< 0 means "use default for this delta"
  int profile_exponent = 2;

  double sigma_default(double delta) const;
  /// sigma at depth t into the layer of thickness delta.
  double sigma(double t, double delta) const;
  /// stretch value s(t) = 1 + i sigma(t)/omega
  Complex stretch(double t, double delta, double omega) const;
};

/// Per-side boundary conditions for the outer square.  The Robin
/// coefficient is p0 = -i*k evaluated at the boundary-adjacent medium.
struct BoundarySpec {
  SideCondition left = SideCondition::Dirichlet;
  SideCondition right = SideCondition::Dirichlet;
  SideCondition bottom = SideCondition::Dirichlet;
  SideCondition top = SideCondition::Dirichlet;
  PmlSpec pml;  // shared by all Pml sides
  /// One-sided first-order Robin elimination (boundary points folded into
  /// the adjacent interior row) instead of the centered ghost-point
  /// closure with boundary unknowns.
  bool robin_first_order = true;

  bool any_pml() const {
    return left == SideCondition::Pml || right == SideCondition::Pml ||
           bottom == SideCondition::Pml || top == SideCondition::Pml;
  }
  static BoundarySpec guide(SideCondition lr, PmlSpec pml = {});
  static BoundarySpec open(SideCondition all, PmlSpec pml = {});
};

}  // namespace helmsweep

#endif
