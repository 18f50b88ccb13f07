#ifndef HELMSWEEP_ASSEMBLE_HPP
#define HELMSWEEP_ASSEMBLE_HPP

#include <optional>

#include "helmsweep/line_operator.hpp"

namespace helmsweep {

/// Assemble the five-point Helmholtz system (Delta + k(x)^2) with the given
/// boundary closure.  Dirichlet rows are eliminated; Robin sides keep the
/// boundary points as unknowns with the ghost point removed through the
/// centered discretization of n.(grad u) + p0 u = 0, p0 = -i k; Pml sides
/// append width_cells stretched lines (or points, for top/bottom) outside
/// the unit square, closed by Dirichlet.  Rows touched by a Robin fold are
/// scaled by 1/2 (1/4 at corners) so the matrix stays complex-symmetric.
LineOperator assemble_helmholtz(const Grid2D& grid, const MediumProfile& medium,
                                const BoundarySpec& bc);

/// Description of a truncated exterior problem: the part of the domain on
/// one side of an interface gridline, with an optional constant-medium
/// override (identity extension) and either the true outer closure or a
/// replacement PML closure starting at the interface.
struct ExteriorSpec {
  int interface_line = 0;    ///< extended line index of the interface
  bool left_side = true;     ///< exterior lies left of the interface
  std::optional<double> medium_override;  ///< constant k for the exterior
  /// When set, the geometric exterior is discarded and replaced by a PML
  /// strip of this width attached at the interface.
  std::optional<PmlSpec> pml_truncation;
  double pml_omega = 0.0;    ///< stretching frequency for pml_truncation
  /// When true, the exterior is discarded and the interface row becomes the
  /// halved ghost-folded Robin closure with k from the exterior side.
  bool robin_truncation = false;
};

/// closure lines a side contributes (1 for Robin, width_cells for Pml)
int ext_lines(SideCondition side, const PmlSpec& pml);

/// Exterior operator for a truncated subproblem.  Returns the gridline
/// blocks of the exterior, ordered away-from-interface ... adjacent, plus
/// the coupling diagonal between the last exterior line and the interface
/// and the interface's own diagonal block in the truncated system.  An
/// empty exterior (interface at the domain edge) yields n_lines() == 0.
struct ExteriorOperator {
  std::vector<TriDiagBlock> D;  ///< exterior lines, far end first
  std::vector<Vector> cpl;      ///< couplings between consecutive lines
  Vector cpl_interface;         ///< coupling last exterior line <-> interface
  TriDiagBlock interface_diag;  ///< diagonal block at the interface line
  int n_lines() const { return static_cast<int>(D.size()); }
  Matrix dense() const;  ///< exterior block only (no interface row)
};

ExteriorOperator assemble_truncated(const Grid2D& grid,
                                    const MediumProfile& medium,
                                    const BoundarySpec& bc,
                                    const ExteriorSpec& spec);

}  // namespace helmsweep

#endif
