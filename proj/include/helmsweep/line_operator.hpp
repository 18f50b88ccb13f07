#ifndef HELMSWEEP_LINE_OPERATOR_HPP
#define HELMSWEEP_LINE_OPERATOR_HPP

#include <iosfwd>
#include <vector>

#include "helmsweep/grid.hpp"
#include "helmsweep/medium.hpp"

namespace helmsweep {

/// Complex-symmetric tridiagonal block (one gridline's diagonal block).
struct TriDiagBlock {
  Vector diag;  ///< size b
  Vector off;   ///< size b-1, off(m) = A(m,m+1) = A(m+1,m)

  int size() const { return static_cast<int>(diag.size()); }
  Matrix dense() const;
  Vector apply(const Vector& v) const;
};

/// Global discrete Helmholtz operator in block-tridiagonal-by-gridline
/// form.  Line l couples only to lines l-1 and l+1, with diagonal coupling
/// blocks cpl[l] = A(line l, line l+1) = A(line l+1, line l).
///
/// Lines run left to right over the extended domain: outer closure lines on
/// the left (PML lines or the Robin boundary line), the nx interior lines,
/// then the right closure lines.  Each line carries `block` unknowns that
/// likewise include any top/bottom closure points.
class LineOperator {
 public:
  std::vector<TriDiagBlock> D;  ///< diagonal blocks, one per line
  std::vector<Vector> cpl;      ///< size n_lines-1, coupling diagonals

  // layout
  int block = 0;       ///< unknowns per line
  int left_ext = 0;    ///< closure lines before the first interior line
  int right_ext = 0;   ///< closure lines after the last interior line
  int bottom_ext = 0;  ///< closure points below each line
  int top_ext = 0;
  int nx = 0;
  int ny = 0;
  double h = 0.0;

  int n_lines() const { return static_cast<int>(D.size()); }
  Eigen::Index size() const {
    return static_cast<Eigen::Index>(n_lines()) * block;
  }
  /// extended line index of interior gridline i (1-based, 1..nx)
  int line_of_interior(int i) const { return left_ext + i - 1; }
  /// block row of interior point j (1-based, 1..ny)
  int row_of_interior(int j) const { return bottom_ext + j - 1; }
  Eigen::Index dof(int line, int row) const {
    return static_cast<Eigen::Index>(line) * block + row;
  }
  bool is_physical_dof(Eigen::Index d) const;

  Vector apply(const Vector& v) const;
  Matrix dense() const;

  /// coordinate-triplet debug dump: "row col re im" per nonzero
  void dump_triplets(std::ostream& os) const;
};

/// f over the extended unknowns; zero outside the physical interior.
Vector zero_rhs(const LineOperator& op);

/// Random complex standard-normal source on the physical interior points,
/// zero elsewhere (closure lines carry no source).
Vector random_rhs(const LineOperator& op, std::uint64_t seed);

/// Unit point source at interior gridline i, interior point j (1-based).
Vector point_rhs(const LineOperator& op, int i, int j);

}  // namespace helmsweep

#endif
