#ifndef HELMSWEEP_SUBDOMAIN_HPP
#define HELMSWEEP_SUBDOMAIN_HPP

#include <memory>

#include "helmsweep/transmission.hpp"

namespace helmsweep {

/// One subdomain's transmission-augmented system over its closed line
/// range: interface rows replaced by the interface operators (identity row
/// for Dirichlet, which also drops that row's coupling into the interior),
/// interior rows taken from the global operator.  Factored once per
/// configuration with the per-line Schur recurrence and reused by every
/// sweep application.
class SubdomainSystem {
 public:
  SubdomainSystem() = default;

  /// lines: closed extended range [a, b]; left/right may be empty
  /// operators (no replacement, e.g. subdomain 1's left side).
  SubdomainSystem(const LineOperator& op, int a, int b,
                  const InterfaceOperator& left,
                  const InterfaceOperator& right);

  /// fully explicit variant (used by unfolded-PML systems and tests)
  SubdomainSystem(std::vector<Matrix> D, std::vector<Vector> lower,
                  std::vector<Vector> upper, int first_line);

  Vector solve(const Vector& rhs) const;

  int first_line() const { return a_; }
  int last_line() const { return a_ + n_lines_ - 1; }
  int n_lines() const { return n_lines_; }
  int block() const { return block_; }
  Eigen::Index size() const {
    return static_cast<Eigen::Index>(n_lines_) * block_;
  }
  Eigen::Index offset_of_line(int l) const {
    return static_cast<Eigen::Index>(l - a_) * block_;
  }

 private:
  void factor();

  std::vector<Matrix> D_;
  std::vector<Vector> lower_;  ///< (l+1, l) couplings
  std::vector<Vector> upper_;  ///< (l, l+1) couplings
  std::vector<LUFactors> T_;
  int a_ = 0;
  int n_lines_ = 0;
  int block_ = 0;
};

/// Per-side transmission choice for building a subdomain system.
struct KindPair {
  TransmissionConfig left;
  TransmissionConfig right;
};

/// Build the factored systems for all subdomains of p, with the given
/// transmission kinds on interior interfaces.
std::vector<SubdomainSystem> build_subdomain_systems(
    const LineOperator& op, const StripPartition& p,
    const TransmissionSet& ts, const KindPair& kinds);

/// Unfolded variant of a PML-transmission subdomain system: instead of the
/// folded Schur operator, the PML pseudo-lines stay as explicit unknowns.
/// solve_physical() restricts the solution back to the subdomain's lines.
class UnfoldedPmlSystem {
 public:
  UnfoldedPmlSystem(const Grid2D& grid, const MediumProfile& medium,
                    const BoundarySpec& bc, const LineOperator& op,
                    const StripPartition& p, int j, const PmlSpec& pml);
  /// rhs over the subdomain's closed lines; PML unknowns carry zero source
  Vector solve_physical(const Vector& rhs) const;

 private:
  SubdomainSystem sys_;
  int pml_left_ = 0;
  int pml_right_ = 0;
  int block_ = 0;
  int phys_lines_ = 0;
};

}  // namespace helmsweep

#endif
