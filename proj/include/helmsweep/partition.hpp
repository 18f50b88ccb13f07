#ifndef HELMSWEEP_PARTITION_HPP
#define HELMSWEEP_PARTITION_HPP

#include <string>
#include <vector>

#include "helmsweep/line_operator.hpp"

namespace helmsweep {

/// Subscript tags for the per-subdomain index sets.  The names follow the
/// role of each set: interfaces, overlap closures/interiors, subdomain
/// interior, the overlap-free core, and the two exteriors.
enum class IndexTag {
  All,                   // every d.o.f. of the closed subdomain
  LeftInterface,         // j<     first line of the subdomain
  RightInterface,        // j>     last line
  LeftOverlapEnd,        // j]     end of the overlap shared with j-1
  RightOverlapEnd,       // j[     end of the overlap shared with j+1
  LeftOverlap,           // j<]    closure of the left overlap
  RightOverlap,          // j[>    closure of the right overlap
  LeftOverlapInterior,   // j<.]
  RightOverlapInterior,  // j[.>
  Interior,              // j.     All minus both interfaces
  Core,                  // j[.]   interior minus both overlap closures
  LeftExterior,          // ~j     everything left of the subdomain
  RightExterior          // j~     everything right of the subdomain
};

/// Strip decomposition of the gridlines.  Subdomain j (1-based) covers the
/// extended lines first(j)..last(j) inclusive; neighboring closures share
/// the lines last(j-1)..first(j), a single common line when non-overlapping.
/// Subdomain 1 additionally owns the left outer-closure lines and subdomain
/// J the right ones.
class StripPartition {
 public:
  StripPartition() = default;

  int J() const { return static_cast<int>(first_.size()); }
  int first(int j) const { return first_[j - 1]; }
  int last(int j) const { return last_[j - 1]; }
  /// first line including outer closure lines (differs from first() only
  /// for j=1); similarly last_closed for j=J
  int first_closed(int j) const { return j == 1 ? 0 : first_[j - 1]; }
  int last_closed(int j) const {
    return j == J() ? n_lines_ - 1 : last_[j - 1];
  }
  int n_lines() const { return n_lines_; }
  int block() const { return block_; }

  std::vector<int> lines(int j, IndexTag tag) const;
  bool empty_set(int j, IndexTag tag) const { return lines(j, tag).empty(); }

  std::string to_json() const;

  // construction data
  std::vector<int> first_;
  std::vector<int> last_;
  int n_lines_ = 0;
  int block_ = 0;
  int overlap_lines_ = 0;
};

/// Equal-width strips (leftmost strips absorb any remainder), with
/// overlap_lines interior lines in each overlap.  overlap_lines = 0 gives
/// the non-overlapping decomposition where neighboring closures share one
/// gridline.
StripPartition make_strip_partition(const LineOperator& op, int J,
                                    int overlap_lines = 0);

/// Generous-overlap layout for source transfer: J+1 disjoint layers
/// O_0..O_J separated by single gridlines; subdomain j is the closure of
/// O_{j-1} and O_j.  Every interior subdomain is the union of its two
/// overlaps.
StripPartition make_source_transfer_partition(const LineOperator& op, int J);

/// Global dof indices (sorted) of one tagged set.
std::vector<Eigen::Index> index_set(const StripPartition& p, int j,
                                    IndexTag tag);

enum class SweepDirection { Forward, Backward };

/// 0/1 partition-of-unity weights used to glue subdomain iterates: the
/// forward variant assigns each line to the rightmost subdomain whose
/// non-overlap region or trailing interface reaches it, the backward
/// variant mirrors.  Both satisfy sum_j R_j^T Phi_j R_j = I with disjoint
/// supports.
struct WeightingOperator {
  // per-subdomain inclusive line range carrying weight one
  std::vector<int> lo;
  std::vector<int> hi;
  int block = 0;
  int n_lines = 0;

  /// glue per-subdomain vectors (each over the closed line range of its
  /// subdomain) into one global vector
  Vector glue(const StripPartition& p,
              const std::vector<Vector>& locals) const;
  /// weight diagonal for subdomain j over its closed line range
  Vector phi(const StripPartition& p, int j) const;
};

WeightingOperator weighting(const StripPartition& p, SweepDirection dir);

/// restriction of a global vector to the closed line range of subdomain j
Vector restrict_lines(const StripPartition& p, const Vector& v, int j);

}  // namespace helmsweep

#endif
