#include "helmsweep/partition.hpp"

#include <numeric>
#include <sstream>

namespace helmsweep {

namespace {

// interior strip boundaries: J strips over gridline gaps 1..nx+1, leftmost
// strips take the remainder; returns the J-1 interior interface gridlines
std::vector<int> interface_lines(int nx, int J) {
  const int gaps = nx + 1;
  if (J > gaps - 1)
    throw ConfigError("make_strip_partition: more strips than gridlines");
  std::vector<int> m(J - 1);
  const int base = gaps / J;
  const int rem = gaps % J;
  int pos = 0;
  for (int r = 0; r < J - 1; ++r) {
    pos += base + (r < rem ? 1 : 0);
    m[r] = pos;  // interior gridline index (1-based)
  }
  return m;
}

}  // namespace

StripPartition make_strip_partition(const LineOperator& op, int J,
                                    int overlap_lines) {
  if (J < 1) throw ConfigError("make_strip_partition: J >= 1 required");
  if (overlap_lines < 0)
    throw ConfigError("make_strip_partition: negative overlap");
  StripPartition p;
  p.n_lines_ = op.n_lines();
  p.block_ = op.block;
  p.overlap_lines_ = overlap_lines;
  p.first_.resize(J);
  p.last_.resize(J);
  if (J == 1) {
    p.first_[0] = 0;
    p.last_[0] = op.n_lines() - 1;
    return p;
  }
  const auto m = interface_lines(op.nx, J);
  // non-overlapping: neighbors share the interface line; with overlap the
  // shared closure gains overlap_lines interior lines, split evenly
  const int grow_left = (overlap_lines + 1) / 2;
  const int grow_right = overlap_lines + 1 - grow_left;
  for (int j = 0; j < J; ++j) {
    if (j == 0) {
      p.first_[j] = 0;
    } else {
      const int g = op.line_of_interior(m[j - 1]);
      p.first_[j] = overlap_lines == 0 ? g : g - grow_left;
    }
    if (j == J - 1) {
      p.last_[j] = op.n_lines() - 1;
    } else {
      const int g = op.line_of_interior(m[j]);
      p.last_[j] = overlap_lines == 0 ? g : g + grow_right;
    }
  }
  for (int j = 1; j <= J; ++j) {
    if (p.first_[j - 1] < 0 || p.last_[j - 1] >= op.n_lines() ||
        p.first_[j - 1] >= p.last_[j - 1])
      throw ConfigError("make_strip_partition: strip " + std::to_string(j) +
                        " degenerate (overlap too large or J too big)");
    if (j + 2 <= J && p.last_[j - 1] >= p.first_[j + 1])
      throw ConfigError(
          "make_strip_partition: overlap so large that non-adjacent strips "
          "meet");
  }
  return p;
}

StripPartition make_source_transfer_partition(const LineOperator& op, int J) {
  if (J < 2)
    throw ConfigError("make_source_transfer_partition: J >= 2 required");
  // J+1 layers separated by J single gridlines
  const auto g = interface_lines(op.nx, J + 1);
  StripPartition p;
  p.n_lines_ = op.n_lines();
  p.block_ = op.block;
  p.overlap_lines_ = -1;  // marker: generous-overlap layout
  p.first_.resize(J);
  p.last_.resize(J);
  for (int j = 0; j < J; ++j) {
    p.first_[j] = j == 0 ? 0 : op.line_of_interior(g[j - 1]);
    p.last_[j] = j == J - 1 ? op.n_lines() - 1 : op.line_of_interior(g[j + 1]);
  }
  for (int j = 1; j < J; ++j) {
    // the 0/1 damping weights need at least two interior lines per overlap
    const int interior = p.last_[j - 1] - p.first_[j] - 1;
    if (interior < 2)
      throw ConfigError(
          "make_source_transfer_partition: overlaps thinner than two "
          "interior lines");
  }
  return p;
}

std::vector<int> StripPartition::lines(int j, IndexTag tag) const {
  if (j < 1 || j > J()) throw ConfigError("StripPartition: bad subdomain");
  const int a = first(j);
  const int b = last(j);
  const int ac = first_closed(j);
  const int bc = last_closed(j);
  const bool has_left = j > 1;
  const bool has_right = j < J();
  const int p = has_left ? last(j - 1) : -1;   // end of left overlap
  const int q = has_right ? first(j + 1) : -1;  // end of right overlap

  auto range = [](int lo, int hi) {
    std::vector<int> v;
    for (int l = lo; l <= hi; ++l) v.push_back(l);
    return v;
  };

  switch (tag) {
    case IndexTag::All:
      return range(ac, bc);
    case IndexTag::LeftInterface:
      return has_left ? range(a, a) : std::vector<int>{};
    case IndexTag::RightInterface:
      return has_right ? range(b, b) : std::vector<int>{};
    case IndexTag::LeftOverlapEnd:
      return has_left ? range(p, p) : std::vector<int>{};
    case IndexTag::RightOverlapEnd:
      return has_right ? range(q, q) : std::vector<int>{};
    case IndexTag::LeftOverlap:
      return has_left ? range(a, p) : std::vector<int>{};
    case IndexTag::RightOverlap:
      return has_right ? range(q, b) : std::vector<int>{};
    case IndexTag::LeftOverlapInterior:
      return has_left && p - a >= 2 ? range(a + 1, p - 1)
                                    : std::vector<int>{};
    case IndexTag::RightOverlapInterior:
      return has_right && b - q >= 2 ? range(q + 1, b - 1)
                                     : std::vector<int>{};
    case IndexTag::Interior: {
      const int lo = has_left ? a + 1 : ac;
      const int hi = has_right ? b - 1 : bc;
      return range(lo, hi);
    }
    case IndexTag::Core: {
      const int lo = has_left ? p + 1 : ac;
      const int hi = has_right ? q - 1 : bc;
      return lo <= hi ? range(lo, hi) : std::vector<int>{};
    }
    case IndexTag::LeftExterior:
      return has_left ? range(0, a - 1) : std::vector<int>{};
    case IndexTag::RightExterior:
      return has_right ? range(b + 1, n_lines_ - 1) : std::vector<int>{};
  }
  return {};
}

std::vector<Eigen::Index> index_set(const StripPartition& p, int j,
                                    IndexTag tag) {
  std::vector<Eigen::Index> idx;
  for (int l : p.lines(j, tag))
    for (int m = 0; m < p.block(); ++m)
      idx.push_back(static_cast<Eigen::Index>(l) * p.block() + m);
  return idx;
}

std::string StripPartition::to_json() const {
  std::ostringstream os;
  os << "{\"J\":" << J() << ",\"n_lines\":" << n_lines_
     << ",\"block\":" << block_ << ",\"strips\":[";
  for (int j = 1; j <= J(); ++j) {
    if (j > 1) os << ",";
    os << "[" << first_closed(j) << "," << last_closed(j) << "]";
  }
  os << "]}";
  return os.str();
}

WeightingOperator weighting(const StripPartition& p, SweepDirection dir) {
  WeightingOperator w;
  w.block = p.block();
  w.n_lines = p.n_lines();
  const int J = p.J();
  w.lo.resize(J);
  w.hi.resize(J);
  for (int j = 1; j <= J; ++j) {
    if (dir == SweepDirection::Forward) {
      // ones on the core and the right overlap end, zeros on the left
      // interface; overlap interiors go with the right neighbor
      w.lo[j - 1] = j == 1 ? 0 : p.first(j) + 1;
      w.hi[j - 1] = j == J ? p.n_lines() - 1 : p.first(j + 1);
    } else {
      // ones from the left overlap end through the line before the right
      // overlap end's... the right-neighbor takes over at last(j)
      w.lo[j - 1] = j == 1 ? 0 : p.last(j - 1);
      w.hi[j - 1] = j == J ? p.n_lines() - 1 : p.last(j) - 1;
    }
  }
  return w;
}

Vector WeightingOperator::phi(const StripPartition& p, int j) const {
  const int ac = p.first_closed(j);
  const int bc = p.last_closed(j);
  Vector d = Vector::Zero(static_cast<Eigen::Index>(bc - ac + 1) * block);
  for (int l = std::max(lo[j - 1], ac); l <= std::min(hi[j - 1], bc); ++l)
    d.segment(static_cast<Eigen::Index>(l - ac) * block, block).setOnes();
  return d;
}

Vector WeightingOperator::glue(const StripPartition& p,
                               const std::vector<Vector>& locals) const {
  Vector u = Vector::Zero(static_cast<Eigen::Index>(n_lines) * block);
  for (int j = 1; j <= p.J(); ++j) {
    const int ac = p.first_closed(j);
    for (int l = lo[j - 1]; l <= hi[j - 1]; ++l)
      u.segment(static_cast<Eigen::Index>(l) * block, block) =
          locals[j - 1].segment(static_cast<Eigen::Index>(l - ac) * block,
                                block);
  }
  return u;
}

Vector restrict_lines(const StripPartition& p, const Vector& v, int j) {
  const int ac = p.first_closed(j);
  const int bc = p.last_closed(j);
  return v.segment(static_cast<Eigen::Index>(ac) * p.block(),
                   static_cast<Eigen::Index>(bc - ac + 1) * p.block());
}

}  // namespace helmsweep
