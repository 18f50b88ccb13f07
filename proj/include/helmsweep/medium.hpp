#ifndef HELMSWEEP_MEDIUM_HPP
#define HELMSWEEP_MEDIUM_HPP

#include <vector>

#include "helmsweep/types.hpp"

namespace helmsweep {

/// Piecewise-constant wavenumber profile over x in (0,1).  Layers are
/// half-open intervals [edge_l, edge_{l+1}); a point exactly on an interior
/// edge belongs to the layer on its right.
struct MediumProfile {
  std::vector<double> layer_edges;  ///< interior breakpoints, increasing
  std::vector<double> base_k;       ///< per-layer base wavenumber
  std::vector<double> delta_k;      ///< per-layer contrast increment
  double alpha = 0.0;

  std::size_t n_layers() const { return base_k.size(); }
  double layer_value(std::size_t layer) const {
    return base_k[layer] + alpha * delta_k[layer];
  }
  double max_k() const;
};

/// Equispaced layered profile: base/delta repeated `repeats` times, giving
/// base.size()*repeats equal-width layers with
/// k = base[l % base.size()] + alpha*delta[l % base.size()] in layer l.
MediumProfile layered_wavenumber(const std::vector<double>& base,
                                 const std::vector<double>& delta,
                                 double alpha, int repeats);

/// Constant profile (single layer).
MediumProfile constant_wavenumber(double k);

/// Layer value at x, 0 < x < 1.  Throws ConfigError outside (0,1).
double evaluate_k(const MediumProfile& profile, double x);

/// Same lookup, but x outside (0,1) clamps to the nearest layer (identity
/// extension of the medium past the physical boundary).
double evaluate_k_clamped(const MediumProfile& profile, double x);

/// True when h*max_k <= 2*pi/10, i.e. at least ten points per wavelength.
bool resolution_ok(const MediumProfile& profile, double h);

}  // namespace helmsweep

#endif
