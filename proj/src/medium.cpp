#include "helmsweep/medium.hpp"

#include <algorithm>
#include <cmath>

namespace helmsweep {

double MediumProfile::max_k() const {
  double m = 0.0;
  for (std::size_t l = 0; l < n_layers(); ++l)
    m = std::max(m, layer_value(l));
  return m;
}

MediumProfile layered_wavenumber(const std::vector<double>& base,
                                 const std::vector<double>& delta,
                                 double alpha, int repeats) {
  if (base.empty() || delta.empty())
    throw ConfigError("layered_wavenumber: empty layer lists");
  if (base.size() != delta.size())
    throw ConfigError("layered_wavenumber: base/delta length mismatch");
  if (repeats < 1) throw ConfigError("layered_wavenumber: repeats >= 1");

  MediumProfile p;
  p.alpha = alpha;
  const std::size_t L = base.size() * static_cast<std::size_t>(repeats);
  p.base_k.resize(L);
  p.delta_k.resize(L);
  for (std::size_t l = 0; l < L; ++l) {
    p.base_k[l] = base[l % base.size()];
    p.delta_k[l] = delta[l % base.size()];
  }
  p.layer_edges.resize(L - 1);
  for (std::size_t l = 0; l + 1 < L; ++l)
    p.layer_edges[l] = static_cast<double>(l + 1) / static_cast<double>(L);
  for (std::size_t l = 0; l < L; ++l)
    if (p.layer_value(l) <= 0.0)
      throw ConfigError("layered_wavenumber: nonpositive k in layer " +
                        std::to_string(l));
  return p;
}

MediumProfile constant_wavenumber(double k) {
  MediumProfile p;
  p.base_k = {k};
  p.delta_k = {0.0};
  p.alpha = 0.0;
  if (k <= 0.0) throw ConfigError("constant_wavenumber: k must be positive");
  return p;
}

static std::size_t layer_of(const MediumProfile& p, double x) {
  // half-open layers [e_l, e_{l+1}); a point on an edge joins the right layer
  const auto it =
      std::upper_bound(p.layer_edges.begin(), p.layer_edges.end(), x);
  return static_cast<std::size_t>(it - p.layer_edges.begin());
}

double evaluate_k(const MediumProfile& profile, double x) {
  if (!(x > 0.0 && x < 1.0))
    throw ConfigError("evaluate_k: x must lie in (0,1)");
  return profile.layer_value(layer_of(profile, x));
}

double evaluate_k_clamped(const MediumProfile& profile, double x) {
  if (x <= 0.0) return profile.layer_value(0);
  if (x >= 1.0) return profile.layer_value(profile.n_layers() - 1);
  return profile.layer_value(layer_of(profile, x));
}

bool resolution_ok(const MediumProfile& profile, double h) {
  return h * profile.max_k() <= 2.0 * M_PI / 10.0 + 1e-12;
}

}  // namespace helmsweep
