#include "helmsweep/grid.hpp"

#include <cmath>

namespace helmsweep {

Grid2D build_grid(int nx, int ny) {
  if (nx < 2 || ny < 2) throw ConfigError("build_grid: need nx, ny >= 2");
  if (nx != ny)
    throw ConfigError("build_grid: nx != ny gives anisotropic cells; only "
                      "square cells are supported");
  Grid2D g;
  g.nx = nx;
  g.ny = ny;
  g.h = 1.0 / (nx + 1);
  return g;
}

double PmlSpec::sigma_default(double delta) const {
  // exp(-2 * sigma0 * delta / (p+1)) = 1e-4 for omega = local k
  return 0.5 * (profile_exponent + 1) * std::log(1e4) / delta;
}

double PmlSpec::sigma(double t, double delta) const {
  const double s0 = sigma0 > 0.0 ? sigma0 : sigma_default(delta);
  return s0 * std::pow(t / delta, profile_exponent);
}

Complex PmlSpec::stretch(double t, double delta, double omega) const {
  if (t <= 0.0) return Complex(1.0, 0.0);
  return Complex(1.0, sigma(t, delta) / omega);
}

BoundarySpec BoundarySpec::guide(SideCondition lr, PmlSpec pml) {
  BoundarySpec bc;
  bc.left = bc.right = lr;
  bc.bottom = bc.top = SideCondition::Dirichlet;
  bc.pml = pml;
  return bc;
}

BoundarySpec BoundarySpec::open(SideCondition all, PmlSpec pml) {
  BoundarySpec bc;
  bc.left = bc.right = bc.bottom = bc.top = all;
  bc.pml = pml;
  return bc;
}

}  // namespace helmsweep
