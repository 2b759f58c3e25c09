#include "sdlab/params.hpp"

#include <cmath>

namespace sdlab {

void PhysicalParams::validate() const {
  if (!(mu > 0) || !std::isfinite(mu)) throw ConfigError("mu must be positive");
  if (!(k > 0) || !std::isfinite(k)) throw ConfigError("k must be positive");
  if (!(alpha >= 0) || !std::isfinite(alpha)) throw ConfigError("alpha must be nonnegative");
}

double BetaN::resolve(const StaggeredMesh& mesh, const PhysicalParams& p) const {
  double b = (mode == BetaNMode::consistent) ? mesh.h_K() / p.kappa() : value;
  if (!(b > 0) || !std::isfinite(b)) throw ConfigError("beta_n must resolve to a positive value");
  return b;
}

PhysicalParams from_dimensionless(const DimensionlessParams& d) {
  if (!(d.S > 0) || !(d.Da > 0)) throw ConfigError("S and Da must be positive");
  if (!(d.U0 > 0) || !(d.DeltaP0 > 0) || !(d.L0 > 0) || !(d.rho0 > 0))
    throw ConfigError("characteristic scales must be positive");
  PhysicalParams p;
  // S = U0 mu / (L0 DeltaP0): invert for mu; Da = k / L0^2.
  p.mu = d.S * d.L0 * d.DeltaP0 / d.U0;
  p.k = d.Da * d.L0 * d.L0;
  p.alpha = d.alpha;
  p.validate();
  return p;
}

std::vector<SweepCase> sweep_grid(const std::vector<double>& S, const std::vector<double>& Da,
                                  const std::vector<double>& alpha, const std::vector<int>& nx) {
  std::vector<SweepCase> grid;
  grid.reserve(S.size() * Da.size() * alpha.size() * nx.size());
  for (double s : S)
    for (double da : Da)
      for (double a : alpha)
        for (int n : nx) {
          DimensionlessParams d;
          d.S = s;
          d.Da = da;
          d.alpha = a;
          grid.push_back({from_dimensionless(d), s, da, n});
        }
  return grid;
}

const std::vector<double>& default_sweep_S() {
  static const std::vector<double> v{1e1, 1e-1, 1e-3, 1e-5};
  return v;
}
const std::vector<double>& default_sweep_Da() {
  static const std::vector<double> v{1.0, 1e-2, 1e-4, 1e-8, 1e-11, 1e-14};
  return v;
}
const std::vector<double>& default_sweep_alpha() {
  static const std::vector<double> v{0.0, 1.0, 10.0, 100.0};
  return v;
}
const std::vector<int>& default_sweep_nx() {
  static const std::vector<int> v{16, 32, 64, 128};
  return v;
}

}  // namespace sdlab
