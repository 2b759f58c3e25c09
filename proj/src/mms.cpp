#include "sdlab/mms.hpp"

#include <cmath>

namespace sdlab {

namespace {
constexpr double pi = 3.14159265358979323846;
const double e1 = std::exp(1.0);
}  // namespace

// u = ( -(1/pi) e^y sin(pi x),  (e^y - e) cos(pi x) ),  div u = 0
// pS = 2 e^y cos(pi x),  pD = (e^y - y e) cos(pi x),  pD(x,1) = 0

double MmsData::ux(double x, double y) const { return -(1.0 / pi) * std::exp(y) * std::sin(pi * x); }
double MmsData::uy(double x, double y) const { return (std::exp(y) - e1) * std::cos(pi * x); }
double MmsData::ps(double x, double y) const { return 2.0 * std::exp(y) * std::cos(pi * x); }
double MmsData::pd(double x, double y) const { return (std::exp(y) - y * e1) * std::cos(pi * x); }

double MmsData::dux_dx(double x, double y) const { return -std::exp(y) * std::cos(pi * x); }
double MmsData::dux_dy(double x, double y) const { return ux(x, y); }
double MmsData::duy_dx(double x, double y) const {
  return -pi * (std::exp(y) - e1) * std::sin(pi * x);
}
double MmsData::duy_dy(double x, double y) const { return std::exp(y) * std::cos(pi * x); }
double MmsData::dpd_dx(double x, double y) const {
  return -pi * (std::exp(y) - y * e1) * std::sin(pi * x);
}
double MmsData::dpd_dy(double x, double y) const { return (std::exp(y) - e1) * std::cos(pi * x); }

double MmsData::sigma_xx(double x, double y) const { return 2 * p.mu * dux_dx(x, y) - ps(x, y); }
double MmsData::sigma_yy(double x, double y) const { return 2 * p.mu * duy_dy(x, y) - ps(x, y); }
double MmsData::sigma_xy(double x, double y) const {
  return p.mu * (dux_dy(x, y) + duy_dx(x, y));
}

double MmsData::f_sx(double x, double y) const {
  return (1.0 / pi) * std::exp(y) * std::sin(pi * x) * (p.mu - p.mu * pi * pi - 2 * pi * pi);
}
double MmsData::f_sy(double x, double y) const {
  return std::cos(pi * x) *
         (p.mu * ((pi * pi + 1) * std::exp(y) - pi * pi * e1) + 2 * (1 - p.mu) * std::exp(y));
}
double MmsData::f_d(double x, double y) const {
  // -kappa * Laplacian(pD); note the (pi^2 - 1) factor
  return p.kappa() * std::cos(pi * x) * ((pi * pi - 1) * std::exp(y) - pi * pi * y * e1);
}

double MmsData::h_tau(double x) const {
  return (p.beta_tau() - p.mu) * (1.0 / pi) * e1 * std::sin(pi * x);
}
double MmsData::h_n(double x) const { return 2 * (p.mu - 1) * e1 * std::cos(pi * x); }

ProblemData make_mms_data(const PhysicalParams& p, const BoundaryLayout& layout) {
  MmsData m{p};
  const double kap = p.kappa();
  ProblemData d;
  d.f_sx = [m](double x, double y) { return m.f_sx(x, y); };
  d.f_sy = [m](double x, double y) { return m.f_sy(x, y); };
  d.f_d = [m](double x, double y) { return m.f_d(x, y); };
  d.h_tau = [m](double x) { return m.h_tau(x); };
  d.h_n = [m](double x) { return m.h_n(x); };
  d.g = [](double) { return 0.0; };

  auto vel = [m]() -> ProblemData::StokesEdgeData {
    return {[m](double x, double y) { return m.ux(x, y); },
            [m](double x, double y) { return m.uy(x, y); }};
  };
  // traction sigma.n on the edge with outward normal n
  auto traction = [m](double n_x, double n_y) -> ProblemData::StokesEdgeData {
    return {[m, n_x, n_y](double x, double y) {
              return m.sigma_xx(x, y) * n_x + m.sigma_xy(x, y) * n_y;
            },
            [m, n_x, n_y](double x, double y) {
              return m.sigma_xy(x, y) * n_x + m.sigma_yy(x, y) * n_y;
            }};
  };
  auto pressure = [m]() -> ProblemData::DarcyEdgeData {
    return {[m](double x, double y) { return m.pd(x, y); }};
  };
  // outward normal flux (-kappa grad p).n
  auto flux = [m, kap](double n_x, double n_y) -> ProblemData::DarcyEdgeData {
    return {[m, kap, n_x, n_y](double x, double y) {
      return -kap * (m.dpd_dx(x, y) * n_x + m.dpd_dy(x, y) * n_y);
    }};
  };

  d.top = layout.stokes_top == StokesBc::velocity_dirichlet ? vel() : traction(0, 1);
  d.s_left = layout.stokes_left == StokesBc::velocity_dirichlet ? vel() : traction(-1, 0);
  d.s_right = layout.stokes_right == StokesBc::velocity_dirichlet ? vel() : traction(1, 0);
  d.bottom = layout.darcy_bottom == DarcyBc::pressure_dirichlet ? pressure() : flux(0, -1);
  d.d_left = layout.darcy_left == DarcyBc::pressure_dirichlet ? pressure() : flux(-1, 0);
  d.d_right = layout.darcy_right == DarcyBc::pressure_dirichlet ? pressure() : flux(1, 0);
  return d;
}

ProblemData make_zero_data() {
  auto z2 = [](double, double) { return 0.0; };
  auto z1 = [](double) { return 0.0; };
  ProblemData d;
  d.f_sx = d.f_sy = d.f_d = z2;
  d.h_tau = d.h_n = d.g = z1;
  d.top = d.s_left = d.s_right = {z2, z2};
  d.bottom = d.d_left = d.d_right = {z2};
  return d;
}

}  // namespace sdlab
