#pragma once

#include <functional>

#include "sdlab/common.hpp"
#include "sdlab/mesh.hpp"
#include "sdlab/params.hpp"

namespace sdlab {

/// Closed-form manufactured solution on the two-box geometry, with sources, stress
/// components and the interface data that make the coupled equations hold exactly.
/// The interface pressure (Darcy trace at y=1) is identically zero.
struct MmsData {
  PhysicalParams p;

  // exact fields
  double ux(double x, double y) const;
  double uy(double x, double y) const;
  double ps(double x, double y) const;
  double pd(double x, double y) const;
  static double lambda(double /*x*/) { return 0.0; }

  // first derivatives used for stress/flux data
  double dux_dx(double x, double y) const;
  double dux_dy(double x, double y) const;
  double duy_dx(double x, double y) const;
  double duy_dy(double x, double y) const;
  double dpd_dx(double x, double y) const;
  double dpd_dy(double x, double y) const;

  // full stress components sigma = 2 mu eps(u) - pS I
  double sigma_xx(double x, double y) const;
  double sigma_yy(double x, double y) const;
  double sigma_xy(double x, double y) const;

  // sources
  double f_sx(double x, double y) const;
  double f_sy(double x, double y) const;
  double f_d(double x, double y) const;

  // interface data at y = 1 (modify only the right-hand side)
  double h_tau(double x) const;
  double h_n(double x) const;
  static double g(double /*x*/) { return 0.0; }
};

/// Everything assembly needs about the driving data: volume sources, boundary data per
/// edge (interpretation depends on the layout tag), and interface data.
struct ProblemData {
  using Fxy = std::function<double(double, double)>;
  using Fx = std::function<double(double)>;

  Fxy f_sx, f_sy, f_d;

  // Stokes edges: velocity Dirichlet -> (gx, gy); traction Neumann -> (tx, ty) = sigma.n
  struct StokesEdgeData {
    Fxy a, b;
  };
  StokesEdgeData top, s_left, s_right;

  // Darcy edges: pressure Dirichlet -> p; flux Neumann -> q = (-kappa grad p).n_out
  struct DarcyEdgeData {
    Fxy v;
  };
  DarcyEdgeData bottom, d_left, d_right;

  Fx h_tau, h_n, g;
};

/// Data drawn from the manufactured solution, matching the given boundary layout.
ProblemData make_mms_data(const PhysicalParams& p, const BoundaryLayout& layout);

/// All-zero data (zero sources, zero boundary and interface data).
ProblemData make_zero_data();

/// Per-field discrete L2 errors sqrt(sum_K |K| (num_K - exact(center_K))^2) over the
/// full dof sets (Dirichlet dofs contribute zero by construction).
struct FieldErrors {
  double ux = 0, uy = 0, ps = 0, pd = 0, pgamma = 0;
  bool has_pgamma = false;
};

struct ConvergenceRow {
  int nx;
  double h;
  FieldErrors err;
  // observed orders vs the previous row; NaN in the first row
  double order_ux, order_uy, order_ps, order_pd, order_pgamma;
};

}  // namespace sdlab
