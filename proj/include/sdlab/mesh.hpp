#pragma once

#include <vector>

#include "sdlab/common.hpp"

namespace sdlab {

/// Boundary condition tag for a Stokes boundary edge.
enum class StokesBc { velocity_dirichlet, traction_neumann };
/// Boundary condition tag for a Darcy boundary edge.
enum class DarcyBc { pressure_dirichlet, flux_neumann };

/// Per-edge boundary classification of the two-subdomain box.
/// The interface (y = 1) is never tagged; its conditions come from the coupling.
struct BoundaryLayout {
  StokesBc stokes_top;
  StokesBc stokes_left;
  StokesBc stokes_right;
  DarcyBc darcy_bottom;
  DarcyBc darcy_left;
  DarcyBc darcy_right;

  /// Top edge velocity Dirichlet, bottom edge pressure Dirichlet, lateral edges Neumann.
  static BoundaryLayout top_dirichlet();
  /// Swapped placement: lateral edges Dirichlet, top/bottom edges Neumann.
  /// The interface endpoints touch Dirichlet boundary parts in this layout.
  static BoundaryLayout side_dirichlet();
};

/// Structured staggered grid for the coupled problem:
/// Stokes on [0,1]x[1,2] (MAC layout), Darcy on [0,1]x[0,1] (cell centers),
/// flat interface at y = 1 with outward Stokes normal n = (0,-1).
///
/// Degrees of freedom (full sets, before any Dirichlet elimination):
///   x-velocity at vertical faces   (i=0..nx, j=0..ny_s-1) at (i*hx, 1+(j+1/2)*hy_s)
///   y-velocity at horizontal faces (i=0..nx-1, j=0..ny_s) at ((i+1/2)*hx, 1+j*hy_s);
///     the j=0 row lies on the interface, j=ny_s on the top boundary
///   Stokes pressure at cell centers, Darcy pressure at cell centers
///   interface facets i=0..nx-1 of length hx centered at ((i+1/2)*hx, 1)
struct StaggeredMesh {
  int nx = 0;
  int ny_s = 0;
  int ny_d = 0;
  double hx = 0;
  double hy_s = 0;
  double hy_d = 0;
  BoundaryLayout layout{};

  // dof counts (full sets)
  int n_ux() const { return (nx + 1) * ny_s; }
  int n_uy() const { return nx * (ny_s + 1); }
  int n_ps() const { return nx * ny_s; }
  int n_pd() const { return nx * ny_d; }
  int n_facets() const { return nx; }

  // index maps (contiguous, row-major within each field)
  int ux(int i, int j) const { return j * (nx + 1) + i; }
  int uy(int i, int j) const { return j * nx + i; }
  int ps(int i, int j) const { return j * nx + i; }
  int pd(int i, int j) const { return j * nx + i; }

  // dof coordinates
  double x_face(int i) const { return i * hx; }
  double x_center(int i) const { return (i + 0.5) * hx; }
  double y_s_face(int j) const { return 1.0 + j * hy_s; }
  double y_s_center(int j) const { return 1.0 + (j + 0.5) * hy_s; }
  double y_d_center(int j) const { return (j + 0.5) * hy_d; }

  /// Distance from an interface-adjacent Darcy cell centroid to its facet centroid.
  double h_K() const { return 0.5 * hy_d; }
  /// Outward normal of the Stokes subdomain on the interface.
  static constexpr double interface_normal_y = -1.0;

  /// Width of the x-velocity control volume in x (half cells at the lateral walls).
  double ux_cv_width(int i) const { return (i == 0 || i == nx) ? 0.5 * hx : hx; }
  /// Height of the y-velocity control volume in y (half cells at interface and top).
  double uy_cv_height(int j) const { return (j == 0 || j == ny_s) ? 0.5 * hy_s : hy_s; }
};

/// One interface facet record: facet id, length, adjacent Darcy cell (top row),
/// and the y-velocity dof lying on the facet.
struct InterfaceFacet {
  int facet;
  double length;
  int darcy_cell;
  int stokes_uy_dof;
};

/// Build the conforming two-subdomain mesh. Requires nx, ny_s, ny_d >= 2.
StaggeredMesh build_mesh(int nx, int ny_s, int ny_d, const BoundaryLayout& layout);
StaggeredMesh build_mesh(int nx, int ny_s, int ny_d);

std::vector<InterfaceFacet> interface_facets(const StaggeredMesh& mesh);

}  // namespace sdlab
