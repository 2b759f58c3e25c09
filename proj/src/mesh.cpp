#include "sdlab/mesh.hpp"

namespace sdlab {

BoundaryLayout BoundaryLayout::top_dirichlet() {
  return {StokesBc::velocity_dirichlet, StokesBc::traction_neumann,
          StokesBc::traction_neumann,   DarcyBc::pressure_dirichlet,
          DarcyBc::flux_neumann,        DarcyBc::flux_neumann};
}

BoundaryLayout BoundaryLayout::side_dirichlet() {
  return {StokesBc::traction_neumann,    StokesBc::velocity_dirichlet,
          StokesBc::velocity_dirichlet,  DarcyBc::flux_neumann,
          DarcyBc::pressure_dirichlet,   DarcyBc::pressure_dirichlet};
}

StaggeredMesh build_mesh(int nx, int ny_s, int ny_d, const BoundaryLayout& layout) {
  if (nx < 2 || ny_s < 2 || ny_d < 2)
    throw ConfigError("mesh dimensions must be >= 2 (staggered stencils need two cells)");
  StaggeredMesh m;
  m.nx = nx;
  m.ny_s = ny_s;
  m.ny_d = ny_d;
  m.hx = 1.0 / nx;
  m.hy_s = 1.0 / ny_s;
  m.hy_d = 1.0 / ny_d;
  m.layout = layout;
  return m;
}

StaggeredMesh build_mesh(int nx, int ny_s, int ny_d) {
  return build_mesh(nx, ny_s, ny_d, BoundaryLayout::top_dirichlet());
}

std::vector<InterfaceFacet> interface_facets(const StaggeredMesh& mesh) {
  std::vector<InterfaceFacet> out;
  out.reserve(mesh.n_facets());
  for (int i = 0; i < mesh.nx; ++i)
    out.push_back({i, mesh.hx, mesh.pd(i, mesh.ny_d - 1), mesh.uy(i, 0)});
  return out;
}

}  // namespace sdlab
