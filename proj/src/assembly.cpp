#include "sdlab/assembly.hpp"

#include <cmath>

namespace sdlab {

namespace {

/// Quadratic/bilinear atom emitter over the full dof space. Energy atoms are
/// (1/2) w (sum_a c_a x_a + d)^2 with d an affine data constant; they contribute
/// w c_a c_b to the matrix and -w c_a d to the rhs. Bilinear pairs are placed
/// symmetrically. Dirichlet elimination happens afterwards at the triplet level,
/// so fixed dofs participate here like any other dof.
struct Emitter {
  std::vector<Triplet> T;
  Vec rhs;

  explicit Emitter(int n) : rhs(Vec::Zero(n)) {}

  void quad(double w, const std::vector<std::pair<int, double>>& dofs, double d = 0.0) {
    for (const auto& [ga, ca] : dofs) {
      for (const auto& [gb, cb] : dofs) T.emplace_back(ga, gb, w * ca * cb);
      if (d != 0.0) rhs[ga] -= w * ca * d;
    }
  }

  void pair_sym(int r, int c, double v) {
    T.emplace_back(r, c, v);
    T.emplace_back(c, r, v);
  }
};

}  // namespace

SparseMatrix assemble_divergence(const StaggeredMesh& m) {
  const int oux = 0, ouy = m.n_ux();
  std::vector<Triplet> T;
  for (int j = 0; j < m.ny_s; ++j)
    for (int i = 0; i < m.nx; ++i) {
      const int r = m.ps(i, j);
      T.emplace_back(r, oux + m.ux(i + 1, j), -m.hy_s);
      T.emplace_back(r, oux + m.ux(i, j), m.hy_s);
      T.emplace_back(r, ouy + m.uy(i, j + 1), -m.hx);
      T.emplace_back(r, ouy + m.uy(i, j), m.hx);
    }
  SparseMatrix B(m.n_ps(), m.n_ux() + m.n_uy());
  B.setFromTriplets(T.begin(), T.end());
  B.makeCompressed();
  return B;
}

SparseMatrix assemble_darcy_tpfa(const StaggeredMesh& m, const PhysicalParams& p) {
  const double kap = p.kappa();
  std::vector<Triplet> T;
  auto link = [&](int a, int b, double t) {
    T.emplace_back(a, a, t);
    T.emplace_back(b, b, t);
    T.emplace_back(a, b, -t);
    T.emplace_back(b, a, -t);
  };
  for (int j = 0; j < m.ny_d; ++j)
    for (int i = 0; i + 1 < m.nx; ++i) link(m.pd(i, j), m.pd(i + 1, j), kap * m.hy_d / m.hx);
  for (int j = 0; j + 1 < m.ny_d; ++j)
    for (int i = 0; i < m.nx; ++i) link(m.pd(i, j), m.pd(i, j + 1), kap * m.hx / m.hy_d);
  // half-cell closures on pressure-Dirichlet edges (data enters the rhs elsewhere)
  if (m.layout.darcy_bottom == DarcyBc::pressure_dirichlet)
    for (int i = 0; i < m.nx; ++i)
      T.emplace_back(m.pd(i, 0), m.pd(i, 0), 2 * kap * m.hx / m.hy_d);
  if (m.layout.darcy_left == DarcyBc::pressure_dirichlet)
    for (int j = 0; j < m.ny_d; ++j)
      T.emplace_back(m.pd(0, j), m.pd(0, j), 2 * kap * m.hy_d / m.hx);
  if (m.layout.darcy_right == DarcyBc::pressure_dirichlet)
    for (int j = 0; j < m.ny_d; ++j)
      T.emplace_back(m.pd(m.nx - 1, j), m.pd(m.nx - 1, j), 2 * kap * m.hy_d / m.hx);
  SparseMatrix L(m.n_pd(), m.n_pd());
  L.setFromTriplets(T.begin(), T.end());
  L.makeCompressed();
  return L;
}

CouplingBlocks assemble_coupling(const StaggeredMesh& m, const PhysicalParams& p, double beta_n) {
  CouplingBlocks c;
  std::vector<Triplet> T;
  for (int i = 0; i < m.nx; ++i) {
    T.emplace_back(i, m.uy(i, 0), -m.hx);
    c.top_cell.push_back(m.pd(i, m.ny_d - 1));
  }
  c.t_n = SparseMatrix(m.n_facets(), m.n_uy());
  c.t_n.setFromTriplets(T.begin(), T.end());
  c.t_n.makeCompressed();
  c.t_if = m.hx / beta_n;
  (void)p;
  return c;
}

AssembledSystem assemble_system(const StaggeredMesh& m, const PhysicalParams& p,
                                Formulation formulation, const BetaN& beta_n,
                                const ProblemData& data) {
  p.validate();
  const bool la = formulation == Formulation::la;
  const double bn = beta_n.resolve(m, p);
  const double hx = m.hx, hy = m.hy_s, hyd = m.hy_d;
  const int nx = m.nx, nys = m.ny_s, nyd = m.ny_d;
  const double mu = p.mu, kap = p.kappa(), btau = p.beta_tau();
  const BoundaryLayout& lay = m.layout;

  // Full layout [ux | uy | ps | pd | (pg) | traces]. Traces are tangential velocity
  // values on the interface (BJS closure) and on traction-Neumann edges (where the
  // tangential traction does work on the edge value, not on the dof half a cell
  // inside). Each trace couples through exactly one shear atom, so its block is
  // diagonal and is exactly condensed out again before the system leaves here.
  const int oux = 0, ouy = m.n_ux(), ops = ouy + m.n_uy(), opd = ops + m.n_ps(),
            opg = opd + m.n_pd(), otr = opg + (la ? m.n_facets() : 0);
  const int n_full = otr + 2 * (nx + 1) + 2 * (nys + 1);
  auto UX = [&](int i, int j) { return oux + m.ux(i, j); };
  auto UY = [&](int i, int j) { return ouy + m.uy(i, j); };
  auto PS = [&](int i, int j) { return ops + m.ps(i, j); };
  auto PD = [&](int i, int j) { return opd + m.pd(i, j); };
  auto PG = [&](int i) { return opg + i; };
  auto UT = [&](int i) { return otr + i; };                            // interface, y=1
  auto TT = [&](int i) { return otr + (nx + 1) + i; };                 // top edge, y=2
  auto TL = [&](int j) { return otr + 2 * (nx + 1) + j; };             // left edge, x=0
  auto TR = [&](int j) { return otr + 2 * (nx + 1) + (nys + 1) + j; }; // right edge, x=1

  // Dirichlet classification over the velocity dofs. Trace slots start out masked
  // and are activated by the closure atoms that use them.
  std::vector<std::uint8_t> fixed(n_full, 0);
  for (int g = otr; g < n_full; ++g) fixed[g] = 1;
  Vec xfix = Vec::Zero(n_full);
  if (lay.stokes_top == StokesBc::velocity_dirichlet)
    for (int i = 0; i < nx; ++i) {
      fixed[UY(i, nys)] = 1;
      xfix[UY(i, nys)] = data.top.b(m.x_center(i), 2.0);
    }
  if (lay.stokes_left == StokesBc::velocity_dirichlet)
    for (int j = 0; j < nys; ++j) {
      fixed[UX(0, j)] = 1;
      xfix[UX(0, j)] = data.s_left.a(0.0, m.y_s_center(j));
    }
  if (lay.stokes_right == StokesBc::velocity_dirichlet)
    for (int j = 0; j < nys; ++j) {
      fixed[UX(nx, j)] = 1;
      xfix[UX(nx, j)] = data.s_right.a(1.0, m.y_s_center(j));
    }
  // traces lying on velocity-Dirichlet edges carry that edge's data and stay fixed
  std::vector<std::uint8_t> pinned(n_full, 0);
  auto pin = [&](int g, double v) {
    pinned[g] = 1;
    xfix[g] = v;
  };
  auto use_trace = [&](int g) {
    if (!pinned[g]) fixed[g] = 0;
  };
  if (lay.stokes_left == StokesBc::velocity_dirichlet) {
    pin(UT(0), data.s_left.a(0.0, 1.0));
    pin(TT(0), data.s_left.a(0.0, 2.0));
  }
  if (lay.stokes_right == StokesBc::velocity_dirichlet) {
    pin(UT(nx), data.s_right.a(1.0, 1.0));
    pin(TT(nx), data.s_right.a(1.0, 2.0));
  }
  if (lay.stokes_top == StokesBc::velocity_dirichlet) {
    pin(TL(nys), data.top.b(0.0, 2.0));
    pin(TR(nys), data.top.b(1.0, 2.0));
  }

  Emitter em(n_full);

  // ---- Stokes: normal strains per cell, divergence coupling, volume sources ----
  for (int j = 0; j < nys; ++j)
    for (int i = 0; i < nx; ++i) {
      const double w2mu = 2 * mu * hx * hy;
      em.quad(w2mu, {{UX(i + 1, j), 1 / hx}, {UX(i, j), -1 / hx}});
      em.quad(w2mu, {{UY(i, j + 1), 1 / hy}, {UY(i, j), -1 / hy}});
      const int r = PS(i, j);
      em.pair_sym(r, UX(i + 1, j), -hy);
      em.pair_sym(r, UX(i, j), hy);
      em.pair_sym(r, UY(i, j + 1), -hx);
      em.pair_sym(r, UY(i, j), hx);
    }

  // ---- Stokes: shear energy at vertex nodes ----
  // Interface nodes (j=0) are replaced by the BJS closure. Nodes on traction edges are
  // omitted (natural condition; the data enters through trace quadrature below). Nodes
  // on velocity-Dirichlet edges use one-sided half-cell closures with the edge trace.
  for (int j = 1; j <= nys; ++j)
    for (int i = 0; i <= nx; ++i) {
      const bool top = (j == nys), left = (i == 0), right = (i == nx);
      if (top && lay.stokes_top == StokesBc::traction_neumann) continue;
      if (left && lay.stokes_left == StokesBc::traction_neumann) continue;
      if (right && lay.stokes_right == StokesBc::traction_neumann) continue;
      const double wx = (left || right) ? 0.5 * hx : hx;
      const double wy = top ? 0.5 * hy : hy;
      std::vector<std::pair<int, double>> dofs;
      double d = 0;
      const double xi = m.x_face(i), yj = m.y_s_face(j);
      if (!top) {
        dofs.push_back({UX(i, j), 1 / hy});
        dofs.push_back({UX(i, j - 1), -1 / hy});
      } else {
        d += data.top.a(xi, 2.0) * (2 / hy);
        dofs.push_back({UX(i, nys - 1), -2 / hy});
      }
      if (!left && !right) {
        dofs.push_back({UY(i, j), 1 / hx});
        dofs.push_back({UY(i - 1, j), -1 / hx});
      } else if (left) {
        dofs.push_back({UY(0, j), 2 / hx});
        d += data.s_left.b(0.0, yj) * (-2 / hx);
      } else {
        d += data.s_right.b(1.0, yj) * (2 / hx);
        dofs.push_back({UY(nx - 1, j), -2 / hx});
      }
      em.quad(mu * wx * wy, dofs, d);
    }

  // ---- interface: BJS tangential closure ----
  // The slip penalty and the shear data act on the tangential trace u_t at y=1,
  // not on the first x-velocity row half a cell above it. Shear-node atoms over the
  // half boxes [x_i +- hx/2] x [1, 1+hy/2] tie the two together with
  //   gamma = (ux(i,0) - u_t_i)/(hy/2) + d(uy)/dx|_Gamma,
  // restoring the strip's shear energy that the skipped j=0 vertex nodes would
  // otherwise drop.
  for (int i = 0; i <= nx; ++i) {
    use_trace(UT(i));
    const double w = m.ux_cv_width(i);
    if (btau != 0) em.quad(btau * w, {{UT(i), 1.0}});
    em.rhs[UT(i)] -= w * data.h_tau(m.x_face(i));

    std::vector<std::pair<int, double>> dofs{{UX(i, 0), 2 / hy}, {UT(i), -2 / hy}};
    double d = 0;
    if (i > 0 && i < nx) {
      dofs.push_back({UY(i, 0), 1 / hx});
      dofs.push_back({UY(i - 1, 0), -1 / hx});
    } else if (i == 0 && lay.stokes_left == StokesBc::velocity_dirichlet) {
      dofs.push_back({UY(0, 0), 2 / hx});
      d += data.s_left.b(0.0, 1.0) * (-2 / hx);
    } else if (i == nx && lay.stokes_right == StokesBc::velocity_dirichlet) {
      d += data.s_right.b(1.0, 1.0) * (2 / hx);
      dofs.push_back({UY(nx - 1, 0), -2 / hx});
    }
    // at traction-Neumann corners the d(uy)/dx part is dropped (measure-h^2 box)
    em.quad(mu * w * (0.5 * hy), dofs, d);
  }
  for (int i = 0; i < nx; ++i) em.rhs[UY(i, 0)] -= hx * data.h_n(m.x_center(i));

  // ---- traction-Neumann edges: tangential traces ----
  // Same construction as the interface with zero slip penalty: the edge strip's
  // shear atom closes the trace, and the tangential traction does work on it.
  // Normal traction components act on dofs that already lie on the edge.
  if (lay.stokes_top == StokesBc::traction_neumann) {
    for (int i = 0; i <= nx; ++i) {
      use_trace(TT(i));
      const double w = m.ux_cv_width(i);
      em.rhs[TT(i)] += w * data.top.a(m.x_face(i), 2.0);
      std::vector<std::pair<int, double>> dofs{{TT(i), 2 / hy}, {UX(i, nys - 1), -2 / hy}};
      double d = 0;
      if (i > 0 && i < nx) {
        dofs.push_back({UY(i, nys), 1 / hx});
        dofs.push_back({UY(i - 1, nys), -1 / hx});
      } else if (i == 0 && lay.stokes_left == StokesBc::velocity_dirichlet) {
        dofs.push_back({UY(0, nys), 2 / hx});
        d += data.s_left.b(0.0, 2.0) * (-2 / hx);
      } else if (i == nx && lay.stokes_right == StokesBc::velocity_dirichlet) {
        d += data.s_right.b(1.0, 2.0) * (2 / hx);
        dofs.push_back({UY(nx - 1, nys), -2 / hx});
      }
      em.quad(mu * w * (0.5 * hy), dofs, d);
    }
  }
  if (lay.stokes_left == StokesBc::traction_neumann) {
    for (int j = 1; j <= nys; ++j) {  // j=0 box belongs to the interface atom
      use_trace(TL(j));
      const double w = m.uy_cv_height(j);
      em.rhs[TL(j)] += w * data.s_left.b(0.0, m.y_s_face(j));
      std::vector<std::pair<int, double>> dofs{{UY(0, j), 2 / hx}, {TL(j), -2 / hx}};
      double d = 0;
      if (j < nys) {
        dofs.push_back({UX(0, j), 1 / hy});
        dofs.push_back({UX(0, j - 1), -1 / hy});
      } else if (lay.stokes_top == StokesBc::velocity_dirichlet) {
        d += data.top.a(0.0, 2.0) * (2 / hy);
        dofs.push_back({UX(0, nys - 1), -2 / hy});
      }
      em.quad(mu * w * (0.5 * hx), dofs, d);
    }
  }
  if (lay.stokes_right == StokesBc::traction_neumann) {
    for (int j = 1; j <= nys; ++j) {
      use_trace(TR(j));
      const double w = m.uy_cv_height(j);
      em.rhs[TR(j)] += w * data.s_right.b(1.0, m.y_s_face(j));
      std::vector<std::pair<int, double>> dofs{{TR(j), 2 / hx}, {UY(nx - 1, j), -2 / hx}};
      double d = 0;
      if (j < nys) {
        dofs.push_back({UX(nx, j), 1 / hy});
        dofs.push_back({UX(nx, j - 1), -1 / hy});
      } else if (lay.stokes_top == StokesBc::velocity_dirichlet) {
        d += data.top.a(1.0, 2.0) * (2 / hy);
        dofs.push_back({UX(nx, nys - 1), -2 / hy});
      }
      em.quad(mu * w * (0.5 * hx), dofs, d);
    }
  }

  // ---- Stokes volume sources (midpoint per control volume) ----
  for (int j = 0; j < nys; ++j)
    for (int i = 0; i <= nx; ++i)
      em.rhs[UX(i, j)] += m.ux_cv_width(i) * hy * data.f_sx(m.x_face(i), m.y_s_center(j));
  for (int j = 0; j <= nys; ++j)
    for (int i = 0; i < nx; ++i)
      em.rhs[UY(i, j)] += hx * m.uy_cv_height(j) * data.f_sy(m.x_center(i), m.y_s_face(j));

  // ---- normal traction work on Neumann edges (those dofs lie on the edge) ----
  if (lay.stokes_top == StokesBc::traction_neumann)
    for (int i = 0; i < nx; ++i) em.rhs[UY(i, nys)] += hx * data.top.b(m.x_center(i), 2.0);
  if (lay.stokes_left == StokesBc::traction_neumann)
    for (int j = 0; j < nys; ++j) em.rhs[UX(0, j)] += hy * data.s_left.a(0.0, m.y_s_center(j));
  if (lay.stokes_right == StokesBc::traction_neumann)
    for (int j = 0; j < nys; ++j) em.rhs[UX(nx, j)] += hy * data.s_right.a(1.0, m.y_s_center(j));

  // ---- Darcy: TPFA stiffness (negated into the monolith) + rhs ----
  SparseMatrix darcy = assemble_darcy_tpfa(m, p);
  for (int r = 0; r < darcy.outerSize(); ++r)
    for (SparseMatrix::InnerIterator it(darcy, r); it; ++it)
      em.T.emplace_back(opd + r, opd + int(it.col()), -it.value());
  {
    Vec rhs_pos = Vec::Zero(m.n_pd());
    for (int j = 0; j < nyd; ++j)
      for (int i = 0; i < nx; ++i)
        rhs_pos[m.pd(i, j)] += hx * hyd * data.f_d(m.x_center(i), m.y_d_center(j));
    if (lay.darcy_bottom == DarcyBc::pressure_dirichlet)
      for (int i = 0; i < nx; ++i)
        rhs_pos[m.pd(i, 0)] += (2 * kap * hx / hyd) * data.bottom.v(m.x_center(i), 0.0);
    else
      for (int i = 0; i < nx; ++i) rhs_pos[m.pd(i, 0)] -= hx * data.bottom.v(m.x_center(i), 0.0);
    if (lay.darcy_left == DarcyBc::pressure_dirichlet)
      for (int j = 0; j < nyd; ++j)
        rhs_pos[m.pd(0, j)] += (2 * kap * hyd / hx) * data.d_left.v(0.0, m.y_d_center(j));
    else
      for (int j = 0; j < nyd; ++j) rhs_pos[m.pd(0, j)] -= hyd * data.d_left.v(0.0, m.y_d_center(j));
    if (lay.darcy_right == DarcyBc::pressure_dirichlet)
      for (int j = 0; j < nyd; ++j)
        rhs_pos[m.pd(nx - 1, j)] += (2 * kap * hyd / hx) * data.d_right.v(1.0, m.y_d_center(j));
    else
      for (int j = 0; j < nyd; ++j)
        rhs_pos[m.pd(nx - 1, j)] -= hyd * data.d_right.v(1.0, m.y_d_center(j));
    for (int idx = 0; idx < m.n_pd(); ++idx) em.rhs[opd + idx] -= rhs_pos[idx];
  }

  // ---- interface coupling ----
  const double t_if = hx / bn;
  if (la) {
    for (int i = 0; i < nx; ++i) {
      const int K = PD(i, nyd - 1), G = PG(i), U = UY(i, 0);
      em.pair_sym(U, G, -hx);
      em.T.emplace_back(K, K, -t_if);
      em.T.emplace_back(G, G, -t_if);
      em.T.emplace_back(K, G, t_if);
      em.T.emplace_back(G, K, t_if);
      em.rhs[G] += hx * data.g(m.x_center(i));
    }
  } else {
    for (int i = 0; i < nx; ++i) {
      const int K = PD(i, nyd - 1), U = UY(i, 0);
      em.quad(bn * hx, {{U, 1.0}});
      em.pair_sym(U, K, -hx);
      em.rhs[U] -= bn * hx * data.g(m.x_center(i));
      em.rhs[K] += hx * data.g(m.x_center(i));
    }
  }

  // ---- symmetric Dirichlet reduction ----
  AssembledSystem sys;
  sys.formulation = formulation;
  sys.mesh = m;
  sys.params = p;
  sys.beta_n = bn;
  sys.darcy_stiff = std::move(darcy);

  DofMaps& dm = sys.dofs;
  dm.ux_free.assign(m.n_ux(), -1);
  dm.uy_free.assign(m.n_uy(), -1);
  dm.ux_value = Vec::Zero(m.n_ux());
  dm.uy_value = Vec::Zero(m.n_uy());
  std::vector<int> red(n_full, -1);
  int next = 0;
  for (int g = 0; g < m.n_ux(); ++g) {
    dm.ux_value[g] = xfix[oux + g];
    if (!fixed[oux + g]) {
      dm.ux_free[g] = next;
      red[oux + g] = next++;
    }
  }
  dm.n_ux_free = next;
  for (int g = 0; g < m.n_uy(); ++g) {
    dm.uy_value[g] = xfix[ouy + g];
    if (!fixed[ouy + g]) {
      dm.uy_free[g] = next;
      red[ouy + g] = next++;
    }
  }
  dm.n_uy_free = next - dm.n_ux_free;
  for (int g = ops; g < otr; ++g) red[g] = next++;
  const int n_inner = next;  // final system size, traces condensed away
  for (int g = otr; g < n_full; ++g)
    if (!fixed[g]) red[g] = next++;
  const int n_tot = next;

  sys.blocks.n_u = dm.n_u_free();
  sys.blocks.n_ps = m.n_ps();
  sys.blocks.n_pd = m.n_pd();
  sys.blocks.n_pg = la ? m.n_facets() : 0;

  Vec rhs_red = Vec::Zero(n_tot);
  for (int g = 0; g < n_full; ++g)
    if (red[g] >= 0) rhs_red[red[g]] = em.rhs[g];
  std::vector<Triplet> Tred;
  Tred.reserve(em.T.size());
  for (const auto& t : em.T) {
    const int r = red[t.row()], c = red[t.col()];
    if (r < 0) continue;
    if (c < 0)
      rhs_red[r] -= t.value() * xfix[t.col()];
    else if (t.value() != 0.0)
      Tred.emplace_back(r, c, t.value());
  }
  SparseMatrix At(n_tot, n_tot);
  At.setFromTriplets(Tred.begin(), Tred.end());
  At.makeCompressed();

  // exact condensation of the free traces: their block is diagonal, so
  // A' = K - B^T D^{-1} B keeps symmetry and definiteness
  const int nt = n_tot - n_inner;
  if (nt > 0) {
    const SparseMatrix K = slice(At, 0, n_inner, 0, n_inner);
    const SparseMatrix B = slice(At, n_inner, nt, 0, n_inner);
    const SparseMatrix D = slice(At, n_inner, nt, n_inner, nt);
    Vec dinv(nt);
    for (int r = 0; r < nt; ++r) {
      double dv = 0;
      for (SparseMatrix::InnerIterator it(D, r); it; ++it) {
        if (it.col() != r) throw std::logic_error("trace block is not diagonal");
        dv = it.value();
      }
      if (!(dv > 0)) throw DefinitenessError("interface trace closure lost definiteness");
      dinv[r] = 1.0 / dv;
    }
    const SparseMatrix Bt(B.transpose());
    const SparseMatrix scaled(dinv.asDiagonal() * B);
    sys.A = SparseMatrix(K - SparseMatrix(Bt * scaled));
    sys.rhs = rhs_red.head(n_inner) - Bt * Vec(dinv.cwiseProduct(rhs_red.tail(nt)));
  } else {
    sys.A = slice(At, 0, n_inner, 0, n_inner);
    sys.rhs = rhs_red.head(n_inner);
  }
  sys.A.makeCompressed();
  sys.A.prune(0.0);
  return sys;
}

SparseMatrix assemble_stokes_block(const StaggeredMesh& mesh, const PhysicalParams& p,
                                   Formulation formulation, double beta_n) {
  BetaN b{BetaNMode::fixed, beta_n};
  AssembledSystem sys = assemble_system(mesh, p, formulation, b, make_zero_data());
  return sys.velocity_block();
}

SparseMatrix AssembledSystem::velocity_block() const {
  return slice(A, 0, blocks.n_u, 0, blocks.n_u);
}

double AssembledSystem::t_interface() const { return mesh.hx / beta_n; }

Vec AssembledSystem::cell_volumes_s() const {
  return Vec::Constant(mesh.n_ps(), mesh.hx * mesh.hy_s);
}

FullFields expand_solution(const AssembledSystem& sys, const Vec& x) {
  const StaggeredMesh& m = sys.mesh;
  const BlockLayout& b = sys.blocks;
  FullFields f;
  f.ux = Vec(m.n_ux());
  f.uy = Vec(m.n_uy());
  for (int g = 0; g < m.n_ux(); ++g)
    f.ux[g] = sys.dofs.ux_free[g] >= 0 ? x[sys.dofs.ux_free[g]] : sys.dofs.ux_value[g];
  for (int g = 0; g < m.n_uy(); ++g)
    f.uy[g] = sys.dofs.uy_free[g] >= 0 ? x[sys.dofs.uy_free[g]] : sys.dofs.uy_value[g];
  f.ps = x.segment(b.off_ps(), b.n_ps);
  f.pd = x.segment(b.off_pd(), b.n_pd);
  f.pg = b.n_pg > 0 ? Vec(x.segment(b.off_pg(), b.n_pg)) : Vec();
  return f;
}

FieldErrors error_norms(const AssembledSystem& sys, const Vec& x, const MmsData& mms) {
  const StaggeredMesh& m = sys.mesh;
  FullFields f = expand_solution(sys, x);
  FieldErrors e;
  for (int j = 0; j < m.ny_s; ++j)
    for (int i = 0; i <= m.nx; ++i) {
      const double d = f.ux[m.ux(i, j)] - mms.ux(m.x_face(i), m.y_s_center(j));
      e.ux += m.ux_cv_width(i) * m.hy_s * d * d;
    }
  for (int j = 0; j <= m.ny_s; ++j)
    for (int i = 0; i < m.nx; ++i) {
      const double d = f.uy[m.uy(i, j)] - mms.uy(m.x_center(i), m.y_s_face(j));
      e.uy += m.hx * m.uy_cv_height(j) * d * d;
    }
  for (int j = 0; j < m.ny_s; ++j)
    for (int i = 0; i < m.nx; ++i) {
      const double d = f.ps[m.ps(i, j)] - mms.ps(m.x_center(i), m.y_s_center(j));
      e.ps += m.hx * m.hy_s * d * d;
    }
  for (int j = 0; j < m.ny_d; ++j)
    for (int i = 0; i < m.nx; ++i) {
      const double d = f.pd[m.pd(i, j)] - mms.pd(m.x_center(i), m.y_d_center(j));
      e.pd += m.hx * m.hy_d * d * d;
    }
  e.ux = std::sqrt(e.ux);
  e.uy = std::sqrt(e.uy);
  e.ps = std::sqrt(e.ps);
  e.pd = std::sqrt(e.pd);
  if (sys.blocks.n_pg > 0) {
    e.has_pgamma = true;
    double s = 0;
    for (int i = 0; i < m.nx; ++i) {
      const double d = f.pg[i] - MmsData::lambda(m.x_center(i));
      s += m.hx * d * d;
    }
    e.pgamma = std::sqrt(s);
  }
  return e;
}

std::vector<std::uint8_t> full_dirichlet_mask(const StaggeredMesh& m, Formulation formulation) {
  const int n_full = m.n_ux() + m.n_uy() + m.n_ps() + m.n_pd() +
                     (formulation == Formulation::la ? m.n_facets() : 0);
  std::vector<std::uint8_t> mask(n_full, 0);
  const BoundaryLayout& lay = m.layout;
  if (lay.stokes_top == StokesBc::velocity_dirichlet)
    for (int i = 0; i < m.nx; ++i) mask[m.n_ux() + m.uy(i, m.ny_s)] = 1;
  if (lay.stokes_left == StokesBc::velocity_dirichlet)
    for (int j = 0; j < m.ny_s; ++j) mask[m.ux(0, j)] = 1;
  if (lay.stokes_right == StokesBc::velocity_dirichlet)
    for (int j = 0; j < m.ny_s; ++j) mask[m.ux(m.nx, j)] = 1;
  return mask;
}

Vec seeded_initial_guess(const AssembledSystem& sys, std::uint64_t seed) {
  const StaggeredMesh& m = sys.mesh;
  auto mask = full_dirichlet_mask(m, sys.formulation);
  Vec full = random_initial_guess(seed, int(mask.size()), mask);
  Vec x(sys.blocks.size());
  int r = 0;
  for (int g = 0; g < m.n_ux(); ++g)
    if (sys.dofs.ux_free[g] >= 0) x[r++] = full[g];
  for (int g = 0; g < m.n_uy(); ++g)
    if (sys.dofs.uy_free[g] >= 0) x[r++] = full[m.n_ux() + g];
  const int tail = m.n_ps() + m.n_pd() + sys.blocks.n_pg;
  x.segment(r, tail) = full.segment(m.n_ux() + m.n_uy(), tail);
  return x;
}

}  // namespace sdlab
