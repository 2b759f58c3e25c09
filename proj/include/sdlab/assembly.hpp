#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sdlab/common.hpp"
#include "sdlab/linalg.hpp"
#include "sdlab/mesh.hpp"
#include "sdlab/mms.hpp"
#include "sdlab/params.hpp"

namespace sdlab {

enum class Formulation { la, ro };

/// Offsets of the named blocks inside the reduced (free-dof) monolithic vector.
/// Blocks in order: u (both velocity components), ps, pd, and pgamma for La.
struct BlockLayout {
  int n_u = 0;
  int n_ps = 0;
  int n_pd = 0;
  int n_pg = 0;  // 0 for Ro

  int off_u() const { return 0; }
  int off_ps() const { return n_u; }
  int off_pd() const { return n_u + n_ps; }
  int off_pg() const { return n_u + n_ps + n_pd; }
  int size() const { return n_u + n_ps + n_pd + n_pg; }
};

/// Free/fixed classification of the velocity dofs (pressures are never constrained).
struct DofMaps {
  // full dof index -> free index within the u block, or -1 if Dirichlet
  std::vector<int> ux_free, uy_free;
  // Dirichlet values on the full sets (zero at free dofs)
  Vec ux_value, uy_value;
  int n_ux_free = 0, n_uy_free = 0;

  int n_u_free() const { return n_ux_free + n_uy_free; }
};

/// The assembled monolithic symmetric system plus the named pieces the
/// preconditioners are built from.
struct AssembledSystem {
  Formulation formulation = Formulation::la;
  StaggeredMesh mesh;
  PhysicalParams params;
  double beta_n = 0;
  BlockLayout blocks;
  DofMaps dofs;

  SparseMatrix A;  // reduced, exactly symmetric
  Vec rhs;

  SparseMatrix darcy_stiff;  // kappa-weighted TPFA stiffness with outer boundary
                             // closures only (no interface terms); positive form

  SparseMatrix velocity_block() const;  // leading diagonal block of A
  double t_interface() const;           // beta_n^{-1} |F| : half-cell link per facet
  double facet_length() const { return mesh.hx; }
  Vec cell_volumes_s() const;  // |K| per Stokes cell
};

/// Stokes velocity block over free dofs (homogeneous Dirichlet data): full
/// symmetric-gradient MAC energy + BJS tangential penalty (+ beta_n facet mass for Ro).
SparseMatrix assemble_stokes_block(const StaggeredMesh& mesh, const PhysicalParams& p,
                                   Formulation formulation, double beta_n);

/// -(div u, q) rows over the full velocity dof sets: entry pattern of the MAC
/// divergence scaled by -|K|; columns ordered [all ux | all uy].
SparseMatrix assemble_divergence(const StaggeredMesh& mesh);

/// Cell-centered TPFA stiffness (positive form) with harmonic interior
/// transmissibilities and half-cell closures on pressure-Dirichlet edges.
/// No interface facet terms.
SparseMatrix assemble_darcy_tpfa(const StaggeredMesh& mesh, const PhysicalParams& p);

/// Interface coupling pieces: the normal-trace pairing (entries -|F| between the
/// interface y-velocity row and pGamma for La / the adjacent top Darcy cell for Ro)
/// over full uy dofs, and the beta_n^{-1} facet mass value per facet.
struct CouplingBlocks {
  SparseMatrix t_n;      // rows: facets; cols: full uy dofs; entries -|F|
  double t_if;           // beta_n^{-1} |F|
  std::vector<int> top_cell;  // facet -> pd index of the interface-adjacent cell
};
CouplingBlocks assemble_coupling(const StaggeredMesh& mesh, const PhysicalParams& p,
                                 double beta_n);

/// Assemble the monolithic system for the chosen formulation with the given data.
AssembledSystem assemble_system(const StaggeredMesh& mesh, const PhysicalParams& p,
                                Formulation formulation, const BetaN& beta_n,
                                const ProblemData& data);

/// Expand a reduced solution into the full per-field dof vectors
/// (Dirichlet dofs filled with their data values).
struct FullFields {
  Vec ux, uy, ps, pd, pg;
};
FullFields expand_solution(const AssembledSystem& sys, const Vec& x);

/// Discrete L2 errors of a reduced solution against the manufactured fields.
FieldErrors error_norms(const AssembledSystem& sys, const Vec& x, const MmsData& mms);

/// Mask over the FULL dof layout [ux | uy | ps | pd | (pg)] marking the velocity
/// Dirichlet dofs of the mesh's boundary layout.
std::vector<std::uint8_t> full_dirichlet_mask(const StaggeredMesh& mesh,
                                              Formulation formulation);

/// Seeded random initial guess drawn over the FULL dof layout (so the stream does not
/// depend on which dofs are eliminated), Dirichlet entries zeroed, then restricted to
/// the reduced layout.
Vec seeded_initial_guess(const AssembledSystem& sys, std::uint64_t seed);

}  // namespace sdlab
