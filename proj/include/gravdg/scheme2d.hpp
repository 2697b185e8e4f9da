#pragma once

// Semi-discrete nodal DG operator on tensor-product cells in two dimensions.

#include <vector>

#include "gravdg/equilibria.hpp"
#include "gravdg/field.hpp"
#include "gravdg/fluxes.hpp"
#include "gravdg/mesh.hpp"
#include "gravdg/sbp.hpp"
#include "gravdg/scheme_common.hpp"

namespace gravdg {

/// Split (entropy-conservative) volume term of one cell, x then y sweeps.
void split_volume_2d(const FluxNode<2>* nodes, const State<2>* u, const LobattoOperators& ops,
                     double sx, double sy, double gamma, State<2>* out);

/// Non-split volume term of one cell from per-node physical fluxes.
void nonsplit_volume_2d(const State<2>* fx, const State<2>* fy, const LobattoOperators& ops, double sx,
                        double sy, State<2>* out);

std::vector<State<2>> build_balancing_source(const EquilibriumField<2>& eq, const LobattoOperators& ops,
                                             const Mesh2D& mesh, const GasParams& gas);
std::vector<State<2>> build_nonsplit_balancing_source(const EquilibriumField<2>& eq,
                                                      const LobattoOperators& ops, const Mesh2D& mesh,
                                                      const GasParams& gas);

class Scheme2D {
 public:
  Scheme2D(Mesh2D mesh, LobattoOperators ops, GasParams gas, EquilibriumField<2> eq,
           BoundaryCondition<2> bc, SchemeVariant variant,
           InterfaceFluxKind interface_flux = InterfaceFluxKind::kLaxFriedrichs);

  /// Stores the boundary-face node states of `initial` as ghosts for kFixedToInitial.
  void capture_boundary(const NodalField<2>& initial);

  void rhs(const NodalField<2>& u, double t, NodalField<2>& out) const;

  /// Numerical flux at every face node: index face*(k+1) + m.
  std::vector<State<2>> face_fluxes(const NodalField<2>& u, double t) const;

  std::vector<State<2>> entropy_correction_source(const NodalField<2>& u) const;

  /// Outside state for node m of a boundary face.
  State<2> ghost(const NodalField<2>& u, int face, int m, double t) const;

  const Mesh2D& mesh() const { return mesh_; }
  const LobattoOperators& ops() const { return ops_; }
  const GasParams& gas() const { return gas_; }
  const EquilibriumField<2>& equilibrium() const { return eq_; }
  SchemeVariant variant() const { return variant_; }
  const std::vector<State<2>>& balancing_source() const { return s0_; }
  /// Largest interface dissipation coefficient per axis from the last rhs call.
  std::array<double, 2> last_interface_alpha() const { return last_alpha_; }

  /// Node index inside a cell for the m-th node of the cell's face side (0: x-, 1: x+, 2: y-, 3: y+).
  int face_node(int side, int m) const;

 private:
  void prepare_nodes(const NodalField<2>& u) const;
  void compute_faces(const NodalField<2>& u, double t) const;

  Mesh2D mesh_;
  LobattoOperators ops_;
  GasParams gas_;
  EquilibriumField<2> eq_;
  BoundaryCondition<2> bc_;
  SchemeVariant variant_;
  InterfaceFluxKind flux_kind_;
  std::vector<State<2>> s0_;
  std::vector<State<2>> ve_;
  std::vector<double> weights_;      // omega_i omega_j
  std::vector<double> avg_weights_;  // weights_ / 4
  std::vector<State<2>> fixed_;      // boundary_slot*(k+1) + m
  bool fixed_set_ = false;

  mutable std::vector<FluxNode<2>> nodes_;
  mutable std::vector<State<2>> fx_, fy_;  ///< filled only for the non-split volume term
  mutable std::vector<State<2>> faces_;
  mutable std::array<double, 2> last_alpha_{};
};

}  // namespace gravdg
