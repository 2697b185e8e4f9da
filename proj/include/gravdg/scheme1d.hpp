#pragma once

// Semi-discrete nodal DG operator in one dimension.

#include <vector>

#include "gravdg/equilibria.hpp"
#include "gravdg/field.hpp"
#include "gravdg/fluxes.hpp"
#include "gravdg/mesh.hpp"
#include "gravdg/sbp.hpp"
#include "gravdg/scheme_common.hpp"

namespace gravdg {

/// (2/dx) sum_l 2 D_jl F^S(U_j, U_l) per node, for one cell.
void split_volume_1d(const FluxNode<1>* nodes, const State<1>* u, const LobattoOperators& ops,
                     double scale, double gamma, State<1>* out);

/// (2/dx) sum_l D_jl F(U_l) per node, for one cell.
void nonsplit_volume_1d(const State<1>* flux, const LobattoOperators& ops, double scale, State<1>* out);

/// Well-balancing source S0 = (2/dx) sum 2D F^S(U^e_j, U^e_l) - S^e at every node.
std::vector<State<1>> build_balancing_source(const EquilibriumField<1>& eq, const LobattoOperators& ops,
                                             const Mesh1D& mesh, const GasParams& gas);

/// Non-split counterpart (2/dx) sum D F(U^e_l) - S^e.
std::vector<State<1>> build_nonsplit_balancing_source(const EquilibriumField<1>& eq,
                                                      const LobattoOperators& ops, const Mesh1D& mesh,
                                                      const GasParams& gas);

class Scheme1D {
 public:
  Scheme1D(Mesh1D mesh, LobattoOperators ops, GasParams gas, EquilibriumField<1> eq,
           BoundaryCondition<1> bc, SchemeVariant variant,
           InterfaceFluxKind interface_flux = InterfaceFluxKind::kLaxFriedrichs);

  /// Stores the boundary-node states of `initial` as ghosts for BoundaryKind::kFixedToInitial.
  void capture_boundary(const NodalField<1>& initial);

  /// dU/dt. Throws EvaluationError (with cell and node) on an inadmissible nodal state.
  void rhs(const NodalField<1>& u, double t, NodalField<1>& out) const;

  /// Numerical flux at the n_cells + 1 interfaces for the given field.
  std::vector<State<1>> interface_fluxes(const NodalField<1>& u, double t) const;

  /// Entropy-correction source of the given field (zero-size for variants without it).
  std::vector<State<1>> entropy_correction_source(const NodalField<1>& u) const;

  /// Outside state at side 0 (left) or 1 (right).
  State<1> ghost(const NodalField<1>& u, int side, double t) const;

  const Mesh1D& mesh() const { return mesh_; }
  const LobattoOperators& ops() const { return ops_; }
  const GasParams& gas() const { return gas_; }
  const EquilibriumField<1>& equilibrium() const { return eq_; }
  SchemeVariant variant() const { return variant_; }
  /// S0 for split variants, the non-split counterpart for kNonES, empty for kNonWB.
  const std::vector<State<1>>& balancing_source() const { return s0_; }
  /// Largest interface dissipation coefficient seen in the last rhs call.
  double last_interface_alpha() const { return last_alpha_; }

 private:
  void prepare_nodes(const NodalField<1>& u) const;
  void compute_faces(const NodalField<1>& u, double t) const;

  Mesh1D mesh_;
  LobattoOperators ops_;
  GasParams gas_;
  EquilibriumField<1> eq_;
  BoundaryCondition<1> bc_;
  SchemeVariant variant_;
  InterfaceFluxKind flux_kind_;
  std::vector<State<1>> s0_;
  std::vector<State<1>> ve_;  // entropy variables of the equilibrium
  std::array<State<1>, 2> fixed_{};
  bool fixed_set_ = false;

  // Per-call scratch.
  mutable std::vector<FluxNode<1>> nodes_;
  mutable std::vector<State<1>> phys_;
  mutable std::vector<State<1>> faces_;
  mutable double last_alpha_ = 0.0;
};

}  // namespace gravdg
