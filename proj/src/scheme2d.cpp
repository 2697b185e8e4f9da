#include "gravdg/scheme2d.hpp"

#include <sstream>

#include "gravdg/volume_kernels.hpp"

namespace gravdg {

void split_volume_2d(const FluxNode<2>* nodes, const State<2>* u, const LobattoOperators& ops,
                     double sx, double sy, double gamma, State<2>* out) {
  const int n = ops.size();
  for (int a = 0; a < n * n; ++a) out[a] = State<2>{};
  for (int j = 0; j < n; ++j) split_line<2>(nodes + j * n, u + j * n, 1, ops, sx, gamma, 0, out + j * n);
  for (int i = 0; i < n; ++i) split_line<2>(nodes + i, u + i, n, ops, sy, gamma, 1, out + i);
}

void nonsplit_volume_2d(const State<2>* fx, const State<2>* fy, const LobattoOperators& ops, double sx,
                        double sy, State<2>* out) {
  const int n = ops.size();
  for (int a = 0; a < n * n; ++a) out[a] = State<2>{};
  for (int j = 0; j < n; ++j) nonsplit_line<2>(fx + j * n, 1, ops, sx, out + j * n);
  for (int i = 0; i < n; ++i) nonsplit_line<2>(fy + i, n, ops, sy, out + i);
}

std::vector<State<2>> build_balancing_source(const EquilibriumField<2>& eq, const LobattoOperators& ops,
                                             const Mesh2D& mesh, const GasParams& gas) {
  const int npc = ops.size() * ops.size();
  std::vector<State<2>> s0(eq.state.size());
  std::vector<FluxNode<2>> nodes(npc);
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const size_t base = static_cast<size_t>(c) * npc;
    const State<2>* ue = &eq.state.values[base];
    for (int a = 0; a < npc; ++a) nodes[a] = make_flux_node(ue[a], gas);
    split_volume_2d(nodes.data(), ue, ops, 2.0 / mesh.dx, 2.0 / mesh.dy, gas.gamma, &s0[base]);
    for (int a = 0; a < npc; ++a) s0[base + a] -= eq.source[base + a];
  }
  return s0;
}

std::vector<State<2>> build_nonsplit_balancing_source(const EquilibriumField<2>& eq,
                                                      const LobattoOperators& ops, const Mesh2D& mesh,
                                                      const GasParams& gas) {
  const int npc = ops.size() * ops.size();
  std::vector<State<2>> s0(eq.state.size());
  std::vector<State<2>> fx(npc), fy(npc);
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const size_t base = static_cast<size_t>(c) * npc;
    for (int a = 0; a < npc; ++a) {
      const State<2>& ue = eq.state.values[base + a];
      const FluxNode<2> node = make_flux_node(ue, gas);
      fx[a] = node_flux(ue, node, 0);
      fy[a] = node_flux(ue, node, 1);
    }
    nonsplit_volume_2d(fx.data(), fy.data(), ops, 2.0 / mesh.dx, 2.0 / mesh.dy, &s0[base]);
    for (int a = 0; a < npc; ++a) s0[base + a] -= eq.source[base + a];
  }
  return s0;
}

Scheme2D::Scheme2D(Mesh2D mesh, LobattoOperators ops, GasParams gas, EquilibriumField<2> eq,
                   BoundaryCondition<2> bc, SchemeVariant variant, InterfaceFluxKind interface_flux)
    : mesh_(std::move(mesh)), ops_(std::move(ops)), gas_(gas), eq_(std::move(eq)), bc_(std::move(bc)),
      variant_(variant), flux_kind_(interface_flux) {
  if (eq_.state.n_cells != mesh_.n_cells() || eq_.state.k != ops_.k)
    throw ConfigError("equilibrium field does not match the mesh");
  if (bc_.kind == BoundaryKind::kExact && !bc_.exact) throw ConfigError("exact boundary needs a state function");
  if (bc_.kind == BoundaryKind::kPeriodic && mesh_.n_boundary_faces > 0)
    throw ConfigError("periodic boundary requires a periodic mesh");
  if (bc_.kind != BoundaryKind::kPeriodic && mesh_.geom.periodic)
    throw ConfigError("periodic mesh requires the periodic boundary kind");
  const int n = ops_.size();
  weights_.resize(n * n);
  avg_weights_.resize(n * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      weights_[j * n + i] = ops_.weights[i] * ops_.weights[j];
      avg_weights_[j * n + i] = 0.25 * weights_[j * n + i];
    }
  if (uses_equilibrium_source(variant_)) {
    for (const auto& ue : eq_.state.values) require_admissible(ue, gas_);
    s0_ = uses_split_volume(variant_) ? build_balancing_source(eq_, ops_, mesh_, gas_)
                                      : build_nonsplit_balancing_source(eq_, ops_, mesh_, gas_);
  }
  if (uses_entropy_correction(variant_)) {
    ve_.resize(eq_.state.size());
    for (size_t i = 0; i < ve_.size(); ++i) ve_[i] = entropy_variables(make_flux_node(eq_.state.values[i], gas_), gas_.gamma);
  }
  nodes_.resize(eq_.state.size());
  if (!uses_split_volume(variant_)) {
    fx_.resize(eq_.state.size());
    fy_.resize(eq_.state.size());
  }
  faces_.resize(mesh_.faces.size() * n);
}

int Scheme2D::face_node(int side, int m) const {
  const int n = ops_.size();
  const int k = ops_.k;
  switch (side) {
    case 0: return m * n;
    case 1: return m * n + k;
    case 2: return m;
    default: return k * n + m;
  }
}

void Scheme2D::capture_boundary(const NodalField<2>& initial) {
  const int n = ops_.size();
  fixed_.assign(static_cast<size_t>(mesh_.n_boundary_faces) * n, State<2>{});
  for (const Face& f : mesh_.faces) {
    if (f.boundary_slot < 0) continue;
    const bool inside_minus = f.minus >= 0;
    const int cell = inside_minus ? f.minus : f.plus;
    const int side = 2 * f.axis + (inside_minus ? 1 : 0);
    for (int m = 0; m < n; ++m) fixed_[static_cast<size_t>(f.boundary_slot) * n + m] = initial.at(cell, face_node(side, m));
  }
  fixed_set_ = true;
}

State<2> Scheme2D::ghost(const NodalField<2>& u, int face, int m, double t) const {
  const Face& f = mesh_.faces[face];
  const bool inside_minus = f.minus >= 0;
  const int cell = inside_minus ? f.minus : f.plus;
  const int side = 2 * f.axis + (inside_minus ? 1 : 0);
  const State<2>& inner = u.at(cell, face_node(side, m));
  switch (bc_.kind) {
    case BoundaryKind::kPeriodic: throw ConfigError("periodic mesh has no boundary faces");
    case BoundaryKind::kReflective: {
      State<2> g = inner;
      g.q[1 + f.axis] = -g.q[1 + f.axis];
      return g;
    }
    case BoundaryKind::kOutflow: return inner;
    case BoundaryKind::kFixedToInitial:
      if (!fixed_set_) throw ConfigError("fixed-to-initial boundary used before capture_boundary");
      return fixed_[static_cast<size_t>(f.boundary_slot) * ops_.size() + m];
    case BoundaryKind::kExact: {
      const int node = face_node(side, m);
      const int n = ops_.size();
      return bc_.exact(mesh_.node_x(cell, ops_.nodes[node % n]), mesh_.node_y(cell, ops_.nodes[node / n]), t);
    }
  }
  return inner;
}

void Scheme2D::prepare_nodes(const NodalField<2>& u) const {
  const int npc = ops_.size() * ops_.size();
  const bool split = uses_split_volume(variant_);
  for_each_cell(mesh_.n_cells(), [&](int c) {
    for (int a = 0; a < npc; ++a) {
      const size_t idx = static_cast<size_t>(c) * npc + a;
      const State<2>& s = u.values[idx];
      if (!is_admissible(s, gas_)) {
        std::ostringstream os;
        os << "inadmissible state at cell " << c << " node " << a << ": " << describe(s);
        throw EvaluationError(os.str(), c, a);
      }
      nodes_[idx] = make_flux_node(s, gas_);
      if (!split) {
        fx_[idx] = node_flux(s, nodes_[idx], 0);
        fy_[idx] = node_flux(s, nodes_[idx], 1);
      }
    }
  });
}

void Scheme2D::compute_faces(const NodalField<2>& u, double t) const {
  const int n = ops_.size();
  const int npc = n * n;
  const int nf = static_cast<int>(mesh_.faces.size());
  std::vector<double> alpha(nf, 0.0);
  for_each_cell(nf, [&](int fi) {
    const Face& f = mesh_.faces[fi];
    const int minus_side = 2 * f.axis + 1;
    const int plus_side = 2 * f.axis;
    double amax = 0.0;
    for (int m = 0; m < n; ++m) {
      State<2> ul, ur, fl, fr;
      FluxNode<2> nl, nr;
      if (f.minus >= 0) {
        const size_t idx = static_cast<size_t>(f.minus) * npc + face_node(minus_side, m);
        ul = u.values[idx];
        nl = nodes_[idx];
        fl = node_flux(ul, nl, f.axis);
      } else {
        ul = ghost(u, fi, m, t);
        if (!is_admissible(ul, gas_))
          throw EvaluationError("inadmissible ghost state " + describe(ul), f.plus, face_node(plus_side, m));
        nl = make_flux_node(ul, gas_);
        fl = node_flux(ul, nl, f.axis);
      }
      if (f.plus >= 0) {
        const size_t idx = static_cast<size_t>(f.plus) * npc + face_node(plus_side, m);
        ur = u.values[idx];
        nr = nodes_[idx];
        fr = node_flux(ur, nr, f.axis);
      } else {
        ur = ghost(u, fi, m, t);
        if (!is_admissible(ur, gas_))
          throw EvaluationError("inadmissible ghost state " + describe(ur), f.minus, face_node(minus_side, m));
        nr = make_flux_node(ur, gas_);
        fr = node_flux(ur, nr, f.axis);
      }
      State<2>& out = faces_[static_cast<size_t>(fi) * n + m];
      if (flux_kind_ == InterfaceFluxKind::kLaxFriedrichs) {
        double a = 0.0;
        out = lf_flux(ul, ur, fl, fr, nl, nr, gas_.gamma, f.axis, &a);
        amax = std::max(amax, a);
      } else {
        out = ec_flux(nl, nr, gas_.gamma, f.axis);
      }
    }
    alpha[fi] = amax;
  });
  last_alpha_ = {0.0, 0.0};
  for (int fi = 0; fi < nf; ++fi) {
    double& a = last_alpha_[mesh_.faces[fi].axis];
    a = std::max(a, alpha[fi]);
  }
}

void Scheme2D::rhs(const NodalField<2>& u, double t, NodalField<2>& out) const {
  if (u.n_cells != mesh_.n_cells() || u.k != ops_.k) throw ConfigError("field does not match the mesh");
  if (!out.same_shape(u)) out = NodalField<2>(u.n_cells, u.k);
  prepare_nodes(u);
  compute_faces(u, t);

  const int n = ops_.size();
  const int k = ops_.k;
  const int npc = n * n;
  const double sx = 2.0 / mesh_.dx;
  const double sy = 2.0 / mesh_.dy;
  const double lift[4] = {sx / ops_.weights[0], -sx / ops_.weights[k], sy / ops_.weights[0],
                          -sy / ops_.weights[k]};
  const bool split = uses_split_volume(variant_);
  const bool balance = uses_equilibrium_source(variant_);
  const bool correct = uses_entropy_correction(variant_);
  for_each_cell(mesh_.n_cells(), [&](int c) {
    const size_t base = static_cast<size_t>(c) * npc;
    thread_local std::vector<State<2>> scratch;
    if (scratch.size() < 3 * static_cast<size_t>(npc)) scratch.resize(3 * static_cast<size_t>(npc));
    State<2>* vol = scratch.data();
    if (split)
      split_volume_2d(&nodes_[base], &u.values[base], ops_, sx, sy, gas_.gamma, vol);
    else
      nonsplit_volume_2d(&fx_[base], &fy_[base], ops_, sx, sy, vol);

    State<2>* o = &out.values[base];
    for (int a = 0; a < npc; ++a) o[a] = -vol[a];
    for (int side = 0; side < 4; ++side) {
      const State<2>* fhat = &faces_[static_cast<size_t>(mesh_.cell_faces[c][side]) * n];
      for (int m = 0; m < n; ++m) {
        const int a = face_node(side, m);
        o[a] += lift[side] * (fhat[m] - node_flux(u.values[base + a], nodes_[base + a], side / 2));
      }
    }
    for (int a = 0; a < npc; ++a) o[a] += gravity_source(u.values[base + a], eq_.grad_phi[base + a]);
    if (balance)
      for (int a = 0; a < npc; ++a) o[a] += s0_[base + a];
    if (correct) {
      State<2>* V = vol + npc;
      State<2>* corr = V + npc;
      for (int a = 0; a < npc; ++a) V[a] = entropy_variables(nodes_[base + a], gas_.gamma);
      entropy_correction<2>({V, static_cast<size_t>(npc)}, {&ve_[base], static_cast<size_t>(npc)},
                            {&s0_[base], static_cast<size_t>(npc)}, weights_, avg_weights_,
                            {corr, static_cast<size_t>(npc)});
      for (int a = 0; a < npc; ++a) o[a] -= corr[a];
    }
  });
}

std::vector<State<2>> Scheme2D::face_fluxes(const NodalField<2>& u, double t) const {
  prepare_nodes(u);
  compute_faces(u, t);
  return faces_;
}

std::vector<State<2>> Scheme2D::entropy_correction_source(const NodalField<2>& u) const {
  std::vector<State<2>> out;
  if (!uses_entropy_correction(variant_)) return out;
  const int npc = ops_.size() * ops_.size();
  out.resize(u.size());
  std::vector<State<2>> V(npc);
  for (int c = 0; c < mesh_.n_cells(); ++c) {
    const size_t base = static_cast<size_t>(c) * npc;
    for (int a = 0; a < npc; ++a) V[a] = entropy_variables(make_flux_node(u.values[base + a], gas_), gas_.gamma);
    entropy_correction<2>(V, {&ve_[base], static_cast<size_t>(npc)}, {&s0_[base], static_cast<size_t>(npc)},
                          weights_, avg_weights_, {&out[base], static_cast<size_t>(npc)});
  }
  return out;
}

}  // namespace gravdg
