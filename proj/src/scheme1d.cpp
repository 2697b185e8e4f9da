#include "gravdg/scheme1d.hpp"

#include <sstream>

#include "gravdg/volume_kernels.hpp"

namespace gravdg {

void split_volume_1d(const FluxNode<1>* nodes, const State<1>* u, const LobattoOperators& ops,
                     double scale, double gamma, State<1>* out) {
  for (int a = 0; a < ops.size(); ++a) out[a] = State<1>{};
  split_line<1>(nodes, u, 1, ops, scale, gamma, 0, out);
}

void nonsplit_volume_1d(const State<1>* flux, const LobattoOperators& ops, double scale, State<1>* out) {
  for (int a = 0; a < ops.size(); ++a) out[a] = State<1>{};
  nonsplit_line<1>(flux, 1, ops, scale, out);
}

std::vector<State<1>> build_balancing_source(const EquilibriumField<1>& eq, const LobattoOperators& ops,
                                             const Mesh1D& mesh, const GasParams& gas) {
  const int n = ops.size();
  std::vector<State<1>> s0(eq.state.size());
  std::vector<FluxNode<1>> nodes(n);
  for (int c = 0; c < mesh.n_cells; ++c) {
    const State<1>* ue = &eq.state.at(c, 0);
    for (int a = 0; a < n; ++a) nodes[a] = make_flux_node(ue[a], gas);
    State<1>* out = &s0[static_cast<size_t>(c) * n];
    split_volume_1d(nodes.data(), ue, ops, 2.0 / mesh.dx, gas.gamma, out);
    for (int a = 0; a < n; ++a) out[a] -= eq.source[static_cast<size_t>(c) * n + a];
  }
  return s0;
}

std::vector<State<1>> build_nonsplit_balancing_source(const EquilibriumField<1>& eq,
                                                      const LobattoOperators& ops, const Mesh1D& mesh,
                                                      const GasParams& gas) {
  const int n = ops.size();
  std::vector<State<1>> s0(eq.state.size());
  std::vector<State<1>> flux(n);
  for (int c = 0; c < mesh.n_cells; ++c) {
    for (int a = 0; a < n; ++a) flux[a] = node_flux(eq.state.at(c, a), make_flux_node(eq.state.at(c, a), gas), 0);
    State<1>* out = &s0[static_cast<size_t>(c) * n];
    nonsplit_volume_1d(flux.data(), ops, 2.0 / mesh.dx, out);
    for (int a = 0; a < n; ++a) out[a] -= eq.source[static_cast<size_t>(c) * n + a];
  }
  return s0;
}

Scheme1D::Scheme1D(Mesh1D mesh, LobattoOperators ops, GasParams gas, EquilibriumField<1> eq,
                   BoundaryCondition<1> bc, SchemeVariant variant, InterfaceFluxKind interface_flux)
    : mesh_(mesh), ops_(std::move(ops)), gas_(gas), eq_(std::move(eq)), bc_(std::move(bc)),
      variant_(variant), flux_kind_(interface_flux) {
  if (eq_.state.n_cells != mesh_.n_cells || eq_.state.k != ops_.k)
    throw ConfigError("equilibrium field does not match the mesh");
  if (bc_.kind == BoundaryKind::kExact && !bc_.exact) throw ConfigError("exact boundary needs a state function");
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
  phys_.resize(eq_.state.size());
  faces_.resize(mesh_.n_cells + 1);
}

void Scheme1D::capture_boundary(const NodalField<1>& initial) {
  fixed_[0] = initial.at(0, 0);
  fixed_[1] = initial.at(initial.n_cells - 1, ops_.k);
  fixed_set_ = true;
}

State<1> Scheme1D::ghost(const NodalField<1>& u, int side, double t) const {
  const int k = ops_.k;
  const int last = mesh_.n_cells - 1;
  const State<1>& inner = side == 0 ? u.at(0, 0) : u.at(last, k);
  switch (bc_.kind) {
    case BoundaryKind::kPeriodic: return side == 0 ? u.at(last, k) : u.at(0, 0);
    case BoundaryKind::kReflective: {
      State<1> g = inner;
      g.q[1] = -g.q[1];
      return g;
    }
    case BoundaryKind::kOutflow: return inner;
    case BoundaryKind::kFixedToInitial:
      if (!fixed_set_) throw ConfigError("fixed-to-initial boundary used before capture_boundary");
      return fixed_[side];
    case BoundaryKind::kExact: return bc_.exact(side == 0 ? mesh_.a : mesh_.b, 0.0, t);
  }
  return inner;
}

void Scheme1D::prepare_nodes(const NodalField<1>& u) const {
  const int n = ops_.size();
  for_each_cell(mesh_.n_cells, [&](int c) {
    for (int a = 0; a < n; ++a) {
      const size_t idx = static_cast<size_t>(c) * n + a;
      const State<1>& s = u.values[idx];
      if (!is_admissible(s, gas_)) {
        std::ostringstream os;
        os << "inadmissible state at cell " << c << " node " << a << ": " << describe(s);
        throw EvaluationError(os.str(), c, a);
      }
      nodes_[idx] = make_flux_node(s, gas_);
      phys_[idx] = node_flux(s, nodes_[idx], 0);
    }
  });
}

void Scheme1D::compute_faces(const NodalField<1>& u, double t) const {
  const int k = ops_.k;
  const int nc = mesh_.n_cells;
  const int n = ops_.size();
  double amax = 0.0;
  for (int f = 0; f <= nc; ++f) {
    State<1> ul, ur;
    FluxNode<1> nl, nr;
    if (f == 0) {
      ul = ghost(u, 0, t);
      if (!is_admissible(ul, gas_)) throw EvaluationError("inadmissible left ghost state " + describe(ul), 0, 0);
      nl = make_flux_node(ul, gas_);
    } else {
      ul = u.at(f - 1, k);
      nl = nodes_[static_cast<size_t>(f - 1) * n + k];
    }
    if (f == nc) {
      ur = ghost(u, 1, t);
      if (!is_admissible(ur, gas_)) throw EvaluationError("inadmissible right ghost state " + describe(ur), nc - 1, k);
      nr = make_flux_node(ur, gas_);
    } else {
      ur = u.at(f, 0);
      nr = nodes_[static_cast<size_t>(f) * n];
    }
    if (flux_kind_ == InterfaceFluxKind::kLaxFriedrichs) {
      double alpha = 0.0;
      faces_[f] = lf_flux(ul, ur, nl, nr, gas_.gamma, 0, &alpha);
      amax = std::max(amax, alpha);
    } else {
      faces_[f] = ec_flux(nl, nr, gas_.gamma, 0);
    }
  }
  last_alpha_ = amax;
}

void Scheme1D::rhs(const NodalField<1>& u, double t, NodalField<1>& out) const {
  if (u.n_cells != mesh_.n_cells || u.k != ops_.k) throw ConfigError("field does not match the mesh");
  if (!out.same_shape(u)) out = NodalField<1>(u.n_cells, u.k);
  prepare_nodes(u);
  compute_faces(u, t);

  const int n = ops_.size();
  const int k = ops_.k;
  const double scale = 2.0 / mesh_.dx;
  const bool split = uses_split_volume(variant_);
  const bool balance = uses_equilibrium_source(variant_);
  const bool correct = uses_entropy_correction(variant_);
  const std::vector<double> avg_w = [&] {
    std::vector<double> w(n);
    for (int a = 0; a < n; ++a) w[a] = 0.5 * ops_.weights[a];
    return w;
  }();

  for_each_cell(mesh_.n_cells, [&](int c) {
    const size_t base = static_cast<size_t>(c) * n;
    State<1> vol[kMaxDegree + 1];
    if (split)
      split_volume_1d(&nodes_[base], &u.values[base], ops_, scale, gas_.gamma, vol);
    else
      nonsplit_volume_1d(&phys_[base], ops_, scale, vol);

    State<1>* o = &out.values[base];
    for (int a = 0; a < n; ++a) o[a] = -vol[a];
    o[0] += (scale / ops_.weights[0]) * (faces_[c] - phys_[base]);
    o[k] -= (scale / ops_.weights[k]) * (faces_[c + 1] - phys_[base + k]);
    for (int a = 0; a < n; ++a) o[a] += gravity_source(u.values[base + a], eq_.grad_phi[base + a]);
    if (balance)
      for (int a = 0; a < n; ++a) o[a] += s0_[base + a];
    if (correct) {
      State<1> V[kMaxDegree + 1], corr[kMaxDegree + 1];
      for (int a = 0; a < n; ++a) V[a] = entropy_variables(nodes_[base + a], gas_.gamma);
      entropy_correction<1>({V, static_cast<size_t>(n)}, {&ve_[base], static_cast<size_t>(n)},
                            {&s0_[base], static_cast<size_t>(n)}, ops_.weights, avg_w,
                            {corr, static_cast<size_t>(n)});
      for (int a = 0; a < n; ++a) o[a] -= corr[a];
    }
  });
}

std::vector<State<1>> Scheme1D::interface_fluxes(const NodalField<1>& u, double t) const {
  prepare_nodes(u);
  compute_faces(u, t);
  return faces_;
}

std::vector<State<1>> Scheme1D::entropy_correction_source(const NodalField<1>& u) const {
  std::vector<State<1>> out;
  if (!uses_entropy_correction(variant_)) return out;
  const int n = ops_.size();
  out.resize(u.size());
  std::vector<double> avg_w(n);
  for (int a = 0; a < n; ++a) avg_w[a] = 0.5 * ops_.weights[a];
  std::vector<State<1>> V(n);
  for (int c = 0; c < mesh_.n_cells; ++c) {
    const size_t base = static_cast<size_t>(c) * n;
    for (int a = 0; a < n; ++a) V[a] = entropy_variables(make_flux_node(u.values[base + a], gas_), gas_.gamma);
    entropy_correction<1>(V, {&ve_[base], static_cast<size_t>(n)}, {&s0_[base], static_cast<size_t>(n)},
                          ops_.weights, avg_w, {&out[base], static_cast<size_t>(n)});
  }
  return out;
}

}  // namespace gravdg
