#pragma once

// Compressible Euler state algebra: conserved/primitive maps, entropy pair,
// entropy variables, physical flux and gravity source.
//
// Conserved layout: [rho, rho*u (, rho*v), E].

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <string>
#include <type_traits>

#include "gravdg/errors.hpp"

namespace gravdg {

/// Ideal-gas parameters.
struct GasParams {
  double gamma = 1.4;
};

/// Validated constructor; gamma must lie in (1, 5/3].
GasParams make_gas_params(double gamma);

template <int Dim>
struct State {
  static_assert(Dim == 1 || Dim == 2, "1D and 2D only");
  static constexpr int kDim = Dim;
  static constexpr int kSize = Dim + 2;
  static constexpr int kEnergy = Dim + 1;

  std::array<double, kSize> q{};

  double& operator[](int i) { return q[i]; }
  double operator[](int i) const { return q[i]; }

  double rho() const { return q[0]; }
  double mom(int axis) const { return q[1 + axis]; }
  double energy() const { return q[kEnergy]; }

  State& operator+=(const State& o) {
    for (int i = 0; i < kSize; ++i) q[i] += o.q[i];
    return *this;
  }
  State& operator-=(const State& o) {
    for (int i = 0; i < kSize; ++i) q[i] -= o.q[i];
    return *this;
  }
  State& operator*=(double s) {
    for (int i = 0; i < kSize; ++i) q[i] *= s;
    return *this;
  }
  bool operator==(const State& o) const { return q == o.q; }
};

template <int D>
inline State<D> operator+(State<D> a, const State<D>& b) { return a += b; }
template <int D>
inline State<D> operator-(State<D> a, const State<D>& b) { return a -= b; }
template <int D>
inline State<D> operator*(double s, State<D> a) { return a *= s; }
template <int D>
inline State<D> operator-(State<D> a) { return a *= -1.0; }

template <int D>
inline double dot(const State<D>& a, const State<D>& b) {
  double s = 0.0;
  for (int i = 0; i < State<D>::kSize; ++i) s += a.q[i] * b.q[i];
  return s;
}

template <int D>
inline double max_abs(const State<D>& a) {
  double m = 0.0;
  for (double v : a.q) m = std::max(m, std::abs(v));
  return m;
}

template <int Dim>
struct Primitive {
  double rho = 0.0;
  std::array<double, Dim> vel{};
  double p = 0.0;
};

template <int Dim>
struct EntropyQuantities {
  double s = 0.0;        ///< specific entropy ln(p rho^-gamma)
  double entropy = 0.0;  ///< mathematical entropy -rho s/(gamma-1)
  State<Dim> V;          ///< entropy variables, same layout as the conserved state
  std::array<double, Dim> psi{};  ///< entropy potential flux per axis (rho*vel)
  double potential = 0.0;         ///< entropy potential (rho)
};

template <int D>
std::string describe(const State<D>& u) {
  std::ostringstream os;
  os.precision(17);
  os << "(";
  for (int i = 0; i < State<D>::kSize; ++i) os << (i ? ", " : "") << u.q[i];
  os << ")";
  return os.str();
}

// Unchecked fast paths; callers guarantee admissibility.

template <int D>
inline double kinetic_energy(const State<D>& u) {
  double m2 = 0.0;
  for (int d = 0; d < D; ++d) m2 += u.q[1 + d] * u.q[1 + d];
  return 0.5 * m2 / u.q[0];
}

template <int D>
inline double pressure(const State<D>& u, const GasParams& g) {
  return (g.gamma - 1.0) * (u.q[D + 1] - kinetic_energy(u));
}

template <int D>
inline bool is_admissible(const State<D>& u, const GasParams& g) {
  return u.q[0] > 0.0 && pressure(u, g) > 0.0;
}

template <int D>
inline void require_admissible(const State<D>& u, const GasParams& g) {
  if (!(u.q[0] > 0.0)) throw DomainError("non-positive density in state " + describe(u));
  if (!(pressure(u, g) > 0.0)) throw DomainError("non-positive pressure in state " + describe(u));
}

template <int D>
Primitive<D> primitive_from_conserved(const State<D>& u, const GasParams& g) {
  if (!(u.q[0] > 0.0)) throw DomainError("non-positive density in state " + describe(u));
  Primitive<D> w;
  w.rho = u.q[0];
  for (int d = 0; d < D; ++d) w.vel[d] = u.q[1 + d] / u.q[0];
  w.p = pressure(u, g);
  return w;
}

template <int D>
State<D> conserved_from_primitive(const Primitive<D>& w, const GasParams& g) {
  if (!(w.rho > 0.0)) throw DomainError("non-positive density in primitive state");
  if (!(w.p > 0.0)) throw DomainError("non-positive pressure in primitive state");
  State<D> u;
  u.q[0] = w.rho;
  double v2 = 0.0;
  for (int d = 0; d < D; ++d) {
    u.q[1 + d] = w.rho * w.vel[d];
    v2 += w.vel[d] * w.vel[d];
  }
  u.q[D + 1] = w.p / (g.gamma - 1.0) + 0.5 * w.rho * v2;
  return u;
}

template <int D>
inline State<D> entropy_variables_unchecked(const State<D>& u, const GasParams& g) {
  const double rho = u.q[0];
  const double p = pressure(u, g);
  const double s = std::log(p) - g.gamma * std::log(rho);
  double m2 = 0.0;
  for (int d = 0; d < D; ++d) m2 += u.q[1 + d] * u.q[1 + d];
  State<D> v;
  v.q[0] = (g.gamma - s) / (g.gamma - 1.0) - 0.5 * m2 / (rho * p);
  for (int d = 0; d < D; ++d) v.q[1 + d] = u.q[1 + d] / p;
  v.q[D + 1] = -rho / p;
  return v;
}

template <int D>
inline double entropy_unchecked(const State<D>& u, const GasParams& g) {
  const double rho = u.q[0];
  const double s = std::log(pressure(u, g)) - g.gamma * std::log(rho);
  return -rho * s / (g.gamma - 1.0);
}

template <int D>
EntropyQuantities<D> entropy_quantities(const State<D>& u, const GasParams& g) {
  require_admissible(u, g);
  EntropyQuantities<D> e;
  const double rho = u.q[0];
  const double p = pressure(u, g);
  e.s = std::log(p) - g.gamma * std::log(rho);
  e.entropy = -rho * e.s / (g.gamma - 1.0);
  e.V = entropy_variables_unchecked(u, g);
  for (int d = 0; d < D; ++d) e.psi[d] = u.q[1 + d];
  e.potential = rho;
  return e;
}

template <int D>
inline State<D> physical_flux_unchecked(const State<D>& u, const GasParams& g, int axis) {
  const double un = u.q[1 + axis] / u.q[0];
  const double p = pressure(u, g);
  State<D> f;
  f.q[0] = u.q[1 + axis];
  for (int d = 0; d < D; ++d) f.q[1 + d] = u.q[1 + d] * un;
  f.q[1 + axis] += p;
  f.q[D + 1] = (u.q[D + 1] + p) * un;
  return f;
}

template <int D>
State<D> physical_flux(const State<D>& u, const GasParams& g, int axis) {
  if (axis < 0 || axis >= D) throw DomainError("axis index out of range");
  require_admissible(u, g);
  return physical_flux_unchecked(u, g, axis);
}

template <int D>
inline double sound_speed(const State<D>& u, const GasParams& g) {
  return std::sqrt(g.gamma * pressure(u, g) / u.q[0]);
}

/// |u_axis| + c
template <int D>
double max_wave_speed(const State<D>& u, const GasParams& g, int axis) {
  if (axis < 0 || axis >= D) throw DomainError("axis index out of range");
  require_admissible(u, g);
  return std::abs(u.q[1 + axis] / u.q[0]) + sound_speed(u, g);
}

/// (0, -rho grad(phi), -m . grad(phi))
template <int D>
inline State<D> gravity_source(const State<D>& u, const std::type_identity_t<std::array<double, D>>& grad_phi) {
  State<D> s;
  double work = 0.0;
  for (int d = 0; d < D; ++d) {
    s.q[1 + d] = -u.q[0] * grad_phi[d];
    work += u.q[1 + d] * grad_phi[d];
  }
  s.q[D + 1] = -work;
  return s;
}

}  // namespace gravdg
