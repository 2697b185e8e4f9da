#pragma once

#include <exception>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "gravdg/euler.hpp"
#include "gravdg/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gravdg {

enum class SchemeVariant {
  kWBESPP,  ///< well-balanced, entropy-stable, positivity-preserving
  kNonWB,   ///< entropy-conservative volume term with the plain gravity source
  kNonES,   ///< non-split volume term with the well-balancing source
  kNonPP,   ///< WBESPP operator; the stepper runs without the limiter
};

enum class InterfaceFluxKind { kLaxFriedrichs, kEntropyConservative };

std::string to_string(SchemeVariant v);
SchemeVariant parse_variant(const std::string& s);

inline bool uses_equilibrium_source(SchemeVariant v) { return v != SchemeVariant::kNonWB; }
inline bool uses_split_volume(SchemeVariant v) { return v != SchemeVariant::kNonES; }
inline bool uses_entropy_correction(SchemeVariant v) {
  return v == SchemeVariant::kWBESPP || v == SchemeVariant::kNonPP;
}
inline bool limiter_by_default(SchemeVariant v) { return v != SchemeVariant::kNonPP; }

enum class BoundaryKind { kPeriodic, kReflective, kOutflow, kFixedToInitial, kExact };

std::string to_string(BoundaryKind b);
BoundaryKind parse_boundary(const std::string& s);

template <int D>
struct BoundaryCondition {
  BoundaryKind kind = BoundaryKind::kPeriodic;
  /// Time-dependent state used by kExact (arguments x, y, t).
  std::function<State<D>(double, double, double)> exact;
};

/// Worker count for cell-parallel loops: env GRAVDG_WORKERS, else the OpenMP default.
int worker_count();

/// Runs body(c) for c in [0, n). Exceptions thrown inside the loop are collected and
/// the one from the lowest index is rethrown after the loop.
template <class Body>
void for_each_cell(int n, Body&& body) {
#ifdef _OPENMP
  if (worker_count() > 1) {
    int first_bad = std::numeric_limits<int>::max();
    std::exception_ptr err;
#pragma omp parallel for schedule(static) num_threads(worker_count())
    for (int c = 0; c < n; ++c) {
      try {
        body(c);
      } catch (...) {
#pragma omp critical(gravdg_cell_error)
        if (c < first_bad) {
          first_bad = c;
          err = std::current_exception();
        }
      }
    }
    if (err) std::rethrow_exception(err);
    return;
  }
#endif
  for (int c = 0; c < n; ++c) body(c);
}

/// Entropy-correction source sigma (V - Vbar) for one cell.
///  V, Ve: entropy variables of the solution and equilibrium; s0: well-balancing source;
///  w: quadrature weights (omega or omega x omega); avg_w: w / 2^D.
/// Returns sigma; writes the correction into `out`.
template <int D>
double entropy_correction(std::span<const State<D>> V, std::span<const State<D>> Ve,
                          std::span<const State<D>> s0, std::span<const double> w,
                          std::span<const double> avg_w, std::span<State<D>> out) {
  const size_t n = V.size();
  State<D> vbar;
  for (size_t a = 0; a < n; ++a)
    for (int c = 0; c < State<D>::kSize; ++c) vbar.q[c] += avg_w[a] * V[a].q[c];
  double num = 0.0, den = 0.0;
  for (size_t a = 0; a < n; ++a) {
    double dn = 0.0, dd = 0.0;
    for (int c = 0; c < State<D>::kSize; ++c) {
      dn += (V[a].q[c] - Ve[a].q[c]) * s0[a].q[c];
      const double dv = V[a].q[c] - vbar.q[c];
      dd += dv * dv;
    }
    num += w[a] * dn;
    den += w[a] * dd;
  }
  const double sigma = den < 1e-28 ? 0.0 : num / den;
  for (size_t a = 0; a < n; ++a)
    for (int c = 0; c < State<D>::kSize; ++c) out[a].q[c] = sigma * (V[a].q[c] - vbar.q[c]);
  return sigma;
}

}  // namespace gravdg
