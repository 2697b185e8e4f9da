#include <cmath>

#include "doctest.h"
#include "gravdg/fluxes.hpp"
#include "test_support.hpp"

using namespace gravdg;
using namespace gravdg::testing;

namespace {

constexpr int kPairs = 10000;

template <int D>
double potential_flux(const State<D>& u, int axis) { return u.q[1 + axis]; }

template <int D>
void check_ec_identity(double gamma, unsigned seed) {
  Rng rng(seed);
  const GasParams g{gamma};
  double worst = 0.0;
  for (int it = 0; it < kPairs; ++it) {
    const State<D> l = random_state<D>(rng, g), r = random_state<D>(rng, g);
    const State<D> dv = entropy_variables_unchecked(r, g) - entropy_variables_unchecked(l, g);
    for (int axis = 0; axis < D; ++axis) {
      const State<D> f = ec_flux(l, r, g, axis);
      double scale = 1.0;
      for (int i = 0; i < State<D>::kSize; ++i) scale += std::abs(dv.q[i] * f.q[i]);
      const double defect = dot(dv, f) - (potential_flux(r, axis) - potential_flux(l, axis));
      worst = std::max(worst, std::abs(defect) / scale);
    }
  }
  CHECK(worst < 1e-12);
}

template <int D>
void check_lf_entropy_inequality(double gamma, unsigned seed) {
  Rng rng(seed);
  const GasParams g{gamma};
  double worst = -1.0;
  for (int it = 0; it < kPairs; ++it) {
    const State<D> l = random_state<D>(rng, g, 4.0), r = random_state<D>(rng, g, 4.0);
    const State<D> dv = entropy_variables_unchecked(r, g) - entropy_variables_unchecked(l, g);
    for (int axis = 0; axis < D; ++axis) {
      const State<D> f = lf_flux(l, r, g, axis);
      double scale = 1.0;
      for (int i = 0; i < State<D>::kSize; ++i) scale += std::abs(dv.q[i] * f.q[i]);
      const double production = dot(dv, f) - (potential_flux(r, axis) - potential_flux(l, axis));
      worst = std::max(worst, production / scale);
    }
  }
  CHECK(worst <= 1e-13);
}

/// Two-rarefaction bound evaluated literally with pow.
double two_rarefaction_oracle(double rl, double ul, double pl, double rr, double ur, double pr, double gamma) {
  const double cl = std::sqrt(gamma * pl / rl), cr = std::sqrt(gamma * pr / rr);
  const double z = (gamma - 1.0) / (2.0 * gamma);
  const double num = cl + cr - 0.5 * (gamma - 1.0) * (ur - ul);
  const double pstar = num <= 0.0 ? 0.0 : std::pow(num / (cl * std::pow(pl, -z) + cr * std::pow(pr, -z)), 1.0 / z);
  auto Q = [&](double ratio) { return std::sqrt(1.0 + (gamma + 1.0) / (2.0 * gamma) * std::max(ratio - 1.0, 0.0)); };
  return std::max(std::abs(ul) + cl * Q(pstar / pl), std::abs(ur) + cr * Q(pstar / pr));
}

/// Largest |wave speed| of the exact Riemann solution.
double exact_riemann_speed(double rl, double ul, double pl, double rr, double ur, double pr, double gamma) {
  const double cl = std::sqrt(gamma * pl / rl), cr = std::sqrt(gamma * pr / rr);
  auto f = [&](double p, double rk, double pk, double ck) {
    if (p > pk) {
      const double a = 2.0 / ((gamma + 1.0) * rk), b = (gamma - 1.0) / (gamma + 1.0) * pk;
      return (p - pk) * std::sqrt(a / (p + b));
    }
    return 2.0 * ck / (gamma - 1.0) * (std::pow(p / pk, (gamma - 1.0) / (2.0 * gamma)) - 1.0);
  };
  auto total = [&](double p) { return f(p, rl, pl, cl) + f(p, rr, pr, cr) + ur - ul; };
  double pstar = 0.0;
  if (total(0.0) < 0.0) {
    double lo = 0.0, hi = std::max(pl, pr);
    while (total(hi) < 0.0) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      (total(mid) < 0.0 ? lo : hi) = mid;
    }
    pstar = hi;
  }
  auto Q = [&](double ratio) { return ratio > 1.0 ? std::sqrt(1.0 + (gamma + 1.0) / (2.0 * gamma) * (ratio - 1.0)) : 1.0; };
  const double left = ul - cl * Q(pstar / pl);
  const double right = ur + cr * Q(pstar / pr);
  return std::max(std::abs(left), std::abs(right));
}

}  // namespace

TEST_CASE("entropy-conservative flux satisfies the Tadmor identity") {
  check_ec_identity<1>(1.4, 11);
  check_ec_identity<2>(1.4, 12);
  check_ec_identity<1>(5.0 / 3.0, 13);
  check_ec_identity<2>(5.0 / 3.0, 14);
}

TEST_CASE("entropy-conservative flux is consistent and symmetric") {
  Rng rng(3);
  const GasParams g{1.4};
  for (int it = 0; it < 1000; ++it) {
    const State<2> l = random_state<2>(rng, g), r = random_state<2>(rng, g);
    for (int axis = 0; axis < 2; ++axis) {
      CHECK(ec_flux(l, r, g, axis) == ec_flux(r, l, g, axis));
      const State<2> f = ec_flux(l, l, g, axis), exact = physical_flux(l, g, axis);
      for (int i = 0; i < 4; ++i) CHECK(rel_diff(f.q[i], exact.q[i]) < 1e-14);
    }
  }
}

TEST_CASE("Lax-Friedrichs flux with the two-rarefaction speed is entropy stable") {
  check_lf_entropy_inequality<1>(1.4, 21);
  check_lf_entropy_inequality<2>(1.4, 22);
  check_lf_entropy_inequality<1>(5.0 / 3.0, 23);
  check_lf_entropy_inequality<2>(5.0 / 3.0, 24);
}

TEST_CASE("Lax-Friedrichs flux is consistent and conservative") {
  Rng rng(4);
  const GasParams g{1.4};
  for (int it = 0; it < 1000; ++it) {
    const State<1> l = random_state<1>(rng, g), r = random_state<1>(rng, g);
    const State<1> f = lf_flux(l, l, g, 0), exact = physical_flux(l, g, 0);
    for (int i = 0; i < 3; ++i) CHECK(rel_diff(f.q[i], exact.q[i]) < 1e-14);
    State<1> ml = l, mr = r;
    ml.q[1] = -ml.q[1];
    mr.q[1] = -mr.q[1];
    CHECK(rel_diff(two_rarefaction_speed(l, r, g, 0), two_rarefaction_speed(mr, ml, g, 0)) < 1e-14);
  }
}

TEST_CASE("two-rarefaction speed matches the closed form and bounds the exact Riemann fan") {
  Rng rng(5);
  for (double gamma : {1.4, 5.0 / 3.0}) {
    const GasParams g{gamma};
    for (int it = 0; it < 5000; ++it) {
      const State<1> l = random_state<1>(rng, g, 5.0), r = random_state<1>(rng, g, 5.0);
      const auto wl = primitive_from_conserved(l, g), wr = primitive_from_conserved(r, g);
      const double bound = two_rarefaction_speed(l, r, g, 0);
      const double oracle = two_rarefaction_oracle(wl.rho, wl.vel[0], wl.p, wr.rho, wr.vel[0], wr.p, gamma);
      CHECK(rel_diff(bound, oracle) < 1e-12);
      const double exact = exact_riemann_speed(wl.rho, wl.vel[0], wl.p, wr.rho, wr.vel[0], wr.p, gamma);
      CHECK(bound >= exact * (1.0 - 1e-12));
    }
  }
}

TEST_CASE("near-vacuum states double the largest characteristic speed") {
  const GasParams g{1.4};
  const State<1> l = conserved_from_primitive(Primitive<1>{1e-13, {0.5}, 1.0}, g);
  const State<1> r = conserved_from_primitive(Primitive<1>{1.0, {-0.2}, 1.0}, g);
  const double expected = 2.0 * std::max(0.5 + std::sqrt(1.4 * 1.0 / 1e-13), 0.2 + std::sqrt(1.4));
  CHECK(rel_diff(two_rarefaction_speed(l, r, g, 0), expected) < 1e-14);
}

TEST_CASE("logarithmic means agree with extended precision") {
  Rng rng(6);
  for (int it = 0; it < 10000; ++it) {
    const double a = std::exp(uniform(rng, -5, 5));
    const double delta = std::exp(uniform(rng, std::log(1e-3), std::log(10.0)));
    const double b = a * (1.0 + delta);
    CAPTURE(a);
    CAPTURE(b);
    const long double ref = (static_cast<long double>(b) - a) / (std::log(static_cast<long double>(b)) - std::log(static_cast<long double>(a)));
    const double lm = log_mean(a, b, std::log(a), std::log(b));
    const double ilm = inverse_log_mean(a, b, std::log(a), std::log(b));
    // Outside the series branch the error is set by the rounding of the stored logs.
    const double la = std::abs(std::log(a)), lb = std::abs(std::log(b));
    const double tol = (b - a) * (b - a) < 1e-4 * (a + b) * (a + b)
                           ? 2e-15
                           : 4e-16 * (1.0 + (la + lb) / std::abs(std::log(b) - std::log(a)));
    CHECK(std::abs(lm - static_cast<double>(ref)) <= tol * lm);
    CHECK(std::abs(ilm - static_cast<double>(1.0L / ref)) <= tol * ilm);
    CHECK(log_mean(a, b, std::log(a), std::log(b)) == log_mean(b, a, std::log(b), std::log(a)));
  }
  CHECK(log_mean(2.0, 2.0) == 2.0);
  CHECK_THROWS_AS(log_mean(-1.0, 2.0), DomainError);
}
