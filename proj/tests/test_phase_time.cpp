#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "test_support.hpp"
#include "tunnelkit/errors.hpp"
#include "tunnelkit/phase_time.hpp"
#include "tunnelkit/quadrature.hpp"
#include "tunnelkit/resonance.hpp"
#include "tunnelkit/transmission.hpp"

using namespace tunnelkit;
using namespace tunnelkit::testing;

namespace {

double free_flight(const BarrierSystem& sys, double E) {
  return sys.m * sys.L / (sys.hbar * kinematics(sys, E).k);
}

Resonance neutron_resonance(const BarrierSystem& sys) {
  const auto found = find_resonances(sys, 1.0 * kNeV, sys.U0 - 1.0 * kNeV);
  REQUIRE(found.size() == 1);
  return found.front();
}

}  // namespace

TEST_CASE("vanishing barriers reduce to free flight over the gap") {
  const BarrierSystem sys = neutron_system().with_width(1e-30);
  for (double e : {5.0, 40.0, 123.0, 200.0}) {
    CHECK(rel_diff(phase_time(sys, e * kNeV).total, free_flight(sys, e * kNeV)) < 1e-12);
    CHECK(rel_diff(phase_time_numeric(sys, e * kNeV), free_flight(sys, e * kNeV)) < 1e-6);
  }
}

TEST_CASE("analytic phase time matches the differentiated phase") {
  for (double ratio : {1.0, kFittedMassRatio}) {
    const BarrierSystem sys = neutron_system(ratio);
    const Resonance res = neutron_resonance(sys);
    int compared = 0;
    for (int i = 0; i < 50; ++i) {
      const double E = sys.U0 * (0.02 + 0.96 * i / 49.0);
      if (std::abs(E - res.E_r) < 0.1 * res.beta) continue;
      const double exact = phase_time(sys, E).total;
      CHECK(rel_diff(phase_time_numeric(sys, E), exact) < 1e-6);
      ++compared;
    }
    CHECK(compared >= 48);
    CHECK(rel_diff(phase_time_numeric(sys, res.E_r), phase_time_at_resonance(sys, res)) < 1e-4);
  }
}

TEST_CASE("analytic phase time against the independent high-precision oracle") {
  // tools/oracles/phase_time_mp.py at E = 20 neV, gap 195 A, free neutron mass.
  const double E = 20.0 * kNeV;
  const BarrierSystem sys = scaled_to_opacity(neutron_system(), E, 2.0);
  CHECK(rel_diff(phase_time(sys, E).total, 1.051479729451091e-8) < 1e-10);
  CHECK(rel_diff(phase_time_excess(sys, E), 3.5836630647103923e-10) < 1e-9);
  CHECK(rel_diff(phase_time_excess(sys.with_gap(390.0 * kAngstrom), E), 7.3787088968303946e-10) <
        1e-9);
}

TEST_CASE("the excess over the Hartman limit survives deep opacity") {
  const double E = 20.0 * kNeV;
  struct Frozen {
    double qa, excess_L, excess_2L;
  };
  for (const Frozen f : {Frozen{8.0, 3.607443426452743e-15, 6.698014045259978e-15},
                         Frozen{15.0, 4.4110070897644337e-21, 7.7996105884742295e-21},
                         Frozen{25.0, 1.3247386966303709e-29, 2.2642503070018646e-29}}) {
    CAPTURE(f.qa);
    const BarrierSystem sys = scaled_to_opacity(neutron_system(), E, f.qa);
    CHECK(rel_diff(phase_time_excess(sys, E), f.excess_L) < 1e-9);
    CHECK(rel_diff(phase_time_excess(sys.with_gap(2.0 * sys.L), E), f.excess_2L) < 1e-9);
  }

  // where the direct route still resolves it, both routes agree
  RandomSystems gen(17);
  for (int i = 0; i < 2000; ++i) {
    BarrierSystem sys = gen.system();
    const double E = gen.energy(sys);
    sys = scaled_to_opacity(sys, E, gen.uniform(0.5, 4.0));
    const double direct = phase_time(sys, E).total - hartman_limit(sys, E);
    const double excess = phase_time_excess(sys, E);
    CHECK(std::abs(excess - direct) <= 1e-9 * phase_time(sys, E).total);
  }
}

TEST_CASE("Hartman plateau: the gap drops out of opaque barriers") {
  const double E = 20.0 * kNeV;
  for (double qa : {15.0, 20.0, 25.0}) {
    CAPTURE(qa);
    const BarrierSystem sys = scaled_to_opacity(neutron_system(), E, qa);
    const double tau = phase_time(sys, E).total;
    const double shift =
        std::abs(phase_time_excess(sys.with_gap(2.0 * sys.L), E) - phase_time_excess(sys, E));
    CHECK(shift / tau <= 10.0 * std::exp(-2.0 * qa));
    CHECK(rel_diff(tau, hartman_limit(sys, E)) < 1e-4);
  }
}

TEST_CASE("resonant phase time") {
  const BarrierSystem sys = neutron_system(kFittedMassRatio);
  const Resonance res = neutron_resonance(sys);
  const double tau_r = phase_time_at_resonance(sys, res);
  CHECK(rel_diff(tau_r, phase_time(sys, res.E_r).total) < 1e-9);
  CHECK(tau_r > free_flight(sys, res.E_r));
  CHECK(tau_r == doctest::Approx(2.82407e-7).epsilon(1e-5));

  Resonance fake = res;
  fake.E_r = 0.5 * res.E_r;
  CHECK_THROWS_AS(phase_time_at_resonance(sys, fake), ValidationError);
}

TEST_CASE("numeric differentiation converges at second order") {
  const BarrierSystem sys = neutron_system();
  const double E = 100.0 * kNeV;
  const double exact = phase_time(sys, E).total;
  const double coarse = std::abs(phase_time_numeric(sys, E, 2e-3) - exact);
  const double fine = std::abs(phase_time_numeric(sys, E, 1e-3) - exact);
  CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("numeric differentiation shrinks its step across a sharp phase jump") {
  const BarrierSystem sys = neutron_system();
  const Resonance res = neutron_resonance(sys);
  const double tau = phase_time_numeric(sys, res.E_r, 0.1);
  CHECK(tau > 0.0);
  CHECK(rel_diff(tau, phase_time(sys, res.E_r).total) < 0.3);
}

TEST_CASE("numeric differentiation rejects stencils outside the well") {
  const BarrierSystem sys = neutron_system();
  CHECK_THROWS_AS(phase_time_numeric(sys, 220.0 * kNeV, 0.1), DomainError);
  CHECK_THROWS_AS(phase_time_numeric(sys, 10.0 * kNeV, 1.5), DomainError);
  CHECK_THROWS_AS(phase_time_numeric(sys, 10.0 * kNeV, 0.0), DomainError);
  CHECK_THROWS_AS(phase_time(sys, 0.0), DomainError);
  CHECK_THROWS_AS(phase_time(sys, sys.U0), DomainError);
}

TEST_CASE("opaque expansion") {
  const double E = 20.0 * kNeV;
  const BarrierSystem deep = scaled_to_opacity(neutron_system(), E, 200.0);
  CHECK(phase_time_opaque(deep, E) == hartman_limit(deep, E));

  // the leading term is exact to O(e^{-2qa}); the gap term is only indicative
  const BarrierSystem sys = scaled_to_opacity(neutron_system(), E, 15.0);
  CHECK(rel_diff(phase_time_opaque(sys, E), phase_time(sys, E).total) < 1e-2);

  const BarrierSystem mid = scaled_to_opacity(neutron_system(), E, 6.0);
  const double excess = phase_time_excess(mid, E);
  const double gap_term = phase_time_opaque(mid, E) - hartman_limit(mid, E);
  CHECK(gap_term > 0.0);
  CHECK(gap_term / excess > 0.1);
  CHECK(gap_term / excess < 10.0);
}

TEST_CASE("opaque gap term is positive, bounded and periodic in the gap") {
  const double E = 20.0 * kNeV;
  const BarrierSystem sys = scaled_to_opacity(neutron_system(), E, 12.0);
  const double k = kinematics(sys, E).k;
  const double period = std::numbers::pi / k;
  const double lead = hartman_limit(sys, E);
  const double sigma2 = kinematics(sys, E).sigma * kinematics(sys, E).sigma;
  for (int i = 0; i < 64; ++i) {
    const double L = (1.0 + i / 64.0) * period;
    const BarrierSystem here = sys.with_gap(L);
    const double extra = phase_time_opaque(here, E) - lead;
    CHECK(extra > 0.0);
    const double per_length = extra / L;
    const double shifted = (phase_time_opaque(here.with_gap(L + period), E) - lead) / (L + period);
    CHECK(rel_diff(per_length, shifted) < 1e-6);
    // accepted brackets exceed 4 sigma^2 e^{-2qa}
    CHECK(per_length < sys.m / (sys.hbar * k * sigma2));
  }
}

TEST_CASE("opaque expansion refuses energies next to a resonance") {
  const BarrierSystem sys = neutron_system().with_width(600.0 * kAngstrom);
  const auto found = find_resonances(sys, 1.0 * kNeV, sys.U0 - 1.0 * kNeV);
  REQUIRE(!found.empty());
  CHECK_THROWS_AS(phase_time_opaque(sys, found.front().E_r), ResonanceProximityError);
  CHECK_THROWS_AS(probability_opaque(sys, found.front().E_r), ResonanceProximityError);
}

TEST_CASE("averaging reproduces the free-flight closed form") {
  const BarrierSystem sys = neutron_system().with_width(1e-30);
  const double lo = 10.0 * kNeV;
  const double hi = 200.0 * kNeV;
  const double closed =
      sys.m * sys.L / std::sqrt(2.0 * sys.m) * 2.0 * (std::sqrt(hi) - std::sqrt(lo)) / (hi - lo);
  CHECK(rel_diff(average_phase_time(sys, lo, hi), closed) < 1e-3);
  CHECK(rel_diff(average_phase_time(sys, lo, hi, 1e-9), closed) < 1e-9);
}

TEST_CASE("averaging around a resonance") {
  const BarrierSystem sys = neutron_system(kFittedMassRatio);
  const Resonance res = neutron_resonance(sys);
  const double lo = res.E_r - 5.0 * res.beta;
  const double hi = res.E_r + 5.0 * res.beta;
  const double mean = average_phase_time(sys, lo, hi);

  double tmin = INFINITY, tmax = 0.0, trapezoid = 0.0;
  const int n = 200000;
  for (int i = 0; i <= n; ++i) {
    const double t = phase_time(sys, lo + (hi - lo) * i / n).total;
    tmin = std::min(tmin, t);
    tmax = std::max(tmax, t);
    trapezoid += (i == 0 || i == n) ? 0.5 * t : t;
  }
  trapezoid /= n;
  CHECK(tmin <= mean);
  CHECK(mean <= tmax);
  CHECK(rel_diff(mean, trapezoid) < 1e-3);

  const double narrow =
      average_phase_time(sys, res.E_r - 0.005 * res.beta, res.E_r + 0.005 * res.beta);
  CHECK(rel_diff(narrow, phase_time_at_resonance(sys, res)) < 1e-3);

  CHECK_THROWS_AS(average_phase_time(sys, hi, lo), DomainError);
  CHECK_THROWS_AS(average_phase_time(sys, lo, sys.U0), DomainError);
}

TEST_CASE("adaptive Simpson reports its partial estimate when it runs out of depth") {
  const auto wiggly = [](double x) { return std::sin(1.0 / x); };
  try {
    adaptive_simpson(wiggly, 1e-3, 1.0, 1e-12, 4);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(std::isfinite(e.partial_estimate()));
    CHECK(std::abs(e.partial_estimate()) < 1.0);
  }
  const auto smooth = adaptive_simpson([](double x) { return x * x; }, 0.0, 3.0, 1e-12);
  CHECK(smooth.value == doctest::Approx(9.0).epsilon(1e-12));
}
