#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "test_support.hpp"
#include "tunnelkit/errors.hpp"
#include "tunnelkit/phase_time.hpp"
#include "tunnelkit/resonance.hpp"
#include "tunnelkit/transmission.hpp"

using namespace tunnelkit;
using namespace tunnelkit::testing;

namespace {

std::vector<Resonance> all_resonances(const BarrierSystem& sys, std::size_t cells = 2000) {
  ResonanceSearchOptions opts;
  opts.grid_cells = cells;
  return find_resonances(sys, 1e-3 * sys.U0, (1.0 - 1e-3) * sys.U0, opts);
}

// Local maxima of |A_T|^2 on a dense scan, each refined by golden-section
// search, that reach 1 - 1e-6.
std::size_t count_full_peaks(const BarrierSystem& sys, std::size_t n) {
  const auto energy = [&](std::size_t i) { return (1e-3 + (1.0 - 2e-3) * i / n) * sys.U0; };
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  std::size_t peaks = 0;
  double prev = probability(sys, energy(0));
  double here = probability(sys, energy(1));
  for (std::size_t i = 1; i < n; ++i) {
    const double next = probability(sys, energy(i + 1));
    if (here >= prev && here >= next) {
      double lo = energy(i - 1), hi = energy(i + 1);
      for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double x1 = hi - g * (hi - lo);
        const double x2 = lo + g * (hi - lo);
        if (probability(sys, x1) < probability(sys, x2)) {
          lo = x1;
        } else {
          hi = x2;
        }
      }
      if (probability(sys, 0.5 * (lo + hi)) >= 1.0 - 1e-6) ++peaks;
    }
    prev = here;
    here = next;
  }
  return peaks;
}

}  // namespace

TEST_CASE("the free-neutron setup has a single resonance near 123 neV") {
  const BarrierSystem sys = neutron_system();
  const auto found = find_resonances(sys, 1.0 * kNeV, sys.U0 - 1.0 * kNeV);
  REQUIRE(found.size() == 1);
  CHECK(found[0].E_r / kNeV == doctest::Approx(123.0).epsilon(1.0 / 123.0));
  CHECK(found[0].E_r / kNeV == doctest::Approx(123.0436).epsilon(1e-6));
  CHECK(found[0].index == 0);
  CHECK(std::abs(resonance_residual(sys, found[0].E_r)) < 1e-10);
  CHECK(probability(sys, found[0].E_r) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("empty windows give no resonances") {
  const BarrierSystem sys = neutron_system();
  CHECK(find_resonances(sys, 1.0 * kNeV, 100.0 * kNeV).empty());
  CHECK(find_resonances(sys, 130.0 * kNeV, 229.0 * kNeV).empty());
  CHECK_THROWS_AS(find_resonances(sys, 100.0 * kNeV, 50.0 * kNeV), DomainError);
  CHECK_THROWS_AS(find_resonances(sys, 100.0 * kNeV, sys.U0), DomainError);
}

TEST_CASE("every full-transparency peak is found and nothing else") {
  const std::vector<BarrierSystem> systems = {
      neutron_system(),
      neutron_system().with_gap(3000.0 * kAngstrom),
      neutron_system().with_width(80.0 * kAngstrom).with_gap(5000.0 * kAngstrom),
      BarrierSystem{50.0 * kAngstrom, 500.0 * kNeV, 1200.0 * kAngstrom,
                    1.5 * codata::m_neutron, codata::hbar},
  };
  for (const BarrierSystem& sys : systems) {
    const auto found = all_resonances(sys, 20000);
    CAPTURE(sys.L);
    CHECK(found.size() == count_full_peaks(sys, 400000));
    for (std::size_t i = 0; i < found.size(); ++i) {
      CHECK(found[i].index == i);
      if (i > 0) CHECK(found[i].E_r > found[i - 1].E_r);
      CHECK(std::abs(resonance_residual(sys, found[i].E_r)) < 1e-10);
      CHECK(probability(sys, found[i].E_r) == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("residual changes sign exactly where the barrier becomes transparent") {
  const BarrierSystem sys = neutron_system().with_gap(3000.0 * kAngstrom);
  const std::size_t n = 100000;
  double prev = resonance_residual(sys, 1e-3 * sys.U0);
  for (std::size_t i = 1; i <= n; ++i) {
    const double lo = (1e-3 + (1.0 - 2e-3) * (i - 1) / n) * sys.U0;
    const double hi = (1e-3 + (1.0 - 2e-3) * i / n) * sys.U0;
    const double here = resonance_residual(sys, hi);
    if ((prev < 0.0) != (here < 0.0)) {
      const double root = bisect_root([&](double E) { return resonance_residual(sys, E); }, lo, hi);
      CHECK(probability(sys, root) == doctest::Approx(1.0).epsilon(1e-9));
    }
    prev = here;
  }
}

TEST_CASE("effective-mass fit") {
  const BarrierSystem base = neutron_system();
  const double m0 = codata::m_neutron;
  const double m = fit_effective_mass(base.a, base.U0, base.L, 127.0 * kNeV, 0.8 * m0, 1.2 * m0);
  CHECK(m / m0 == doctest::Approx(kFittedMassRatio).epsilon(1e-4 / kFittedMassRatio));
  CHECK(m / m0 == doctest::Approx(0.9268754).epsilon(1e-6));

  const auto refound = find_resonances(base.with_mass(m), 100.0 * kNeV, 150.0 * kNeV);
  REQUIRE(refound.size() == 1);
  CHECK(rel_diff(refound[0].E_r, 127.0 * kNeV) < 1e-9);

  const double E_free = find_resonances(base, 100.0 * kNeV, 150.0 * kNeV).at(0).E_r;
  const double m_back = fit_effective_mass(base.a, base.U0, base.L, E_free, 0.8 * m0, 1.2 * m0);
  CHECK(m_back / m0 == doctest::Approx(1.0).epsilon(1e-9));
  const double m_123 =
      fit_effective_mass(base.a, base.U0, base.L, 123.0 * kNeV, 0.8 * m0, 1.2 * m0);
  CHECK(m_123 / m0 == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("effective-mass fit fails loudly without a bracketed root") {
  const BarrierSystem base = neutron_system();
  const double m0 = codata::m_neutron;
  CHECK_THROWS_AS(
      fit_effective_mass(base.a, base.U0, base.L, 127.0 * kNeV, 1.0 * m0, 1.0001 * m0), FitError);
  CHECK_THROWS_AS(
      fit_effective_mass(base.a, base.U0, base.L, 127.0 * kNeV, 1.2 * m0, 0.8 * m0), FitError);
  CHECK_THROWS_AS(
      fit_effective_mass(base.a, base.U0, base.L, 300.0 * kNeV, 0.8 * m0, 1.2 * m0), DomainError);
}

TEST_CASE("resonance expansion identities") {
  const std::vector<BarrierSystem> systems = {
      neutron_system(), neutron_system(kFittedMassRatio),
      neutron_system().with_gap(3000.0 * kAngstrom),
      neutron_system().with_width(80.0 * kAngstrom).with_gap(5000.0 * kAngstrom)};
  for (const BarrierSystem& sys : systems) {
    for (const Resonance& res : all_resonances(sys, 20000)) {
      const ResonanceExpansion ex = resonance_expansion(sys, res);
      CHECK(std::abs(ex.D_r) == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(res.beta * ex.C_r_mod == doctest::Approx(1.0).epsilon(1e-6));
      CHECK(std::abs(ex.C_r) == doctest::Approx(ex.C_r_mod).epsilon(1e-12));
      CHECK(rel_diff(ex.cross_term_direct, ex.cross_term_closed_form) < 1e-8);
      // linearised |D| reaches sqrt 2 one half-width away
      for (double sign : {-1.0, 1.0}) {
        const double mod = std::abs(ex.D_r + ex.C_r * (sign * res.beta));
        CHECK(mod == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
      }
      // D_r and C_r are orthogonal in the complex plane
      CHECK(std::abs(std::real(ex.D_r * std::conj(ex.C_r))) < 1e-9 * ex.C_r_mod);
    }
  }
}

TEST_CASE("Breit-Wigner line shape") {
  const BarrierSystem sys = neutron_system(kFittedMassRatio);
  const Resonance res = find_resonances(sys, 1.0 * kNeV, sys.U0 - 1.0 * kNeV).at(0);
  CHECK(res.beta / kNeV == doctest::Approx(2.3626).epsilon(1e-4));
  CHECK(res.beta > 1.0 * kNeV);
  CHECK(res.beta < 4.0 * kNeV);
  CHECK(breit_wigner_width(sys, res) == res.beta);

  CHECK(bw_probability(res, res.E_r) == 1.0);
  CHECK(bw_probability(res, res.E_r - res.beta) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(bw_probability(res, res.E_r + res.beta) == doctest::Approx(0.5).epsilon(1e-15));

  for (int i = -50; i <= 50; ++i) {
    const double E = res.E_r + 0.5 * res.beta * i / 50.0;
    CHECK(rel_diff(bw_probability(res, E), probability(sys, E)) < 0.05);
    CHECK(rel_diff(bw_phase_time(sys, res, E), phase_time(sys, E).total) < 0.10);
  }

  const double free = sys.m * sys.L / (sys.hbar * kinematics(sys, res.E_r + 20.0 * res.beta).k);
  const double tail = bw_phase_time(sys, res, res.E_r + 20.0 * res.beta) - free;
  CHECK(tail > 0.0);
  CHECK(tail < sys.hbar / (400.0 * res.beta));
}

TEST_CASE("half-width agrees with the exact transmission peak") {
  const BarrierSystem sys = neutron_system(kFittedMassRatio);
  const Resonance res = find_resonances(sys, 1.0 * kNeV, sys.U0 - 1.0 * kNeV).at(0);
  const auto half = [&](double E) { return probability(sys, E) - 0.5; };
  const double upper = bisect_root(half, res.E_r, res.E_r + 10.0 * res.beta);
  const double lower = bisect_root(half, res.E_r - 10.0 * res.beta, res.E_r);
  CHECK(rel_diff(0.5 * (upper - lower), res.beta) < 0.05);
}

TEST_CASE("narrower resonances for wider gaps") {
  // follow the ground resonance of the free-neutron setup as the gap grows
  double previous = INFINITY;
  for (double L : {150.0, 195.0, 250.0}) {
    const BarrierSystem sys = neutron_system().with_gap(L * kAngstrom);
    const auto found = find_resonances(sys, 1.0 * kNeV, sys.U0 - 1.0 * kNeV);
    REQUIRE(!found.empty());
    CAPTURE(L);
    CHECK(found.front().beta < previous);
    previous = found.front().beta;
  }
}

TEST_CASE("certification rejects non-resonant energies") {
  const BarrierSystem sys = neutron_system();
  CHECK_THROWS_AS(make_resonance(sys, 100.0 * kNeV), ValidationError);
  const Resonance good = make_resonance(sys, 123.04355400036181 * kNeV, 3);
  CHECK(good.index == 3);
  CHECK(good.beta > 0.0);
  CHECK(rel_diff(good.k_r, kinematics(sys, good.E_r).k) < 1e-15);
}

TEST_CASE("resonances narrower than the energy resolution are refused, not reported") {
  // qa ~ 60 at the low end of the window: beta / E ~ e^{-120}
  const BarrierSystem sys{2000.0 * kAngstrom, 500.0 * kNeV, 1000.0 * kAngstrom,
                          codata::m_neutron, codata::hbar};
  ResonanceSearchOptions opts;
  opts.grid_cells = 20000;
  CHECK_THROWS_AS(find_resonances(sys, 1e-3 * sys.U0, 0.3 * sys.U0, opts), ValidationError);
}
