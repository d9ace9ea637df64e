#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "tunnelkit/kinematics.hpp"

namespace tunnelkit {

struct Resonance {
  double E_r = 0.0;   // J
  double k_r = 0.0;   // 1/m
  double beta = 0.0;  // J, Breit-Wigner half-width
  std::size_t index = 0;
};

/// Linear expansion D(k) ~ D_r + C_r (E - E_r) around a resonance.
struct ResonanceExpansion {
  std::complex<double> D_r;  // (u_r + i v_r)/(1 + w_r), |D_r| = 1
  std::complex<double> C_r;  // (m / hbar^2 k_r) dD/dk at k_r, 1/J
  double C_r_mod = 0.0;      // |C_r|, equals 1/beta
  // u'v - uv' at the resonance, directly and via (1+w)(delta k a + sigma^2 C S)/q.
  double cross_term_direct = 0.0;
  double cross_term_closed_form = 0.0;
};

struct ResonanceSearchOptions {
  std::size_t grid_cells = 2000;
  double energy_rel_tol = 1e-12;
  double certify_tol = 1e-9;
};

/// cos(kL) + (delta/2) tanh(qa) sin(kL). Zero exactly where |A_T|^2 = 1:
/// the resonance condition 1 + w + u cos(2kL) + v sin(2kL) = 0 factors into
/// 2 [cosh(qa) cos(kL) + (delta/2) sinh(qa) sin(kL)]^2 = 0, and the factor is
/// divided by cosh(qa) to stay O(1).
double resonance_residual(const BarrierSystem& sys, double E);

/// All resonances in [E_min, E_max] by sign-change bracketing on a uniform
/// grid and bisection. Each root is certified by |A_T|^2 = 1 within
/// options.certify_tol (ValidationError otherwise) and gets its beta.
/// Sorted by energy. Narrow resonances (large L) need a finer grid.
std::vector<Resonance> find_resonances(const BarrierSystem& sys, double E_min, double E_max,
                                       const ResonanceSearchOptions& options = {});

/// Mass m in [m_lo, m_hi] such that (a, U0, L, m) resonates at E_target.
/// The bracket is scanned on `cells` cells; if several sign changes occur the
/// root nearest the bracket midpoint wins. Throws FitError without a sign change.
double fit_effective_mass(double a, double U0, double L, double E_target, double m_lo,
                          double m_hi, double hbar = codata::hbar, std::size_t cells = 256);

/// beta = (hbar^2 k_r q_r / m) / [delta_r k_r a + 2 q_r L w_r + sigma_r^2 C S].
/// Throws ValidationError if the bracket is not positive.
double breit_wigner_width(const BarrierSystem& sys, const Resonance& res);

ResonanceExpansion resonance_expansion(const BarrierSystem& sys, const Resonance& res);

/// beta^2 / ((E - E_r)^2 + beta^2).
double bw_probability(const Resonance& res, double E);

/// m L / (hbar k) + hbar beta / ((E - E_r)^2 + beta^2).
double bw_phase_time(const BarrierSystem& sys, const Resonance& res, double E);

/// Builds a Resonance record at E_r (validated, with beta) without searching.
Resonance make_resonance(const BarrierSystem& sys, double E_r, std::size_t index = 0,
                         double certify_tol = 1e-9);

}  // namespace tunnelkit
