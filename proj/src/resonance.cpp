#include "tunnelkit/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "tunnelkit/errors.hpp"
#include "tunnelkit/transmission.hpp"

namespace tunnelkit {

namespace {

// Bisection on a bracket with f(lo), f(hi) of opposite signs.
template <class F>
double bisect(const F& f, double lo, double hi, double f_lo, double rel_tol) {
  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi || (hi - lo) <= rel_tol * std::abs(mid)) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double resonance_residual(const BarrierSystem& sys, double E) {
  const Kinematics kin = kinematics(sys, E);
  const double kL = kin.k * sys.L;
  return std::cos(kL) + 0.5 * kin.delta * std::tanh(kin.q * sys.a) * std::sin(kL);
}

Resonance make_resonance(const BarrierSystem& sys, double E_r, std::size_t index,
                         double certify_tol) {
  const double p = probability(sys, E_r);
  if (!(std::abs(p - 1.0) <= certify_tol)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "resonance candidate at E = " << E_r << " J has |A_T|^2 = " << p
        << " (grid too coarse or degenerate parameters)";
    throw ValidationError(msg.str());
  }
  Resonance r;
  r.E_r = E_r;
  r.k_r = kinematics(sys, E_r).k;
  r.index = index;
  r.beta = breit_wigner_width(sys, r);
  return r;
}

std::vector<Resonance> find_resonances(const BarrierSystem& sys, double E_min, double E_max,
                                       const ResonanceSearchOptions& options) {
  sys.validate();
  if (!(E_min > 0.0) || !(E_min < E_max) || !(E_max < sys.U0)) {
    throw DomainError("search window must satisfy 0 < E_min < E_max < U0");
  }
  if (options.grid_cells == 0) throw DomainError("grid_cells must be positive");

  const auto f = [&sys](double E) { return resonance_residual(sys, E); };
  const std::size_t n = options.grid_cells;
  const double step = (E_max - E_min) / static_cast<double>(n);

  std::vector<double> roots;
  double e_prev = E_min;
  double f_prev = f(e_prev);
  if (f_prev == 0.0) roots.push_back(e_prev);
  for (std::size_t i = 1; i <= n; ++i) {
    const double e = (i == n) ? E_max : E_min + step * static_cast<double>(i);
    const double fe = f(e);
    if (fe == 0.0) {
      roots.push_back(e);
    } else if (f_prev != 0.0 && (fe < 0.0) != (f_prev < 0.0)) {
      roots.push_back(bisect(f, e_prev, e, f_prev, options.energy_rel_tol));
    }
    e_prev = e;
    f_prev = fe;
  }

  std::vector<Resonance> out;
  out.reserve(roots.size());
  for (double E_r : roots) out.push_back(make_resonance(sys, E_r, out.size(), options.certify_tol));
  return out;
}

double fit_effective_mass(double a, double U0, double L, double E_target, double m_lo,
                          double m_hi, double hbar, std::size_t cells) {
  if (!(m_lo > 0.0) || !(m_lo < m_hi)) throw FitError("mass bracket must satisfy 0 < lo < hi");
  if (cells == 0) throw FitError("mass scan needs at least one cell");
  BarrierSystem base{a, U0, L, m_lo, hbar};
  base.validate();
  if (!(E_target > 0.0) || !(E_target < U0)) throw DomainError("target energy outside (0, U0)");

  const auto g = [&](double m) { return resonance_residual(base.with_mass(m), E_target); };
  const double mid = 0.5 * (m_lo + m_hi);
  const double step = (m_hi - m_lo) / static_cast<double>(cells);

  std::optional<double> best;
  auto consider = [&](double root) {
    if (!best || std::abs(root - mid) < std::abs(*best - mid)) best = root;
  };
  double m_prev = m_lo;
  double g_prev = g(m_prev);
  if (g_prev == 0.0) consider(m_prev);
  for (std::size_t i = 1; i <= cells; ++i) {
    const double m = (i == cells) ? m_hi : m_lo + step * static_cast<double>(i);
    const double gm = g(m);
    if (gm == 0.0) {
      consider(m);
    } else if (g_prev != 0.0 && (gm < 0.0) != (g_prev < 0.0)) {
      consider(bisect(g, m_prev, m, g_prev, 4.0 * std::numeric_limits<double>::epsilon()));
    }
    m_prev = m;
    g_prev = gm;
  }
  if (!best) {
    std::ostringstream msg;
    msg << "resonance residual does not change sign for masses in [" << m_lo << ", " << m_hi
        << "] kg";
    throw FitError(msg.str());
  }
  return *best;
}

double breit_wigner_width(const BarrierSystem& sys, const Resonance& res) {
  const Kinematics kin = kinematics(sys, res.E_r);
  const auto [C, S, half_scale] = scaled_hyperbolic(kin.q * sys.a);
  const double one = std::exp(-2.0 * half_scale);
  const double s2 = kin.sigma * kin.sigma;
  const double w = 0.25 * s2 * S * S;
  const double bracket =
      kin.delta * kin.k * sys.a * one + 2.0 * kin.q * sys.L * w + s2 * C * S;
  if (!(bracket > 0.0)) throw ValidationError("degenerate resonance: width bracket <= 0");
  return sys.hbar * sys.hbar * kin.k * kin.q / sys.m / bracket * one;
}

ResonanceExpansion resonance_expansion(const BarrierSystem& sys, const Resonance& res) {
  const Kinematics kin = kinematics(sys, res.E_r);
  const HyperbolicState h = hyperbolic_state(kin, sys.a);
  const double one = h.unity();
  const double c = std::cos(2.0 * kin.k * sys.L);
  const double s = std::sin(2.0 * kin.k * sys.L);
  const double two_L_w = 2.0 * sys.L * h.w;

  ResonanceExpansion out;
  out.D_r = std::complex<double>(h.u, h.v) / (one + h.w);

  // dD/dk = u' + w' cos - 2Lw sin + i (v' + w' sin + 2Lw cos); the common
  // scale exp(log_scale) cancels against D_r's and is restored on C_r.
  const std::complex<double> dD(h.u_prime + h.w_prime * c - two_L_w * s,
                                h.v_prime + h.w_prime * s + two_L_w * c);
  const double dk_dE_factor = sys.m / (sys.hbar * sys.hbar * kin.k);
  out.C_r = dk_dE_factor * dD * std::exp(h.log_scale);
  out.C_r_mod = std::abs(out.C_r);

  const ScaledHyperbolic hs = scaled_hyperbolic(kin.q * sys.a);
  out.cross_term_direct = (h.u_prime * h.v - h.u * h.v_prime) * std::exp(2.0 * h.log_scale);
  out.cross_term_closed_form = (one + h.w) / kin.q *
                               (kin.delta * kin.k * sys.a * one +
                                kin.sigma * kin.sigma * hs.cosh * hs.sinh) *
                               std::exp(2.0 * h.log_scale);
  return out;
}

double bw_probability(const Resonance& res, double E) {
  const double detune = E - res.E_r;
  return res.beta * res.beta / (detune * detune + res.beta * res.beta);
}

double bw_phase_time(const BarrierSystem& sys, const Resonance& res, double E) {
  const Kinematics kin = kinematics(sys, E);
  const double detune = E - res.E_r;
  return sys.m * sys.L / (sys.hbar * kin.k) +
         sys.hbar * res.beta / (detune * detune + res.beta * res.beta);
}

}  // namespace tunnelkit
