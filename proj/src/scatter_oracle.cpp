#include "tunnelkit/scatter_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tunnelkit/errors.hpp"
#include "tunnelkit/kinematics.hpp"

namespace tunnelkit::oracle {

void PotentialProfile::validate() const {
  if (!(m > 0.0)) throw DomainError("profile mass must be > 0");
  if (!(hbar > 0.0)) throw DomainError("profile hbar must be > 0");
  for (const Segment& s : segments) {
    if (!(s.width > 0.0) || !std::isfinite(s.width)) {
      throw DomainError("segment widths must be > 0");
    }
    if (!std::isfinite(s.height)) throw DomainError("segment heights must be finite");
  }
}

double PotentialProfile::total_width() const {
  double x = 0.0;
  for (const Segment& s : segments) x += s.width;
  return x;
}

TransferMatrix TransferMatrix::after(const TransferMatrix& first) const {
  const auto& a = entries;
  const auto& b = first.entries;
  TransferMatrix out;
  out.entries = {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
                 a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
  out.log_scale = log_scale + first.log_scale;
  return out;
}

PotentialProfile double_barrier_profile(const BarrierSystem& sys) {
  sys.validate();
  PotentialProfile p;
  p.m = sys.m;
  p.hbar = sys.hbar;
  if (sys.L > 0.0) {
    p.segments = {{sys.a, sys.U0}, {sys.L, 0.0}, {sys.a, sys.U0}};
  } else {
    p.segments = {{2.0 * sys.a, sys.U0}};
  }
  return p;
}

TransferMatrix segment_matrix(const Segment& seg, double m, double hbar, double E) {
  const double gap = E - seg.height;
  if (std::abs(gap) <= 1e-12 * std::max(std::abs(E), std::abs(seg.height))) {
    std::ostringstream msg;
    msg << "energy " << E << " J coincides with a segment height; perturb E";
    throw DomainError(msg.str());
  }
  const double w = seg.width;
  TransferMatrix M;
  if (gap > 0.0) {
    const double K = std::sqrt(2.0 * m * gap) / hbar;
    const double c = std::cos(K * w);
    const double s = std::sin(K * w);
    M.entries = {c, s / K, -K * s, c};
    return M;
  }
  // [cosh, sinh/kappa; kappa sinh, cosh] = e^{kappa w} [ch, sh/kappa; kappa sh, ch]
  const double kappa = std::sqrt(-2.0 * m * gap) / hbar;
  const double decay = std::exp(-2.0 * kappa * w);
  const double ch = 0.5 * (1.0 + decay);
  const double sh = -0.5 * std::expm1(-2.0 * kappa * w);
  M.entries = {ch, sh / kappa, kappa * sh, ch};
  M.log_scale = kappa * w;
  return M;
}

TransferMatrix profile_matrix(const PotentialProfile& profile, double E) {
  profile.validate();
  TransferMatrix total;
  for (const Segment& s : profile.segments) {
    total = segment_matrix(s, profile.m, profile.hbar, E).after(total);
    // keep entries O(1)
    const double norm = std::max({std::abs(total.entries[0]), std::abs(total.entries[1]),
                                  std::abs(total.entries[2]), std::abs(total.entries[3])});
    if (norm > 0.0) {
      const int e = std::ilogb(norm);
      for (double& x : total.entries) x = std::scalbn(x, -e);
      total.log_scale += e * std::log(2.0);
    }
  }
  return total;
}

ScatterSolution solve(const TransferMatrix& M, double total_width, double m, double hbar,
                      double E) {
  if (!(E > 0.0)) throw DomainError("scattering energy must be > 0");
  const double k = std::sqrt(2.0 * m * E) / hbar;
  const std::complex<double> ik(0.0, k);
  const auto& e = M.entries;
  // M (1 + r, ik(1 - r)) = t e^{ikX} (1, ik) with M = e^{log_scale} e.
  const std::complex<double> alpha = ik * e[0] - e[2];
  const std::complex<double> gamma = k * k * e[1] + ik * e[3];
  const std::complex<double> denom = alpha + gamma;

  ScatterSolution out;
  out.r = (gamma - alpha) / denom;
  // det M = 1 for every segment, so det(e) = exp(-2 log_scale) and
  // t = 2ik e^{-ikX} e^{-log_scale} / denom.
  const std::complex<double> t_unscaled = 2.0 * ik * std::exp(-ik * total_width) / denom;
  out.t = t_unscaled * std::exp(-M.log_scale);
  out.t_phase = std::arg(t_unscaled);
  out.log_transmission = std::log(std::norm(t_unscaled)) - 2.0 * M.log_scale;
  return out;
}

ScatterSolution solve(const PotentialProfile& profile, double E) {
  return solve(profile_matrix(profile, E), profile.total_width(), profile.m, profile.hbar, E);
}

std::complex<double> single_barrier_t(double width, double height, double m, double hbar,
                                      double E) {
  const double k = std::sqrt(2.0 * m * E) / hbar;
  const double q = std::sqrt(2.0 * m * (height - E)) / hbar;
  const double delta = (q * q - k * k) / (k * q);
  const std::complex<double> d(std::cosh(q * width), 0.5 * delta * std::sinh(q * width));
  return std::exp(std::complex<double>(0.0, -k * width)) / d;
}

}  // namespace tunnelkit::oracle
