#pragma once

#include <array>
#include <complex>
#include <vector>

namespace tunnelkit {

struct BarrierSystem;

namespace oracle {

struct Segment {
  double width = 0.0;   // m, > 0
  double height = 0.0;  // J
};

/// Piecewise-constant potential starting at x = 0; zero outside the segments.
struct PotentialProfile {
  std::vector<Segment> segments;
  double m = 0.0;  // kg
  double hbar = 0.0;

  void validate() const;
  double total_width() const;
};

/// Real 2x2 map of (psi, psi') across a stretch of the profile, stored as
/// exp(log_scale) * entries so evanescent segments cannot overflow.
struct TransferMatrix {
  std::array<double, 4> entries{1.0, 0.0, 0.0, 1.0};  // row-major
  double log_scale = 0.0;

  /// this applied after `first` (this * first).
  TransferMatrix after(const TransferMatrix& first) const;
};

/// t is the coefficient of e^{ikx} for x beyond the profile, the incident
/// wave being e^{ikx} with x measured from the left edge of the first segment.
struct ScatterSolution {
  std::complex<double> t;
  std::complex<double> r;
  double log_transmission = 0.0;  // ln |t|^2, finite even when t underflows
  double t_phase = 0.0;           // arg t, finite even when t underflows
};

/// [(a, U0), (L, 0), (a, U0)]; the gap is dropped when L = 0.
PotentialProfile double_barrier_profile(const BarrierSystem& sys);

/// Matrix of one segment at energy E. Throws DomainError when E lies within
/// 1e-12 (relative) of the segment height.
TransferMatrix segment_matrix(const Segment& seg, double m, double hbar, double E);

/// Product over all segments, left to right.
TransferMatrix profile_matrix(const PotentialProfile& profile, double E);

/// Plane-wave matching of the assembled matrix against free waves outside.
ScatterSolution solve(const TransferMatrix& M, double total_width, double m, double hbar,
                      double E);

ScatterSolution solve(const PotentialProfile& profile, double E);

/// Closed-form transmission amplitude of one rectangular barrier (E < V),
/// e^{-ika} / (cosh(qa) + i (delta/2) sinh(qa)), in the same convention.
std::complex<double> single_barrier_t(double width, double height, double m, double hbar,
                                      double E);

}  // namespace oracle
}  // namespace tunnelkit
