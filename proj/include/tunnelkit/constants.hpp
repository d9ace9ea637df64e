#pragma once

namespace tunnelkit {

// CODATA 2018.
namespace codata {
inline constexpr double hbar = 1.054571817e-34;            // J s
inline constexpr double m_neutron = 1.67492749804e-27;     // kg
inline constexpr double joule_per_neV = 1.602176634e-28;   // J / neV
inline constexpr double metre_per_angstrom = 1.0e-10;      // m / Å
}  // namespace codata

/// Constants used to move between SI and the neV / Å / m0 units of the
/// neutron-filter setup. All strictly positive.
struct PhysicalConstants {
  double hbar = codata::hbar;
  double m_neutron = codata::m_neutron;
  double joule_per_neV = codata::joule_per_neV;
  double metre_per_angstrom = codata::metre_per_angstrom;

  /// Throws DomainError if any value is not finite and strictly positive.
  void validate() const;

  double from_neV(double e) const { return e * joule_per_neV; }
  double to_neV(double e) const { return e / joule_per_neV; }
  double from_angstrom(double x) const { return x * metre_per_angstrom; }
  double to_angstrom(double x) const { return x / metre_per_angstrom; }
};

}  // namespace tunnelkit
