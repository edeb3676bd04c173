#pragma once

// Conversion constants used at the eV / fs boundary. Everything else in the
// library works in natural units (hbar = c = 1).

namespace shp::units {

inline constexpr double kHbarEvFs = 0.6582119569;  // eV * fs
inline constexpr double kPlanckEvFs = 4.135667696;  // eV * fs

/// Angular frequency in 1/fs for an energy in eV.
constexpr double angular_frequency_per_fs(double energy_ev) { return energy_ev / kHbarEvFs; }

/// Smallest energy spread compatible with a time spread dt_fs, hbar / (2 dt).
constexpr double min_energy_spread_ev(double dt_fs) { return kHbarEvFs / (2.0 * dt_fs); }

}  // namespace shp::units
