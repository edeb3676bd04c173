#pragma once

// Two electrons emitted at different times into a spin singlet: the
// symmetric spacetime amplitude, the coincidence probability as a function
// of the detection-time difference, fringe extraction and the energy-width
// estimate needed for coherence across the emission spacing.
//
// Units: energies in eV, times in fs, hbar = 0.6582119569 eV fs.
// Pulse envelopes are g(t) = exp(-(t - t_emit)^2 / (2 sigma^2)) in amplitude,
// so the intensity |g|^2 has FWHM 2 sigma sqrt(ln 2).

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "shp/minkowski.hpp"

namespace shp::palacios {

struct EmissionConfig {
    double e1 = 10.4;            // eV
    double e2 = 14.6;            // eV
    Eigen::Vector3d k1{0.0, 0.0, 1.0};
    Eigen::Vector3d k2{0.0, 0.0, -1.0};
    double t_emit1 = 0.0;        // fs
    double t_emit2 = 0.75;       // fs
    double pulse_width = 0.5;    // fs, Gaussian sigma of the amplitude envelope
    double mass = 510998.95;     // eV
    FourVector n = kRestFrame;

    /// Throws InvalidArgument unless sigma > 0, energies > 0, directions are unit vectors and n is unit timelike.
    void validate() const;

    double delta_e() const { return e2 - e1; }
    double emit_spacing() const { return t_emit2 - t_emit1; }
    /// (E2 - E1) / hbar in rad/fs.
    double omega() const;
    /// h / |E2 - E1|; infinite for equal energies.
    double predicted_period() const;
    double intensity_fwhm() const;

    /// Corrected energies 10.4 and 14.6 eV.
    static EmissionConfig corrected_energies();
    /// Uncorrected energies 35 and 69 eV.
    static EmissionConfig raw_energies();
};

double envelope(double t, double t_emit, double sigma);

/// A(t1, t2) = g1(t1) g2(t2) e^{-i(E1 t1 + E2 t2)/hbar} + g1(t2) g2(t1) e^{-i(E1 t2 + E2 t1)/hbar}.
/// Detectors sit at fixed points placed so the spatial phases of both terms coincide.
std::complex<double> amplitude(const EmissionConfig& c, double t1, double t2);

struct RelativeCoords {
    double T = 0.0;      // (t1 + t2) / 2
    double delta = 0.0;  // t2 - t1
};

RelativeCoords to_relative_coords(double t1, double t2);
std::pair<double, double> from_relative_coords(const RelativeCoords& r);

/// The same amplitude regrouped as e^{-i(E1+E2)T/hbar} times relative phases e^{-+i(E2-E1)delta/2hbar}.
std::complex<double> amplitude_relative(const EmissionConfig& c, const RelativeCoords& r);

/// Full two-body state at (t1, t2): rows and columns are the spin projections
/// (up, down) of particles 1 and 2, entries A(t1, t2) times the singlet.
Eigen::Matrix2cd full_state(const EmissionConfig& c, double t1, double t2);

/// Integral of P over delta, used to normalize P to a density in delta (1/fs).
double total_probability(const EmissionConfig& c);

/// Normalized P(delta) = int |A|^2 dT / total, closed form:
/// sigma sqrt(pi/2) [e^{-(d-s)^2/2sigma^2} + e^{-(d+s)^2/2sigma^2} + 2 e^{-(d^2+s^2)/2sigma^2} cos(omega d)] / total
/// with s the emission spacing.
double coincidence_probability(const EmissionConfig& c, double delta);

/// The same density by trapezoidal quadrature of |A(T - delta/2, T + delta/2)|^2 over T.
double coincidence_probability_quadrature(const EmissionConfig& c, double delta, std::size_t nodes = 2001);

/// Minimum samples per expected fringe period accepted by scan_interference.
inline constexpr double kMinSamplesPerPeriod = 16.0;

struct InterferenceResult {
    std::vector<double> delta_t;       // fs
    std::vector<double> probability;   // normalized P
    std::vector<double> envelope;      // direct terms, same normalization
    std::vector<double> interference;  // cross term, same normalization
    double fringe_period = 0.0;        // fs; infinite when flat
    double predicted_period = 0.0;     // h / |dE|
    double visibility = 0.0;
    double raw_visibility = 0.0;
    bool flat = false;                 // no oscillation (equal energies)
};

/// Scans P on `samples` points from lo to hi. Throws AliasingError when the
/// grid has fewer than kMinSamplesPerPeriod points per predicted period.
///
/// fringe_period: 2 pi / f* where f* maximizes the Fourier transform of the
/// sampled interference column (coarse search plus golden section).
/// visibility: (max - min) / (max + min) of P / envelope over the window
/// where the envelope is at least half its maximum. raw_visibility is the
/// same ratio taken on P itself over that window.
InterferenceResult scan_interference(const EmissionConfig& c, double lo, double hi, std::size_t samples);

/// Angular frequency maximizing |sum_j x_j e^{-i f t_j}| on a uniform grid.
double dominant_frequency(const std::vector<double>& t, const std::vector<double>& x);

struct FeasibilityReport {
    double pulse_spacing_fs = 0.0;
    double required_delta_e_ev = 0.0;     // hbar / (2 spacing)
    double quoted_threshold_ev = 1e-3;
    double natural_linewidth_ev = 1e-6;
    double ratio_to_quoted = 0.0;         // required / quoted
    double linewidth_time_spread_fs = 0.0;  // hbar / (2 linewidth)
    bool discrepancy = false;             // |log10 ratio| > 1
};

FeasibilityReport feasibility_report(const EmissionConfig& c);

}  // namespace shp::palacios
