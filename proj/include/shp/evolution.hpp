#pragma once

// Classical covariant dynamics in the invariant time tau and free quantum
// evolution of momentum-space packets. Natural units unless a function
// takes hbar explicitly.

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "shp/minkowski.hpp"
#include "shp/spin_coupling.hpp"

namespace shp {

struct PhasePoint {
    FourVector x;
    FourVector p;  // contravariant components
    double tau = 0.0;
};

/// K = p.p / 2M + V(x.x). A null potential is the free particle.
struct ClassicalModel {
    double mass = 1.0;
    std::function<double(double)> potential;             // V(s), s = x.x
    std::function<double(double)> potential_derivative;  // V'(s)

    static ClassicalModel free(double mass);
    /// V(s) = k s / 2, so that dp/dtau = -k x.
    static ClassicalModel harmonic(double mass, double k);

    double hamiltonian(const PhasePoint& s) const;
    /// (dx/dtau, dp/dtau) = (p / M, -2 V'(x.x) x)
    std::pair<FourVector, FourVector> velocity(const PhasePoint& s) const;
};

/// Relative change of K allowed per step before a step is rejected.
inline constexpr double kMaxStepDrift = 1e-6;

/// One RK4 step. Throws InvalidArgument unless dtau > 0 and StepRejected
/// (carrying the tau of the failed step) when K drifts beyond kMaxStepDrift.
PhasePoint classical_step(const PhasePoint& state, const ClassicalModel& model, double dtau);

/// steps + 1 points, starting with the initial state.
std::vector<PhasePoint> classical_integrate(const PhasePoint& state, const ClassicalModel& model, double dtau,
                                            std::size_t steps);

struct StepSelection {
    double dtau = 0.0;
    std::size_t steps = 0;
    double endpoint_change = 0.0;  // max |z(dtau) - z(dtau/2)| at the end point
};

/// Halves the step (starting from total_tau / initial_steps) until halving
/// once more changes the end point by less than tol.
StepSelection select_step(const PhasePoint& state, const ClassicalModel& model, double total_tau,
                          std::size_t initial_steps = 16, double tol = 1e-9);

using PhaseFunction = std::function<double(const PhasePoint&)>;

/// {F, G} = dF/dx^mu dG/dp_mu - dF/dp_mu dG/dx^mu by central differences
/// with step 1e-5 * scale.
double poisson(const PhaseFunction& f, const PhaseFunction& g, const PhasePoint& at, double scale = 1.0);

/// Uniform sample axis: count points from lo to hi inclusive.
struct GridAxis {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t count = 0;

    double spacing() const;
    double value(std::size_t i) const;
};

/// Amplitudes on a rectangular momentum grid: an energy axis (p^0) and
/// optionally a p^x axis. Components not on an axis are taken from base.
/// Storage is row-major with the energy index slowest. Normalization is the
/// Riemann sum of |a|^2 times the cell volume.
struct GridPacket {
    GridAxis energy;
    std::optional<GridAxis> px;
    FourVector base;
    std::vector<double> re;
    std::vector<double> im;
    double mass = 1.0;
    FourVector n = kRestFrame;
    double tau = 0.0;
    std::optional<SpinState> spin;

    std::size_t size() const;
    std::size_t px_count() const;
    double cell_volume() const;
    FourVector momentum(std::size_t index) const;
    std::complex<double> amplitude(std::size_t index) const { return {re[index], im[index]}; }

    double norm() const;
    /// Scales the amplitudes to unit norm. Throws InvalidArgument on a zero packet.
    void normalize();
    /// Throws InvalidArgument on inconsistent sizes, mass <= 0 or norm off 1 by more than 1e-8.
    void validate() const;

    /// Fills a grid from f(p). Not normalized.
    static GridPacket sample(const GridAxis& energy, const std::optional<GridAxis>& px, const FourVector& base,
                             double mass, const std::function<std::complex<double>(const FourVector&)>& f);
};

/// Product of independent Gaussians in the four momentum components,
/// |a(p)|^2 = prod_mu N(p^mu; center^mu, width_mu^2), carried in closed form.
struct GaussianPacket {
    FourVector center;
    Eigen::Vector4d widths = Eigen::Vector4d::Ones();
    double mass = 1.0;
    FourVector n = kRestFrame;
    double tau = 0.0;
    std::optional<SpinState> spin;

    /// Amplitude including the accumulated phase exp(-i p.p tau / 2M).
    std::complex<double> amplitude(const FourVector& p) const;
    void validate() const;
};

/// a(p) -> a(p) exp(-i (p.p) dtau / 2M)
GridPacket free_evolve(const GridPacket& packet, double dtau);
GaussianPacket free_evolve(const GaussianPacket& packet, double dtau);

/// Joint amplitude of two particles on the energy axes of two 1-axis grids.
/// Entry (i, k) belongs to energies (first.energy[i], second.energy[k]).
struct TwoBodyGridPacket {
    GridPacket first;   // axes, base momentum and mass of particle 1; amplitudes unused
    GridPacket second;
    std::vector<double> re;
    std::vector<double> im;
    double tau = 0.0;

    static TwoBodyGridPacket product(const GridPacket& a, const GridPacket& b);
    double norm() const;
};

/// Both particles advanced in the common tau; phases add per particle.
TwoBodyGridPacket free_evolve(const TwoBodyGridPacket& packet, double dtau);

struct MassMoments {
    double mean = 0.0;      // <m^2> = <-p.p>
    double variance = 0.0;
};

MassMoments mass_moments(const GridPacket& packet);
MassMoments mass_moments(const GaussianPacket& packet);

struct Uncertainty {
    double delta_t = 0.0;
    double delta_e = 0.0;
    double product = 0.0;
};

/// Spread of E = p^0 and of its conjugate t. The time amplitude is the
/// direct Fourier sum psi(t) = sum_j a(E_j) exp(-i E_j t / hbar) on the
/// N-point grid t_k = 2 pi hbar k / (N dE), k = -N/2 .. N/2 - 1, which is
/// exactly unitary for the sampled energies. With a p^x axis the t
/// distribution is summed over p^x.
Uncertainty time_energy_uncertainty(const GridPacket& packet, double hbar = 1.0);
Uncertainty time_energy_uncertainty(const GaussianPacket& packet, double hbar = 1.0);

/// Energy-domain Gaussian whose time profile has standard deviation delta_t:
/// sigma_E = hbar / (2 delta_t), sampled on +-half_span sigma_E around e0.
GridPacket gaussian_energy_packet(double e0, double delta_t, double mass, std::size_t count = 256,
                                  double half_span = 8.0, double hbar = 1.0);

}  // namespace shp
