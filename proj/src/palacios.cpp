#include "shp/palacios.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "shp/errors.hpp"
#include "shp/kernels/kernels.hpp"
#include "shp/spin_coupling.hpp"
#include "shp/units.hpp"

namespace shp::palacios {

using units::kHbarEvFs;
using units::kPlanckEvFs;
using units::min_energy_spread_ev;

namespace {

using cd = std::complex<double>;

constexpr double kSqrtPiOver2 = 1.2533141373155002512;   // sqrt(pi / 2)
constexpr double kSqrt2Pi = 2.5066282746310005024;       // sqrt(2 pi)

// Common prefactor sigma sqrt(pi/2) of every term after the T integral.
double t_integral_factor(const EmissionConfig& c) { return c.pulse_width * kSqrtPiOver2; }

}  // namespace

void EmissionConfig::validate() const {
    std::ostringstream err;
    if (!(pulse_width > 0.0) || !std::isfinite(pulse_width)) err << "pulse_width must be positive; ";
    if (!(e1 > 0.0) || !(e2 > 0.0) || !std::isfinite(e1) || !std::isfinite(e2)) err << "energies must be positive; ";
    if (!std::isfinite(t_emit1) || !std::isfinite(t_emit2)) err << "emission times must be finite; ";
    if (std::abs(k1.norm() - 1.0) > 1e-9 || std::abs(k2.norm() - 1.0) > 1e-9) err << "k directions must be unit vectors; ";
    if (!(mass > 0.0)) err << "mass must be positive; ";
    if (!is_unit_future_timelike(n)) err << "n must be unit future timelike; ";
    const std::string msg = err.str();
    if (!msg.empty()) throw InvalidArgument("EmissionConfig: " + msg.substr(0, msg.size() - 2));
}

double EmissionConfig::omega() const { return delta_e() / kHbarEvFs; }

double EmissionConfig::predicted_period() const {
    const double de = std::abs(delta_e());
    return de > 0.0 ? kPlanckEvFs / de : std::numeric_limits<double>::infinity();
}

double EmissionConfig::intensity_fwhm() const { return 2.0 * pulse_width * std::sqrt(std::numbers::ln2); }

EmissionConfig EmissionConfig::corrected_energies() { return EmissionConfig{}; }

EmissionConfig EmissionConfig::raw_energies() {
    EmissionConfig c;
    c.e1 = 35.0;
    c.e2 = 69.0;
    return c;
}

double envelope(double t, double t_emit, double sigma) {
    const double d = t - t_emit;
    return std::exp(-d * d / (2.0 * sigma * sigma));
}

cd amplitude(const EmissionConfig& c, double t1, double t2) {
    const double s = c.pulse_width;
    const double h = kHbarEvFs;
    const cd direct = envelope(t1, c.t_emit1, s) * envelope(t2, c.t_emit2, s) *
                      std::polar(1.0, -(c.e1 * t1 + c.e2 * t2) / h);
    const cd swapped = envelope(t2, c.t_emit1, s) * envelope(t1, c.t_emit2, s) *
                       std::polar(1.0, -(c.e1 * t2 + c.e2 * t1) / h);
    return direct + swapped;
}

RelativeCoords to_relative_coords(double t1, double t2) { return {0.5 * (t1 + t2), t2 - t1}; }

std::pair<double, double> from_relative_coords(const RelativeCoords& r) {
    return {r.T - 0.5 * r.delta, r.T + 0.5 * r.delta};
}

cd amplitude_relative(const EmissionConfig& c, const RelativeCoords& r) {
    const double s = c.pulse_width;
    const double h = kHbarEvFs;
    const auto [t1, t2] = from_relative_coords(r);
    const cd common = std::polar(1.0, -(c.e1 + c.e2) * r.T / h);
    const double rel = (c.e2 - c.e1) * r.delta / (2.0 * h);
    const cd direct = envelope(t1, c.t_emit1, s) * envelope(t2, c.t_emit2, s) * std::polar(1.0, -rel);
    const cd swapped = envelope(t2, c.t_emit1, s) * envelope(t1, c.t_emit2, s) * std::polar(1.0, rel);
    return common * (direct + swapped);
}

Eigen::Matrix2cd full_state(const EmissionConfig& c, double t1, double t2) {
    return amplitude(c, t1, t2) * singlet(c.n).coefficients;
}

double total_probability(const EmissionConfig& c) {
    const double s = c.pulse_width;
    const double sp = c.emit_spacing();
    const double w = c.omega();
    const double overlap = std::exp(-sp * sp / (2.0 * s * s)) * std::exp(-w * w * s * s / 2.0);
    return t_integral_factor(c) * s * kSqrt2Pi * (2.0 + 2.0 * overlap);
}

double coincidence_probability(const EmissionConfig& c, double delta) {
    c.validate();
    const double s = c.pulse_width;
    const double sp = c.emit_spacing();
    const double inv = 1.0 / (2.0 * s * s);
    const double a = delta - sp;
    const double b = delta + sp;
    const double env = std::exp(-a * a * inv) + std::exp(-b * b * inv);
    const double cross = 2.0 * std::exp(-(delta * delta + sp * sp) * inv) * std::cos(c.omega() * delta);
    // env >= |cross| holds exactly; the clamp only removes round-off below zero.
    return std::max(0.0, t_integral_factor(c) * (env + cross) / total_probability(c));
}

double coincidence_probability_quadrature(const EmissionConfig& c, double delta, std::size_t nodes) {
    c.validate();
    if (nodes < 3) throw InvalidArgument("coincidence_probability_quadrature: need at least 3 nodes");
    // |A|^2 is a Gaussian in T of standard deviation sigma/2 about the mean emission time.
    const double center = 0.5 * (c.t_emit1 + c.t_emit2);
    const double half = 10.0 * c.pulse_width;
    const double h = 2.0 * half / static_cast<double>(nodes - 1);
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes; ++i) {
        const double T = center - half + static_cast<double>(i) * h;
        const double w = (i == 0 || i + 1 == nodes) ? 0.5 : 1.0;
        sum += w * std::norm(amplitude_relative(c, {T, delta}));
    }
    return sum * h / total_probability(c);
}

double dominant_frequency(const std::vector<double>& t, const std::vector<double>& x) {
    if (t.size() != x.size() || t.size() < 4) throw InvalidArgument("dominant_frequency: need at least 4 samples");
    const std::size_t n = t.size();
    const double spacing = (t.back() - t.front()) / static_cast<double>(n - 1);
    const double nyquist = std::numbers::pi / spacing;
    const std::vector<double> zeros(n, 0.0);
    auto power = [&](double f) { return std::norm(kernels::phase_sum(x.data(), zeros.data(), t.data(), f, n)); };

    const std::size_t coarse = 4 * n;
    const double step = nyquist / static_cast<double>(coarse);
    std::size_t best = 1;
    double best_power = -1.0;
    for (std::size_t k = 1; k <= coarse; ++k) {
        const double p = power(static_cast<double>(k) * step);
        if (p > best_power) {
            best_power = p;
            best = k;
        }
    }

    // Golden-section refinement inside the bracketing coarse cells.
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = std::max(0.0, (static_cast<double>(best) - 1.0) * step);
    double b = std::min(nyquist, (static_cast<double>(best) + 1.0) * step);
    double c1 = b - inv_phi * (b - a);
    double c2 = a + inv_phi * (b - a);
    double p1 = power(c1);
    double p2 = power(c2);
    while (b - a > 1e-13 * std::max(1.0, b)) {
        if (p1 > p2) {
            b = c2;
            c2 = c1;
            p2 = p1;
            c1 = b - inv_phi * (b - a);
            p1 = power(c1);
        } else {
            a = c1;
            c1 = c2;
            p1 = p2;
            c2 = a + inv_phi * (b - a);
            p2 = power(c2);
        }
    }
    return 0.5 * (a + b);
}

InterferenceResult scan_interference(const EmissionConfig& c, double lo, double hi, std::size_t samples) {
    c.validate();
    if (samples < 2 || !(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw InvalidArgument("scan_interference: need at least 2 samples and lo < hi");
    }
    const double spacing = (hi - lo) / static_cast<double>(samples - 1);
    InterferenceResult r;
    r.predicted_period = c.predicted_period();
    r.flat = !(std::abs(c.delta_e()) > 0.0);
    if (!r.flat && r.predicted_period / spacing < kMinSamplesPerPeriod) {
        std::ostringstream os;
        os << "scan grid spacing " << spacing << " fs gives " << r.predicted_period / spacing
           << " samples per fringe period " << r.predicted_period << " fs; at least " << kMinSamplesPerPeriod
           << " are required";
        throw AliasingError(os.str());
    }

    r.delta_t.resize(samples);
    for (std::size_t j = 0; j < samples; ++j) r.delta_t[j] = lo + static_cast<double>(j) * spacing;
    r.envelope.resize(samples);
    r.interference.resize(samples);
    kernels::coincidence_terms(r.delta_t.data(), samples, {c.pulse_width, c.emit_spacing(), c.omega()},
                               r.envelope.data(), r.interference.data());
    const double scale = t_integral_factor(c) / total_probability(c);
    r.probability.resize(samples);
    for (std::size_t j = 0; j < samples; ++j) {
        r.envelope[j] *= scale;
        r.interference[j] *= scale;
        r.probability[j] = std::max(0.0, r.envelope[j] + r.interference[j]);
    }

    r.fringe_period = r.flat ? std::numeric_limits<double>::infinity()
                             : 2.0 * std::numbers::pi / dominant_frequency(r.delta_t, r.interference);

    const double env_max = *std::max_element(r.envelope.begin(), r.envelope.end());
    double ratio_max = -std::numeric_limits<double>::infinity();
    double ratio_min = std::numeric_limits<double>::infinity();
    double p_max = ratio_max;
    double p_min = ratio_min;
    for (std::size_t j = 0; j < samples; ++j) {
        if (!(r.envelope[j] >= 0.5 * env_max) || !(r.envelope[j] > 0.0)) continue;
        const double ratio = r.probability[j] / r.envelope[j];
        ratio_max = std::max(ratio_max, ratio);
        ratio_min = std::min(ratio_min, ratio);
        p_max = std::max(p_max, r.probability[j]);
        p_min = std::min(p_min, r.probability[j]);
    }
    r.visibility = ratio_max + ratio_min > 0.0 ? (ratio_max - ratio_min) / (ratio_max + ratio_min) : 0.0;
    r.raw_visibility = p_max + p_min > 0.0 ? (p_max - p_min) / (p_max + p_min) : 0.0;
    return r;
}

FeasibilityReport feasibility_report(const EmissionConfig& c) {
    FeasibilityReport f;
    f.pulse_spacing_fs = std::abs(c.emit_spacing());
    if (!(f.pulse_spacing_fs > 0.0)) throw InvalidArgument("feasibility_report: emission spacing must be nonzero");
    f.required_delta_e_ev = min_energy_spread_ev(f.pulse_spacing_fs);
    f.ratio_to_quoted = f.required_delta_e_ev / f.quoted_threshold_ev;
    f.linewidth_time_spread_fs = kHbarEvFs / (2.0 * f.natural_linewidth_ev);
    f.discrepancy = std::abs(std::log10(f.ratio_to_quoted)) > 1.0;
    return f;
}

}  // namespace shp::palacios
