#include "shp/evolution.hpp"

#include <optional>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "shp/errors.hpp"
#include "shp/kernels/kernels.hpp"

namespace shp {

namespace {

using cd = std::complex<double>;
using State8 = Eigen::Matrix<double, 8, 1>;

State8 pack(const PhasePoint& s) {
    State8 z;
    z << s.x.vec(), s.p.vec();
    return z;
}

PhasePoint unpack(const State8& z, double tau) {
    return {FourVector(Eigen::Vector4d(z.head<4>())), FourVector(Eigen::Vector4d(z.tail<4>())), tau};
}

State8 derivative(const ClassicalModel& model, const State8& z) {
    const auto [xd, pd] = model.velocity(unpack(z, 0.0));
    State8 d;
    d << xd.vec(), pd.vec();
    return d;
}

FourVector with_component(const FourVector& v, int mu, double delta) {
    Eigen::Vector4d c = v.vec();
    c[mu] += delta;
    return FourVector(c);
}

void require_positive_mass(double mass, const char* what) {
    if (!(mass > 0.0) || !std::isfinite(mass)) throw InvalidArgument(std::string(what) + ": mass must be positive");
}

std::vector<double> filled(std::size_t n, double v) { return std::vector<double>(n, v); }

}  // namespace

ClassicalModel ClassicalModel::free(double mass) {
    require_positive_mass(mass, "ClassicalModel::free");
    return {mass, nullptr, nullptr};
}

ClassicalModel ClassicalModel::harmonic(double mass, double k) {
    require_positive_mass(mass, "ClassicalModel::harmonic");
    return {mass, [k](double s) { return 0.5 * k * s; }, [k](double) { return 0.5 * k; }};
}

double ClassicalModel::hamiltonian(const PhasePoint& s) const {
    const double kinetic = dot(s.p, s.p) / (2.0 * mass);
    return potential ? kinetic + potential(dot(s.x, s.x)) : kinetic;
}

std::pair<FourVector, FourVector> ClassicalModel::velocity(const PhasePoint& s) const {
    const FourVector xd = (1.0 / mass) * s.p;
    if (!potential_derivative) return {xd, FourVector{}};
    return {xd, (-2.0 * potential_derivative(dot(s.x, s.x))) * s.x};
}

PhasePoint classical_step(const PhasePoint& state, const ClassicalModel& model, double dtau) {
    if (!(dtau > 0.0) || !std::isfinite(dtau)) throw InvalidArgument("classical_step: dtau must be positive");
    require_positive_mass(model.mass, "classical_step");
    const State8 z = pack(state);
    const State8 k1 = derivative(model, z);
    const State8 k2 = derivative(model, z + 0.5 * dtau * k1);
    const State8 k3 = derivative(model, z + 0.5 * dtau * k2);
    const State8 k4 = derivative(model, z + dtau * k3);
    const PhasePoint next = unpack(z + dtau / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4), state.tau + dtau);

    const double k_before = model.hamiltonian(state);
    const double k_after = model.hamiltonian(next);
    const double scale = std::max(std::abs(k_before), state.p.vec().squaredNorm() / (2.0 * model.mass));
    const double drift = std::abs(k_after - k_before);
    if (!std::isfinite(k_after) || drift > kMaxStepDrift * scale) {
        std::ostringstream os;
        os << "step rejected at tau = " << state.tau << ": relative change of K " << drift / scale << " exceeds "
           << kMaxStepDrift;
        throw StepRejected(os.str(), state.tau);
    }
    return next;
}

std::vector<PhasePoint> classical_integrate(const PhasePoint& state, const ClassicalModel& model, double dtau,
                                            std::size_t steps) {
    std::vector<PhasePoint> out;
    out.reserve(steps + 1);
    out.push_back(state);
    for (std::size_t i = 0; i < steps; ++i) {
        PhasePoint next = classical_step(out.back(), model, dtau);
        // Accumulating tau as start + i * dtau avoids summation drift.
        next.tau = state.tau + static_cast<double>(i + 1) * dtau;
        out.push_back(next);
    }
    return out;
}

StepSelection select_step(const PhasePoint& state, const ClassicalModel& model, double total_tau,
                          std::size_t initial_steps, double tol) {
    if (!(total_tau > 0.0) || initial_steps == 0) throw InvalidArgument("select_step: need total_tau > 0 and steps > 0");
    // A rejected step (K drift too large) just means the step is still too coarse.
    auto end_point = [&](std::size_t n) -> std::optional<State8> {
        try {
            return pack(classical_integrate(state, model, total_tau / static_cast<double>(n), n).back());
        } catch (const StepRejected&) {
            return std::nullopt;
        }
    };
    std::size_t steps = initial_steps;
    std::optional<State8> coarse = end_point(steps);
    for (int halving = 0; halving < 24; ++halving) {
        const std::size_t fine_steps = 2 * steps;
        const std::optional<State8> fine = end_point(fine_steps);
        if (coarse && fine) {
            const double change = (*fine - *coarse).cwiseAbs().maxCoeff();
            if (change < tol) return {total_tau / static_cast<double>(fine_steps), fine_steps, change};
        }
        coarse = fine;
        steps = fine_steps;
    }
    throw Error("select_step: end point did not settle after 24 halvings");
}

double poisson(const PhaseFunction& f, const PhaseFunction& g, const PhasePoint& at, double scale) {
    const double h = 1e-5 * scale;
    auto dx = [&](const PhaseFunction& fn, int mu) {
        PhasePoint plus = at;
        PhasePoint minus = at;
        plus.x = with_component(at.x, mu, h);
        minus.x = with_component(at.x, mu, -h);
        return (fn(plus) - fn(minus)) / (2.0 * h);
    };
    auto dp = [&](const PhaseFunction& fn, int mu) {
        PhasePoint plus = at;
        PhasePoint minus = at;
        plus.p = with_component(at.p, mu, h);
        minus.p = with_component(at.p, mu, -h);
        return (fn(plus) - fn(minus)) / (2.0 * h);
    };
    double sum = 0.0;
    for (int mu = 0; mu < 4; ++mu) {
        // d/dp_mu = g^{mu mu} d/dp^mu and d/dx_mu = g^{mu mu} d/dx^mu.
        sum += metric(mu, mu) * (dx(f, mu) * dp(g, mu) - dp(f, mu) * dx(g, mu));
    }
    return sum;
}

double GridAxis::spacing() const { return count > 1 ? (hi - lo) / static_cast<double>(count - 1) : 1.0; }

double GridAxis::value(std::size_t i) const { return lo + static_cast<double>(i) * spacing(); }

std::size_t GridPacket::px_count() const { return px ? px->count : 1; }

std::size_t GridPacket::size() const { return energy.count * px_count(); }

double GridPacket::cell_volume() const { return energy.spacing() * (px ? px->spacing() : 1.0); }

FourVector GridPacket::momentum(std::size_t index) const {
    const std::size_t i = index / px_count();
    const std::size_t j = index % px_count();
    return {energy.value(i), px ? px->value(j) : base.x(), base.y(), base.z()};
}

double GridPacket::norm() const {
    const std::vector<double> w = filled(size(), cell_volume());
    return kernels::weighted_norm(re.data(), im.data(), w.data(), size());
}

void GridPacket::normalize() {
    const double nrm = norm();
    if (!(nrm > 0.0) || !std::isfinite(nrm)) throw InvalidArgument("GridPacket::normalize: packet has zero norm");
    const double s = 1.0 / std::sqrt(nrm);
    for (std::size_t i = 0; i < size(); ++i) {
        re[i] *= s;
        im[i] *= s;
    }
}

void GridPacket::validate() const {
    require_positive_mass(mass, "GridPacket");
    if (energy.count < 2 || (px && px->count < 2)) throw InvalidArgument("GridPacket: each axis needs at least 2 points");
    if (!(energy.hi > energy.lo) || (px && !(px->hi > px->lo))) throw InvalidArgument("GridPacket: axis with hi <= lo");
    if (re.size() != size() || im.size() != size()) throw InvalidArgument("GridPacket: amplitude count mismatch");
    if (std::abs(norm() - 1.0) > 1e-8) throw InvalidArgument("GridPacket: packet is not normalized");
}

GridPacket GridPacket::sample(const GridAxis& energy, const std::optional<GridAxis>& px, const FourVector& base,
                              double mass, const std::function<std::complex<double>(const FourVector&)>& f) {
    GridPacket g;
    g.energy = energy;
    g.px = px;
    g.base = base;
    g.mass = mass;
    g.re.resize(g.size());
    g.im.resize(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const cd a = f(g.momentum(i));
        g.re[i] = a.real();
        g.im[i] = a.imag();
    }
    return g;
}

std::complex<double> GaussianPacket::amplitude(const FourVector& p) const {
    double log_mag = 0.0;
    for (int mu = 0; mu < 4; ++mu) {
        const double s = widths[mu];
        const double d = p[mu] - center[mu];
        log_mag += -0.25 * std::log(2.0 * std::numbers::pi * s * s) - d * d / (4.0 * s * s);
    }
    return std::exp(log_mag) * std::polar(1.0, -dot(p, p) * tau / (2.0 * mass));
}

void GaussianPacket::validate() const {
    require_positive_mass(mass, "GaussianPacket");
    if (!(widths.minCoeff() > 0.0)) throw InvalidArgument("GaussianPacket: widths must be positive");
    if (!center.is_finite()) throw InvalidArgument("GaussianPacket: center must be finite");
}

GridPacket free_evolve(const GridPacket& packet, double dtau) {
    if (!std::isfinite(dtau)) throw InvalidArgument("free_evolve: dtau must be finite");
    require_positive_mass(packet.mass, "free_evolve");
    GridPacket out = packet;
    out.tau += dtau;
    if (dtau == 0.0) return out;
    std::vector<double> theta(packet.size());
    for (std::size_t i = 0; i < theta.size(); ++i) {
        const FourVector p = packet.momentum(i);
        theta[i] = dot(p, p) * dtau / (2.0 * packet.mass);
    }
    kernels::rotate_phase(out.re.data(), out.im.data(), theta.data(), theta.size());
    return out;
}

GaussianPacket free_evolve(const GaussianPacket& packet, double dtau) {
    if (!std::isfinite(dtau)) throw InvalidArgument("free_evolve: dtau must be finite");
    GaussianPacket out = packet;
    out.tau += dtau;
    return out;
}

TwoBodyGridPacket TwoBodyGridPacket::product(const GridPacket& a, const GridPacket& b) {
    require_common_fiber(a.n, a.tau, b.n, b.tau);
    TwoBodyGridPacket out;
    out.first = a;
    out.second = b;
    out.tau = a.tau;
    const std::size_t n1 = a.size();
    const std::size_t n2 = b.size();
    out.re.resize(n1 * n2);
    out.im.resize(n1 * n2);
    for (std::size_t i = 0; i < n1; ++i) {
        for (std::size_t k = 0; k < n2; ++k) {
            const cd v = a.amplitude(i) * b.amplitude(k);
            out.re[i * n2 + k] = v.real();
            out.im[i * n2 + k] = v.imag();
        }
    }
    return out;
}

double TwoBodyGridPacket::norm() const {
    const std::vector<double> w = filled(re.size(), first.cell_volume() * second.cell_volume());
    return kernels::weighted_norm(re.data(), im.data(), w.data(), re.size());
}

TwoBodyGridPacket free_evolve(const TwoBodyGridPacket& packet, double dtau) {
    if (!std::isfinite(dtau)) throw InvalidArgument("free_evolve: dtau must be finite");
    require_positive_mass(packet.first.mass, "free_evolve");
    require_positive_mass(packet.second.mass, "free_evolve");
    TwoBodyGridPacket out = packet;
    out.tau += dtau;
    out.first.tau += dtau;
    out.second.tau += dtau;
    if (dtau == 0.0) return out;
    const std::size_t n1 = packet.first.size();
    const std::size_t n2 = packet.second.size();
    std::vector<double> k1(n1);
    std::vector<double> k2(n2);
    for (std::size_t i = 0; i < n1; ++i) {
        const FourVector p = packet.first.momentum(i);
        k1[i] = dot(p, p) / (2.0 * packet.first.mass);
    }
    for (std::size_t k = 0; k < n2; ++k) {
        const FourVector p = packet.second.momentum(k);
        k2[k] = dot(p, p) / (2.0 * packet.second.mass);
    }
    std::vector<double> theta(n1 * n2);
    for (std::size_t i = 0; i < n1; ++i) {
        for (std::size_t k = 0; k < n2; ++k) theta[i * n2 + k] = (k1[i] + k2[k]) * dtau;
    }
    kernels::rotate_phase(out.re.data(), out.im.data(), theta.data(), theta.size());
    return out;
}

MassMoments mass_moments(const GridPacket& packet) {
    std::vector<double> m2(packet.size());
    for (std::size_t i = 0; i < m2.size(); ++i) {
        const FourVector p = packet.momentum(i);
        m2[i] = -dot(p, p);
    }
    const std::vector<double> w = filled(packet.size(), packet.cell_volume());
    const kernels::Moments m = kernels::weighted_moments(m2.data(), packet.re.data(), packet.im.data(), w.data(), m2.size());
    if (!(m.weight > 0.0)) throw InvalidArgument("mass_moments: packet has zero norm");
    const double mean = m.first / m.weight;
    return {mean, std::max(0.0, m.second / m.weight - mean * mean)};
}

MassMoments mass_moments(const GaussianPacket& packet) {
    packet.validate();
    MassMoments out;
    for (int mu = 0; mu < 4; ++mu) {
        const double c = packet.center[mu];
        const double s2 = packet.widths[mu] * packet.widths[mu];
        // For p ~ N(c, s^2): E[p^2] = c^2 + s^2, Var[p^2] = 4 c^2 s^2 + 2 s^4.
        out.mean += (mu == 0 ? 1.0 : -1.0) * (c * c + s2);
        out.variance += 4.0 * c * c * s2 + 2.0 * s2 * s2;
    }
    return out;
}

Uncertainty time_energy_uncertainty(const GridPacket& packet, double hbar) {
    if (!(hbar > 0.0)) throw InvalidArgument("time_energy_uncertainty: hbar must be positive");
    const std::size_t ne = packet.energy.count;
    const std::size_t np = packet.px_count();
    if (ne < 2 || packet.re.size() != ne * np) throw InvalidArgument("time_energy_uncertainty: malformed grid");

    std::vector<double> e(packet.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = packet.momentum(i).t();
    const std::vector<double> w = filled(packet.size(), packet.cell_volume());
    const kernels::Moments me = kernels::weighted_moments(e.data(), packet.re.data(), packet.im.data(), w.data(), e.size());
    if (!(me.weight > 0.0)) throw InvalidArgument("time_energy_uncertainty: packet has zero norm");
    const double mean_e = me.first / me.weight;
    const double delta_e = std::sqrt(std::max(0.0, me.second / me.weight - mean_e * mean_e));

    const double de = packet.energy.spacing();
    const std::size_t nt = ne;
    std::vector<double> t(nt);
    std::vector<double> prob(nt, 0.0);
    for (std::size_t k = 0; k < nt; ++k) {
        const double index = static_cast<double>(k) - static_cast<double>(nt / 2);
        t[k] = 2.0 * std::numbers::pi * hbar * index / (static_cast<double>(nt) * de);
    }
    std::vector<double> col_re(ne);
    std::vector<double> col_im(ne);
    std::vector<double> col_e(ne);
    for (std::size_t j = 0; j < np; ++j) {
        for (std::size_t i = 0; i < ne; ++i) {
            col_re[i] = packet.re[i * np + j];
            col_im[i] = packet.im[i * np + j];
            col_e[i] = packet.energy.value(i) / hbar;
        }
        for (std::size_t k = 0; k < nt; ++k) {
            prob[k] += std::norm(kernels::phase_sum(col_re.data(), col_im.data(), col_e.data(), t[k], ne));
        }
    }
    double p0 = 0.0;
    double p1 = 0.0;
    double p2 = 0.0;
    for (std::size_t k = 0; k < nt; ++k) {
        p0 += prob[k];
        p1 += prob[k] * t[k];
        p2 += prob[k] * t[k] * t[k];
    }
    const double mean_t = p1 / p0;
    const double delta_t = std::sqrt(std::max(0.0, p2 / p0 - mean_t * mean_t));
    return {delta_t, delta_e, delta_t * delta_e / hbar};
}

Uncertainty time_energy_uncertainty(const GaussianPacket& packet, double hbar) {
    packet.validate();
    const double delta_e = packet.widths[0];
    const double delta_t = hbar / (2.0 * delta_e);
    return {delta_t, delta_e, delta_t * delta_e / hbar};
}

GridPacket gaussian_energy_packet(double e0, double delta_t, double mass, std::size_t count, double half_span,
                                  double hbar) {
    if (!(delta_t > 0.0) || count < 2 || !(half_span > 0.0)) {
        throw InvalidArgument("gaussian_energy_packet: need delta_t > 0, count >= 2, half_span > 0");
    }
    const double sigma_e = hbar / (2.0 * delta_t);
    const GridAxis axis{e0 - half_span * sigma_e, e0 + half_span * sigma_e, count};
    GridPacket g = GridPacket::sample(axis, std::nullopt, FourVector{e0, 0.0, 0.0, 0.0}, mass, [&](const FourVector& p) {
        const double d = p.t() - e0;
        return cd(std::exp(-d * d / (4.0 * sigma_e * sigma_e)), 0.0);
    });
    g.normalize();
    return g;
}

}  // namespace shp
