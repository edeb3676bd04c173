#include "doctest.h"
#include "oracles.hpp"
#include "shp/errors.hpp"
#include "shp/evolution.hpp"
#include "shp/units.hpp"

using namespace shp;

TEST_CASE("free evolution is a pure phase on the grid") {
    GridPacket g = gaussian_energy_packet(2.0, 0.8, 1.5, 128);
    const double n0 = g.norm();
    CHECK(n0 == doctest::Approx(1.0).epsilon(1e-12));
    GridPacket h = g;
    for (int k = 0; k < 10000; ++k) h = free_evolve(h, 0.5);
    CHECK(std::abs(h.norm() - n0) < 1e-10);
    CHECK(h.tau == doctest::Approx(5000.0));
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double phase = -dot(g.momentum(i), g.momentum(i)) * 5000.0 / (2.0 * g.mass);
        const std::complex<double> expected = g.amplitude(i) * std::polar(1.0, phase);
        CHECK(std::abs(h.amplitude(i) - expected) < 1e-9);
    }
}

TEST_CASE("grid validation") {
    GridPacket g = gaussian_energy_packet(2.0, 0.8, 1.5, 16);
    g.re.pop_back();
    CHECK_THROWS_AS(g.validate(), InvalidArgument);
    GridPacket z = GridPacket::sample(GridAxis{0, 1, 4}, std::nullopt, FourVector{}, 1.0,
                                      [](const FourVector&) { return std::complex<double>(0.0, 0.0); });
    CHECK_THROWS_AS(z.normalize(), InvalidArgument);
}

TEST_CASE("Gaussian time-energy product is one half") {
    for (double dt : {0.2, 0.75, 1.0, 3.0}) {
        const Uncertainty u = time_energy_uncertainty(gaussian_energy_packet(5.0, dt, 1.0, 256));
        CHECK(std::abs(u.product - 0.5) < 1e-9);
        CHECK(std::abs(u.delta_t - dt) < 1e-9 * dt);
    }
}

TEST_CASE("minimal energy spread for a 0.75 fs spread") {
    const double hbar = units::kHbarEvFs;
    const Uncertainty u = time_energy_uncertainty(gaussian_energy_packet(10.0, 0.75, 1.0, 256, 8.0, hbar), hbar);
    CHECK(std::abs(u.delta_e - hbar / 1.5) < 1e-9);
    CHECK(std::abs(u.delta_e - 0.438807971267) < 1e-9);
    CHECK(units::min_energy_spread_ev(0.75) == doctest::Approx(0.4388079713).epsilon(1e-9));
}

TEST_CASE("closed-form Gaussian packet") {
    GaussianPacket p;
    p.center = FourVector(2.0, 0.5, 0.0, 0.0);
    p.widths = Eigen::Vector4d(0.1, 0.2, 0.3, 0.4);
    p.mass = 1.0;
    const MassMoments m = mass_moments(p);
    // <-p.p> = <E^2> - <px^2> - <py^2> - <pz^2>
    const double expected = (4.0 + 0.01) - (0.25 + 0.04) - 0.09 - 0.16;
    CHECK(m.mean == doctest::Approx(expected).epsilon(1e-12));
    const GaussianPacket q = free_evolve(p, 3.0);
    CHECK(std::norm(q.amplitude(p.center)) == doctest::Approx(std::norm(p.amplitude(p.center))).epsilon(1e-12));
}

TEST_CASE("two-body packets factorize under the common tau") {
    const GridPacket a = gaussian_energy_packet(1.0, 1.0, 1.0, 32);
    const GridPacket b = gaussian_energy_packet(2.0, 0.5, 2.0, 24);
    const TwoBodyGridPacket lhs = free_evolve(TwoBodyGridPacket::product(a, b), 1.7);
    const TwoBodyGridPacket rhs = TwoBodyGridPacket::product(free_evolve(a, 1.7), free_evolve(b, 1.7));
    for (std::size_t k = 0; k < lhs.re.size(); ++k) {
        CHECK(std::abs(lhs.re[k] - rhs.re[k]) < 1e-13);
        CHECK(std::abs(lhs.im[k] - rhs.im[k]) < 1e-13);
    }
    CHECK(lhs.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("classical free motion") {
    const ClassicalModel m = ClassicalModel::free(2.0);
    const PhasePoint start{FourVector(0, 0, 0, 0), FourVector(std::sqrt(2.0), 1.0, 0.0, 0.0), 0.0};
    const auto traj = classical_integrate(start, m, 0.1, 100);
    CHECK(traj.size() == 101);
    const PhasePoint& end = traj.back();
    CHECK(end.tau == doctest::Approx(10.0));
    CHECK(end.x[0] == doctest::Approx(10.0 * std::sqrt(2.0) / 2.0).epsilon(1e-13));
    CHECK(end.x[1] == doctest::Approx(5.0).epsilon(1e-13));
    // dt/dtau = E / M and ds/dtau = m / M with m = 1
    const FourVector dx = end.x - start.x;
    CHECK(std::sqrt(-dot(dx, dx)) / 10.0 == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("harmonic K conservation over 10^4 steps") {
    const ClassicalModel m = ClassicalModel::harmonic(1.0, 0.5);
    const PhasePoint start{FourVector(0.1, 1.0, 0.0, 0.0), FourVector(1.5, 0.0, 0.3, 0.0), 0.0};
    const StepSelection sel = select_step(start, m, 1.0);
    CHECK(sel.dtau > 0.0);
    const auto traj = classical_integrate(start, m, sel.dtau, 10000);
    const double k0 = m.hamiltonian(start);
    double worst = 0.0;
    for (const auto& z : traj) worst = std::max(worst, std::abs(m.hamiltonian(z) - k0) / std::abs(k0));
    CHECK(worst < 1e-8);
}

TEST_CASE("step rejection reports tau") {
    const ClassicalModel m = ClassicalModel::harmonic(1.0, 50.0);
    const PhasePoint start{FourVector(0.0, 1.0, 0.0, 0.0), FourVector(1.0, 0.0, 0.0, 0.0), 0.0};
    try {
        classical_integrate(start, m, 0.5, 10);
        FAIL("expected StepRejected");
    } catch (const StepRejected& e) {
        CHECK(e.tau() >= 0.0);
    }
    CHECK_THROWS_AS(classical_step(start, m, -1.0), InvalidArgument);
}

TEST_CASE("Poisson brackets") {
    const PhasePoint at{FourVector(0.3, 0.1, -0.2, 0.5), FourVector(1.2, 0.4, 0.1, -0.3), 0.0};
    for (int mu = 0; mu < 4; ++mu) {
        for (int nu = 0; nu < 4; ++nu) {
            const double b = poisson([mu](const PhasePoint& z) { return z.x[mu]; },
                                     [nu](const PhasePoint& z) { return z.p.lower(nu); }, at);
            CHECK(std::abs(b - (mu == nu ? 1.0 : 0.0)) < 1e-8);
        }
    }
    // {x^mu, K} = p^mu / M for the free particle.
    const ClassicalModel m = ClassicalModel::free(2.0);
    for (int mu = 0; mu < 4; ++mu) {
        const double b = poisson([mu](const PhasePoint& z) { return z.x[mu]; }, [&m](const PhasePoint& z) { return m.hamiltonian(z); }, at);
        CHECK(std::abs(b - at.p[mu] / 2.0) < 1e-8);
    }
}
