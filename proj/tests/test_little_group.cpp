#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "shp/little_group.hpp"
#include "shp/sampling.hpp"

using namespace shp;

namespace {
FourVector rest_moved(const SL2CElement& a) { return apply(spinor_map(a), kRestFrame); }
}  // namespace

TEST_CASE("Wigner rotation is in SU(2) and stabilizes the rest frame") {
    Sampler s(21);
    for (int i = 0; i < 300; ++i) {
        const SL2CElement a = s.sl2c(2.0);
        const FourVector n = s.unit_timelike(2.0);
        const WignerRotation d = wigner_d(a, n);
        CHECK(d.unitarity_defect() < 1e-10);
        CHECK(d.determinant_defect() < 1e-10);
        // As a Lorentz matrix, D fixes (1,0,0,0).
        CHECK((apply(spinor_map(SL2CElement(d.matrix())), kRestFrame).vec() - kRestFrame.vec()).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("rotations are their own Wigner rotation at the rest frame") {
    const SL2CElement r = SL2CElement::rotation(Eigen::Vector3d(1, 2, 3).normalized(), 0.7);
    const WignerRotation d = wigner_d(r, kRestFrame);
    CHECK((d.matrix() - r.matrix()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(d.angle() - 0.7) < 1e-12);
    CHECK((d.axis() - Eigen::Vector3d(1, 2, 3).normalized()).norm() < 1e-12);
}

TEST_CASE("perpendicular boosts match the polar-decomposition oracle") {
    Sampler s(22);
    for (int i = 0; i < 200; ++i) {
        const Eigen::Vector3d u1 = s.unit_vector();
        Eigen::Vector3d u2 = s.unit_vector();
        u2 = (u2 - u2.dot(u1) * u1).normalized();
        const double w1 = s.uniform(0.05, 2.5);
        const double w2 = s.uniform(0.05, 2.5);
        const SL2CElement b1 = SL2CElement::boost(u1, w1);
        const SL2CElement b2 = SL2CElement::boost(u2, w2);
        const FourVector n1 = rest_moved(b1);
        const WignerRotation d = wigner_d(b2, apply(spinor_map(b2), n1));
        const double oracle_angle = oracle::rotation_angle(oracle::polar_rotation(oracle::boost(u2, w2) * oracle::boost(u1, w1)));
        CHECK(std::abs(d.angle() - oracle_angle) < 1e-9);
        // Rotation axis is perpendicular to both boosts.
        CHECK(std::abs(d.axis().dot(u1)) < 1e-8);
        CHECK(std::abs(d.axis().dot(u2)) < 1e-8);
    }
}

TEST_CASE("general compositions match the polar oracle") {
    Sampler s(23);
    for (int i = 0; i < 200; ++i) {
        const Eigen::Vector3d u1 = s.unit_vector();
        const Eigen::Vector3d u2 = s.unit_vector();
        const double w1 = s.uniform(0.0, 2.0);
        const double w2 = s.uniform(0.0, 2.0);
        const FourVector n1 = rest_moved(SL2CElement::boost(u1, w1));
        const SL2CElement b2 = SL2CElement::boost(u2, w2);
        const WignerRotation d = wigner_d(b2, apply(spinor_map(b2), n1));
        const double expected = oracle::rotation_angle(oracle::polar_rotation(oracle::boost(u2, w2) * oracle::boost(u1, w1)));
        CHECK(std::abs(d.angle() - expected) < 1e-8);
    }
}

TEST_CASE("collinear boosts give the identity") {
    Sampler s(24);
    for (int i = 0; i < 100; ++i) {
        const Eigen::Vector3d u = s.unit_vector();
        const FourVector n = rest_moved(SL2CElement::boost(u, s.uniform(-2, 2)));
        const WignerRotation d = wigner_d(SL2CElement::boost(u, s.uniform(-2, 2)), n);
        CHECK((d.matrix() - Mat2c::Identity()).cwiseAbs().maxCoeff() < 1e-10);
        CHECK(d.angle() < 1e-7);
    }
}

TEST_CASE("cocycle composition over random triples") {
    Sampler s(25);
    for (int i = 0; i < 500; ++i) {
        const SL2CElement a = s.sl2c(1.5);
        const SL2CElement b = s.sl2c(1.5);
        const FourVector n = s.unit_timelike(1.5);
        const FourVector back = apply(spinor_map(a.inverse()), n);
        const Mat2c lhs = wigner_d(a * b, n).matrix();
        const Mat2c rhs = wigner_d(a, n).matrix() * wigner_d(b, back).matrix();
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("momentum orbit agrees with the n orbit") {
    Sampler s(26);
    const SL2CElement a = s.sl2c(1.0);
    const FourVector n = s.unit_timelike(1.0);
    CHECK((momentum_wigner_d(a, 2.0 * n, 2.0).matrix() - wigner_d(a, n).matrix()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK_THROWS(momentum_wigner_d(a, FourVector(1, 0, 0, 0), 2.0));
}

TEST_CASE("generator exponential converges at second order") {
    for (int mu = 0; mu < 4; ++mu) {
        for (int nu = mu + 1; nu < 4; ++nu) {
            const Eigen::Matrix4d g = lorentz_generator(mu, nu);
            auto err = [&](double eps) {
                return (spinor_map(generator_exponential(mu, nu, eps)).matrix() - (Eigen::Matrix4d::Identity() + eps * g))
                    .cwiseAbs()
                    .maxCoeff();
            };
            const double ratio = std::log2(err(1e-3) / err(5e-4));
            CHECK(std::abs(ratio - 2.0) < 0.01);
            // Exact exponential: G generates a metric-preserving family.
            CHECK(LorentzMatrix::metric_defect(spinor_map(generator_exponential(mu, nu, 0.4)).matrix()) < 1e-12);
        }
    }
}

TEST_CASE("induced transform composes and keeps the spin normalized") {
    Sampler s(27);
    InducedPacketState st;
    st.n = s.unit_timelike(1.0);
    st.spin = s.spinor().normalized();
    const SL2CElement a = s.sl2c(1.0), b = s.sl2c(1.0);
    const InducedPacketState one = induced_transform(st, a * b);
    const InducedPacketState two = induced_transform(induced_transform(st, b), a);
    CHECK((one.spin - two.spin).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(std::abs(one.spin.norm() - 1.0) < 1e-12);
    InducedPacketState bad = st;
    bad.spin = Eigen::Vector2cd(2.0, 0.0);
    CHECK_THROWS(bad.validate());
}
