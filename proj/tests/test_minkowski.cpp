#include "doctest.h"
#include "oracles.hpp"
#include "shp/errors.hpp"
#include "shp/minkowski.hpp"
#include "shp/sampling.hpp"

using namespace shp;

TEST_CASE("metric signature and dot product") {
    CHECK(dot(kRestFrame, kRestFrame) == -1.0);
    CHECK(dot(FourVector(0, 1, 2, 3), FourVector(0, 1, 2, 3)) == 14.0);
    CHECK(metric(0, 0) == -1.0);
    CHECK(metric(2, 2) == 1.0);
    CHECK(metric(1, 2) == 0.0);
    CHECK(FourVector(2, 1, 0, 0).lower(0) == -2.0);
}

TEST_CASE("causal classification") {
    CHECK(classify(kRestFrame) == CausalClass::TimelikeFuture);
    CHECK(classify(FourVector(-1, 0, 0, 0)) == CausalClass::TimelikePast);
    CHECK(classify(FourVector(0, 1, 0, 0)) == CausalClass::Spacelike);
    CHECK(classify(FourVector(1, 1, 0, 0)) == CausalClass::Lightlike);
    CHECK(classify(FourVector()) == CausalClass::Lightlike);
    CHECK_THROWS_AS(require_unit_future_timelike(FourVector(2, 0, 0, 0), "n"), InvalidArgument);
}

TEST_CASE("boost matches the explicit matrix and preserves the metric") {
    Sampler s(7);
    for (int i = 0; i < 200; ++i) {
        const Eigen::Vector3d u = s.unit_vector();
        const double w = s.uniform(-3.0, 3.0);
        const LorentzMatrix b = LorentzMatrix::boost(u, w);
        CHECK((b.matrix() - oracle::boost(u, w)).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(LorentzMatrix::metric_defect(b.matrix()) < 1e-10);
    }
}

TEST_CASE("Lorentz invariance of the interval and composition") {
    Sampler s(11);
    for (int i = 0; i < 200; ++i) {
        const LorentzMatrix a = s.lorentz(2.0);
        const LorentzMatrix b = s.lorentz(2.0);
        const FourVector v = s.four_vector(3.0);
        const FourVector w = s.four_vector(3.0);
        const double scale = std::max(1.0, a.matrix().cwiseAbs().maxCoeff() * a.matrix().cwiseAbs().maxCoeff());
        CHECK(std::abs(dot(apply(a, v), apply(a, w)) - dot(v, w)) < 1e-10 * scale * 10.0);
        CHECK(((a * b).matrix() - a.matrix() * b.matrix()).cwiseAbs().maxCoeff() < 1e-12 * scale * 10.0);
        CHECK(((a * a.inverse()).matrix() - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("pure boost takes the rest frame to n") {
    Sampler s(3);
    for (int i = 0; i < 100; ++i) {
        const FourVector n = s.unit_timelike(2.5);
        const FourVector m = apply(pure_boost(n), kRestFrame);
        CHECK((m.vec() - n.vec()).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((pure_boost(n).matrix() - pure_boost(n).matrix().transpose()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("invalid Lorentz matrices are rejected") {
    Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
    m(1, 1) = 2.0;
    CHECK_THROWS_AS(LorentzMatrix::from_matrix(m), InvalidArgument);
    Eigen::Matrix4d parity = Eigen::Matrix4d::Identity();
    parity(1, 1) = -1.0;
    CHECK_THROWS_AS(LorentzMatrix::from_matrix(parity), InvalidArgument);
    Eigen::Matrix4d reversal = Eigen::Matrix4d::Identity();
    reversal(0, 0) = -1.0;
    reversal(1, 1) = -1.0;
    CHECK_THROWS_AS(LorentzMatrix::from_matrix(reversal), InvalidArgument);
}

TEST_CASE("sampler is deterministic") {
    Sampler a(99), b(99);
    for (int i = 0; i < 50; ++i) CHECK(a.uniform() == b.uniform());
    CHECK(random_proper_lorentz(5).matrix() == random_proper_lorentz(5).matrix());
}
