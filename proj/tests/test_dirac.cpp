#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "shp/dirac.hpp"
#include "shp/errors.hpp"
#include "shp/sampling.hpp"

using namespace shp;
using namespace shp::dirac;

namespace {
double dev(const Mat4c& a, const Mat4c& b) { return (a - b).cwiseAbs().maxCoeff(); }
const Mat4c I4 = Mat4c::Identity();
}  // namespace

TEST_CASE("gamma matrices in the chosen representation") {
    // gamma^0 = diag(1, 1, -1, -1)
    CHECK(dev(gamma(0), Eigen::Vector4cd(1, 1, -1, -1).asDiagonal().toDenseMatrix()) == 0.0);
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) CHECK(dev(anticommutator(gamma(mu), gamma(nu)), -2.0 * metric(mu, nu) * I4) < 1e-15);
    CHECK(dev(gamma5() * gamma5(), I4) < 1e-15);
}

TEST_CASE("(gamma.n)^2 = 1 for unit timelike n") {
    Sampler s(31);
    for (int i = 0; i < 100; ++i) {
        const FourVector n = s.unit_timelike(2.0);
        CHECK(dev(slash(n) * slash(n), I4) < 1e-12);
    }
}

TEST_CASE("rest-frame Sigma_n is the Pauli triple") {
    const Mat4c s12 = sigma_n(1, 2, kRestFrame);
    CHECK(dev(s12, 0.5 * Eigen::Vector4cd(1, -1, 1, -1).asDiagonal().toDenseMatrix()) < 1e-15);
    for (int j = 1; j < 4; ++j) CHECK(sigma_n(0, j, kRestFrame).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("projector annihilates n") {
    Sampler s(32);
    const FourVector n = s.unit_timelike(2.0);
    for (int mu = 0; mu < 4; ++mu) {
        double acc = 0.0;
        for (int a = 0; a < 4; ++a) acc += projector(mu, a, n) * n.lower(a);
        CHECK(std::abs(acc) < 1e-12);
    }
}

TEST_CASE("free K0 is independent of n and equals p.p / 2M") {
    const FourVector p(1.3, 0.2, -0.4, 0.5);
    CHECK(dev(free_k0(p, 2.0), dot(p, p) / 4.0 * I4) < 1e-14);
}

TEST_CASE("field tensor layout") {
    const FieldTensor f = FieldTensor::from_fields({1, 2, 3}, {4, 5, 6}, 1.0, 1.0);
    CHECK(f.lower(0, 1) == 1.0);
    CHECK(f.lower(1, 0) == -1.0);
    CHECK(f.lower(1, 2) == 6.0);  // B_z
    CHECK(f.lower(2, 3) == 4.0);  // B_x
    CHECK(f.lower(3, 1) == 5.0);  // B_y
    // Projection at rest removes the electric part.
    const FieldTensor p = f.projected(kRestFrame);
    CHECK(p.lower(0, 1) == 0.0);
    CHECK(p.lower(1, 2) == 6.0);
}

TEST_CASE("spin coupling in a magnetic field at rest") {
    const FieldTensor f = FieldTensor::from_fields(Eigen::Vector3d::Zero(), {0, 0, 2.0}, 1.0, 0.5);
    // (e/2M) Sigma.F = (e/2M) * 2 * Sigma^{12} F_12 = (e B / 2M) diag(1,-1,1,-1) for this layout
    const Mat4c expected = 2.0 * Eigen::Vector4cd(1, -1, 1, -1).asDiagonal().toDenseMatrix();
    CHECK(dev(spin_coupling_term(kRestFrame, f), expected) < 1e-14);
}

TEST_CASE("sector metric is positive definite") {
    Sampler s(33);
    for (int i = 0; i < 100; ++i) {
        const FourVector n = s.unit_timelike(2.5);
        Eigen::SelfAdjointEigenSolver<Mat4c> es(sector_metric(n));
        CHECK(es.eigenvalues().minCoeff() > 0.0);
        const FourVector past = -1.0 * n;
        Eigen::SelfAdjointEigenSolver<Mat4c> ep(sector_metric(past));
        CHECK(ep.eigenvalues().minCoeff() > 0.0);
    }
}

TEST_CASE("sector norm of basis spinors") {
    TwoSpinorPair pair;
    pair.psi_hat = Eigen::Vector2cd(1.0, 0.0);
    CHECK(std::abs(sector_norm(assemble_spinor(pair)) - 1.0) < 1e-15);
    CHECK(dev(assembly_matrix() * assembly_matrix().adjoint(), I4) < 1e-15);
}

TEST_CASE("projections reject p.n = 0 and imaginary helicity") {
    CHECK_THROWS_AS(projections(FourVector(0, 1, 0, 0), kRestFrame), InvalidArgument);
    CHECK_THROWS_AS(helicity_operator(FourVector(1, 0, 0, 0), kRestFrame), InvalidArgument);
}

TEST_CASE("energy projection picks the sign of p.n") {
    const Projections pr = projections(FourVector(2, 0.1, 0, 0), kRestFrame);
    // p.n = -2 < 0: future-pointing p, so the minus member is the identity here.
    CHECK(dev(pr.energy.plus + pr.energy.minus, I4) < 1e-15);
    CHECK((dev(pr.energy.plus, I4) < 1e-15 || dev(pr.energy.minus, I4) < 1e-15));
}

TEST_CASE("S(Lambda) is a group homomorphism and rejects the second representation") {
    Sampler s(34);
    const SL2CElement a = s.sl2c(1.0), b = s.sl2c(1.0);
    CHECK(dev(s_lambda(a * b), s_lambda(a) * s_lambda(b)) < 1e-10);
    CHECK_THROWS_AS(s_lambda(second_rep(a)), InvalidArgument);
}
