#pragma once

#include <Eigen/Core>

#include "shp/minkowski.hpp"
#include "shp/sl2c.hpp"

namespace shp {

/// Element of SU(2): the Wigner rotation D(Lambda, n).
class WignerRotation {
public:
    /// Throws InvalidArgument unless unitary and det = 1 to 1e-10.
    explicit WignerRotation(const Mat2c& m);

    const Mat2c& matrix() const { return m_; }

    /// Rotation angle in [0, pi] and unit axis, after fixing the sign of the
    /// double cover so that Re tr D >= 0. Axis is +z when the angle is 0.
    double angle() const;
    Eigen::Vector3d axis() const;

    double unitarity_defect() const;
    double determinant_defect() const;

private:
    Mat2c m_;
};

/// D(Lambda, n) = L(n)^-1 Lambda L(Lambda^-1 n) with L the canonical boost.
WignerRotation wigner_d(const SL2CElement& lambda, const FourVector& n);

/// Same construction on the momentum orbit, with L(p / m). p must satisfy
/// p.p = -m^2 within 1e-6 relative.
WignerRotation momentum_wigner_d(const SL2CElement& lambda, const FourVector& p, double mass);

/// Parametrized packet |n, sigma, x> carried in closed form: foliation
/// vector, two spin coefficients (a column over sigma = +1/2, -1/2), packet
/// centers and an isotropic width measured in the rest frame of n.
struct InducedPacketState {
    FourVector n = kRestFrame;
    Eigen::Vector2cd spin{1.0, 0.0};
    FourVector center_x;
    FourVector center_p;
    double width = 1.0;

    /// Throws InvalidArgument on a non-normalized spin, invalid n or width <= 0.
    void validate() const;
};

/// Transformation law of states induced on n: the packet moves to Lambda n
/// and the spin column is multiplied on the left by D(Lambda, Lambda n).
InducedPacketState induced_transform(const InducedPacketState& state, const SL2CElement& lambda);

/// so(3,1) generator G^{(mu nu)} acting on contravariant vectors,
/// (G)^a_b = delta^mu_b g^{nu a} - delta^nu_b g^{mu a}; its exponential is a
/// rotation for spatial (mu, nu) and a boost for (0, k).
Eigen::Matrix4d lorentz_generator(int mu, int nu);

/// SL(2,C) element exp(eps * xi) whose spinor map is exp(eps * G^{(mu nu)}).
SL2CElement generator_exponential(int mu, int nu, double eps);

}  // namespace shp
