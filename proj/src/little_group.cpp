#include "shp/little_group.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include <Eigen/LU>

#include "shp/errors.hpp"

namespace shp {

namespace {

using cd = std::complex<double>;

FourVector transform_inverse(const SL2CElement& lambda, const FourVector& v) {
    return vector_of(lambda.inverse().matrix() * hermitian_of(v) * lambda.inverse().matrix().adjoint());
}

FourVector transform(const SL2CElement& lambda, const FourVector& v) {
    return vector_of(lambda.matrix() * hermitian_of(v) * lambda.matrix().adjoint());
}

int levi_civita(int i, int j, int k) {
    return (i - j) * (j - k) * (k - i) / 2;
}

}  // namespace

WignerRotation::WignerRotation(const Mat2c& m) : m_(m) {
    if (unitarity_defect() > 1e-10 || determinant_defect() > 1e-10) {
        std::ostringstream os;
        os << "WignerRotation: not in SU(2) (unitarity defect " << unitarity_defect() << ", det defect "
           << determinant_defect() << ")";
        throw InvalidArgument(os.str());
    }
}

double WignerRotation::unitarity_defect() const {
    return (m_ * m_.adjoint() - Mat2c::Identity()).cwiseAbs().maxCoeff();
}

double WignerRotation::determinant_defect() const { return std::abs(m_.determinant() - 1.0); }

double WignerRotation::angle() const {
    const double half_trace = std::abs(m_.trace().real()) / 2.0;
    return 2.0 * std::acos(std::clamp(half_trace, 0.0, 1.0));
}

Eigen::Vector3d WignerRotation::axis() const {
    const Mat2c d = m_.trace().real() < 0.0 ? Mat2c(-m_) : m_;
    // d = cos(a/2) I - i sin(a/2) u.sigma, so tr(sigma_k d) = -2i sin(a/2) u_k.
    Eigen::Vector3d u;
    for (int k = 0; k < 3; ++k) u[k] = -(pauli(k + 1) * d).trace().imag() / 2.0;
    const double norm = u.norm();
    if (norm < 1e-14) return Eigen::Vector3d::UnitZ();
    return u / norm;
}

WignerRotation wigner_d(const SL2CElement& lambda, const FourVector& n) {
    if (lambda.rep() != Rep::First) throw InvalidArgument("wigner_d: Lambda must be in the first representation");
    require_unit_future_timelike(n, "wigner_d");
    const FourVector back = transform_inverse(lambda, n);
    const Mat2c d = canonical_boost(n).inverse().matrix() * lambda.matrix() * canonical_boost(back).matrix();
    return WignerRotation(d);
}

WignerRotation momentum_wigner_d(const SL2CElement& lambda, const FourVector& p, double mass) {
    if (!(mass > 0.0)) throw InvalidArgument("momentum_wigner_d: mass must be positive");
    const double m2 = -dot(p, p);
    if (!(p.t() > 0.0) || std::abs(m2 - mass * mass) > 1e-6 * mass * mass) {
        std::ostringstream os;
        os << "momentum_wigner_d: p = " << p << " is off shell (p.p = " << -m2 << ", expected " << -mass * mass << ")";
        throw InvalidArgument(os.str());
    }
    return wigner_d(lambda, (1.0 / std::sqrt(m2)) * p);
}

void InducedPacketState::validate() const {
    require_unit_future_timelike(n, "InducedPacketState");
    if (std::abs(spin.squaredNorm() - 1.0) > 1e-10) throw InvalidArgument("InducedPacketState: spin not normalized");
    if (!(width > 0.0)) throw InvalidArgument("InducedPacketState: width must be positive");
}

InducedPacketState induced_transform(const InducedPacketState& state, const SL2CElement& lambda) {
    state.validate();
    InducedPacketState out = state;
    out.n = transform(lambda, state.n);
    out.center_x = transform(lambda, state.center_x);
    out.center_p = transform(lambda, state.center_p);
    out.spin = wigner_d(lambda, out.n).matrix() * state.spin;
    return out;
}

Eigen::Matrix4d lorentz_generator(int mu, int nu) {
    Eigen::Matrix4d g = Eigen::Matrix4d::Zero();
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            g(a, b) = (b == mu ? metric(nu, a) : 0.0) - (b == nu ? metric(mu, a) : 0.0);
        }
    }
    return g;
}

SL2CElement generator_exponential(int mu, int nu, double eps) {
    if (mu == nu || mu < 0 || nu < 0 || mu > 3 || nu > 3) throw InvalidArgument("generator_exponential: bad indices");
    if (mu == 0 || nu == 0) {
        const int k = mu == 0 ? nu : mu;
        const double sign = mu == 0 ? 1.0 : -1.0;
        return SL2CElement::boost(Eigen::Vector3d::Unit(k - 1), sign * eps);
    }
    Eigen::Vector3d axis = Eigen::Vector3d::Zero();
    for (int k = 1; k <= 3; ++k) axis[k - 1] = levi_civita(mu, nu, k);
    return SL2CElement::rotation(axis, eps);
}

}  // namespace shp
