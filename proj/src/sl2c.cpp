#include "shp/sl2c.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <sstream>

#include <Eigen/LU>

#include "shp/errors.hpp"

namespace shp {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

std::array<Mat2c, 4> make_pauli() {
    std::array<Mat2c, 4> s;
    s[0] << 1, 0, 0, 1;
    s[1] << 0, 1, 1, 0;
    s[2] << 0, -kI, kI, 0;
    s[3] << 1, 0, 0, -1;
    return s;
}

// exp(z u.sigma) = cosh(z) I + sinh(z) u.sigma for unit u.
Mat2c exp_pauli(const Eigen::Vector3d& u, cd z) {
    const Eigen::Vector3d n = u.normalized();
    Mat2c m = std::cosh(z) * pauli(0);
    for (int k = 0; k < 3; ++k) m += std::sinh(z) * n[k] * pauli(k + 1);
    return m;
}

}  // namespace

const Mat2c& pauli(int mu) {
    static const std::array<Mat2c, 4> s = make_pauli();
    return s[static_cast<std::size_t>(mu)];
}

Mat2c hermitian_of(const FourVector& n) {
    Mat2c x;
    x << cd(n.t() + n.z()), cd(n.x(), -n.y()), cd(n.x(), n.y()), cd(n.t() - n.z());
    return x;
}

FourVector vector_of(const Mat2c& x) {
    return {0.5 * (x(0, 0) + x(1, 1)).real(), 0.5 * (x(0, 1) + x(1, 0)).real(),
            0.5 * (x(1, 0) - x(0, 1)).imag(), 0.5 * (x(0, 0) - x(1, 1)).real()};
}

SL2CElement::SL2CElement(const Mat2c& m, Rep rep) : m_(m), rep_(rep) {
    const cd det = m.determinant();
    if (!m.allFinite() || std::abs(det - 1.0) > 1e-10) {
        std::ostringstream os;
        os << "SL2CElement: determinant " << det << " is not 1";
        throw InvalidArgument(os.str());
    }
}

SL2CElement SL2CElement::rotation(const Eigen::Vector3d& axis, double angle) {
    return SL2CElement(exp_pauli(axis, cd(0.0, -0.5 * angle)));
}

SL2CElement SL2CElement::boost(const Eigen::Vector3d& axis, double rapidity) {
    return SL2CElement(exp_pauli(axis, cd(0.5 * rapidity, 0.0)));
}

SL2CElement SL2CElement::inverse() const {
    Mat2c inv;
    inv << m_(1, 1), -m_(0, 1), -m_(1, 0), m_(0, 0);
    return SL2CElement(inv, rep_);
}

SL2CElement SL2CElement::adjoint() const { return SL2CElement(Mat2c(m_.adjoint()), rep_); }

SL2CElement operator*(const SL2CElement& a, const SL2CElement& b) {
    if (a.rep_ != b.rep_) throw InvalidArgument("SL2CElement: product of mixed representations");
    return SL2CElement(a.m_ * b.m_, a.rep_);
}

Eigen::Matrix4d spinor_map_matrix(const Mat2c& a) {
    Eigen::Matrix4d out;
    for (int nu = 0; nu < 4; ++nu) {
        const FourVector col = vector_of(a * pauli(nu) * a.adjoint());
        for (int mu = 0; mu < 4; ++mu) out(mu, nu) = col[mu];
    }
    return out;
}

LorentzMatrix spinor_map(const SL2CElement& a) {
    if (a.rep() != Rep::First) {
        throw InvalidArgument("spinor_map: element is tagged with the second representation");
    }
    return LorentzMatrix::from_matrix(spinor_map_matrix(a.matrix()));
}

SL2CElement canonical_boost(const FourVector& n) {
    require_unit_future_timelike(n, "canonical_boost");
    const double s = 1.0 / std::sqrt(-dot(n, n));
    const FourVector u = s * n;
    // X(n) is Hermitian positive with unit determinant, so its principal
    // root is (X + I) / sqrt(tr X + 2) (Cayley-Hamilton, eigenvalues e^{+-w}).
    const Mat2c x = hermitian_of(u);
    Mat2c root = (x + pauli(0)) / std::sqrt(2.0 * (u.t() + 1.0));
    return SL2CElement(root);
}

SL2CElement second_rep(const SL2CElement& a) {
    if (a.rep() != Rep::First) throw InvalidArgument("second_rep: element is already in the second representation");
    return SL2CElement(Mat2c(a.inverse().matrix().adjoint()), Rep::Second);
}

SL2CElement lift(const LorentzMatrix& lambda) {
    // sum_nu (A sigma_nu A^dag) K sigma_nu = 2 tr(A^dag K) A for any fixed K;
    // pick the K that keeps the prefactor away from zero.
    Mat2c images[4];
    for (int nu = 0; nu < 4; ++nu) {
        images[nu].setZero();
        for (int mu = 0; mu < 4; ++mu) images[nu] += lambda(mu, nu) * pauli(mu);
    }
    Mat2c best = Mat2c::Zero();
    double best_det = -1.0;
    for (int k = 0; k < 4; ++k) {
        Mat2c m = Mat2c::Zero();
        for (int nu = 0; nu < 4; ++nu) m += images[nu] * pauli(k) * pauli(nu);
        const double d = std::abs(m.determinant());
        if (d > best_det) {
            best_det = d;
            best = m;
        }
    }
    Mat2c a = best / std::sqrt(best.determinant());
    if (a.trace().real() < 0.0) a = -a;
    return SL2CElement(a);
}

}  // namespace shp
