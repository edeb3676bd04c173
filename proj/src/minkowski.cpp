#include "shp/minkowski.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include <Eigen/Geometry>
#include <Eigen/LU>

#include "shp/errors.hpp"
#include "shp/sampling.hpp"

namespace shp {

bool FourVector::is_finite() const {
    return std::all_of(c_.begin(), c_.end(), [](double v) { return std::isfinite(v); });
}

std::ostream& operator<<(std::ostream& os, const FourVector& v) {
    return os << '(' << v.t() << ", " << v.x() << ", " << v.y() << ", " << v.z() << ')';
}

const Eigen::Matrix4d& metric_matrix() {
    static const Eigen::Matrix4d g = Eigen::Vector4d(-1.0, 1.0, 1.0, 1.0).asDiagonal();
    return g;
}

CausalClass classify(const FourVector& v) {
    double scale = 0.0;
    for (int mu = 0; mu < 4; ++mu) scale = std::max(scale, v[mu] * v[mu]);
    const double s = dot(v, v);
    if (std::abs(s) <= 1e-12 * scale || scale == 0.0) return CausalClass::Lightlike;
    if (s > 0.0) return CausalClass::Spacelike;
    return v.t() > 0.0 ? CausalClass::TimelikeFuture : CausalClass::TimelikePast;
}

bool is_unit_future_timelike(const FourVector& v, double tol) {
    return v.is_finite() && v.t() > 0.0 && std::abs(dot(v, v) + 1.0) <= tol;
}

void require_unit_future_timelike(const FourVector& v, const char* what, double tol) {
    if (!is_unit_future_timelike(v, tol)) {
        std::ostringstream os;
        os << what << ": expected a unit future-timelike vector, got " << v << " with n.n = " << dot(v, v);
        throw InvalidArgument(os.str());
    }
}

double LorentzMatrix::metric_defect(const Eigen::Matrix4d& m) {
    const Eigen::Matrix4d& g = metric_matrix();
    return (m.transpose() * g * m - g).cwiseAbs().maxCoeff();
}

LorentzMatrix LorentzMatrix::from_matrix(const Eigen::Matrix4d& m) {
    if (!m.allFinite()) throw InvalidArgument("LorentzMatrix: non-finite entries");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    const double defect = metric_defect(m);
    if (defect > 1e-12 * scale * scale) {
        std::ostringstream os;
        os << "LorentzMatrix: L^T g L differs from g by " << defect;
        throw InvalidArgument(os.str());
    }
    if (m(0, 0) < 1.0 - 1e-12 * scale) throw InvalidArgument("LorentzMatrix: not orthochronous");
    if (m.determinant() < 0.0) throw InvalidArgument("LorentzMatrix: improper (det = -1)");
    return LorentzMatrix(m);
}

LorentzMatrix LorentzMatrix::boost(const Eigen::Vector3d& axis, double rapidity) {
    const Eigen::Vector3d u = axis.normalized();
    const double ch = std::cosh(rapidity);
    const double sh = std::sinh(rapidity);
    Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
    m(0, 0) = ch;
    m.block<1, 3>(0, 1) = sh * u.transpose();
    m.block<3, 1>(1, 0) = sh * u;
    m.block<3, 3>(1, 1) += (ch - 1.0) * u * u.transpose();
    return LorentzMatrix(m);
}

LorentzMatrix LorentzMatrix::rotation(const Eigen::Vector3d& axis, double angle) {
    Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
    m.block<3, 3>(1, 1) = Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
    return LorentzMatrix(m);
}

LorentzMatrix LorentzMatrix::inverse() const {
    const Eigen::Matrix4d& g = metric_matrix();
    return LorentzMatrix(g * m_.transpose() * g);
}

LorentzMatrix operator*(const LorentzMatrix& a, const LorentzMatrix& b) { return LorentzMatrix(a.m_ * b.m_); }

FourVector apply(const LorentzMatrix& lambda, const FourVector& v) {
    return FourVector(Eigen::Vector4d(lambda.matrix() * v.vec()));
}

LorentzMatrix pure_boost(const FourVector& n) {
    require_unit_future_timelike(n, "pure_boost");
    // Project back onto the hyperboloid so chained round-off does not trip
    // the 1e-12 constructor check.
    const double s = 1.0 / std::sqrt(-dot(n, n));
    const double gamma = s * n.t();
    const Eigen::Vector3d u = s * n.spatial();
    Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
    m(0, 0) = gamma;
    m.block<1, 3>(0, 1) = u.transpose();
    m.block<3, 1>(1, 0) = u;
    m.block<3, 3>(1, 1) += u * u.transpose() / (1.0 + gamma);
    return LorentzMatrix::from_matrix(m);
}

LorentzMatrix random_proper_lorentz(std::uint64_t seed) {
    Sampler sampler(seed);
    return sampler.lorentz(3.0);
}

}  // namespace shp
