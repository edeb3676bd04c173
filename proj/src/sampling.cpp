#include "shp/sampling.hpp"

#include <cmath>
#include <numbers>

#include "shp/sl2c.hpp"

namespace shp {

double Sampler::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Sampler::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Sampler::normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Eigen::Vector3d Sampler::unit_vector() {
    const double z = uniform(-1.0, 1.0);
    const double phi = uniform(0.0, 2.0 * std::numbers::pi);
    const double r = std::sqrt(1.0 - z * z);
    return {r * std::cos(phi), r * std::sin(phi), z};
}

Eigen::Vector4d Sampler::quaternion() {
    Eigen::Vector4d q;
    for (int i = 0; i < 4; ++i) q[i] = normal();
    return q.normalized();
}

LorentzMatrix Sampler::lorentz(double max_rapidity) {
    const Eigen::Vector3d rot_axis = unit_vector();
    const double angle = uniform(0.0, 2.0 * std::numbers::pi);
    const Eigen::Vector3d boost_axis = unit_vector();
    const double rapidity = uniform(0.0, max_rapidity);
    const Eigen::Matrix4d m =
        LorentzMatrix::rotation(rot_axis, angle).matrix() * LorentzMatrix::boost(boost_axis, rapidity).matrix();
    return LorentzMatrix::from_matrix(m);
}

SL2CElement Sampler::sl2c(double max_rapidity) {
    const Eigen::Vector3d rot_axis = unit_vector();
    const double angle = uniform(0.0, 4.0 * std::numbers::pi);
    const Eigen::Vector3d boost_axis = unit_vector();
    const double rapidity = uniform(0.0, max_rapidity);
    return SL2CElement::rotation(rot_axis, angle) * SL2CElement::boost(boost_axis, rapidity);
}

FourVector Sampler::unit_timelike(double max_rapidity) {
    const Eigen::Vector3d u = unit_vector();
    const double w = uniform(0.0, max_rapidity);
    const double sh = std::sinh(w);
    return {std::cosh(w), sh * u[0], sh * u[1], sh * u[2]};
}

FourVector Sampler::four_vector(double scale) {
    const double t = uniform(-scale, scale);
    const double x = uniform(-scale, scale);
    const double y = uniform(-scale, scale);
    const double z = uniform(-scale, scale);
    return {t, x, y, z};
}

std::complex<double> Sampler::complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
}

Eigen::Vector2cd Sampler::spinor() {
    const auto a = complex_normal();
    const auto b = complex_normal();
    return {a, b};
}

}  // namespace shp
