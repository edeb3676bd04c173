#include <cmath>

#include "shp/kernels/kernels.hpp"

namespace shp::kernels::scalar {

void rotate_phase(double* re, double* im, const double* theta, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
        const double c = std::cos(theta[j]);
        const double s = std::sin(theta[j]);
        const double r = re[j];
        const double i = im[j];
        re[j] = r * c + i * s;
        im[j] = i * c - r * s;
    }
}

double weighted_norm(const double* re, const double* im, const double* w, std::size_t n) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) sum += w[j] * (re[j] * re[j] + im[j] * im[j]);
    return sum;
}

Moments weighted_moments(const double* x, const double* re, const double* im, const double* w, std::size_t n) {
    Moments m;
    for (std::size_t j = 0; j < n; ++j) {
        const double p = w[j] * (re[j] * re[j] + im[j] * im[j]);
        m.weight += p;
        m.first += p * x[j];
        m.second += p * x[j] * x[j];
    }
    return m;
}

std::complex<double> phase_sum(const double* re, const double* im, const double* e, double t, std::size_t n) {
    double sr = 0.0;
    double si = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double c = std::cos(e[j] * t);
        const double s = std::sin(e[j] * t);
        sr += re[j] * c + im[j] * s;
        si += im[j] * c - re[j] * s;
    }
    return {sr, si};
}

void coincidence_terms(const double* delta, std::size_t n, const CoincidenceParams& p, double* envelope,
                       double* interference) {
    const double inv = 1.0 / (2.0 * p.sigma * p.sigma);
    const double s = p.emit_spacing;
    for (std::size_t j = 0; j < n; ++j) {
        const double d = delta[j];
        const double a = d - s;
        const double b = d + s;
        envelope[j] = std::exp(-a * a * inv) + std::exp(-b * b * inv);
        interference[j] = 2.0 * std::exp(-(d * d + s * s) * inv) * std::cos(p.omega * d);
    }
}

}  // namespace shp::kernels::scalar
