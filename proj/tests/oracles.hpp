#pragma once

// Reference computations written independently of the library: explicit
// matrices, eigen-decompositions and plain quadrature. Tests compare library
// output against these.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cd = std::complex<double>;

inline constexpr double kHbar = 0.6582119569;   // eV fs
inline constexpr double kPlanck = 4.135667696;  // eV fs

/// Boost along a unit axis on contravariant (t, x, y, z).
inline Eigen::Matrix4d boost(const Eigen::Vector3d& axis, double w) {
    const Eigen::Vector3d u = axis.normalized();
    Eigen::Matrix4d b = Eigen::Matrix4d::Identity();
    b(0, 0) = std::cosh(w);
    b.block<1, 3>(0, 1) = std::sinh(w) * u.transpose();
    b.block<3, 1>(1, 0) = std::sinh(w) * u;
    b.block<3, 3>(1, 1) += (std::cosh(w) - 1.0) * u * u.transpose();
    return b;
}

/// Rotation part of the polar decomposition M = R B with B = sqrt(M^T M).
inline Eigen::Matrix4d polar_rotation(const Eigen::Matrix4d& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(m.transpose() * m);
    const Eigen::Matrix4d root_inv =
        es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
    return m * root_inv;
}

inline double rotation_angle(const Eigen::Matrix4d& r) {
    const double c = (r.block<3, 3>(1, 1).trace() - 1.0) / 2.0;
    return std::acos(std::clamp(c, -1.0, 1.0));
}

/// Spin matrices (Jz, J+) for spin j in the basis m = j, j-1, ..., -j.
inline std::pair<Eigen::MatrixXd, Eigen::MatrixXd> spin_matrices(double j) {
    const int d = static_cast<int>(std::lround(2.0 * j)) + 1;
    Eigen::MatrixXd jz = Eigen::MatrixXd::Zero(d, d);
    Eigen::MatrixXd jp = Eigen::MatrixXd::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        const double m = j - k;
        jz(k, k) = m;
        if (k > 0) jp(k - 1, k) = std::sqrt(j * (j + 1) - m * (m + 1));
    }
    return {jz, jp};
}

/// Projector onto total spin J in the product space, with the state
/// C(i1, i2) flattened column-major (index i1 + d1 * i2).
inline Eigen::MatrixXd total_spin_projector(double j1, double j2, double J) {
    const auto [z1, p1] = spin_matrices(j1);
    const auto [z2, p2] = spin_matrices(j2);
    const int d1 = static_cast<int>(z1.rows());
    const int d2 = static_cast<int>(z2.rows());
    const Eigen::MatrixXd i1 = Eigen::MatrixXd::Identity(d1, d1);
    const Eigen::MatrixXd i2 = Eigen::MatrixXd::Identity(d2, d2);
    auto kron = [](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
        Eigen::MatrixXd k(a.rows() * b.rows(), a.cols() * b.cols());
        for (int r = 0; r < a.rows(); ++r)
            for (int c = 0; c < a.cols(); ++c) k.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
        return k;
    };
    // Column-major flattening: particle 2 index is slow, so operators are kron(A2, A1).
    const Eigen::MatrixXd jz = kron(i2, z1) + kron(z2, i1);
    const Eigen::MatrixXd jp = kron(i2, p1) + kron(p2, i1);
    const Eigen::MatrixXd jm = jp.transpose();
    const Eigen::MatrixXd j2op = jm * jp + jz * jz + jz;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j2op);
    const double target = J * (J + 1);
    Eigen::MatrixXd proj = Eigen::MatrixXd::Zero(d1 * d2, d1 * d2);
    for (int k = 0; k < d1 * d2; ++k) {
        if (std::abs(es.eigenvalues()[k] - target) < 1e-8) proj += es.eigenvectors().col(k) * es.eigenvectors().col(k).transpose();
    }
    return proj;
}

struct Emission {
    double e1, e2, s1, s2, sigma;
};

inline cd amplitude(const Emission& c, double t1, double t2) {
    auto g = [&](double t, double s) { return std::exp(-(t - s) * (t - s) / (2.0 * c.sigma * c.sigma)); };
    const cd i(0.0, 1.0);
    return g(t1, c.s1) * g(t2, c.s2) * std::exp(-i * (c.e1 * t1 + c.e2 * t2) / kHbar) +
           g(t2, c.s1) * g(t1, c.s2) * std::exp(-i * (c.e1 * t2 + c.e2 * t1) / kHbar);
}

/// Composite Simpson rule on [a, b] with an even number of panels.
template <typename F>
double simpson(F f, double a, double b, int panels) {
    if (panels % 2) ++panels;
    const double h = (b - a) / panels;
    double s = f(a) + f(b);
    for (int k = 1; k < panels; ++k) s += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
    return s * h / 3.0;
}

/// int |A(T - d/2, T + d/2)|^2 dT, and its direct (non-interfering) part.
inline double coincidence_unnormalized(const Emission& c, double d, bool direct_only = false) {
    const double center = 0.5 * (c.s1 + c.s2);
    const double span = std::abs(c.s2 - c.s1) + 12.0 * c.sigma;
    return simpson(
        [&](double T) {
            const double t1 = T - d / 2.0;
            const double t2 = T + d / 2.0;
            if (!direct_only) return std::norm(amplitude(c, t1, t2));
            auto g = [&](double t, double s) { return std::exp(-(t - s) * (t - s) / (2.0 * c.sigma * c.sigma)); };
            const double a = g(t1, c.s1) * g(t2, c.s2);
            const double b = g(t2, c.s1) * g(t1, c.s2);
            return a * a + b * b;
        },
        center - span, center + span, 1200);
}

/// Normalization: integral of the unnormalized coincidence over d.
inline double coincidence_total(const Emission& c) {
    const double span = 2.0 * std::abs(c.s2 - c.s1) + 16.0 * c.sigma;
    return simpson([&](double d) { return coincidence_unnormalized(c, d); }, -span, span, 800);
}

/// Fringe period from the zero crossings of the interference part
/// (total minus direct) on [lo, hi] sampled with step h.
inline double zero_crossing_period(const Emission& c, double lo, double hi, double h) {
    std::vector<double> zeros;
    double prev_t = lo;
    double prev = coincidence_unnormalized(c, lo) - coincidence_unnormalized(c, lo, true);
    for (double t = lo + h; t <= hi + 1e-12; t += h) {
        const double v = coincidence_unnormalized(c, t) - coincidence_unnormalized(c, t, true);
        if ((prev < 0) != (v < 0)) {
            // Bisection on the exact function.
            double a = prev_t, b = t, fa = prev;
            for (int k = 0; k < 60; ++k) {
                const double m = 0.5 * (a + b);
                const double fm = coincidence_unnormalized(c, m) - coincidence_unnormalized(c, m, true);
                if ((fa < 0) != (fm < 0)) {
                    b = m;
                } else {
                    a = m;
                    fa = fm;
                }
            }
            zeros.push_back(0.5 * (a + b));
        }
        prev_t = t;
        prev = v;
    }
    if (zeros.size() < 2) return std::numeric_limits<double>::infinity();
    return 2.0 * (zeros.back() - zeros.front()) / static_cast<double>(zeros.size() - 1);
}

}  // namespace oracle
