#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>

#include <Eigen/Core>

namespace shp {

/// Contravariant four-vector (t, x, y, z). Metric signature (-,+,+,+).
class FourVector {
public:
    constexpr FourVector() = default;
    constexpr FourVector(double t, double x, double y, double z) : c_{t, x, y, z} {}
    explicit FourVector(const Eigen::Vector4d& v) : c_{v[0], v[1], v[2], v[3]} {}

    constexpr double operator[](int mu) const { return c_[static_cast<std::size_t>(mu)]; }
    constexpr double t() const { return c_[0]; }
    constexpr double x() const { return c_[1]; }
    constexpr double y() const { return c_[2]; }
    constexpr double z() const { return c_[3]; }

    /// Component with the index lowered by the metric.
    constexpr double lower(int mu) const { return mu == 0 ? -c_[0] : c_[static_cast<std::size_t>(mu)]; }

    Eigen::Vector4d vec() const { return {c_[0], c_[1], c_[2], c_[3]}; }
    Eigen::Vector3d spatial() const { return {c_[1], c_[2], c_[3]}; }

    bool is_finite() const;

    friend constexpr FourVector operator+(const FourVector& a, const FourVector& b) {
        return {a.c_[0] + b.c_[0], a.c_[1] + b.c_[1], a.c_[2] + b.c_[2], a.c_[3] + b.c_[3]};
    }
    friend constexpr FourVector operator-(const FourVector& a, const FourVector& b) {
        return {a.c_[0] - b.c_[0], a.c_[1] - b.c_[1], a.c_[2] - b.c_[2], a.c_[3] - b.c_[3]};
    }
    friend constexpr FourVector operator*(double s, const FourVector& a) {
        return {s * a.c_[0], s * a.c_[1], s * a.c_[2], s * a.c_[3]};
    }
    friend constexpr bool operator==(const FourVector&, const FourVector&) = default;

private:
    std::array<double, 4> c_{};
};

std::ostream& operator<<(std::ostream& os, const FourVector& v);

inline constexpr FourVector kRestFrame{1.0, 0.0, 0.0, 0.0};

/// The metric g = diag(-1, 1, 1, 1). Fixed; never configurable.
inline double metric(int mu, int nu) { return mu != nu ? 0.0 : (mu == 0 ? -1.0 : 1.0); }
const Eigen::Matrix4d& metric_matrix();

/// -a^0 b^0 + a.b
constexpr double dot(const FourVector& a, const FourVector& b) {
    return -a.t() * b.t() + a.x() * b.x() + a.y() * b.y() + a.z() * b.z();
}

enum class CausalClass { TimelikeFuture, TimelikePast, Spacelike, Lightlike };

/// Lightlike when |v.v| <= 1e-12 * max component^2. The zero vector is
/// classified as lightlike.
CausalClass classify(const FourVector& v);

/// True when v is future timelike with v.v = -1 within tol.
bool is_unit_future_timelike(const FourVector& v, double tol = 1e-9);

/// Throws InvalidArgument unless v is unit future timelike within tol.
void require_unit_future_timelike(const FourVector& v, const char* what, double tol = 1e-9);

/// Proper orthochronous Lorentz transformation acting on contravariant vectors.
/// The constraints are enforced at construction.
class LorentzMatrix {
public:
    LorentzMatrix() : m_(Eigen::Matrix4d::Identity()) {}

    /// Validates L^T g L = g (to 1e-12 relative to |L|^2), det L = +1 and L^0_0 >= 1.
    static LorentzMatrix from_matrix(const Eigen::Matrix4d& m);

    /// Deviation max |L^T g L - g| of a raw matrix.
    static double metric_defect(const Eigen::Matrix4d& m);

    static LorentzMatrix identity() { return {}; }
    static LorentzMatrix boost(const Eigen::Vector3d& axis, double rapidity);
    static LorentzMatrix rotation(const Eigen::Vector3d& axis, double angle);

    const Eigen::Matrix4d& matrix() const { return m_; }
    double operator()(int mu, int nu) const { return m_(mu, nu); }

    /// Inverse computed as g L^T g.
    LorentzMatrix inverse() const;

    friend LorentzMatrix operator*(const LorentzMatrix& a, const LorentzMatrix& b);

private:
    explicit LorentzMatrix(const Eigen::Matrix4d& m) : m_(m) {}
    Eigen::Matrix4d m_;
};

FourVector apply(const LorentzMatrix& lambda, const FourVector& v);

/// Symmetric boost taking (1,0,0,0) to n. n must be unit future timelike.
LorentzMatrix pure_boost(const FourVector& n);

/// Deterministic rotation-times-boost with rapidity in [0, 3].
LorentzMatrix random_proper_lorentz(std::uint64_t seed);

}  // namespace shp
