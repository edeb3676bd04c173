#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Core>

#include "shp/minkowski.hpp"

namespace shp {

class SL2CElement;

/// Seeded generator for property-test inputs. Uses mt19937_64 with an
/// explicit bits-to-double mapping so sequences are identical across
/// standard library implementations.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : engine_(seed) {}

    double uniform();                        // [0, 1)
    double uniform(double lo, double hi);
    double normal();                         // Box-Muller
    Eigen::Vector3d unit_vector();
    Eigen::Vector4d quaternion();            // uniform on S^3

    /// Rotation times boost, rapidity in [0, max_rapidity].
    LorentzMatrix lorentz(double max_rapidity = 3.0);
    /// Random SL(2,C) element: SU(2) rotation times Hermitian boost.
    SL2CElement sl2c(double max_rapidity = 3.0);
    /// (cosh w, sinh w * u) with w uniform in [0, max_rapidity].
    FourVector unit_timelike(double max_rapidity = 3.0);
    /// Components uniform in [-scale, scale].
    FourVector four_vector(double scale = 2.0);
    Eigen::Vector2cd spinor();               // unnormalized, complex normal entries
    std::complex<double> complex_normal();

private:
    std::mt19937_64 engine_;
};

}  // namespace shp
