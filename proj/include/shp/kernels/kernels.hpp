#pragma once

// Data-parallel loops over sampled grids: phase rotation of packet
// amplitudes, weighted norms and moments, direct Fourier sums and the
// coincidence-probability columns. Complex data is passed as separate real
// and imaginary arrays.
//
// Each kernel has a scalar reference and, on x86-64, an AVX2+FMA variant
// picked at runtime from the CPU features. The AVX2 variants use their own
// exp/sin/cos, so they agree with the reference to a few ulp, not bitwise.

#include <complex>
#include <cstddef>

namespace shp::kernels {

enum class Backend { Scalar, Avx2 };

const char* to_string(Backend b);

/// True when the AVX2 variants were compiled in and the CPU supports AVX2 and FMA.
bool avx2_available();

/// Backend used by the dispatching entry points. Defaults to the best available.
Backend active_backend();
/// Throws shp::InvalidArgument when the requested backend is unavailable.
void set_backend(Backend b);

/// Restores the previous backend on scope exit.
class ScopedBackend {
public:
    explicit ScopedBackend(Backend b) : saved_(active_backend()) { set_backend(b); }
    ~ScopedBackend() { set_backend(saved_); }
    ScopedBackend(const ScopedBackend&) = delete;
    ScopedBackend& operator=(const ScopedBackend&) = delete;

private:
    Backend saved_;
};

struct Moments {
    double weight = 0.0;   // sum p_j
    double first = 0.0;    // sum p_j x_j
    double second = 0.0;   // sum p_j x_j^2
};

struct CoincidenceParams {
    double sigma = 1.0;        // envelope width
    double emit_spacing = 0.0; // emission-time offset
    double omega = 0.0;        // relative angular frequency
};

/// a_j <- a_j exp(-i theta_j)
void rotate_phase(double* re, double* im, const double* theta, std::size_t n);

/// sum w_j |a_j|^2
double weighted_norm(const double* re, const double* im, const double* w, std::size_t n);

/// Moments of x under p_j = w_j |a_j|^2.
Moments weighted_moments(const double* x, const double* re, const double* im, const double* w, std::size_t n);

/// sum a_j exp(-i e_j t)
std::complex<double> phase_sum(const double* re, const double* im, const double* e, double t, std::size_t n);

/// envelope_j = exp(-(d_j - s)^2 / 2 sigma^2) + exp(-(d_j + s)^2 / 2 sigma^2)
/// interference_j = 2 exp(-(d_j^2 + s^2) / 2 sigma^2) cos(omega d_j)
void coincidence_terms(const double* delta, std::size_t n, const CoincidenceParams& p, double* envelope,
                       double* interference);

namespace scalar {
void rotate_phase(double* re, double* im, const double* theta, std::size_t n);
double weighted_norm(const double* re, const double* im, const double* w, std::size_t n);
Moments weighted_moments(const double* x, const double* re, const double* im, const double* w, std::size_t n);
std::complex<double> phase_sum(const double* re, const double* im, const double* e, double t, std::size_t n);
void coincidence_terms(const double* delta, std::size_t n, const CoincidenceParams& p, double* envelope,
                       double* interference);
}  // namespace scalar

namespace avx2 {
void rotate_phase(double* re, double* im, const double* theta, std::size_t n);
double weighted_norm(const double* re, const double* im, const double* w, std::size_t n);
Moments weighted_moments(const double* x, const double* re, const double* im, const double* w, std::size_t n);
std::complex<double> phase_sum(const double* re, const double* im, const double* e, double t, std::size_t n);
void coincidence_terms(const double* delta, std::size_t n, const CoincidenceParams& p, double* envelope,
                       double* interference);
}  // namespace avx2

}  // namespace shp::kernels
