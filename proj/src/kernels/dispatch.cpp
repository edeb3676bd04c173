#include <atomic>
#include <string>

#include "shp/errors.hpp"
#include "shp/kernels/kernels.hpp"

namespace shp::kernels {

namespace {

bool detect_avx2() {
#if defined(SHP_HAVE_AVX2_KERNELS) && (defined(__x86_64__) || defined(__i386__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

std::atomic<Backend>& backend_slot() {
    static std::atomic<Backend> slot{avx2_available() ? Backend::Avx2 : Backend::Scalar};
    return slot;
}

inline bool use_avx2() {
#if defined(SHP_HAVE_AVX2_KERNELS)
    return backend_slot().load(std::memory_order_relaxed) == Backend::Avx2;
#else
    return false;
#endif
}

}  // namespace

const char* to_string(Backend b) { return b == Backend::Avx2 ? "avx2" : "scalar"; }

bool avx2_available() {
    static const bool available = detect_avx2();
    return available;
}

Backend active_backend() { return backend_slot().load(); }

void set_backend(Backend b) {
    if (b == Backend::Avx2 && !avx2_available()) {
        throw InvalidArgument(std::string("kernel backend '") + to_string(b) + "' is not available on this machine");
    }
    backend_slot().store(b);
}

#if defined(SHP_HAVE_AVX2_KERNELS)
#define SHP_DISPATCH(fn, ...) (use_avx2() ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__))
#else
#define SHP_DISPATCH(fn, ...) scalar::fn(__VA_ARGS__)
#endif

void rotate_phase(double* re, double* im, const double* theta, std::size_t n) {
    SHP_DISPATCH(rotate_phase, re, im, theta, n);
}

double weighted_norm(const double* re, const double* im, const double* w, std::size_t n) {
    return SHP_DISPATCH(weighted_norm, re, im, w, n);
}

Moments weighted_moments(const double* x, const double* re, const double* im, const double* w, std::size_t n) {
    return SHP_DISPATCH(weighted_moments, x, re, im, w, n);
}

std::complex<double> phase_sum(const double* re, const double* im, const double* e, double t, std::size_t n) {
    return SHP_DISPATCH(phase_sum, re, im, e, t, n);
}

void coincidence_terms(const double* delta, std::size_t n, const CoincidenceParams& p, double* envelope,
                       double* interference) {
    SHP_DISPATCH(coincidence_terms, delta, n, p, envelope, interference);
}

#undef SHP_DISPATCH

}  // namespace shp::kernels
