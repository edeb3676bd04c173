// Compiled with -mavx2 -mfma. Only reached through dispatch after a CPU check.

#include <immintrin.h>

#include <cmath>

#include "shp/kernels/kernels.hpp"

namespace shp::kernels::avx2 {

namespace {

constexpr std::size_t kWidth = 4;

inline __m256d splat(double v) { return _mm256_set1_pd(v); }

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// Integer-valued doubles to int64 lanes, valid for |k| < 2^51.
inline __m256i to_int64(__m256d k) {
    const __m256d magic = splat(0x1.8p52);
    return _mm256_sub_epi64(_mm256_castpd_si256(_mm256_add_pd(k, magic)), _mm256_castpd_si256(magic));
}

inline __m256d pow2(__m256i k) {
    return _mm256_castsi256_pd(_mm256_slli_epi64(_mm256_add_epi64(k, _mm256_set1_epi64x(1023)), 52));
}

// exp(x) with range reduction x = k ln2 + r, |r| <= ln2/2, and a degree-13
// Taylor polynomial (truncation below 1e-17). The scale 2^k is applied in
// two halves so the subnormal range stays reachable.
__m256d exp_pd(__m256d x) {
    const __m256d lo_limit = splat(-745.2);
    const __m256d hi_limit = splat(709.78);
    const __m256d xc = _mm256_min_pd(_mm256_max_pd(x, lo_limit), hi_limit);

    const __m256d k = _mm256_round_pd(_mm256_mul_pd(xc, splat(1.4426950408889634)),
                                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(k, splat(6.93147180369123816490e-01), xc);
    r = _mm256_fnmadd_pd(k, splat(1.90821492927058770002e-10), r);

    static constexpr double kCoeff[] = {
        1.0 / 6227020800.0, 1.0 / 479001600.0, 1.0 / 39916800.0, 1.0 / 3628800.0, 1.0 / 362880.0,
        1.0 / 40320.0,      1.0 / 5040.0,      1.0 / 720.0,       1.0 / 120.0,     1.0 / 24.0,
        1.0 / 6.0,          0.5,               1.0,               1.0};
    __m256d p = splat(kCoeff[0]);
    for (std::size_t i = 1; i < sizeof(kCoeff) / sizeof(kCoeff[0]); ++i) p = _mm256_fmadd_pd(p, r, splat(kCoeff[i]));

    const __m256d k1 = _mm256_floor_pd(_mm256_mul_pd(k, splat(0.5)));
    const __m256d k2 = _mm256_sub_pd(k, k1);
    __m256d result = _mm256_mul_pd(_mm256_mul_pd(p, pow2(to_int64(k1))), pow2(to_int64(k2)));

    result = _mm256_blendv_pd(result, _mm256_setzero_pd(), _mm256_cmp_pd(x, lo_limit, _CMP_LT_OQ));
    result = _mm256_blendv_pd(result, splat(HUGE_VAL), _mm256_cmp_pd(x, hi_limit, _CMP_GT_OQ));
    return result;
}

constexpr double kSincosLimit = 1e5;

// sin and cos for |x| <= kSincosLimit: three-part Cody-Waite reduction by
// pi/2 with FMA, then minimax kernels on [-pi/4, pi/4].
void sincos_pd(__m256d x, __m256d* s_out, __m256d* c_out) {
    const __m256d q = _mm256_round_pd(_mm256_mul_pd(x, splat(6.36619772367581382433e-01)),
                                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(q, splat(1.57079632673412561417e+00), x);
    r = _mm256_fnmadd_pd(q, splat(6.07710050630396597660e-11), r);
    r = _mm256_fnmadd_pd(q, splat(2.02226624871116645580e-21), r);
    const __m256d z = _mm256_mul_pd(r, r);

    __m256d ps = splat(1.58969099521155010221e-10);
    ps = _mm256_fmadd_pd(ps, z, splat(-2.50507602534068634195e-08));
    ps = _mm256_fmadd_pd(ps, z, splat(2.75573137070700676789e-06));
    ps = _mm256_fmadd_pd(ps, z, splat(-1.98412698298579493134e-04));
    ps = _mm256_fmadd_pd(ps, z, splat(8.33333333332248946124e-03));
    ps = _mm256_fmadd_pd(ps, z, splat(-1.66666666666666324348e-01));
    const __m256d sin_r = _mm256_fmadd_pd(_mm256_mul_pd(r, z), ps, r);

    __m256d pc = splat(-1.13596475577881948265e-11);
    pc = _mm256_fmadd_pd(pc, z, splat(2.08757232129817482790e-09));
    pc = _mm256_fmadd_pd(pc, z, splat(-2.75573143513906633035e-07));
    pc = _mm256_fmadd_pd(pc, z, splat(2.48015872894767294178e-05));
    pc = _mm256_fmadd_pd(pc, z, splat(-1.38888888888741095749e-03));
    pc = _mm256_fmadd_pd(pc, z, splat(4.16666666666666019037e-02));
    const __m256d hz = _mm256_mul_pd(splat(0.5), z);
    const __m256d w = _mm256_sub_pd(splat(1.0), hz);
    const __m256d tail = _mm256_fmadd_pd(_mm256_mul_pd(z, z), pc, _mm256_sub_pd(_mm256_sub_pd(splat(1.0), w), hz));
    const __m256d cos_r = _mm256_add_pd(w, tail);

    const __m256i qi = to_int64(q);
    const __m256i one = _mm256_set1_epi64x(1);
    const __m256i two = _mm256_set1_epi64x(2);
    const __m256d swap = _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(qi, one), one));
    const __m256d sin_sign = _mm256_castsi256_pd(_mm256_slli_epi64(_mm256_and_si256(qi, two), 62));
    const __m256d cos_sign =
        _mm256_castsi256_pd(_mm256_slli_epi64(_mm256_and_si256(_mm256_add_epi64(qi, one), two), 62));

    *s_out = _mm256_xor_pd(_mm256_blendv_pd(sin_r, cos_r, swap), sin_sign);
    *c_out = _mm256_xor_pd(_mm256_blendv_pd(cos_r, sin_r, swap), cos_sign);
}

// Falls back to libm lanes when any |x| is out of the reduction range or not finite.
inline void sincos_checked(__m256d x, __m256d* s, __m256d* c) {
    const __m256d abs_x = _mm256_andnot_pd(splat(-0.0), x);
    const __m256d ok = _mm256_cmp_pd(abs_x, splat(kSincosLimit), _CMP_LE_OQ);
    if (_mm256_movemask_pd(ok) == 0xF) {
        sincos_pd(x, s, c);
        return;
    }
    alignas(32) double xs[kWidth];
    alignas(32) double ss[kWidth];
    alignas(32) double cs[kWidth];
    _mm256_store_pd(xs, x);
    for (std::size_t l = 0; l < kWidth; ++l) {
        ss[l] = std::sin(xs[l]);
        cs[l] = std::cos(xs[l]);
    }
    *s = _mm256_load_pd(ss);
    *c = _mm256_load_pd(cs);
}

inline std::size_t body(std::size_t n) { return n - n % kWidth; }

}  // namespace

void rotate_phase(double* re, double* im, const double* theta, std::size_t n) {
    const std::size_t m = body(n);
    for (std::size_t j = 0; j < m; j += kWidth) {
        __m256d s;
        __m256d c;
        sincos_checked(_mm256_loadu_pd(theta + j), &s, &c);
        const __m256d r = _mm256_loadu_pd(re + j);
        const __m256d i = _mm256_loadu_pd(im + j);
        _mm256_storeu_pd(re + j, _mm256_fmadd_pd(r, c, _mm256_mul_pd(i, s)));
        _mm256_storeu_pd(im + j, _mm256_fmsub_pd(i, c, _mm256_mul_pd(r, s)));
    }
    scalar::rotate_phase(re + m, im + m, theta + m, n - m);
}

double weighted_norm(const double* re, const double* im, const double* w, std::size_t n) {
    const std::size_t m = body(n);
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t j = 0; j < m; j += kWidth) {
        const __m256d r = _mm256_loadu_pd(re + j);
        const __m256d i = _mm256_loadu_pd(im + j);
        const __m256d a2 = _mm256_fmadd_pd(r, r, _mm256_mul_pd(i, i));
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + j), a2, acc);
    }
    return hsum(acc) + scalar::weighted_norm(re + m, im + m, w + m, n - m);
}

Moments weighted_moments(const double* x, const double* re, const double* im, const double* w, std::size_t n) {
    const std::size_t m = body(n);
    __m256d s0 = _mm256_setzero_pd();
    __m256d s1 = _mm256_setzero_pd();
    __m256d s2 = _mm256_setzero_pd();
    for (std::size_t j = 0; j < m; j += kWidth) {
        const __m256d r = _mm256_loadu_pd(re + j);
        const __m256d i = _mm256_loadu_pd(im + j);
        const __m256d xv = _mm256_loadu_pd(x + j);
        const __m256d p = _mm256_mul_pd(_mm256_loadu_pd(w + j), _mm256_fmadd_pd(r, r, _mm256_mul_pd(i, i)));
        const __m256d px = _mm256_mul_pd(p, xv);
        s0 = _mm256_add_pd(s0, p);
        s1 = _mm256_add_pd(s1, px);
        s2 = _mm256_fmadd_pd(px, xv, s2);
    }
    Moments out = scalar::weighted_moments(x + m, re + m, im + m, w + m, n - m);
    out.weight += hsum(s0);
    out.first += hsum(s1);
    out.second += hsum(s2);
    return out;
}

std::complex<double> phase_sum(const double* re, const double* im, const double* e, double t, std::size_t n) {
    const std::size_t m = body(n);
    const __m256d tv = splat(t);
    __m256d sr = _mm256_setzero_pd();
    __m256d si = _mm256_setzero_pd();
    for (std::size_t j = 0; j < m; j += kWidth) {
        __m256d s;
        __m256d c;
        sincos_checked(_mm256_mul_pd(_mm256_loadu_pd(e + j), tv), &s, &c);
        const __m256d r = _mm256_loadu_pd(re + j);
        const __m256d i = _mm256_loadu_pd(im + j);
        sr = _mm256_add_pd(sr, _mm256_fmadd_pd(r, c, _mm256_mul_pd(i, s)));
        si = _mm256_add_pd(si, _mm256_fmsub_pd(i, c, _mm256_mul_pd(r, s)));
    }
    return scalar::phase_sum(re + m, im + m, e + m, t, n - m) + std::complex<double>(hsum(sr), hsum(si));
}

void coincidence_terms(const double* delta, std::size_t n, const CoincidenceParams& p, double* envelope,
                       double* interference) {
    const std::size_t m = body(n);
    const __m256d neg_inv = splat(-1.0 / (2.0 * p.sigma * p.sigma));
    const __m256d s = splat(p.emit_spacing);
    const __m256d s2 = splat(p.emit_spacing * p.emit_spacing);
    const __m256d omega = splat(p.omega);
    for (std::size_t j = 0; j < m; j += kWidth) {
        const __m256d d = _mm256_loadu_pd(delta + j);
        const __m256d a = _mm256_sub_pd(d, s);
        const __m256d b = _mm256_add_pd(d, s);
        const __m256d env = _mm256_add_pd(exp_pd(_mm256_mul_pd(_mm256_mul_pd(a, a), neg_inv)),
                                          exp_pd(_mm256_mul_pd(_mm256_mul_pd(b, b), neg_inv)));
        __m256d sn;
        __m256d cs;
        sincos_checked(_mm256_mul_pd(omega, d), &sn, &cs);
        const __m256d g = exp_pd(_mm256_mul_pd(_mm256_fmadd_pd(d, d, s2), neg_inv));
        _mm256_storeu_pd(envelope + j, env);
        _mm256_storeu_pd(interference + j, _mm256_mul_pd(splat(2.0), _mm256_mul_pd(g, cs)));
    }
    scalar::coincidence_terms(delta + m, n - m, p, envelope + m, interference + m);
}

}  // namespace shp::kernels::avx2
