#include <random>
#include <vector>

#include "doctest.h"
#include "shp/errors.hpp"
#include "shp/kernels/kernels.hpp"

using namespace shp::kernels;

namespace {
std::vector<double> random_vec(std::size_t n, double lo, double hi, unsigned seed) {
    std::mt19937_64 g(seed);
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = u(g);
    return v;
}
}  // namespace

TEST_CASE("backend selection") {
    CHECK(std::string(to_string(Backend::Scalar)) == "scalar");
    {
        ScopedBackend scope(Backend::Scalar);
        CHECK(active_backend() == Backend::Scalar);
    }
    if (!avx2_available()) CHECK_THROWS_AS(set_backend(Backend::Avx2), shp::InvalidArgument);
}

TEST_CASE("AVX2 kernels agree with scalar for every tail length") {
    if (!avx2_available()) return;
    for (std::size_t n : {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 255, 1001}) {
        const auto re = random_vec(n, -1, 1, 1), im = random_vec(n, -1, 1, 2), w = random_vec(n, 0, 1, 3);
        const auto theta = random_vec(n, -200, 200, 4), x = random_vec(n, -5, 5, 5), e = random_vec(n, -30, 30, 6);

        auto r1 = re, i1 = im, r2 = re, i2 = im;
        scalar::rotate_phase(r1.data(), i1.data(), theta.data(), n);
        avx2::rotate_phase(r2.data(), i2.data(), theta.data(), n);
        for (std::size_t k = 0; k < n; ++k) {
            CHECK(std::abs(r1[k] - r2[k]) < 1e-14);
            CHECK(std::abs(i1[k] - i2[k]) < 1e-14);
        }

        const double a = scalar::weighted_norm(re.data(), im.data(), w.data(), n);
        const double b = avx2::weighted_norm(re.data(), im.data(), w.data(), n);
        CHECK(std::abs(a - b) <= 1e-14 * std::max(1.0, a));

        const Moments ma = scalar::weighted_moments(x.data(), re.data(), im.data(), w.data(), n);
        const Moments mb = avx2::weighted_moments(x.data(), re.data(), im.data(), w.data(), n);
        CHECK(std::abs(ma.weight - mb.weight) <= 1e-13 * std::max(1.0, ma.weight));
        CHECK(std::abs(ma.first - mb.first) <= 1e-13 * std::max(1.0, std::abs(ma.second)));
        CHECK(std::abs(ma.second - mb.second) <= 1e-13 * std::max(1.0, ma.second));

        const auto sa = scalar::phase_sum(re.data(), im.data(), e.data(), 1.7, n);
        const auto sb = avx2::phase_sum(re.data(), im.data(), e.data(), 1.7, n);
        CHECK(std::abs(sa - sb) <= 1e-13 * std::max(1.0, static_cast<double>(n)));

        const auto d = random_vec(n, -6, 6, 7);
        const CoincidenceParams p{0.5, 0.75, 6.38};
        std::vector<double> ea(n), ia(n), eb(n), ib(n);
        scalar::coincidence_terms(d.data(), n, p, ea.data(), ia.data());
        avx2::coincidence_terms(d.data(), n, p, eb.data(), ib.data());
        for (std::size_t k = 0; k < n; ++k) {
            CHECK(std::abs(ea[k] - eb[k]) <= 1e-15 + 1e-14 * std::abs(ea[k]));
            CHECK(std::abs(ia[k] - ib[k]) <= 1e-15 + 1e-14 * std::abs(ia[k]));
        }
    }
}

TEST_CASE("large phase arguments fall back without losing accuracy") {
    if (!avx2_available()) return;
    std::vector<double> re(9, 1.0), im(9, 0.0), theta(9, 3.0e6);
    auto r2 = re, i2 = im;
    scalar::rotate_phase(re.data(), im.data(), theta.data(), 9);
    avx2::rotate_phase(r2.data(), i2.data(), theta.data(), 9);
    for (int k = 0; k < 9; ++k) CHECK(std::abs(re[k] - r2[k]) < 1e-12);
}

TEST_CASE("scalar kernels against direct formulas") {
    const double d = 0.3;
    const CoincidenceParams p{0.5, 0.75, 2.0};
    double env = 0, inter = 0;
    scalar::coincidence_terms(&d, 1, p, &env, &inter);
    const double s2 = 2 * 0.25;
    CHECK(env == doctest::Approx(std::exp(-(d - 0.75) * (d - 0.75) / s2) + std::exp(-(d + 0.75) * (d + 0.75) / s2)));
    CHECK(inter == doctest::Approx(2 * std::exp(-(d * d + 0.5625) / s2) * std::cos(2.0 * d)));
}
