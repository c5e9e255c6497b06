#include <doctest.h>

#include <array>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "pfr/common.hpp"
#include "pfr/kernels.hpp"

using namespace pfr;

namespace {

void gemm_reference(const double* a, const double* b, double* c, std::size_t m, std::size_t k,
                    std::size_t n) {
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t l = 0; l < k; ++l) acc += a[i * k + l] * b[l * n + j];
            c[i * n + j] = acc;
        }
}

std::vector<double> random_buf(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    std::vector<double> out(n);
    for (double& v : out) v = dist(rng);
    return out;
}

}  // namespace

TEST_CASE("scalar gemm matches the reference triple loop exactly") {
    std::mt19937_64 rng(7);
    for (auto [m, k, n] : {std::array<std::size_t, 3>{1, 1, 1}, {2, 3, 4}, {5, 5, 5}, {7, 3, 9}}) {
        const std::vector<double> a = random_buf(rng, m * k);
        const std::vector<double> b = random_buf(rng, k * n);
        std::vector<double> c1(m * n), c2(m * n);
        kernels::scalar_ops().gemm(a.data(), b.data(), c1.data(), m, k, n);
        gemm_reference(a.data(), b.data(), c2.data(), m, k, n);
        for (std::size_t i = 0; i < c1.size(); ++i) CHECK(c1[i] == doctest::Approx(c2[i]).epsilon(1e-14));
    }
}

TEST_CASE("avx2 kernels agree with the scalar reference") {
    const kernels::Ops* avx = kernels::avx2_ops();
    if (!avx) return;  // not supported on this machine
    std::mt19937_64 rng(11);
    // Sizes straddle the 4-lane width, including tails.
    for (auto [m, k, n] :
         {std::array<std::size_t, 3>{1, 1, 1}, {3, 5, 7}, {4, 4, 4}, {8, 8, 8}, {9, 2, 13}, {6, 17, 5}}) {
        const std::vector<double> a = random_buf(rng, m * k);
        const std::vector<double> b = random_buf(rng, k * n);
        std::vector<double> cs(m * n), cv(m * n);
        kernels::scalar_ops().gemm(a.data(), b.data(), cs.data(), m, k, n);
        avx->gemm(a.data(), b.data(), cv.data(), m, k, n);
        for (std::size_t i = 0; i < cs.size(); ++i)
            CHECK(std::abs(cs[i] - cv[i]) <= 1e-13 * (1.0 + std::abs(cs[i])));

        const std::vector<double> x = random_buf(rng, m * n + 3);  // odd length
        CHECK(kernels::scalar_ops().max_abs(x.data(), x.size()) == avx->max_abs(x.data(), x.size()));
        CHECK(kernels::scalar_ops().min_entry(x.data(), x.size()) ==
              avx->min_entry(x.data(), x.size()));
    }
}

TEST_CASE("reductions handle empty and single-entry input") {
    CHECK(kernels::scalar_ops().max_abs(nullptr, 0) == 0.0);
    const double v = -3.5;
    CHECK(kernels::scalar_ops().max_abs(&v, 1) == 3.5);
    CHECK(kernels::scalar_ops().min_entry(&v, 1) == -3.5);
}

TEST_CASE("backend selection is sticky and reversible") {
    const std::string initial = kernels::ops().name;
    kernels::select("scalar");
    CHECK(std::string(kernels::ops().name) == "scalar");
    if (kernels::avx2_ops()) {
        kernels::select("avx2");
        CHECK(std::string(kernels::ops().name) == "avx2");
    }
    kernels::select(initial);
    CHECK_THROWS_AS(kernels::select("sse9"), error);
}
