// AVX2+FMA kernel variants.  Compiled with -mavx2 -mfma; only reached after
// the dispatcher has confirmed CPU support.

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#include <limits>

#include "pfr/kernels.hpp"

namespace pfr::kernels {
namespace {

void gemm_avx2(const double* a, const double* b, double* c,
               std::size_t m, std::size_t k, std::size_t n) {
    const std::size_t n4 = n - n % 4;
    for (std::size_t i = 0; i < m; ++i) {
        double* ci = c + i * n;
        std::size_t j = 0;
        for (; j < n4; j += 4) _mm256_storeu_pd(ci + j, _mm256_setzero_pd());
        for (; j < n; ++j) ci[j] = 0.0;
        const double* ai = a + i * k;
        for (std::size_t l = 0; l < k; ++l) {
            const double* bl = b + l * n;
            const __m256d av = _mm256_set1_pd(ai[l]);
            for (j = 0; j < n4; j += 4) {
                __m256d cv = _mm256_loadu_pd(ci + j);
                cv = _mm256_fmadd_pd(av, _mm256_loadu_pd(bl + j), cv);
                _mm256_storeu_pd(ci + j, cv);
            }
            for (; j < n; ++j) ci[j] += ai[l] * bl[j];
        }
    }
}

double max_abs_avx2(const double* x, std::size_t n) {
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_max_pd(acc, _mm256_andnot_pd(sign_mask, _mm256_loadu_pd(x + i)));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double m = lanes[0];
    for (int l = 1; l < 4; ++l)
        if (lanes[l] > m) m = lanes[l];
    for (; i < n; ++i) {
        const double v = x[i] < 0.0 ? -x[i] : x[i];
        if (v > m) m = v;
    }
    return m;
}

double min_entry_avx2(const double* x, std::size_t n) {
    __m256d acc = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_min_pd(acc, _mm256_loadu_pd(x + i));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double m = lanes[0];
    for (int l = 1; l < 4; ++l)
        if (lanes[l] < m) m = lanes[l];
    for (; i < n; ++i)
        if (x[i] < m) m = x[i];
    return m;
}

}  // namespace

const Ops* avx2_ops_impl() {
    static const Ops ops{"avx2", gemm_avx2, max_abs_avx2, min_entry_avx2};
    return &ops;
}

}  // namespace pfr::kernels

#endif  // x86
