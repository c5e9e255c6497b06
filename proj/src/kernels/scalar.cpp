#include "pfr/kernels.hpp"

#include <limits>

namespace pfr::kernels {
namespace {

void gemm_scalar(const double* a, const double* b, double* c,
                 std::size_t m, std::size_t k, std::size_t n) {
    for (std::size_t i = 0; i < m; ++i) {
        double* ci = c + i * n;
        for (std::size_t j = 0; j < n; ++j) ci[j] = 0.0;
        const double* ai = a + i * k;
        for (std::size_t l = 0; l < k; ++l) {
            const double ail = ai[l];
            const double* bl = b + l * n;
            for (std::size_t j = 0; j < n; ++j) ci[j] += ail * bl[j];
        }
    }
}

double max_abs_scalar(const double* x, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = x[i] < 0.0 ? -x[i] : x[i];
        if (v > m) m = v;
    }
    return m;
}

double min_entry_scalar(const double* x, std::size_t n) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i)
        if (x[i] < m) m = x[i];
    return m;
}

}  // namespace

const Ops& scalar_ops() {
    static const Ops ops{"scalar", gemm_scalar, max_abs_scalar, min_entry_scalar};
    return ops;
}

}  // namespace pfr::kernels
