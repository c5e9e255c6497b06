#pragma once

#include <cstddef>
#include <string_view>

namespace pfr::kernels {

// Dense inner loops used by the matrix layer.  Each operation has a scalar
// reference kernel and, on x86-64, an AVX2+FMA variant; the backend is
// picked once at startup from CPUID and can be overridden with the
// environment variable PERRON_ROOTS_KERNELS=scalar|avx2.

// c = a * b, row-major; a is m x k, b is k x n, c is m x n and overwritten.
using gemm_fn = void (*)(const double* a, const double* b, double* c,
                         std::size_t m, std::size_t k, std::size_t n);

// max_i |x_i| (0 for n = 0) and min_i x_i (+inf for n = 0).
using reduce_fn = double (*)(const double* x, std::size_t n);

struct Ops {
    const char* name;
    gemm_fn gemm;
    reduce_fn max_abs;
    reduce_fn min_entry;
};

// Active backend.
const Ops& ops();

// Force a backend by name ("scalar" or "avx2"); throws pfr::error when the
// backend is unavailable on this machine.  Meant for tests; not
// synchronized against concurrent kernel use.
void select(std::string_view name);

// Direct access for equivalence tests.
const Ops& scalar_ops();
const Ops* avx2_ops();  // nullptr when not compiled in or not supported

}  // namespace pfr::kernels
