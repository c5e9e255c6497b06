#include <cstdlib>
#include <string>

#include "pfr/common.hpp"
#include "pfr/kernels.hpp"

namespace pfr::kernels {

#if PFR_HAVE_AVX2_KERNELS
const Ops* avx2_ops_impl();
#endif

const Ops* avx2_ops() {
#if PFR_HAVE_AVX2_KERNELS
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return avx2_ops_impl();
#endif
    return nullptr;
}

namespace {

const Ops* pick_initial() {
    if (const char* env = std::getenv("PERRON_ROOTS_KERNELS")) {
        const std::string want(env);
        if (want == "scalar") return &scalar_ops();
        if (want == "avx2") {
            if (const Ops* o = avx2_ops()) return o;
            throw error("PERRON_ROOTS_KERNELS=avx2 but AVX2 is not available");
        }
        throw error("unknown PERRON_ROOTS_KERNELS value: " + want);
    }
    if (const Ops* o = avx2_ops()) return o;
    return &scalar_ops();
}

const Ops*& active_slot() {
    static const Ops* active = pick_initial();
    return active;
}

}  // namespace

const Ops& ops() { return *active_slot(); }

void select(std::string_view name) {
    if (name == "scalar") {
        active_slot() = &scalar_ops();
        return;
    }
    if (name == "avx2") {
        if (const Ops* o = avx2_ops()) {
            active_slot() = o;
            return;
        }
        throw error("avx2 kernels not available on this machine");
    }
    throw error("unknown kernel backend: " + std::string(name));
}

}  // namespace pfr::kernels
