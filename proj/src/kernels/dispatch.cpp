// SPDX-License-Identifier: Apache-2.0
//
// Runtime kernel selection. The choice is made once per process so results
// are reproducible for a given machine and environment.

#include "fcapa/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace fcapa::kernels {

const KernelTable& avx2_table(); // kernels_avx2.cpp

namespace {

bool cpu_has_avx2_fma() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable* select() {
    if (const char* forced = std::getenv("FCAPA_KERNELS")) {
        if (std::strcmp(forced, "scalar") == 0) return &scalar_table();
        if (std::strcmp(forced, "avx2") == 0 && cpu_has_avx2_fma()) return &avx2_table();
        // Unknown or unsupported request: fall through to auto-detection.
    }
    if (cpu_has_avx2_fma()) return &avx2_table();
    return &scalar_table();
}

} // namespace

const KernelTable& active() {
    static const KernelTable* table = select();
    return *table;
}

const KernelTable* table_by_name(const std::string& name) {
    if (name == "scalar") return &scalar_table();
    if (name == "avx2") return cpu_has_avx2_fma() ? &avx2_table() : nullptr;
    return nullptr;
}

} // namespace fcapa::kernels
