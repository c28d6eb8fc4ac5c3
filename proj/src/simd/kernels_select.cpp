#include "scarlab/simd/kernels.hpp"

#include <cstdlib>
#include <string>

namespace scarlab::simd {

bool avx2_available();
const Ops* avx2_ops();
bool neon_available();
const Ops* neon_ops();

namespace {

const Ops* pick_auto() {
    if (avx2_available()) return avx2_ops();
    if (neon_available()) return neon_ops();
    return &scalar_ops();
}

const Ops* pick(std::string_view name) {
    if (name == "scalar") return &scalar_ops();
    if (name == "avx2" && avx2_available()) return avx2_ops();
    if (name == "neon" && neon_available()) return neon_ops();
    if (name == "auto") return pick_auto();
    return nullptr;
}

const Ops*& current() {
    static const Ops* ops = [] {
        const char* env = std::getenv("SCARLAB_SIMD");
        if (env != nullptr) {
            if (const Ops* forced = pick(env)) return forced;
        }
        return pick_auto();
    }();
    return ops;
}

}  // namespace

const Ops& active_ops() { return *current(); }

bool select(std::string_view name) {
    const Ops* ops = pick(name);
    if (ops == nullptr) return false;
    current() = ops;
    return true;
}

}  // namespace scarlab::simd
