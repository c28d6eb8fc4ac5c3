#pragma once

#include <complex>
#include <cstdint>
#include <string_view>

// Data-parallel inner loops used by the sparse linear algebra and the
// propagators. A scalar reference implementation is always available;
// vectorized variants (AVX2 on x86-64, NEON on aarch64) are selected at
// runtime when the CPU supports them. The active set can be overridden
// with the SCARLAB_SIMD environment variable (auto|scalar|avx2|neon) or
// programmatically via select().

namespace scarlab::simd {

using cplx = std::complex<double>;

struct Ops {
    const char* name;

    // y[i] += sum_k vals[k] * x[cols[k]] for rows in [row_begin, row_end),
    // real-valued matrix entries, complex vectors.
    void (*csr_apply_rc)(const int64_t* rowptr, const int32_t* cols,
                         const double* vals, int64_t row_begin, int64_t row_end,
                         const cplx* x, cplx* y);

    // Same with complex-valued matrix entries.
    void (*csr_apply_cc)(const int64_t* rowptr, const int32_t* cols,
                         const cplx* vals, int64_t row_begin, int64_t row_end,
                         const cplx* x, cplx* y);

    cplx (*dotc)(const cplx* x, const cplx* y, int64_t n);   // conj(x) . y
    double (*nrm2sq)(const cplx* x, int64_t n);
    void (*axpy)(cplx a, const cplx* x, cplx* y, int64_t n); // y += a*x
    void (*scal)(cplx a, cplx* x, int64_t n);                // x *= a
};

const Ops& scalar_ops();
const Ops& active_ops();

// Force a specific implementation ("scalar", "avx2", "neon", "auto").
// Returns false if the variant is unavailable on this machine.
bool select(std::string_view name);

}  // namespace scarlab::simd
