#include "scarlab/simd/kernels.hpp"

#if defined(__aarch64__)
#define SCARLAB_NEON 1
#include <arm_neon.h>
#endif

namespace scarlab::simd {

#ifdef SCARLAB_NEON

namespace {

// One float64x2_t holds one complex number (re, im).

inline float64x2_t cmul(float64x2_t a, float64x2_t b) {
    // (ar*br - ai*bi, ar*bi + ai*br)
    float64x2_t re = vmulq_laneq_f64(b, a, 0);          // (ar*br, ar*bi)
    float64x2_t sw = vextq_f64(b, b, 1);                // (bi, br)
    float64x2_t im = vmulq_laneq_f64(sw, a, 1);         // (ai*bi, ai*br)
    static const double signs[2] = {-1.0, 1.0};
    return vfmaq_f64(re, im, vld1q_f64(signs));
}

void csr_apply_rc_neon(const int64_t* rowptr, const int32_t* cols,
                       const double* vals, int64_t row_begin, int64_t row_end,
                       const cplx* x, cplx* y) {
    const double* xd = reinterpret_cast<const double*>(x);
    for (int64_t r = row_begin; r < row_end; ++r) {
        float64x2_t acc = vdupq_n_f64(0.0);
        for (int64_t k = rowptr[r]; k < rowptr[r + 1]; ++k) {
            float64x2_t xv = vld1q_f64(xd + 2 * static_cast<int64_t>(cols[k]));
            acc = vfmaq_n_f64(acc, xv, vals[k]);
        }
        double* yr = reinterpret_cast<double*>(y + r);
        vst1q_f64(yr, vaddq_f64(vld1q_f64(yr), acc));
    }
}

void csr_apply_cc_neon(const int64_t* rowptr, const int32_t* cols,
                       const cplx* vals, int64_t row_begin, int64_t row_end,
                       const cplx* x, cplx* y) {
    const double* xd = reinterpret_cast<const double*>(x);
    const double* vd = reinterpret_cast<const double*>(vals);
    for (int64_t r = row_begin; r < row_end; ++r) {
        float64x2_t acc = vdupq_n_f64(0.0);
        for (int64_t k = rowptr[r]; k < rowptr[r + 1]; ++k) {
            float64x2_t xv = vld1q_f64(xd + 2 * static_cast<int64_t>(cols[k]));
            float64x2_t vv = vld1q_f64(vd + 2 * k);
            acc = vaddq_f64(acc, cmul(vv, xv));
        }
        double* yr = reinterpret_cast<double*>(y + r);
        vst1q_f64(yr, vaddq_f64(vld1q_f64(yr), acc));
    }
}

cplx dotc_neon(const cplx* x, const cplx* y, int64_t n) {
    const double* xd = reinterpret_cast<const double*>(x);
    const double* yd = reinterpret_cast<const double*>(y);
    float64x2_t acc_re = vdupq_n_f64(0.0);
    float64x2_t acc_im = vdupq_n_f64(0.0);
    for (int64_t i = 0; i < n; ++i) {
        float64x2_t xv = vld1q_f64(xd + 2 * i);
        float64x2_t yv = vld1q_f64(yd + 2 * i);
        acc_re = vfmaq_f64(acc_re, xv, yv);                    // (xr*yr, xi*yi)
        acc_im = vfmaq_f64(acc_im, xv, vextq_f64(yv, yv, 1));  // (xr*yi, xi*yr)
    }
    return {vaddvq_f64(acc_re),
            vgetq_lane_f64(acc_im, 0) - vgetq_lane_f64(acc_im, 1)};
}

double nrm2sq_neon(const cplx* x, int64_t n) {
    const double* xd = reinterpret_cast<const double*>(x);
    float64x2_t acc = vdupq_n_f64(0.0);
    for (int64_t i = 0; i < 2 * n; i += 2) {
        float64x2_t v = vld1q_f64(xd + i);
        acc = vfmaq_f64(acc, v, v);
    }
    return vaddvq_f64(acc);
}

void axpy_neon(cplx a, const cplx* x, cplx* y, int64_t n) {
    const double* xd = reinterpret_cast<const double*>(x);
    double* yd = reinterpret_cast<double*>(y);
    double ab[2] = {a.real(), a.imag()};
    float64x2_t av = vld1q_f64(ab);
    for (int64_t i = 0; i < n; ++i) {
        float64x2_t xv = vld1q_f64(xd + 2 * i);
        float64x2_t yv = vld1q_f64(yd + 2 * i);
        vst1q_f64(yd + 2 * i, vaddq_f64(yv, cmul(av, xv)));
    }
}

void scal_neon(cplx a, cplx* x, int64_t n) {
    double* xd = reinterpret_cast<double*>(x);
    double ab[2] = {a.real(), a.imag()};
    float64x2_t av = vld1q_f64(ab);
    for (int64_t i = 0; i < n; ++i)
        vst1q_f64(xd + 2 * i, cmul(av, vld1q_f64(xd + 2 * i)));
}

}  // namespace

bool neon_available() { return true; }

const Ops* neon_ops() {
    static const Ops ops = {
        "neon",
        csr_apply_rc_neon,
        csr_apply_cc_neon,
        dotc_neon,
        nrm2sq_neon,
        axpy_neon,
        scal_neon,
    };
    return &ops;
}

#else

bool neon_available() { return false; }
const Ops* neon_ops() { return nullptr; }

#endif  // SCARLAB_NEON

}  // namespace scarlab::simd
