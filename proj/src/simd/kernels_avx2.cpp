#include "scarlab/simd/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define SCARLAB_X86 1
#include <immintrin.h>
#endif

namespace scarlab::simd {

#ifdef SCARLAB_X86

#define AVX2_FN __attribute__((target("avx2,fma")))

namespace {

// Swap the real/imag slots of each complex lane: (a,b,c,d) -> (b,a,d,c).
AVX2_FN inline __m256d swap_halves(__m256d v) { return _mm256_permute_pd(v, 0b0101); }

AVX2_FN void csr_apply_rc_avx2(const int64_t* rowptr, const int32_t* cols,
                               const double* vals, int64_t row_begin, int64_t row_end,
                               const cplx* x, cplx* y) {
    const double* xd = reinterpret_cast<const double*>(x);
    for (int64_t r = row_begin; r < row_end; ++r) {
        const int64_t lo = rowptr[r], hi = rowptr[r + 1];
        __m256d acc = _mm256_setzero_pd();
        int64_t k = lo;
        for (; k + 2 <= hi; k += 2) {
            __m128d v2 = _mm_loadu_pd(vals + k);
            __m256d vv = _mm256_permute4x64_pd(_mm256_castpd128_pd256(v2), 0x50);
            __m128d x0 = _mm_loadu_pd(xd + 2 * static_cast<int64_t>(cols[k]));
            __m128d x1 = _mm_loadu_pd(xd + 2 * static_cast<int64_t>(cols[k + 1]));
            __m256d xx = _mm256_set_m128d(x1, x0);
            acc = _mm256_fmadd_pd(vv, xx, acc);
        }
        double buf[4];
        _mm256_storeu_pd(buf, acc);
        double acc_re = buf[0] + buf[2];
        double acc_im = buf[1] + buf[3];
        for (; k < hi; ++k) {
            const cplx xv = x[cols[k]];
            acc_re += vals[k] * xv.real();
            acc_im += vals[k] * xv.imag();
        }
        y[r] += cplx(acc_re, acc_im);
    }
}

AVX2_FN void csr_apply_cc_avx2(const int64_t* rowptr, const int32_t* cols,
                               const cplx* vals, int64_t row_begin, int64_t row_end,
                               const cplx* x, cplx* y) {
    const double* xd = reinterpret_cast<const double*>(x);
    const double* vd = reinterpret_cast<const double*>(vals);
    for (int64_t r = row_begin; r < row_end; ++r) {
        const int64_t lo = rowptr[r], hi = rowptr[r + 1];
        __m256d acc = _mm256_setzero_pd();
        int64_t k = lo;
        for (; k + 2 <= hi; k += 2) {
            __m256d v = _mm256_loadu_pd(vd + 2 * k);
            __m256d vre = _mm256_movedup_pd(v);          // (vr0, vr0, vr1, vr1)
            __m256d vim = _mm256_permute_pd(v, 0b1111);  // (vi0, vi0, vi1, vi1)
            __m128d x0 = _mm_loadu_pd(xd + 2 * static_cast<int64_t>(cols[k]));
            __m128d x1 = _mm_loadu_pd(xd + 2 * static_cast<int64_t>(cols[k + 1]));
            __m256d xx = _mm256_set_m128d(x1, x0);
            __m256d prod = _mm256_addsub_pd(_mm256_mul_pd(vre, xx),
                                            _mm256_mul_pd(vim, swap_halves(xx)));
            acc = _mm256_add_pd(acc, prod);
        }
        double buf[4];
        _mm256_storeu_pd(buf, acc);
        double acc_re = buf[0] + buf[2];
        double acc_im = buf[1] + buf[3];
        for (; k < hi; ++k) {
            const cplx xv = x[cols[k]];
            const cplx v = vals[k];
            acc_re += v.real() * xv.real() - v.imag() * xv.imag();
            acc_im += v.real() * xv.imag() + v.imag() * xv.real();
        }
        y[r] += cplx(acc_re, acc_im);
    }
}

AVX2_FN cplx dotc_avx2(const cplx* x, const cplx* y, int64_t n) {
    const double* xd = reinterpret_cast<const double*>(x);
    const double* yd = reinterpret_cast<const double*>(y);
    __m256d acc_re = _mm256_setzero_pd();  // lanewise xr*yr, xi*yi
    __m256d acc_im = _mm256_setzero_pd();  // lanewise xr*yi, xi*yr
    int64_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        acc_re = _mm256_fmadd_pd(xv, yv, acc_re);
        acc_im = _mm256_fmadd_pd(xv, swap_halves(yv), acc_im);
    }
    double bre[4], bim[4];
    _mm256_storeu_pd(bre, acc_re);
    _mm256_storeu_pd(bim, acc_im);
    double re = bre[0] + bre[1] + bre[2] + bre[3];
    double im = (bim[0] - bim[1]) + (bim[2] - bim[3]);
    for (; i < n; ++i) {
        re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
        im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
    }
    return {re, im};
}

AVX2_FN double nrm2sq_avx2(const cplx* x, int64_t n) {
    const double* xd = reinterpret_cast<const double*>(x);
    const int64_t m = 2 * n;
    __m256d acc = _mm256_setzero_pd();
    int64_t i = 0;
    for (; i + 4 <= m; i += 4) {
        __m256d v = _mm256_loadu_pd(xd + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double buf[4];
    _mm256_storeu_pd(buf, acc);
    double s = buf[0] + buf[1] + buf[2] + buf[3];
    for (; i < m; ++i) s += xd[i] * xd[i];
    return s;
}

AVX2_FN void axpy_avx2(cplx a, const cplx* x, cplx* y, int64_t n) {
    const double* xd = reinterpret_cast<const double*>(x);
    double* yd = reinterpret_cast<double*>(y);
    const __m256d are = _mm256_set1_pd(a.real());
    const __m256d aim = _mm256_set1_pd(a.imag());
    int64_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        __m256d prod = _mm256_addsub_pd(_mm256_mul_pd(are, xv),
                                        _mm256_mul_pd(aim, swap_halves(xv)));
        _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(yv, prod));
    }
    for (; i < n; ++i) {
        y[i] = cplx(y[i].real() + a.real() * x[i].real() - a.imag() * x[i].imag(),
                    y[i].imag() + a.real() * x[i].imag() + a.imag() * x[i].real());
    }
}

AVX2_FN void scal_avx2(cplx a, cplx* x, int64_t n) {
    double* xd = reinterpret_cast<double*>(x);
    const __m256d are = _mm256_set1_pd(a.real());
    const __m256d aim = _mm256_set1_pd(a.imag());
    int64_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        __m256d prod = _mm256_addsub_pd(_mm256_mul_pd(are, xv),
                                        _mm256_mul_pd(aim, swap_halves(xv)));
        _mm256_storeu_pd(xd + 2 * i, prod);
    }
    for (; i < n; ++i) {
        x[i] = cplx(a.real() * x[i].real() - a.imag() * x[i].imag(),
                    a.real() * x[i].imag() + a.imag() * x[i].real());
    }
}

}  // namespace

bool avx2_available() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

const Ops* avx2_ops() {
    static const Ops ops = {
        "avx2",
        csr_apply_rc_avx2,
        csr_apply_cc_avx2,
        dotc_avx2,
        nrm2sq_avx2,
        axpy_avx2,
        scal_avx2,
    };
    return &ops;
}

#else

bool avx2_available() { return false; }
const Ops* avx2_ops() { return nullptr; }

#endif  // SCARLAB_X86

}  // namespace scarlab::simd
