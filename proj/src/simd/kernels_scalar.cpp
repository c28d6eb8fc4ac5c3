#include "scarlab/simd/kernels.hpp"

namespace scarlab::simd {

namespace {

void csr_apply_rc_scalar(const int64_t* rowptr, const int32_t* cols,
                         const double* vals, int64_t row_begin, int64_t row_end,
                         const cplx* x, cplx* y) {
    for (int64_t r = row_begin; r < row_end; ++r) {
        double acc_re = 0.0, acc_im = 0.0;
        for (int64_t k = rowptr[r]; k < rowptr[r + 1]; ++k) {
            const cplx xv = x[cols[k]];
            acc_re += vals[k] * xv.real();
            acc_im += vals[k] * xv.imag();
        }
        y[r] += cplx(acc_re, acc_im);
    }
}

void csr_apply_cc_scalar(const int64_t* rowptr, const int32_t* cols,
                         const cplx* vals, int64_t row_begin, int64_t row_end,
                         const cplx* x, cplx* y) {
    for (int64_t r = row_begin; r < row_end; ++r) {
        double acc_re = 0.0, acc_im = 0.0;
        for (int64_t k = rowptr[r]; k < rowptr[r + 1]; ++k) {
            const cplx xv = x[cols[k]];
            const cplx v = vals[k];
            acc_re += v.real() * xv.real() - v.imag() * xv.imag();
            acc_im += v.real() * xv.imag() + v.imag() * xv.real();
        }
        y[r] += cplx(acc_re, acc_im);
    }
}

cplx dotc_scalar(const cplx* x, const cplx* y, int64_t n) {
    double re = 0.0, im = 0.0;
    for (int64_t i = 0; i < n; ++i) {
        re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
        im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
    }
    return {re, im};
}

double nrm2sq_scalar(const cplx* x, int64_t n) {
    double s = 0.0;
    for (int64_t i = 0; i < n; ++i)
        s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return s;
}

void axpy_scalar(cplx a, const cplx* x, cplx* y, int64_t n) {
    for (int64_t i = 0; i < n; ++i) {
        y[i] = cplx(y[i].real() + a.real() * x[i].real() - a.imag() * x[i].imag(),
                    y[i].imag() + a.real() * x[i].imag() + a.imag() * x[i].real());
    }
}

void scal_scalar(cplx a, cplx* x, int64_t n) {
    for (int64_t i = 0; i < n; ++i) {
        x[i] = cplx(a.real() * x[i].real() - a.imag() * x[i].imag(),
                    a.real() * x[i].imag() + a.imag() * x[i].real());
    }
}

}  // namespace

const Ops& scalar_ops() {
    static const Ops ops = {
        "scalar",
        csr_apply_rc_scalar,
        csr_apply_cc_scalar,
        dotc_scalar,
        nrm2sq_scalar,
        axpy_scalar,
        scal_scalar,
    };
    return ops;
}

}  // namespace scarlab::simd
