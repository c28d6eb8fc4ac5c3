#include "scarlab/evolve.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "scarlab/errors.hpp"
#include "scarlab/simd/kernels.hpp"

namespace scarlab {

std::vector<double> time_grid(double t_max, double dt) {
    if (dt <= 0.0) throw ValidationError("time step must be positive");
    if (t_max < 0.0) throw ValidationError("t_max must be non-negative");
    std::vector<double> times;
    const int64_t steps = static_cast<int64_t>(std::floor(t_max / dt + 1e-9));
    times.reserve(steps + 1);
    for (int64_t k = 0; k <= steps; ++k) times.push_back(k * dt);
    return times;
}

namespace {

class DensePropagator {
  public:
    DensePropagator(const SparseReal& h, const CVec& psi0) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.to_dense());
        if (solver.info() != Eigen::Success)
            throw NumericalError("dense eigendecomposition failed");
        vecs_ = solver.eigenvectors();
        evals_ = solver.eigenvalues();
        coeff_ = vecs_.transpose() * psi0;
    }

    CVec state_at(double t) const {
        CVec phased(coeff_.size());
        for (int64_t k = 0; k < coeff_.size(); ++k)
            phased[k] = coeff_[k] * std::polar(1.0, -evals_[k] * t);
        return vecs_ * phased;
    }

    cplx return_amplitude(double t) const {
        cplx acc = 0.0;
        for (int64_t k = 0; k < coeff_.size(); ++k)
            acc += std::norm(coeff_[k]) * std::polar(1.0, -evals_[k] * t);
        return acc;
    }

  private:
    Eigen::MatrixXd vecs_;
    Eigen::VectorXd evals_;
    CVec coeff_;
};

// One Lanczos block anchored at the current state. The block approximates
// exp(-i H s) psi for |s| up to the point where the residual rate
// beta_next * |last component of u(s)| exceeds the tolerance.
class KrylovDriver {
  public:
    KrylovDriver(const SparseReal& h, CVec psi, const EvolveOptions& opts)
        : h_(h), opts_(opts), psi_(std::move(psi)) {
        rebuild();
    }

    bool accept(double s) const {
        if (exact_) return true;
        for (double f : {0.25, 0.5, 0.75, 1.0})
            if (rate(s * f) > opts_.tol) return false;
        return true;
    }

    Eigen::VectorXcd small_solution(double s) const {
        Eigen::VectorXcd phased(m_);
        for (int k = 0; k < m_; ++k)
            phased[k] = z1_[k] * std::polar(beta0_, -theta_[k] * s);
        return z_ * phased;
    }

    CVec state_at(double s) const { return basis_ * small_solution(s); }

    cplx project_at(const Eigen::VectorXcd& w, double s) const {
        return w.adjoint() * small_solution(s);
    }

    // Coefficients of a fixed reference vector against the block basis.
    Eigen::VectorXcd reference_coeffs(const CVec& ref) const {
        return basis_.adjoint() * ref;
    }

    void advance(double s) {
        psi_ = state_at(s);
        rebuild();
    }

    int64_t generation() const { return generation_; }

    // Largest |s| with sign of `target` that passes the residual test.
    double probe(double target) const {
        if (exact_ || accept(target)) return target;
        double s = target;
        for (int iter = 0; iter < 60; ++iter) {
            s *= 0.5;
            if (accept(s)) return s;
        }
        throw NumericalError("Krylov step collapsed to zero");
    }

  private:
    double rate(double s) const {
        Eigen::VectorXcd u = small_solution(s);
        return beta_next_ * std::abs(u[m_ - 1]);
    }

    void rebuild() {
        ++generation_;
        const int64_t n = h_.n;
        const int m_max = static_cast<int>(std::min<int64_t>(opts_.krylov_dim, n));
        basis_.resize(n, m_max);
        Eigen::VectorXd alpha(m_max), beta(m_max);
        beta0_ = std::sqrt(simd::active_ops().nrm2sq(psi_.data(), n));
        if (beta0_ <= 0.0) throw NumericalError("zero state in propagation");
        basis_.col(0) = psi_ / beta0_;
        CVec w(n);
        exact_ = false;
        m_ = m_max;
        for (int k = 0; k < m_max; ++k) {
            h_.apply(basis_.col(k).eval(), w);
            alpha[k] = (basis_.col(k).adjoint() * w).value().real();
            w -= alpha[k] * basis_.col(k);
            if (k > 0) w -= beta[k - 1] * basis_.col(k - 1);
            // one full re-orthogonalization pass keeps the block orthonormal
            for (int j = 0; j <= k; ++j) {
                const cplx c = simd::active_ops().dotc(basis_.col(j).data(), w.data(), n);
                simd::active_ops().axpy(-c, basis_.col(j).data(), w.data(), n);
            }
            const double nb = std::sqrt(simd::active_ops().nrm2sq(w.data(), n));
            beta[k] = nb;
            if (nb < 1e-13 || k == m_max - 1) {
                m_ = k + 1;
                exact_ = nb < 1e-13;
                beta_next_ = nb;
                break;
            }
            basis_.col(k + 1) = w / nb;
        }
        if (m_ < m_max) basis_.conservativeResize(Eigen::NoChange, m_);

        Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m_, m_);
        for (int k = 0; k < m_; ++k) {
            tri(k, k) = alpha[k];
            if (k + 1 < m_) tri(k, k + 1) = tri(k + 1, k) = beta[k];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(tri);
        if (solver.info() != Eigen::Success)
            throw NumericalError("tridiagonal eigendecomposition failed");
        z_ = solver.eigenvectors();
        theta_ = solver.eigenvalues();
        z1_ = z_.row(0).transpose();
    }

    const SparseReal& h_;
    EvolveOptions opts_;
    CVec psi_;
    Eigen::MatrixXcd basis_;
    Eigen::MatrixXd z_;
    Eigen::VectorXd theta_, z1_;
    double beta0_ = 1.0;
    double beta_next_ = 0.0;
    int m_ = 0;
    int64_t generation_ = 0;
    bool exact_ = false;
};

void check_times(std::span<const double> times) {
    for (size_t k = 1; k < times.size(); ++k)
        if (times[k] < times[k - 1])
            throw ValidationError("time grid must be non-decreasing");
}

// Shared Krylov grid walker: calls emit(k, driver, s) for every grid point,
// where s is the offset from the current block anchor.
template <typename Emit>
void krylov_walk(const SparseReal& h, const CVec& psi0, std::span<const double> times,
                 const EvolveOptions& opts, Emit&& emit) {
    KrylovDriver driver(h, psi0, opts);
    double anchor = 0.0;
    size_t k = 0;
    while (k < times.size()) {
        const double s = times[k] - anchor;
        if (driver.accept(s)) {
            emit(k, driver, s);
            ++k;
            continue;
        }
        const double step = driver.probe(s);
        driver.advance(step);
        anchor += step;
    }
}

}  // namespace

void propagate(const SparseReal& h, const CVec& psi0, std::span<const double> times,
               const std::function<void(int64_t, const CVec&)>& sink,
               const EvolveOptions& opts) {
    if (psi0.size() != h.n) throw ValidationError("state dimension mismatch");
    check_times(times);
    if (times.empty()) return;

    if (h.n <= opts.dense_cap) {
        DensePropagator dense(h, psi0);
        for (size_t k = 0; k < times.size(); ++k) sink(k, dense.state_at(times[k]));
        return;
    }
    krylov_walk(h, psi0, times, opts, [&](size_t k, const KrylovDriver& d, double s) {
        sink(static_cast<int64_t>(k), d.state_at(s));
    });
}

std::vector<cplx> return_amplitudes(const SparseReal& h, const CVec& psi0,
                                    std::span<const double> times,
                                    const EvolveOptions& opts) {
    if (psi0.size() != h.n) throw ValidationError("state dimension mismatch");
    check_times(times);
    std::vector<cplx> amps(times.size());
    if (times.empty()) return amps;

    if (h.n <= opts.dense_cap) {
        DensePropagator dense(h, psi0);
        for (size_t k = 0; k < times.size(); ++k) amps[k] = dense.return_amplitude(times[k]);
        return amps;
    }
    // The reference coefficients change with the block anchor, so cache them
    // per block generation.
    int64_t cached_gen = -1;
    Eigen::VectorXcd w;
    krylov_walk(h, psi0, times, opts, [&](size_t k, const KrylovDriver& d, double s) {
        if (d.generation() != cached_gen) {
            w = d.reference_coeffs(psi0);
            cached_gen = d.generation();
        }
        amps[k] = d.project_at(w, s);
    });
    return amps;
}

CVec evolve_to(const SparseReal& h, const CVec& psi, double t, const EvolveOptions& opts) {
    if (psi.size() != h.n) throw ValidationError("state dimension mismatch");
    if (h.n <= opts.dense_cap) return DensePropagator(h, psi).state_at(t);

    KrylovDriver driver(h, psi, opts);
    double remaining = t;
    while (true) {
        if (driver.accept(remaining)) return driver.state_at(remaining);
        const double step = driver.probe(remaining);
        driver.advance(step);
        remaining -= step;
    }
}

TimeSeries fidelity_series(const SparseReal& h, const CVec& psi0, double t_max,
                           double dt, const EvolveOptions& opts) {
    TimeSeries out;
    out.times = time_grid(t_max, dt);
    const std::vector<cplx> amps = return_amplitudes(h, psi0, out.times, opts);
    out.values.resize(amps.size());
    for (size_t k = 0; k < amps.size(); ++k) out.values[k] = std::norm(amps[k]);
    return out;
}

TimeSeries observable_series(const SparseReal& h, const CVec& psi0,
                             const SparseOperator& obs, double t_max, double dt,
                             const EvolveOptions& opts) {
    if (obs.dim() != h.n) throw ValidationError("observable dimension mismatch");
    TimeSeries out;
    out.times = time_grid(t_max, dt);
    out.values.resize(out.times.size());
    propagate(h, psi0, out.times,
              [&](int64_t k, const CVec& psi) {
                  out.values[k] = obs.expectation(psi).real();
              },
              opts);
    return out;
}

}  // namespace scarlab
