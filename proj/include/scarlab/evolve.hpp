#pragma once

#include <functional>
#include <span>

#include "scarlab/operators.hpp"

namespace scarlab {

struct EvolveOptions {
    int krylov_dim = 30;
    double tol = 1e-10;       // local residual rate (error per unit time)
    int64_t dense_cap = 2048; // full diagonalization below, Lanczos above
};

struct TimeSeries {
    std::vector<double> times;
    std::vector<double> values;
};

// psi(t_k) = exp(-i H t_k) psi0 for a non-decreasing time grid; sink is
// invoked once per grid point with the normalized-by-construction state.
void propagate(const SparseReal& h, const CVec& psi0, std::span<const double> times,
               const std::function<void(int64_t, const CVec&)>& sink,
               const EvolveOptions& opts = {});

// <psi0| exp(-i H t_k) |psi0> without materializing the full state per point.
std::vector<cplx> return_amplitudes(const SparseReal& h, const CVec& psi0,
                                    std::span<const double> times,
                                    const EvolveOptions& opts = {});

CVec evolve_to(const SparseReal& h, const CVec& psi, double t,
               const EvolveOptions& opts = {});

// F(t) = |<psi0|psi(t)>|^2 on the grid {0, dt, ..., <= t_max}.
TimeSeries fidelity_series(const SparseReal& h, const CVec& psi0, double t_max,
                           double dt, const EvolveOptions& opts = {});

TimeSeries observable_series(const SparseReal& h, const CVec& psi0,
                             const SparseOperator& obs, double t_max, double dt,
                             const EvolveOptions& opts = {});

std::vector<double> time_grid(double t_max, double dt);

}  // namespace scarlab
