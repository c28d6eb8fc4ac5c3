#include "scarlab/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "scarlab/errors.hpp"
#include "scarlab/lattice.hpp"
#include "scarlab/operators.hpp"

namespace scarlab {

namespace {

// Vertex refinement: parabola through (t0 - h, vm), (t0, v0), (t0 + h, vp).
// Offset is clamped to one grid cell; a degenerate curvature keeps the grid
// point.
void refine_peak(double t0, double h, double vm, double v0, double vp, double& t_out,
                 double& v_out) {
    const double denom = vm - 2.0 * v0 + vp;
    if (std::abs(denom) < 1e-300) {
        t_out = t0;
        v_out = v0;
        return;
    }
    double off = 0.5 * h * (vm - vp) / denom;
    off = std::clamp(off, -h, h);
    const double a = denom / (2.0 * h * h);
    const double b = (vp - vm) / (2.0 * h);
    t_out = t0 + off;
    v_out = std::min(v0 + (a * off + b) * off, 1.0);
}

}  // namespace

RevivalReport detect_first_revival(const TimeSeries& series, double threshold) {
    const auto& v = series.values;
    const auto& t = series.times;
    const int64_t n = static_cast<int64_t>(v.size());
    if (n < 3 || t.size() != v.size())
        throw ValidationError("revival detection needs at least three samples");

    int64_t decay = -1;
    for (int64_t i = 0; i < n; ++i) {
        if (v[i] < threshold) {
            decay = i;
            break;
        }
    }
    if (decay < 0)
        throw NumericalError("no revival structure: the series never decays below the threshold");

    // First local maximum after the decay. Mid-cycle bumps far below the
    // revival scale do not count: the peak must rise a few percent of the
    // threshold above everything seen since the decay.
    const double prominence = 0.02 * threshold;
    double running_min = v[decay];
    for (int64_t i = decay + 1; i + 1 < n; ++i) {
        running_min = std::min(running_min, v[i - 1]);
        if (v[i] >= v[i - 1] && v[i] >= v[i + 1] && v[i] - running_min >= prominence) {
            RevivalReport rep;
            refine_peak(t[i], t[i] - t[i - 1], v[i - 1], v[i], v[i + 1], rep.t, rep.fidelity);
            rep.series = series;
            return rep;
        }
    }
    throw NumericalError("no revival structure: no local maximum inside the horizon");
}

OptResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                      const std::vector<double>& x0, const NmOptions& opts) {
    const size_t n = x0.size();
    if (n == 0) throw ValidationError("optimizer needs at least one parameter");
    if (!(opts.scale > 0.0)) throw ValidationError("simplex scale must be positive");

    OptResult res;
    res.params = x0;
    res.objective = -std::numeric_limits<double>::infinity();

    auto eval = [&](const std::vector<double>& x) {
        const double f = objective(x);
        ++res.evals;
        if (f > res.objective) {
            res.objective = f;
            res.params = x;
        }
        return f;
    };

    std::vector<std::vector<double>> xs(n + 1, x0);
    std::vector<double> fs(n + 1);
    for (size_t j = 0; j < n; ++j) xs[j + 1][j] += opts.scale;
    for (size_t i = 0; i <= n; ++i) fs[i] = eval(xs[i]);

    auto diameter = [&] {
        double d = 0.0;
        for (size_t i = 0; i <= n; ++i)
            for (size_t j = i + 1; j <= n; ++j) {
                double s = 0.0;
                for (size_t k = 0; k < n; ++k) {
                    const double e = xs[i][k] - xs[j][k];
                    s += e * e;
                }
                d = std::max(d, s);
            }
        return std::sqrt(d);
    };

    std::vector<size_t> order(n + 1);
    while (res.evals < opts.max_evals) {
        for (size_t i = 0; i <= n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return fs[a] > fs[b]; });
        const size_t best = order[0];
        const size_t second = order[n - 1];
        const size_t worst = order[n];

        if (diameter() < opts.diameter_tol) {
            res.converged = true;
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (size_t k = 0; k < n; ++k) centroid[k] += xs[i][k];
        }
        for (size_t k = 0; k < n; ++k) centroid[k] /= static_cast<double>(n);

        auto blend = [&](const std::vector<double>& from, double coeff) {
            std::vector<double> x(n);
            for (size_t k = 0; k < n; ++k) x[k] = centroid[k] + coeff * (from[k] - centroid[k]);
            return x;
        };

        const auto xr = blend(xs[worst], -1.0);  // reflection
        const double fr = eval(xr);
        if (fr > fs[best]) {
            const auto xe = blend(xs[worst], -2.0);  // expansion
            const double fe = eval(xe);
            if (fe > fr) {
                xs[worst] = xe;
                fs[worst] = fe;
            } else {
                xs[worst] = xr;
                fs[worst] = fr;
            }
        } else if (fr > fs[second]) {
            xs[worst] = xr;
            fs[worst] = fr;
        } else {
            if (fr > fs[worst]) {
                xs[worst] = xr;
                fs[worst] = fr;
            }
            const auto xc = blend(xs[worst], 0.5);  // contraction
            const double fc = eval(xc);
            if (fc > fs[worst]) {
                xs[worst] = xc;
                fs[worst] = fc;
            } else {
                for (size_t i = 0; i <= n; ++i) {  // shrink toward the best vertex
                    if (i == best) continue;
                    for (size_t k = 0; k < n; ++k)
                        xs[i][k] = xs[best][k] + 0.5 * (xs[i][k] - xs[best][k]);
                    fs[i] = eval(xs[i]);
                }
            }
        }
        res.trace.push_back(res.objective);
    }
    return res;
}

RevivalReport revival_fidelity(const ConstrainedBasis& basis, const ModelSpec& model,
                               double horizon, const RevivalObjectiveOptions& opts) {
    const SparseReal h = build_model(basis, model);
    const CVec psi0 = unit_state(basis, maximally_excited(basis.graph, Sublattice::A));
    EvolveOptions eo;
    eo.dense_cap = opts.dense_cap;
    const TimeSeries ser = fidelity_series(h, psi0, horizon, opts.dt, eo);
    return detect_first_revival(ser, opts.threshold);
}

namespace {

// Baseline revival of the unmodified model, searched inside a generous fixed
// window; downstream objectives use horizon_factor times its period.
RevivalReport baseline_revival(const ConstrainedBasis& basis, const ModelSpec& model,
                               const RevivalObjectiveOptions& opts) {
    constexpr double kBaselineWindow = 20.0;
    return revival_fidelity(basis, model, kBaselineWindow, opts);
}

double guarded_fidelity(const ConstrainedBasis& basis, const ModelSpec& model, double horizon,
                        const RevivalObjectiveOptions& opts) {
    try {
        return revival_fidelity(basis, model, horizon, opts).fidelity;
    } catch (const NumericalError&) {
        return -1.0;  // no revival at these parameters
    }
}

}  // namespace

DeformationOptimum optimize_deformation(const ConstrainedBasis& basis, int max_evals,
                                        const RevivalObjectiveOptions& opts) {
    const std::vector<double> freq = uniform_freq(basis.graph);
    DeformationOptimum out;
    out.baseline = baseline_revival(basis, ModelSpec{freq, std::nullopt}, opts);
    const double horizon = opts.horizon_factor * out.baseline.t;

    auto objective = [&](const std::vector<double>& p) {
        return guarded_fidelity(basis, ModelSpec{freq, Deformation{p[0], p[1]}}, horizon, opts);
    };
    NmOptions nm;
    nm.scale = 0.02;
    nm.max_evals = max_evals;
    out.opt = nelder_mead(objective, {0.0, 0.0}, nm);
    out.best = revival_fidelity(
        basis, ModelSpec{freq, Deformation{out.opt.params[0], out.opt.params[1]}}, horizon, opts);
    return out;
}

BoundaryOptimum optimize_boundary(const ConstrainedBasis& basis, bool freeze_edge, int max_evals,
                                  const RevivalObjectiveOptions& opts) {
    if (basis.graph.boundary != Boundary::open)
        throw ValidationError("boundary optimization requires an open lattice");

    BoundaryOptimum out;
    out.baseline = baseline_revival(basis, ModelSpec{uniform_freq(basis.graph), std::nullopt}, opts);
    const double horizon = opts.horizon_factor * out.baseline.t;

    auto model_at = [&](const std::vector<double>& p) {
        const double gc = p[0];
        const double ge = freeze_edge ? 0.0 : p[1];
        return ModelSpec{class_freq(basis.graph, 1.0 - gc, 1.0 - ge), std::nullopt};
    };
    auto objective = [&](const std::vector<double>& p) {
        return guarded_fidelity(basis, model_at(p), horizon, opts);
    };
    NmOptions nm;
    nm.scale = 0.05;
    nm.max_evals = max_evals;
    const std::vector<double> seed(freeze_edge ? 1 : 2, 0.0);
    out.opt = nelder_mead(objective, seed, nm);
    out.best = revival_fidelity(basis, model_at(out.opt.params), horizon, opts);
    return out;
}

FrequencyOptimum optimize_frequency(const ConstrainedBasis& basis, int max_evals,
                                    const RevivalObjectiveOptions& opts) {
    FrequencyOptimum out;
    out.baseline =
        baseline_revival(basis, ModelSpec{sublattice_freq(basis.graph, 1.0, 1.0), std::nullopt}, opts);
    const double horizon = opts.horizon_factor * out.baseline.t;

    auto objective = [&](const std::vector<double>& p) {
        return guarded_fidelity(basis, ModelSpec{sublattice_freq(basis.graph, p[0], 1.0), std::nullopt},
                                horizon, opts);
    };
    NmOptions nm;
    nm.scale = 0.05;
    nm.max_evals = max_evals;
    out.opt = nelder_mead(objective, {1.0}, nm);
    out.best = revival_fidelity(
        basis, ModelSpec{sublattice_freq(basis.graph, out.opt.params[0], 1.0), std::nullopt},
        horizon, opts);
    return out;
}

FrequencyCurve fidelity_vs_frequency(const ConstrainedBasis& basis,
                                     const std::vector<double>& omegas,
                                     const RevivalObjectiveOptions& opts) {
    const RevivalReport base =
        baseline_revival(basis, ModelSpec{sublattice_freq(basis.graph, 1.0, 1.0), std::nullopt}, opts);
    const double horizon = opts.horizon_factor * base.t;

    FrequencyCurve curve;
    curve.omegas = omegas;
    curve.fidelity.reserve(omegas.size());
    curve.revival_time.reserve(omegas.size());
    for (const double w : omegas) {
        try {
            const RevivalReport rep = revival_fidelity(
                basis, ModelSpec{sublattice_freq(basis.graph, w, 1.0), std::nullopt}, horizon, opts);
            curve.fidelity.push_back(rep.fidelity);
            curve.revival_time.push_back(rep.t);
        } catch (const NumericalError&) {
            curve.fidelity.push_back(std::numeric_limits<double>::quiet_NaN());
            curve.revival_time.push_back(std::numeric_limits<double>::quiet_NaN());
        }
    }
    return curve;
}

}  // namespace scarlab
