#pragma once

#include <functional>
#include <vector>

#include "scarlab/basis.hpp"
#include "scarlab/evolve.hpp"

namespace scarlab {

// First fidelity revival of a time series: the series must start near 1,
// decay below `threshold`, and then reach a local maximum. Peak time and
// height are refined with a parabola through the three grid points around
// the maximum.
struct RevivalReport {
    double t = 0.0;
    double fidelity = 0.0;
    TimeSeries series;
};

RevivalReport detect_first_revival(const TimeSeries& series, double threshold = 0.5);

struct NmOptions {
    double scale = 0.05;       // initial simplex edge length
    double diameter_tol = 1e-4;
    int max_evals = 400;
};

struct OptResult {
    std::vector<double> params;
    double objective = 0.0;
    int evals = 0;
    std::vector<double> trace;  // best objective seen, one entry per iteration
    bool converged = false;     // simplex diameter fell below tolerance
};

// Downhill simplex maximization (reflection 1, expansion 2, contraction 0.5,
// shrink 0.5). Returns the best point ever evaluated, which is never worse
// than the best vertex of the initial simplex.
OptResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                      const std::vector<double>& x0, const NmOptions& opts = {});

// Shared knobs for the revival-fidelity objectives below. The horizon is
// horizon_factor times the revival period of the unmodified model, detected
// once up front; every objective evaluation re-detects its own revival
// inside that window and scores the refined peak fidelity. Evaluations whose
// series never develops a revival score -1.
struct RevivalObjectiveOptions {
    double dt = 0.01;
    double horizon_factor = 1.5;
    int64_t dense_cap = 800;
    double threshold = 0.5;
};

struct DeformationOptimum {
    OptResult opt;           // params = {a, b}
    RevivalReport baseline;  // undeformed model
    RevivalReport best;      // at the optimal deformation
};

struct BoundaryOptimum {
    OptResult opt;           // params = {g_corner} or {g_corner, g_edge}
    RevivalReport baseline;  // uniform frequencies
    RevivalReport best;
};

struct FrequencyOptimum {
    OptResult opt;           // params = {omega}
    RevivalReport baseline;  // omega = 1
    RevivalReport best;
};

// Revival fidelity of one model from the maximally excited A-sublattice
// state, over a fixed horizon. Building block for the optimizers and the
// frequency curve.
RevivalReport revival_fidelity(const ConstrainedBasis& basis, const ModelSpec& model,
                               double horizon, const RevivalObjectiveOptions& opts = {});

// Maximize the first-revival fidelity over the deformation plane (a, b),
// starting from the undeformed model.
DeformationOptimum optimize_deformation(const ConstrainedBasis& basis, int max_evals = 400,
                                        const RevivalObjectiveOptions& opts = {});

// Maximize over boundary frequency reductions: corners run at 1 - g_corner,
// edges at 1 - g_edge (fixed to 1 when freeze_edge), bulk at 1.
BoundaryOptimum optimize_boundary(const ConstrainedBasis& basis, bool freeze_edge = false,
                                  int max_evals = 400,
                                  const RevivalObjectiveOptions& opts = {});

// Maximize over the sublattice frequency ratio omega (A sites at omega,
// B sites at 1), starting from omega = 1.
FrequencyOptimum optimize_frequency(const ConstrainedBasis& basis, int max_evals = 200,
                                    const RevivalObjectiveOptions& opts = {});

struct FrequencyCurve {
    std::vector<double> omegas;
    std::vector<double> fidelity;      // refined revival peak height
    std::vector<double> revival_time;  // NaN where no revival is detected
};

FrequencyCurve fidelity_vs_frequency(const ConstrainedBasis& basis,
                                     const std::vector<double>& omegas,
                                     const RevivalObjectiveOptions& opts = {});

}  // namespace scarlab
