#pragma once

#include <vector>

#include "scarlab/basis.hpp"
#include "scarlab/operators.hpp"

namespace scarlab {

// Two-angle variational dynamics on the tree-tensor manifold. Angle
// conventions: (theta_A, theta_B) = (pi/2, 0) is the A vacuum |M_A>,
// (0, pi/2) the B vacuum, and theta_A = theta_B = pi/2 (mod pi) are the
// singular points of the unregularized flow.

struct TdvpParams {
    int c_a = 2;           // sublattice-A connectivity
    int c_b = 3;
    double omega = 1.0;    // sublattice-A frequency; B frequency fixed at 1
    double epsilon = 0.0;  // tangent regularization strength
};

struct AngleDerivs {
    double dtheta_a = 0.0;
    double dtheta_b = 0.0;
};

AngleDerivs eom_rhs(double theta_a, double theta_b, const TdvpParams& p);

enum class EventKind { near_a, near_b, near_singular };

struct TrajectoryEvent {
    EventKind kind;
    double time;
    double distance;  // closest approach in angle space, mod pi
    double theta_a;
    double theta_b;
};

struct TdvpTrajectory {
    std::vector<double> times;
    std::vector<double> theta_a;
    std::vector<double> theta_b;
    std::vector<TrajectoryEvent> events;
};

struct IntegrateOptions {
    double tol = 1e-9;          // adaptive error control, absolute and relative
    double dt_init = 1e-4;
    double dt_out = 0.01;       // uniform sampling step of the recorded series
    double event_radius = 0.3;  // record closest approaches below this distance
};

// Adaptive integration from (theta_a0, theta_b0) over [0, t_max]; a negative
// t_max integrates backward.
TdvpTrajectory integrate(const TdvpParams& p, double theta_a0, double theta_b0,
                         double t_max, const IntegrateOptions& opts = {});

struct SectionHit {
    bool hit = false;
    double time = 0.0;
    double theta_a = 0.0;  // signed miss distance from the B vacuum at the section
};

// First crossing of the theta_B = -pi/2 section on the forward trajectory.
SectionHit section_crossing(const TdvpParams& p, double theta_a0, double theta_b0,
                            double t_limit, const IntegrateOptions& opts = {});

struct OmegaCResult {
    double omega_c = 0.0;
    double miss = 0.0;  // theta_A at the section for the returned frequency
    int iterations = 0;
};

// Bisection on the signed section miss of the trajectory launched
// launch_delta away from the A vacuum; the bracket must straddle a sign
// change. Verifies the returned trajectory passes within near_tol of the
// B vacuum.
OmegaCResult find_omega_c(int c_a, int c_b, double epsilon, double omega_lo,
                          double omega_hi, double launch_delta = 1e-3,
                          double width = 1e-4, double near_tol = 1e-2);

// Mean-field tree-state amplitudes: a configuration's weight depends only on
// its sublattice excitation counts, with per-sublattice factors
// c_down(X) = cos(theta_X) and c_up(X) = i e^{-i phi_X} sin(theta_X), the
// spin-coherent product weights projected onto the constrained space.
struct TtsAmplitudes {
    double theta_a = 0.0;
    double theta_b = 0.0;
    double phi_a = 0.0;
    double phi_b = 0.0;
};

// Normalized state on the finite lattice; amplitudes are evaluated in the
// log domain so deep pole approaches stay finite. Exact poles (cos = 0)
// are rejected; nudge the angle instead.
CVec tts_state(const TtsAmplitudes& amps, const ConstrainedBasis& basis);

struct TdvpObservables {
    std::vector<double> times;
    std::vector<double> density_a;  // mean excitation density on sublattice A
    std::vector<double> density_b;
    std::vector<double> sigma_y_a;  // mean dressed sigma-y on sublattice A
    std::vector<double> sigma_y_b;
};

// Evaluates the trajectory pointwise as a tree state on the finite lattice
// and records per-sublattice observables. Angles within pole_nudge of a
// pole are offset into the interior.
TdvpObservables tdvp_observables(const TdvpTrajectory& traj, const ConstrainedBasis& basis,
                                 double pole_nudge = 1e-8);

}  // namespace scarlab
