#include "scarlab/tdvp.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <limits>

#include "scarlab/errors.hpp"

namespace scarlab {

namespace {

namespace ode = boost::numeric::odeint;
using State = std::array<double, 2>;
using DenseStepper =
    ode::result_of::make_dense_output<ode::runge_kutta_dopri5<State>>::type;

constexpr double kPi = 3.14159265358979323846;

double ipow(double x, int n) {
    double out = 1.0;
    for (int k = 0; k < n; ++k) out *= x;
    return out;
}

void validate(const TdvpParams& p) {
    if (p.c_a < 1 || p.c_b < 1) throw ValidationError("connectivities must be at least 1");
    if (!(p.omega > 0.0)) throw ValidationError("omega must be positive");
    if (p.epsilon < 0.0) throw ValidationError("epsilon must be nonnegative");
}

// tan(x) / (1 + eps tan^2 x), written over sin/cos so it stays finite and
// smooth through cos x = 0 with a peak of 1/(2 sqrt(eps)). The bounded slope
// is what keeps trajectories from falling into the singular points while
// leaving the flow elsewhere untouched.
double reg_tan(double x, double eps) {
    if (eps == 0.0) return std::tan(x);
    const double s = std::sin(x);
    const double c = std::cos(x);
    return s * c / (c * c + eps * s * s);
}

// The max-step bound must carry the integration direction: the step
// adjuster clamps by magnitude but adopts the bound's sign, so a positive
// bound would silently turn a backward integration around.
DenseStepper make_stepper(const IntegrateOptions& opts, double dir) {
    return ode::make_dense_output(opts.tol, opts.tol, dir * opts.dt_out,
                                  ode::runge_kutta_dopri5<State>());
}

void guard_step(const DenseStepper& stepper) {
    const State& x = stepper.current_state();
    if (!std::isfinite(x[0]) || !std::isfinite(x[1]))
        throw NumericalError("trajectory diverged; regularize the flow");
    if (std::abs(stepper.current_time_step()) < 1e-13)
        throw NumericalError("step size underflow near a singular point");
}

double wrap_half(double x) { return std::remainder(x, kPi); }

double family_distance(EventKind kind, double a, double b) {
    switch (kind) {
        case EventKind::near_a:
            return std::hypot(wrap_half(a - 0.5 * kPi), wrap_half(b));
        case EventKind::near_b:
            return std::hypot(wrap_half(a), wrap_half(b - 0.5 * kPi));
        case EventKind::near_singular:
            return std::hypot(wrap_half(a - 0.5 * kPi), wrap_half(b - 0.5 * kPi));
    }
    return 0.0;
}

void detect_events(TdvpTrajectory& traj, double radius) {
    const int64_t n = static_cast<int64_t>(traj.times.size());
    if (n < 3) return;
    for (EventKind kind :
         {EventKind::near_a, EventKind::near_b, EventKind::near_singular}) {
        std::vector<double> d(n);
        for (int64_t i = 0; i < n; ++i)
            d[i] = family_distance(kind, traj.theta_a[i], traj.theta_b[i]);
        for (int64_t i = 1; i + 1 < n; ++i) {
            if (!(d[i] < radius && d[i] < d[i - 1] && d[i] <= d[i + 1])) continue;
            // Parabolic refinement of the closest approach on the sample grid.
            const double denom = d[i - 1] - 2.0 * d[i] + d[i + 1];
            double shift = 0.0;
            if (std::abs(denom) > 1e-300)
                shift = std::clamp(0.5 * (d[i - 1] - d[i + 1]) / denom, -1.0, 1.0);
            const double dt = traj.times[i + 1] - traj.times[i];
            const int64_t j = shift >= 0 ? i : i - 1;
            const double frac = shift >= 0 ? shift : 1.0 + shift;
            TrajectoryEvent ev;
            ev.kind = kind;
            ev.time = traj.times[i] + shift * dt;
            ev.theta_a = traj.theta_a[j] + frac * (traj.theta_a[j + 1] - traj.theta_a[j]);
            ev.theta_b = traj.theta_b[j] + frac * (traj.theta_b[j + 1] - traj.theta_b[j]);
            ev.distance = family_distance(kind, ev.theta_a, ev.theta_b);
            traj.events.push_back(ev);
        }
    }
    std::sort(traj.events.begin(), traj.events.end(),
              [](const TrajectoryEvent& x, const TrajectoryEvent& y) {
                  return x.time < y.time;
              });
}

}  // namespace

AngleDerivs eom_rhs(double theta_a, double theta_b, const TdvpParams& p) {
    const double ca = std::cos(theta_a);
    const double cb = std::cos(theta_b);
    const double sa = std::sin(theta_a);
    const double sb = std::sin(theta_b);
    AngleDerivs out;
    out.dtheta_a = -p.omega * ipow(cb, p.c_a - 1) -
                   ipow(ca, p.c_b) * sa * reg_tan(theta_b, p.epsilon);
    out.dtheta_b = -ipow(ca, p.c_b - 1) -
                   p.omega * ipow(cb, p.c_a) * sb * reg_tan(theta_a, p.epsilon);
    return out;
}

TdvpTrajectory integrate(const TdvpParams& p, double theta_a0, double theta_b0,
                         double t_max, const IntegrateOptions& opts) {
    validate(p);
    if (t_max == 0.0) throw ValidationError("t_max must be nonzero");
    const double dir = t_max > 0.0 ? 1.0 : -1.0;

    auto rhs = [&p](const State& x, State& dxdt, double) {
        const AngleDerivs d = eom_rhs(x[0], x[1], p);
        dxdt[0] = d.dtheta_a;
        dxdt[1] = d.dtheta_b;
    };

    DenseStepper stepper = make_stepper(opts, dir);
    stepper.initialize(State{theta_a0, theta_b0}, 0.0, dir * opts.dt_init);

    TdvpTrajectory traj;
    auto record = [&traj](double t, const State& x) {
        traj.times.push_back(t);
        traj.theta_a.push_back(x[0]);
        traj.theta_b.push_back(x[1]);
    };
    record(0.0, stepper.current_state());

    int64_t next_sample = 1;
    while (dir * stepper.current_time() < dir * t_max) {
        stepper.do_step(rhs);
        guard_step(stepper);
        State x;
        while (true) {
            const double ts = dir * opts.dt_out * next_sample;
            if (dir * ts > dir * t_max) break;
            if (dir * ts > dir * stepper.current_time()) break;
            stepper.calc_state(ts, x);
            record(ts, x);
            ++next_sample;
        }
    }
    if (traj.times.back() != t_max) {
        State x;
        stepper.calc_state(t_max, x);
        record(t_max, x);
    }
    detect_events(traj, opts.event_radius);
    return traj;
}

SectionHit section_crossing(const TdvpParams& p, double theta_a0, double theta_b0,
                            double t_limit, const IntegrateOptions& opts) {
    validate(p);
    if (!(t_limit > 0.0)) throw ValidationError("t_limit must be positive");

    auto rhs = [&p](const State& x, State& dxdt, double) {
        const AngleDerivs d = eom_rhs(x[0], x[1], p);
        dxdt[0] = d.dtheta_a;
        dxdt[1] = d.dtheta_b;
    };

    DenseStepper stepper = make_stepper(opts, 1.0);
    stepper.initialize(State{theta_a0, theta_b0}, 0.0, opts.dt_init);

    const double section = -0.5 * kPi;
    double prev = theta_b0 - section;
    while (stepper.current_time() < t_limit) {
        stepper.do_step(rhs);
        guard_step(stepper);
        const double cur = stepper.current_state()[1] - section;
        if (prev > 0.0 && cur <= 0.0) {
            double tl = stepper.previous_time();
            double tr = stepper.current_time();
            State x;
            for (int it = 0; it < 80 && tr - tl > 1e-13; ++it) {
                const double tm = 0.5 * (tl + tr);
                stepper.calc_state(tm, x);
                ((x[1] - section) > 0.0 ? tl : tr) = tm;
            }
            stepper.calc_state(tr, x);
            SectionHit hit;
            hit.hit = true;
            hit.time = tr;
            hit.theta_a = x[0];
            return hit;
        }
        prev = cur;
    }
    return {};
}

OmegaCResult find_omega_c(int c_a, int c_b, double epsilon, double omega_lo,
                          double omega_hi, double launch_delta, double width,
                          double near_tol) {
    if (!(omega_lo > 0.0 && omega_hi > omega_lo))
        throw ValidationError("need 0 < omega_lo < omega_hi");
    if (!(launch_delta > 0.0)) throw ValidationError("launch_delta must be positive");

    const double a0 = 0.5 * kPi - launch_delta;
    const double t_limit = 100.0;
    auto miss = [&](double omega) {
        TdvpParams p{c_a, c_b, omega, epsilon};
        const SectionHit hit = section_crossing(p, a0, 0.0, t_limit);
        if (!hit.hit) throw NumericalError("trajectory never reached the B section");
        return hit.theta_a;
    };

    OmegaCResult out;
    double lo = omega_lo;
    double hi = omega_hi;
    double flo = miss(lo);
    const double fhi = miss(hi);
    if (flo == 0.0) {
        out.omega_c = lo;
        return out;
    }
    if (fhi == 0.0) {
        out.omega_c = hi;
        return out;
    }
    if (flo * fhi > 0.0)
        throw ValidationError("section miss does not change sign over the bracket");
    while (hi - lo > width) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = miss(mid);
        ++out.iterations;
        if (fmid == 0.0) {
            lo = hi = mid;
            break;
        }
        if (flo * fmid < 0.0) {
            hi = mid;
        } else {
            lo = mid;
            flo = fmid;
        }
    }
    out.omega_c = 0.5 * (lo + hi);
    out.miss = miss(out.omega_c);
    if (std::abs(out.miss) > near_tol)
        throw NumericalError("trajectory misses the B vacuum at the returned frequency");
    return out;
}

CVec tts_state(const TtsAmplitudes& amps, const ConstrainedBasis& basis) {
    const double ca = std::cos(amps.theta_a);
    const double cb = std::cos(amps.theta_b);
    if (std::abs(ca) < 1e-15 || std::abs(cb) < 1e-15)
        throw ValidationError("tree-state angle at a pole; offset it into the interior");
    const double sa = std::sin(amps.theta_a);
    const double sb = std::sin(amps.theta_b);

    const uint64_t mask_a = basis.graph.sublattice_mask(Sublattice::A);
    const uint64_t mask_b = basis.graph.sublattice_mask(Sublattice::B);
    const int na = basis.graph.n_sublattice(Sublattice::A);
    const int nb = basis.graph.n_sublattice(Sublattice::B);

    const double log_ca = std::log(std::abs(ca));
    const double log_cb = std::log(std::abs(cb));
    const bool sa_zero = sa == 0.0;
    const bool sb_zero = sb == 0.0;
    const double log_sa = sa_zero ? 0.0 : std::log(std::abs(sa));
    const double log_sb = sb_zero ? 0.0 : std::log(std::abs(sb));

    const int64_t dim = basis.dim();
    std::vector<double> logmag(dim, -std::numeric_limits<double>::infinity());
    double logmax = -std::numeric_limits<double>::infinity();
    for (int64_t k = 0; k < dim; ++k) {
        const uint64_t c = basis.configs[k];
        const int ka = std::popcount(c & mask_a);
        const int kb = std::popcount(c & mask_b);
        if ((sa_zero && ka > 0) || (sb_zero && kb > 0)) continue;
        logmag[k] = (na - ka) * log_ca + ka * log_sa + (nb - kb) * log_cb + kb * log_sb;
        logmax = std::max(logmax, logmag[k]);
    }

    static const cplx ipow4[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
    CVec psi = CVec::Zero(dim);
    for (int64_t k = 0; k < dim; ++k) {
        if (!std::isfinite(logmag[k])) continue;
        const uint64_t c = basis.configs[k];
        const int ka = std::popcount(c & mask_a);
        const int kb = std::popcount(c & mask_b);
        double sign = 1.0;
        if (ca < 0.0 && (na - ka) % 2) sign = -sign;
        if (cb < 0.0 && (nb - kb) % 2) sign = -sign;
        if (sa < 0.0 && ka % 2) sign = -sign;
        if (sb < 0.0 && kb % 2) sign = -sign;
        const cplx phase =
            ipow4[(ka + kb) % 4] *
            std::exp(cplx(0.0, -(amps.phi_a * ka + amps.phi_b * kb)));
        psi[k] = sign * std::exp(logmag[k] - logmax) * phase;
    }
    const double nrm = psi.norm();
    if (!(nrm > 0.0)) throw NumericalError("tree state has vanishing norm");
    psi /= nrm;
    return psi;
}

TdvpObservables tdvp_observables(const TdvpTrajectory& traj, const ConstrainedBasis& basis,
                                 double pole_nudge) {
    const SparseOperator sy_a = build_sublattice_sigma_y(basis, Sublattice::A);
    const SparseOperator sy_b = build_sublattice_sigma_y(basis, Sublattice::B);
    const uint64_t mask_a = basis.graph.sublattice_mask(Sublattice::A);
    const uint64_t mask_b = basis.graph.sublattice_mask(Sublattice::B);
    const int na = basis.graph.n_sublattice(Sublattice::A);
    const int nb = basis.graph.n_sublattice(Sublattice::B);

    auto nudged = [pole_nudge](double theta) {
        const double c = std::cos(theta);
        if (std::abs(c) >= pole_nudge) return theta;
        // Pull the angle off the pole, away from the nearest singular value.
        const double pole = std::round(theta / kPi - 0.5) * kPi + 0.5 * kPi;
        return theta >= pole ? pole + pole_nudge : pole - pole_nudge;
    };

    TdvpObservables out;
    out.times = traj.times;
    const int64_t steps = static_cast<int64_t>(traj.times.size());
    out.density_a.resize(steps);
    out.density_b.resize(steps);
    out.sigma_y_a.resize(steps);
    out.sigma_y_b.resize(steps);
    for (int64_t i = 0; i < steps; ++i) {
        TtsAmplitudes amps;
        amps.theta_a = nudged(traj.theta_a[i]);
        amps.theta_b = nudged(traj.theta_b[i]);
        const CVec psi = tts_state(amps, basis);
        double da = 0.0;
        double db = 0.0;
        for (int64_t k = 0; k < psi.size(); ++k) {
            const double w = std::norm(psi[k]);
            da += w * std::popcount(basis.configs[k] & mask_a);
            db += w * std::popcount(basis.configs[k] & mask_b);
        }
        out.density_a[i] = da / na;
        out.density_b[i] = db / nb;
        out.sigma_y_a[i] = sy_a.expectation(psi).real();
        out.sigma_y_b[i] = sy_b.expectation(psi).real();
    }
    return out;
}

}  // namespace scarlab
