#include "scarlab/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "json.hpp"
#include "scarlab/basis.hpp"
#include "scarlab/eigen.hpp"
#include "scarlab/errors.hpp"
#include "scarlab/evolve.hpp"
#include "scarlab/fsa.hpp"
#include "scarlab/optimize.hpp"
#include "scarlab/tdvp.hpp"

namespace scarlab {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

struct Emitter {
    const RunConfig& cfg;
    Clock::time_point started = Clock::now();
    std::vector<std::string> artifacts;

    explicit Emitter(const RunConfig& c) : cfg(c) {}

    double wall_s() const {
        return std::chrono::duration<double>(Clock::now() - started).count();
    }

    std::string path(const std::string& suffix, const char* ext) const {
        const std::string prefix =
            cfg.output.prefix.empty() ? std::string(experiment_name(cfg.experiment))
                                      : cfg.output.prefix;
        fs::path p = fs::path(cfg.output.dir) / (prefix + (suffix.empty() ? "" : "_" + suffix));
        p += ext;
        return p.string();
    }

    void meta_lines(std::ofstream& out) const {
        out << "# scarlab " << kVersion << "\n";
        out << "# config-hash: " << config_hash_hex(cfg) << "\n";
        if (!cfg.preset.empty()) out << "# preset: " << cfg.preset << "\n";
        char stamp[64];
        const std::time_t now = std::time(nullptr);
        std::tm tm{};
        gmtime_r(&now, &tm);
        std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);
        char line[128];
        std::snprintf(line, sizeof line, "# generated: %s, wall-time-s: %.3f\n", stamp, wall_s());
        out << line;
    }

    void csv(const std::string& suffix, const std::vector<std::string>& columns,
             const std::vector<std::vector<double>>& rows) {
        const std::string p = path(suffix, ".csv");
        fs::create_directories(fs::path(p).parent_path());
        std::ofstream out(p);
        if (!out) throw ValidationError("cannot write artifact " + p);
        meta_lines(out);
        for (size_t i = 0; i < columns.size(); ++i)
            out << columns[i] << (i + 1 < columns.size() ? "," : "\n");
        char buf[32];
        for (const auto& row : rows) {
            for (size_t i = 0; i < row.size(); ++i) {
                std::snprintf(buf, sizeof buf, "%.17g", row[i]);
                out << buf << (i + 1 < row.size() ? "," : "\n");
            }
        }
        artifacts.push_back(p);
    }

    void report(const std::string& suffix, json payload) {
        const std::string p = path(suffix, ".json");
        fs::create_directories(fs::path(p).parent_path());
        char stamp[64];
        const std::time_t now = std::time(nullptr);
        std::tm tm{};
        gmtime_r(&now, &tm);
        std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);
        payload["meta"] = json{{"version", kVersion},
                               {"config_hash", config_hash_hex(cfg)},
                               {"preset", cfg.preset},
                               {"generated", stamp},
                               {"wall_time_s", wall_s()}};
        std::ofstream out(p);
        if (!out) throw ValidationError("cannot write artifact " + p);
        out << payload.dump(2) << "\n";
        artifacts.push_back(p);
    }
};

EvolveOptions evolve_options(const RunConfig& cfg) {
    return EvolveOptions{cfg.numeric.krylov_dim, cfg.numeric.tol, cfg.numeric.dense_cap};
}

RevivalObjectiveOptions objective_options(const RunConfig& cfg) {
    RevivalObjectiveOptions opts;
    opts.dt = cfg.numeric.dt;
    // Objective evaluations favour the iterative propagator; a full
    // diagonalization per evaluation pays off only at small dimensions.
    opts.dense_cap = std::min<int64_t>(cfg.numeric.dense_cap, 800);
    return opts;
}

TimeSeries observable_by_name(const std::string& name, const ConstrainedBasis& basis,
                              const SparseReal& h, const CVec& psi0, const RunConfig& cfg) {
    const EvolveOptions eo = evolve_options(cfg);
    if (name == "fidelity")
        return fidelity_series(h, psi0, cfg.numeric.t_max, cfg.numeric.dt, eo);
    if (name == "domainwall")
        return observable_series(h, psi0, SparseOperator{build_domain_wall(basis)},
                                 cfg.numeric.t_max, cfg.numeric.dt, eo);
    if (name.rfind("site:", 0) == 0) {
        const size_t second = name.find(':', 5);
        if (second == std::string::npos)
            throw ValidationError("site observable needs the form site:<index>:<kind>");
        const int site = std::atoi(name.substr(5, second - 5).c_str());
        if (site < 0 || site >= basis.graph.n_sites)
            throw ValidationError("site observable index out of range");
        const std::string kind = name.substr(second + 1);
        LocalKind lk;
        if (kind == "density")
            lk = LocalKind::density;
        else if (kind == "sigma-y")
            lk = LocalKind::sigma_y;
        else
            throw ValidationError("unknown site observable kind '" + kind + "'");
        return observable_series(h, psi0, build_local_observable(basis, site, lk),
                                 cfg.numeric.t_max, cfg.numeric.dt, eo);
    }
    throw ValidationError("unknown observable '" + name + "'");
}

json revival_json(const RevivalReport& rep, int n_sites) {
    return json{{"revival_time", rep.t},
                {"fidelity", rep.fidelity},
                {"minus_log_fidelity_per_site", -std::log(rep.fidelity) / n_sites}};
}

void run_evolve(const RunConfig& cfg, Emitter& em) {
    const SiteGraph graph = build_lattice(cfg.model.lattice);
    const ConstrainedBasis basis = enumerate_basis(graph, cfg.numeric.dim_cap);
    const SparseReal h = build_model(basis, resolve_model(graph, cfg.model));
    const CVec psi0 = unit_state(basis, maximally_excited(graph, Sublattice::A));

    const std::vector<double> times = time_grid(cfg.numeric.t_max, cfg.numeric.dt);
    std::vector<std::string> columns{"t"};
    std::vector<std::vector<double>> rows(times.size());
    for (size_t k = 0; k < times.size(); ++k) rows[k].push_back(times[k]);

    json summary{{"dim", basis.dim()}, {"n_sites", graph.n_sites}};
    for (const auto& name : cfg.evolve.observables) {
        const TimeSeries s = observable_by_name(name, basis, h, psi0, cfg);
        columns.push_back(name);
        for (size_t k = 0; k < times.size(); ++k) rows[k].push_back(s.values[k]);
        if (name == "fidelity") {
            try {
                summary["revival"] = revival_json(detect_first_revival(s), graph.n_sites);
            } catch (const NumericalError&) {
                summary["revival"] = nullptr;
            }
        }
    }
    if (cfg.evolve.compare_undeformed) {
        const SparseReal h0 = build_pxp(basis, uniform_freq(graph));
        for (const auto& name : cfg.evolve.observables) {
            const TimeSeries s = observable_by_name(name, basis, h0, psi0, cfg);
            columns.push_back(name + "_reference");
            for (size_t k = 0; k < times.size(); ++k) rows[k].push_back(s.values[k]);
            if (name == "fidelity") {
                try {
                    summary["revival_reference"] =
                        revival_json(detect_first_revival(s), graph.n_sites);
                } catch (const NumericalError&) {
                    summary["revival_reference"] = nullptr;
                }
            }
        }
    }
    if (cfg.output.csv) em.csv("series", columns, rows);
    if (cfg.output.json) em.report("summary", summary);
}

void run_spectrum(const RunConfig& cfg, Emitter& em) {
    const SiteGraph graph = build_lattice(cfg.model.lattice);
    const ConstrainedBasis basis = enumerate_basis(graph, cfg.numeric.dim_cap);
    const SparseReal h = build_model(basis, resolve_model(graph, cfg.model));
    const SpectrumResult spec = full_diagonalize(h, cfg.numeric.dense_cap);
    const CVec psi0 = unit_state(basis, maximally_excited(graph, Sublattice::A));

    const bool want_entropy = std::count(cfg.spectrum.emit.begin(), cfg.spectrum.emit.end(),
                                         std::string("entropy")) > 0;
    const bool want_overlap = std::count(cfg.spectrum.emit.begin(), cfg.spectrum.emit.end(),
                                         std::string("overlap")) > 0;

    std::vector<std::string> columns{"index", "energy"};
    if (want_entropy) columns.push_back("entropy");
    if (want_overlap) columns.push_back("overlap");

    const Bipartition cut = half_x_cut(graph);
    std::vector<double> overlaps;
    if (want_overlap) overlaps = overlap_profile(spec, psi0);

    std::vector<std::vector<double>> rows;
    rows.reserve(spec.energies.size());
    for (int64_t k = 0; k < spec.energies.size(); ++k) {
        std::vector<double> row{static_cast<double>(k), spec.energies[k]};
        if (want_entropy) {
            const CVec v = spec.vectors.col(k).cast<cplx>();
            row.push_back(entanglement_entropy(basis, v, cut));
        }
        if (want_overlap) row.push_back(overlaps[k]);
        rows.push_back(std::move(row));
    }
    if (cfg.output.csv) em.csv("spectrum", columns, rows);
    if (cfg.output.json)
        em.report("summary", json{{"dim", basis.dim()},
                                  {"n_sites", graph.n_sites},
                                  {"e_min", spec.energies[0]},
                                  {"e_max", spec.energies[spec.energies.size() - 1]}});
}

void emit_mode_overlaps_square(const RunConfig& cfg, Emitter& em, const ConstrainedBasis& basis) {
    std::vector<Deformation> models{Deformation{0.0, 0.0}};
    if (cfg.model.deform) models.push_back(*cfg.model.deform);
    for (const auto& d : cfg.fsa.compare) models.push_back(d);

    const std::vector<double> freq = resolve_freq(basis.graph, cfg.model.freq);
    std::vector<std::vector<double>> rows;
    for (const auto& d : models) {
        const bool plain = d.a == 0.0 && d.b == 0.0;
        const ModelSpec spec{freq, plain ? std::optional<Deformation>{} : std::optional(d)};
        const SparseReal h = build_model(basis, spec);
        const SplitPM pm = split_pm(basis, spec);
        const FsaBasis fsa = build_fsa_symmetric(pm.plus, pm.minus, basis);
        const SpectrumResult full = full_diagonalize(h, cfg.numeric.dense_cap);
        const SubspaceDiagnostics diag = projected_spectrum(h, fsa, &full);
        for (int64_t k = 0; k < diag.mode_energies.size(); ++k)
            rows.push_back({d.a, d.b, static_cast<double>(k), diag.mode_energies[k],
                            diag.mode_overlaps[k]});
    }
    em.csv("modes", {"a", "b", "mode_index", "mode_energy", "max_overlap"}, rows);

    // Overlap of the launch state with the exact eigenstates of the
    // configured model.
    const SparseReal h = build_model(basis, resolve_model(basis.graph, cfg.model));
    const SpectrumResult full = full_diagonalize(h, cfg.numeric.dense_cap);
    const CVec psi0 = unit_state(basis, maximally_excited(basis.graph, Sublattice::A));
    const std::vector<double> prof = overlap_profile(full, psi0);
    std::vector<std::vector<double>> prows;
    prows.reserve(prof.size());
    for (int64_t k = 0; k < full.energies.size(); ++k)
        prows.push_back({full.energies[k], prof[k]});
    em.csv("overlap_profile", {"energy", "overlap"}, prows);
}

void emit_mode_overlaps_decorated(const RunConfig& cfg, Emitter& em,
                                  const ConstrainedBasis& basis,
                                  const std::vector<double>& omegas) {
    std::vector<std::vector<double>> rows;
    for (const double w : omegas) {
        const ModelSpec spec{sublattice_freq(basis.graph, w, 1.0), std::nullopt};
        const SparseReal h = build_model(basis, spec);
        const SplitPM pm = split_pm(basis, spec);
        const FsaBasis fsa = build_fsa_decorated(pm.plus, pm.minus, basis);
        const SpectrumResult full = full_diagonalize(h, cfg.numeric.dense_cap);
        const SubspaceDiagnostics diag = projected_spectrum(h, fsa, &full);
        for (int64_t k = 0; k < diag.mode_energies.size(); ++k)
            rows.push_back({w, static_cast<double>(k), diag.mode_energies[k],
                            diag.mode_overlaps[k]});
    }
    em.csv("modes", {"omega", "mode_index", "mode_energy", "max_overlap"}, rows);
}

void run_fsa(const RunConfig& cfg, Emitter& em) {
    const SiteGraph graph = build_lattice(cfg.model.lattice);
    const ConstrainedBasis basis = enumerate_basis(graph, cfg.numeric.dim_cap);
    const bool want_literal = std::count(cfg.fsa.emit.begin(), cfg.fsa.emit.end(),
                                         std::string("literal")) > 0;
    for (const auto& e : cfg.fsa.emit)
        if (e != "leakage" && e != "literal")
            throw ValidationError("unknown fsa emit field '" + e + "'");

    json summary{{"dim", basis.dim()}, {"n_sites", graph.n_sites}};

    if (cfg.fsa.su2_compare) {
        const ModelSpec model = resolve_model(graph, cfg.model);
        const SparseReal h = build_model(basis, model);
        const ModelSpec plain{uniform_freq(graph), std::nullopt};
        const SparseReal h0 = build_model(basis, plain);
        const CVec psi0 = unit_state(basis, maximally_excited(graph, Sublattice::A));
        const EvolveOptions eo = evolve_options(cfg);

        const TimeSeries fid = fidelity_series(h, psi0, cfg.numeric.t_max, cfg.numeric.dt, eo);
        const TimeSeries fid0 = fidelity_series(h0, psi0, cfg.numeric.t_max, cfg.numeric.dt, eo);
        const TimeSeries su2 = su2_reference_fidelity(graph.n_sites, fid.times);

        const RevivalReport rev = detect_first_revival(fid);
        const RevivalReport rev0 = detect_first_revival(fid0);
        const SplitPM pm = split_pm(basis, model);
        const SplitPM pm0 = split_pm(basis, plain);
        const CasimirOps cas = build_casimir(pm.plus, pm.minus, graph.n_sites, rev.t);
        const CasimirOps cas0 = build_casimir(pm0.plus, pm0.minus, graph.n_sites, rev0.t);
        const TimeSeries ct = casimir_dynamics(h, cas.c, psi0, cfg.numeric.t_max, cfg.numeric.dt, eo);
        const TimeSeries ct0 =
            casimir_dynamics(h0, cas0.c, psi0, cfg.numeric.t_max, cfg.numeric.dt, eo);

        std::vector<std::vector<double>> rows(fid.times.size());
        for (size_t k = 0; k < fid.times.size(); ++k)
            rows[k] = {fid.times[k], fid.values[k],  su2.values[k],
                       ct.values[k], fid0.values[k], ct0.values[k]};
        em.csv("su2",
               {"t", "f_exact", "f_su2", "casimir", "f_exact_reference", "casimir_reference"},
               rows);
        summary["revival"] = revival_json(rev, graph.n_sites);
        summary["revival_reference"] = revival_json(rev0, graph.n_sites);
    }

    if (cfg.fsa.scan_a && cfg.fsa.scan_b) {
        const Scan2D scan =
            scan_deformation(basis, cfg.fsa.scan_a->points(), cfg.fsa.scan_b->points());
        std::vector<std::string> columns{"a", "b", "leakage"};
        if (want_literal) columns.push_back("literal");
        std::vector<std::vector<double>> rows;
        rows.reserve(scan.grid_a.size() * scan.grid_b.size());
        for (size_t ia = 0; ia < scan.grid_a.size(); ++ia)
            for (size_t ib = 0; ib < scan.grid_b.size(); ++ib) {
                std::vector<double> row{scan.grid_a[ia], scan.grid_b[ib],
                                        scan.leakage(ia, ib)};
                if (want_literal) row.push_back(scan.literal(ia, ib));
                rows.push_back(std::move(row));
            }
        em.csv("scan", columns, rows);
        summary["scan"] = json{{"argmin_a", scan.argmin_a},
                               {"argmin_b", scan.argmin_b},
                               {"grid_argmin_a", scan.grid_a[scan.argmin_ia]},
                               {"grid_argmin_b", scan.grid_b[scan.argmin_ib]},
                               {"min_leakage", scan.min_value}};
    }

    std::vector<double> mode_omegas{1.0, 1.0};
    bool have_omega_scan = false;
    if (cfg.fsa.scan_omega) {
        const Scan1D scan = scan_decorated_frequency(basis, cfg.fsa.scan_omega->points());
        std::vector<std::string> columns{"omega", "leakage"};
        if (want_literal) columns.push_back("literal");
        std::vector<std::vector<double>> rows;
        rows.reserve(scan.grid.size());
        for (size_t i = 0; i < scan.grid.size(); ++i) {
            std::vector<double> row{scan.grid[i], scan.leakage[i]};
            if (want_literal) row.push_back(scan.literal[i]);
            rows.push_back(std::move(row));
        }
        em.csv("scan_omega", columns, rows);
        summary["scan_omega"] = json{{"argmin", scan.argmin},
                                     {"grid_argmin", scan.grid[scan.argmin_index]},
                                     {"min_leakage", scan.min_value}};
        mode_omegas = {scan.argmin, 1.0};
        have_omega_scan = true;
    }

    if (cfg.fsa.mode_overlaps) {
        if (cfg.model.lattice.kind == LatticeKind::decorated_honeycomb) {
            if (!have_omega_scan) mode_omegas = {cfg.model.freq.omega_a, 1.0};
            emit_mode_overlaps_decorated(cfg, em, basis, mode_omegas);
        } else {
            emit_mode_overlaps_square(cfg, em, basis);
        }
    }

    if (cfg.output.json) em.report("summary", summary);
}

void run_tdvp(const RunConfig& cfg, Emitter& em) {
    if (cfg.tdvp.find_omega_c) {
        const OmegaCResult res = find_omega_c(cfg.tdvp.c_a, cfg.tdvp.c_b, cfg.tdvp.epsilon,
                                              cfg.tdvp.bracket_lo, cfg.tdvp.bracket_hi);
        em.report("omega_c", json{{"omega_c", res.omega_c},
                                  {"miss", res.miss},
                                  {"iterations", res.iterations},
                                  {"c_a", cfg.tdvp.c_a},
                                  {"c_b", cfg.tdvp.c_b},
                                  {"epsilon", cfg.tdvp.epsilon}});
        return;
    }

    const double a0 = std::numbers::pi / 2 - 1e-3;
    const double b0 = 0.0;
    IntegrateOptions io;
    io.dt_out = cfg.tdvp.dt_out;

    std::vector<double> omegas = cfg.tdvp.omegas;
    if (omegas.empty()) omegas = {cfg.tdvp.omega};

    json summary;
    summary["trajectories"] = json::array();
    for (const double w : omegas) {
        TdvpParams p{cfg.tdvp.c_a, cfg.tdvp.c_b, w, cfg.tdvp.epsilon};
        const TdvpTrajectory traj = integrate(p, a0, b0, cfg.tdvp.t_max, io);
        std::vector<std::vector<double>> rows(traj.times.size());
        for (size_t k = 0; k < traj.times.size(); ++k)
            rows[k] = {traj.times[k], traj.theta_a[k], traj.theta_b[k]};
        char suffix[48];
        std::snprintf(suffix, sizeof suffix, "omega%g", w);
        em.csv(suffix, {"t", "theta_a", "theta_b"}, rows);

        json events = json::array();
        for (const auto& ev : traj.events) {
            const char* kind = ev.kind == EventKind::near_a      ? "near_a"
                               : ev.kind == EventKind::near_b    ? "near_b"
                                                                 : "near_singular";
            events.push_back(json{{"kind", kind},
                                  {"time", ev.time},
                                  {"distance", ev.distance},
                                  {"theta_a", ev.theta_a},
                                  {"theta_b", ev.theta_b}});
        }
        summary["trajectories"].push_back(json{{"omega", w}, {"events", events}});

        if (cfg.tdvp.observables) {
            const SiteGraph graph = build_lattice(cfg.model.lattice);
            const ConstrainedBasis basis = enumerate_basis(graph, cfg.numeric.dim_cap);
            const TdvpObservables obs = tdvp_observables(traj, basis);

            const SparseReal h = build_model(
                basis, ModelSpec{sublattice_freq(graph, w, 1.0), std::nullopt});
            const CVec psi0 = unit_state(basis, maximally_excited(graph, Sublattice::A));
            const uint64_t mask_a = graph.sublattice_mask(Sublattice::A);
            const uint64_t mask_b = graph.sublattice_mask(Sublattice::B);
            const double na = graph.n_sublattice(Sublattice::A);
            const double nb = graph.n_sublattice(Sublattice::B);
            const SparseOperator sy_a = build_sublattice_sigma_y(basis, Sublattice::A);
            const SparseOperator sy_b = build_sublattice_sigma_y(basis, Sublattice::B);

            std::vector<std::vector<double>> orows(traj.times.size());
            propagate(h, psi0, traj.times,
                      [&](int64_t k, const CVec& psi) {
                          double da = 0.0, db = 0.0;
                          for (int64_t i = 0; i < psi.size(); ++i) {
                              const double w2 = std::norm(psi[i]);
                              const uint64_t c = basis.configs[i];
                              da += w2 * static_cast<double>(__builtin_popcountll(c & mask_a));
                              db += w2 * static_cast<double>(__builtin_popcountll(c & mask_b));
                          }
                          orows[k] = {traj.times[k],
                                      obs.density_a[k],
                                      obs.density_b[k],
                                      obs.sigma_y_a[k],
                                      obs.sigma_y_b[k],
                                      da / na,
                                      db / nb,
                                      sy_a.expectation(psi).real(),
                                      sy_b.expectation(psi).real()};
                      },
                      evolve_options(cfg));
            char osuffix[64];
            std::snprintf(osuffix, sizeof osuffix, "observables_omega%g", w);
            em.csv(osuffix,
                   {"t", "density_a_tdvp", "density_b_tdvp", "sigma_y_a_tdvp", "sigma_y_b_tdvp",
                    "density_a_exact", "density_b_exact", "sigma_y_a_exact", "sigma_y_b_exact"},
                   orows);
        }
    }
    if (cfg.output.json) em.report("summary", summary);
}

void run_optimize(const RunConfig& cfg, Emitter& em) {
    const SiteGraph graph = build_lattice(cfg.model.lattice);
    const ConstrainedBasis basis = enumerate_basis(graph, cfg.numeric.dim_cap);
    const RevivalObjectiveOptions opts = objective_options(cfg);

    json report;
    const OptResult* opt = nullptr;
    DeformationOptimum dres;
    BoundaryOptimum bres;
    FrequencyOptimum fres;

    switch (cfg.optimize.target) {
        case OptimizeConfig::Target::deformation:
            dres = optimize_deformation(basis, cfg.optimize.max_evals, opts);
            opt = &dres.opt;
            report["params"] = json{{"a", dres.opt.params[0]}, {"b", dres.opt.params[1]}};
            report["revival"] = revival_json(dres.best, graph.n_sites);
            report["baseline"] = revival_json(dres.baseline, graph.n_sites);
            break;
        case OptimizeConfig::Target::boundary:
            bres = optimize_boundary(basis, cfg.optimize.freeze_edge, cfg.optimize.max_evals,
                                     opts);
            opt = &bres.opt;
            report["params"] =
                json{{"g_corner", bres.opt.params[0]},
                     {"g_edge", cfg.optimize.freeze_edge ? 0.0 : bres.opt.params[1]}};
            report["revival"] = revival_json(bres.best, graph.n_sites);
            report["baseline"] = revival_json(bres.baseline, graph.n_sites);
            break;
        case OptimizeConfig::Target::frequency:
            fres = optimize_frequency(basis, cfg.optimize.max_evals, opts);
            opt = &fres.opt;
            report["params"] = json{{"omega", fres.opt.params[0]}};
            report["revival"] = revival_json(fres.best, graph.n_sites);
            report["baseline"] = revival_json(fres.baseline, graph.n_sites);
            break;
    }
    report["fidelity"] = opt->objective;
    report["evals"] = opt->evals;
    report["converged"] = opt->converged;
    report["dim"] = basis.dim();

    std::vector<std::vector<double>> trace(opt->trace.size());
    for (size_t i = 0; i < opt->trace.size(); ++i)
        trace[i] = {static_cast<double>(i), opt->trace[i]};
    if (cfg.output.csv) em.csv("trace", {"iteration", "best_fidelity"}, trace);

    if (cfg.optimize.target == OptimizeConfig::Target::frequency && cfg.optimize.curve) {
        const FrequencyCurve curve =
            fidelity_vs_frequency(basis, cfg.optimize.curve->points(), opts);
        std::vector<std::vector<double>> rows(curve.omegas.size());
        for (size_t i = 0; i < curve.omegas.size(); ++i)
            rows[i] = {curve.omegas[i], curve.fidelity[i], curve.revival_time[i]};
        em.csv("curve", {"omega", "fidelity", "revival_time"}, rows);
    }
    if (cfg.output.json) em.report("report", report);
}

}  // namespace

RunOutput run(const RunConfig& config) {
    validate(config);
    Emitter em(config);
    switch (config.experiment) {
        case Experiment::evolve: run_evolve(config, em); break;
        case Experiment::spectrum: run_spectrum(config, em); break;
        case Experiment::fsa:
        case Experiment::scan: run_fsa(config, em); break;
        case Experiment::tdvp: run_tdvp(config, em); break;
        case Experiment::optimize: run_optimize(config, em); break;
    }
    return RunOutput{std::move(em.artifacts)};
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ValidationError*>(&e)) return 2;
    if (dynamic_cast<const CapExceededError*>(&e)) return 3;
    return 4;
}

}  // namespace scarlab
