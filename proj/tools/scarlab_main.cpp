#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "scarlab/basis.hpp"
#include "scarlab/config.hpp"
#include "scarlab/errors.hpp"
#include "scarlab/run.hpp"

namespace {

using scarlab::RunConfig;

struct CommonFlags {
    std::string preset;
    std::string config;
    std::string out;
    int threads = 0;
    int64_t dim_cap = 0;
};

void add_common(CLI::App* sub, CommonFlags& c) {
    sub->add_option("--preset", c.preset, "named preset configuration");
    sub->add_option("--config,--model", c.config, "path to a JSON config file");
    sub->add_option("--out", c.out, "output directory");
    sub->add_option("--threads", c.threads, "worker thread cap")->check(CLI::PositiveNumber);
    sub->add_option("--dim-cap", c.dim_cap, "constrained-space dimension cap")
        ->check(CLI::PositiveNumber);
}

RunConfig base_config(const CommonFlags& c, scarlab::Experiment e) {
    RunConfig cfg;
    if (!c.preset.empty() && !c.config.empty())
        throw scarlab::ValidationError("--preset and --config are mutually exclusive");
    if (!c.preset.empty()) {
        cfg = scarlab::preset_config(c.preset);
        const bool scan_alias = cfg.experiment == scarlab::Experiment::scan &&
                                e == scarlab::Experiment::fsa;
        if (cfg.experiment != e && !scan_alias)
            throw scarlab::ValidationError("preset '" + c.preset +
                                           "' belongs to a different subcommand");
    } else if (!c.config.empty()) {
        cfg = scarlab::load_config(c.config);
        cfg.experiment = e;
    } else {
        cfg.experiment = e;
    }
    if (!c.out.empty()) cfg.output.dir = c.out;
    if (c.dim_cap > 0) cfg.numeric.dim_cap = c.dim_cap;
    return cfg;
}

scarlab::GridSpec parse_grid(const std::string& text, const std::string& where) {
    scarlab::GridSpec g;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &g.start, &g.stop, &g.step) != 3)
        throw scarlab::ValidationError("scan range '" + where +
                                       "' must have the form start:stop:step");
    return g;
}

void apply_scan(const std::string& spec, scarlab::FsaConfig& fsa) {
    size_t pos = 0;
    while (pos < spec.size()) {
        size_t next = spec.find(',', pos);
        if (next == std::string::npos) next = spec.size();
        const std::string token = spec.substr(pos, next - pos);
        const size_t eq = token.find('=');
        if (eq == std::string::npos)
            throw scarlab::ValidationError("scan entry '" + token +
                                           "' must have the form key=start:stop:step");
        const std::string key = token.substr(0, eq);
        const scarlab::GridSpec g = parse_grid(token.substr(eq + 1), token);
        if (key == "a")
            fsa.scan_a = g;
        else if (key == "b")
            fsa.scan_b = g;
        else if (key == "omega")
            fsa.scan_omega = g;
        else
            throw scarlab::ValidationError("unknown scan axis '" + key + "'");
        pos = next + 1;
    }
}

int execute(const RunConfig& cfg) {
    const scarlab::RunOutput out = scarlab::run(cfg);
    for (const auto& path : out.artifacts) std::printf("%s\n", path.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"constrained lattice dynamics: evolution, subspace analysis, variational flow "
                 "and revival optimization"};
    app.require_subcommand(1);
    int exit_code = 0;

    // evolve
    auto* evolve = app.add_subcommand("evolve", "time evolution of configured observables");
    CommonFlags evolve_common;
    add_common(evolve, evolve_common);
    std::optional<double> evolve_tmax, evolve_dt;
    std::vector<std::string> evolve_obs;
    bool evolve_compare = false;
    evolve->add_option("--t-max", evolve_tmax, "evolution horizon");
    evolve->add_option("--dt", evolve_dt, "output grid spacing");
    evolve->add_option("--observables", evolve_obs, "fidelity,domainwall,site:<idx>:<kind>")
        ->delimiter(',');
    evolve->add_flag("--compare-reference", evolve_compare,
                     "also evolve the unmodified model for reference columns");
    evolve->callback([&] {
        RunConfig cfg = base_config(evolve_common, scarlab::Experiment::evolve);
        if (evolve_tmax) cfg.numeric.t_max = *evolve_tmax;
        if (evolve_dt) cfg.numeric.dt = *evolve_dt;
        if (!evolve_obs.empty()) cfg.evolve.observables = evolve_obs;
        if (evolve_compare) cfg.evolve.compare_undeformed = true;
        exit_code = execute(cfg);
    });

    // spectrum
    auto* spectrum = app.add_subcommand("spectrum", "full diagonalization reports");
    CommonFlags spectrum_common;
    add_common(spectrum, spectrum_common);
    std::vector<std::string> spectrum_emit;
    std::string spectrum_cut = "half-x";
    spectrum->add_option("--emit", spectrum_emit, "energies,entropy,overlap")->delimiter(',');
    spectrum->add_option("--cut", spectrum_cut, "bipartition for the entropy column");
    spectrum->callback([&] {
        if (spectrum_cut != "half-x")
            throw scarlab::ValidationError("only the half-x bipartition is available");
        RunConfig cfg = base_config(spectrum_common, scarlab::Experiment::spectrum);
        if (!spectrum_emit.empty()) cfg.spectrum.emit = spectrum_emit;
        exit_code = execute(cfg);
    });

    // fsa
    auto* fsa = app.add_subcommand("fsa", "forward-scattering subspace diagnostics");
    CommonFlags fsa_common;
    add_common(fsa, fsa_common);
    std::string fsa_scan;
    std::vector<std::string> fsa_emit;
    bool fsa_su2 = false, fsa_modes = false;
    fsa->add_option("--scan", fsa_scan, "a=0:0.05:0.005,b=0:0.08:0.005 or omega=0.7:1:0.005");
    fsa->add_option("--emit", fsa_emit, "leakage,literal")->delimiter(',');
    fsa->add_flag("--su2-compare", fsa_su2, "exact vs su(2) revivals plus Casimir dynamics");
    fsa->add_flag("--mode-overlaps", fsa_modes, "projected eigenmodes scored against the "
                                                "exact spectrum");
    fsa->callback([&] {
        RunConfig cfg = base_config(fsa_common, scarlab::Experiment::fsa);
        if (!fsa_scan.empty()) apply_scan(fsa_scan, cfg.fsa);
        if (!fsa_emit.empty()) cfg.fsa.emit = fsa_emit;
        if (fsa_su2) cfg.fsa.su2_compare = true;
        if (fsa_modes) cfg.fsa.mode_overlaps = true;
        exit_code = execute(cfg);
    });

    // tdvp
    auto* tdvp = app.add_subcommand("tdvp", "variational flow on the angle manifold");
    CommonFlags tdvp_common;
    add_common(tdvp, tdvp_common);
    std::optional<int> ca, cb;
    std::optional<double> omega, eps, tmax;
    std::vector<double> bracket;
    bool find_wc = false, tdvp_obs = false;
    tdvp->add_option("--ca", ca, "A-sublattice connectivity exponent");
    tdvp->add_option("--cb", cb, "B-sublattice connectivity exponent");
    tdvp->add_option("--omega", omega, "A-sublattice frequency ratio");
    tdvp->add_option("--eps", eps, "tangent regularization");
    tdvp->add_option("--t-max", tmax, "integration horizon");
    tdvp->add_flag("--find-omega-c", find_wc, "bisect the separatrix frequency");
    tdvp->add_option("--bracket", bracket, "lo,hi bracket for --find-omega-c")->delimiter(',');
    tdvp->add_flag("--observables", tdvp_obs, "sample lattice observables along the trajectory");
    tdvp->callback([&] {
        RunConfig cfg = base_config(tdvp_common, scarlab::Experiment::tdvp);
        if (ca) cfg.tdvp.c_a = *ca;
        if (cb) cfg.tdvp.c_b = *cb;
        if (omega) cfg.tdvp.omega = *omega;
        if (eps) cfg.tdvp.epsilon = *eps;
        if (tmax) cfg.tdvp.t_max = *tmax;
        if (find_wc) cfg.tdvp.find_omega_c = true;
        if (!bracket.empty()) {
            if (bracket.size() != 2)
                throw scarlab::ValidationError("--bracket needs exactly two values");
            cfg.tdvp.bracket_lo = bracket[0];
            cfg.tdvp.bracket_hi = bracket[1];
        }
        if (tdvp_obs) cfg.tdvp.observables = true;
        exit_code = execute(cfg);
    });

    // optimize
    auto* optimize = app.add_subcommand("optimize", "revival fidelity maximization");
    CommonFlags opt_common;
    add_common(optimize, opt_common);
    std::string opt_target;
    std::optional<int> opt_evals;
    bool opt_freeze = false;
    optimize->add_option("--target", opt_target, "deformation|boundary|frequency");
    optimize->add_option("--max-evals", opt_evals, "objective evaluation budget");
    optimize->add_flag("--freeze-edge", opt_freeze, "boundary target: corners only");
    optimize->callback([&] {
        RunConfig cfg = base_config(opt_common, scarlab::Experiment::optimize);
        if (!opt_target.empty()) {
            if (opt_target == "deformation")
                cfg.optimize.target = scarlab::OptimizeConfig::Target::deformation;
            else if (opt_target == "boundary")
                cfg.optimize.target = scarlab::OptimizeConfig::Target::boundary;
            else if (opt_target == "frequency")
                cfg.optimize.target = scarlab::OptimizeConfig::Target::frequency;
            else
                throw scarlab::ValidationError("unknown optimization target '" + opt_target + "'");
        }
        if (opt_evals) cfg.optimize.max_evals = *opt_evals;
        if (opt_freeze) cfg.optimize.freeze_edge = true;
        exit_code = execute(cfg);
    });

    // presets
    auto* presets = app.add_subcommand("presets", "list the preset catalog");
    presets->callback([&] {
        for (const auto& p : scarlab::list_presets())
            std::printf("%-14s %s\n", p.name.c_str(), p.description.c_str());
    });

    // graph dump
    auto* graph = app.add_subcommand("graph", "dump the configured lattice as JSON");
    CommonFlags graph_common;
    add_common(graph, graph_common);
    graph->callback([&] {
        RunConfig cfg;
        if (!graph_common.preset.empty())
            cfg = scarlab::preset_config(graph_common.preset);
        else if (!graph_common.config.empty())
            cfg = scarlab::load_config(graph_common.config);
        const scarlab::SiteGraph g = scarlab::build_lattice(cfg.model.lattice);
        std::printf("%s\n", scarlab::graph_to_json(g).c_str());
    });

    // operator dump
    auto* opdump = app.add_subcommand("operator", "dump the model matrix as sparse CSV");
    CommonFlags op_common;
    add_common(opdump, op_common);
    opdump->callback([&] {
        RunConfig cfg;
        if (!op_common.preset.empty())
            cfg = scarlab::preset_config(op_common.preset);
        else if (!op_common.config.empty())
            cfg = scarlab::load_config(op_common.config);
        if (op_common.dim_cap > 0) cfg.numeric.dim_cap = op_common.dim_cap;
        const scarlab::SiteGraph g = scarlab::build_lattice(cfg.model.lattice);
        const scarlab::ConstrainedBasis basis = scarlab::enumerate_basis(g, cfg.numeric.dim_cap);
        const scarlab::SparseReal h =
            scarlab::build_model(basis, scarlab::resolve_model(g, cfg.model));
        std::printf("row,col,re,im\n");
        for (int64_t r = 0; r < h.n; ++r)
            for (int64_t k = h.rowptr[r]; k < h.rowptr[r + 1]; ++k)
                std::printf("%lld,%d,%.17g,0\n", static_cast<long long>(r), h.cols[k],
                            h.vals[k]);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return scarlab::exit_code_for(e);
    }
    return exit_code;
}
