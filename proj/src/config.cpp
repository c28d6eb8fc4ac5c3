#include "scarlab/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "scarlab/errors.hpp"

namespace scarlab {

using nlohmann::json;

namespace {

std::string fmt_error(const char* fmt, const std::string& a, const std::string& b = "") {
    char buf[256];
    std::snprintf(buf, sizeof buf, fmt, a.c_str(), b.c_str());
    return buf;
}

void require_keys(const json& obj, std::initializer_list<const char*> allowed,
                  const char* where) {
    if (!obj.is_object()) throw ValidationError(fmt_error("'%s' must be an object", where));
    for (const auto& item : obj.items()) {
        const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* k) {
            return item.key() == k;
        });
        if (!known)
            throw ValidationError(fmt_error("unknown key '%s' in %s", item.key(), where));
    }
}

template <typename T>
void read(const json& obj, const char* key, T& out) {
    if (auto it = obj.find(key); it != obj.end()) out = it->get<T>();
}

const char* to_string(LatticeKind k) {
    switch (k) {
        case LatticeKind::square: return "square";
        case LatticeKind::honeycomb: return "honeycomb";
        case LatticeKind::decorated_honeycomb: return "decorated-honeycomb";
    }
    return "square";
}

LatticeKind lattice_kind_from(const std::string& s) {
    if (s == "square") return LatticeKind::square;
    if (s == "honeycomb") return LatticeKind::honeycomb;
    if (s == "decorated-honeycomb") return LatticeKind::decorated_honeycomb;
    throw ValidationError(fmt_error("unknown lattice kind '%s'", s));
}

const char* to_string(Boundary b) {
    return b == Boundary::periodic ? "periodic" : "open";
}

Boundary boundary_from(const std::string& s) {
    if (s == "periodic") return Boundary::periodic;
    if (s == "open") return Boundary::open;
    throw ValidationError(fmt_error("unknown boundary '%s'", s));
}

const char* to_string(Experiment e) {
    switch (e) {
        case Experiment::evolve: return "evolve";
        case Experiment::spectrum: return "spectrum";
        case Experiment::fsa: return "fsa";
        case Experiment::tdvp: return "tdvp";
        case Experiment::optimize: return "optimize";
        case Experiment::scan: return "scan";
    }
    return "evolve";
}

Experiment experiment_from(const std::string& s) {
    if (s == "evolve") return Experiment::evolve;
    if (s == "spectrum") return Experiment::spectrum;
    if (s == "fsa") return Experiment::fsa;
    if (s == "tdvp") return Experiment::tdvp;
    if (s == "optimize") return Experiment::optimize;
    if (s == "scan") return Experiment::scan;
    throw ValidationError(fmt_error("unknown experiment '%s'", s));
}

const char* to_string(FreqSpec::Mode m) {
    switch (m) {
        case FreqSpec::Mode::uniform: return "uniform";
        case FreqSpec::Mode::site_class: return "site-class";
        case FreqSpec::Mode::sublattice: return "sublattice";
    }
    return "uniform";
}

FreqSpec::Mode freq_mode_from(const std::string& s) {
    if (s == "uniform") return FreqSpec::Mode::uniform;
    if (s == "site-class") return FreqSpec::Mode::site_class;
    if (s == "sublattice") return FreqSpec::Mode::sublattice;
    throw ValidationError(fmt_error("unknown frequency mode '%s'", s));
}

const char* to_string(OptimizeConfig::Target t) {
    switch (t) {
        case OptimizeConfig::Target::deformation: return "deformation";
        case OptimizeConfig::Target::boundary: return "boundary";
        case OptimizeConfig::Target::frequency: return "frequency";
    }
    return "deformation";
}

OptimizeConfig::Target opt_target_from(const std::string& s) {
    if (s == "deformation") return OptimizeConfig::Target::deformation;
    if (s == "boundary") return OptimizeConfig::Target::boundary;
    if (s == "frequency") return OptimizeConfig::Target::frequency;
    throw ValidationError(fmt_error("unknown optimization target '%s'", s));
}

GridSpec grid_from(const json& j, const char* where) {
    require_keys(j, {"start", "stop", "step"}, where);
    GridSpec g;
    read(j, "start", g.start);
    read(j, "stop", g.stop);
    read(j, "step", g.step);
    return g;
}

json grid_to_json(const GridSpec& g) {
    return json{{"start", g.start}, {"stop", g.stop}, {"step", g.step}};
}

LatticeSpec lattice_from(const json& j) {
    require_keys(j, {"kind", "lx", "ly", "boundary"}, "lattice");
    LatticeSpec s;
    if (auto it = j.find("kind"); it != j.end()) s.kind = lattice_kind_from(it->get<std::string>());
    read(j, "lx", s.lx);
    read(j, "ly", s.ly);
    if (auto it = j.find("boundary"); it != j.end())
        s.boundary = boundary_from(it->get<std::string>());
    return s;
}

FreqSpec freq_from(const json& j) {
    require_keys(j, {"mode", "uniform", "corner", "edge", "bulk", "omega_a", "omega_b"}, "freq");
    FreqSpec f;
    if (auto it = j.find("mode"); it != j.end()) f.mode = freq_mode_from(it->get<std::string>());
    read(j, "uniform", f.uniform);
    read(j, "corner", f.corner);
    read(j, "edge", f.edge);
    read(j, "bulk", f.bulk);
    read(j, "omega_a", f.omega_a);
    read(j, "omega_b", f.omega_b);
    return f;
}

ModelConfig model_from(const json& j) {
    require_keys(j, {"lattice", "freq", "deformation"}, "model");
    ModelConfig m;
    if (auto it = j.find("lattice"); it != j.end()) m.lattice = lattice_from(*it);
    if (auto it = j.find("freq"); it != j.end()) m.freq = freq_from(*it);
    if (auto it = j.find("deformation"); it != j.end()) {
        require_keys(*it, {"a", "b"}, "model.deformation");
        Deformation d;
        read(*it, "a", d.a);
        read(*it, "b", d.b);
        m.deform = d;
    }
    return m;
}

}  // namespace

const char* experiment_name(Experiment e) { return to_string(e); }

std::vector<double> GridSpec::points() const {
    if (!(step > 0.0)) throw ValidationError("grid step must be positive");
    if (stop < start) throw ValidationError("grid stop must not precede start");
    std::vector<double> out;
    const int64_t n = static_cast<int64_t>(std::floor((stop - start) / step + 0.5)) + 1;
    out.reserve(n);
    for (int64_t i = 0; i < n; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
}

RunConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(fmt_error("config is not valid JSON: %s", e.what()));
    }
    require_keys(j,
                 {"experiment", "model", "numeric", "evolve", "spectrum", "fsa", "tdvp",
                  "optimize", "output", "preset"},
                 "config");

    RunConfig c;
    if (auto it = j.find("experiment"); it != j.end())
        c.experiment = experiment_from(it->get<std::string>());
    if (auto it = j.find("model"); it != j.end()) c.model = model_from(*it);

    if (auto it = j.find("numeric"); it != j.end()) {
        require_keys(*it, {"dt", "t_max", "tol", "krylov_dim", "dim_cap", "dense_cap"}, "numeric");
        read(*it, "dt", c.numeric.dt);
        read(*it, "t_max", c.numeric.t_max);
        read(*it, "tol", c.numeric.tol);
        read(*it, "krylov_dim", c.numeric.krylov_dim);
        read(*it, "dim_cap", c.numeric.dim_cap);
        read(*it, "dense_cap", c.numeric.dense_cap);
    }
    if (auto it = j.find("evolve"); it != j.end()) {
        require_keys(*it, {"observables", "compare_undeformed"}, "evolve");
        read(*it, "observables", c.evolve.observables);
        read(*it, "compare_undeformed", c.evolve.compare_undeformed);
    }
    if (auto it = j.find("spectrum"); it != j.end()) {
        require_keys(*it, {"emit"}, "spectrum");
        read(*it, "emit", c.spectrum.emit);
    }
    if (auto it = j.find("fsa"); it != j.end()) {
        require_keys(*it, {"su2_compare", "mode_overlaps", "scan_a", "scan_b", "scan_omega",
                           "emit", "compare"},
                     "fsa");
        read(*it, "su2_compare", c.fsa.su2_compare);
        read(*it, "mode_overlaps", c.fsa.mode_overlaps);
        if (auto g = it->find("scan_a"); g != it->end()) c.fsa.scan_a = grid_from(*g, "fsa.scan_a");
        if (auto g = it->find("scan_b"); g != it->end()) c.fsa.scan_b = grid_from(*g, "fsa.scan_b");
        if (auto g = it->find("scan_omega"); g != it->end())
            c.fsa.scan_omega = grid_from(*g, "fsa.scan_omega");
        read(*it, "emit", c.fsa.emit);
        if (auto g = it->find("compare"); g != it->end()) {
            if (!g->is_array()) throw ValidationError("'fsa.compare' must be an array");
            for (const auto& e : *g) {
                require_keys(e, {"a", "b"}, "fsa.compare[]");
                Deformation d;
                read(e, "a", d.a);
                read(e, "b", d.b);
                c.fsa.compare.push_back(d);
            }
        }
    }
    if (auto it = j.find("tdvp"); it != j.end()) {
        require_keys(*it,
                     {"c_a", "c_b", "omega", "epsilon", "t_max", "dt_out", "omegas",
                      "find_omega_c", "bracket_lo", "bracket_hi", "observables"},
                     "tdvp");
        read(*it, "c_a", c.tdvp.c_a);
        read(*it, "c_b", c.tdvp.c_b);
        read(*it, "omega", c.tdvp.omega);
        read(*it, "epsilon", c.tdvp.epsilon);
        read(*it, "t_max", c.tdvp.t_max);
        read(*it, "dt_out", c.tdvp.dt_out);
        read(*it, "omegas", c.tdvp.omegas);
        read(*it, "find_omega_c", c.tdvp.find_omega_c);
        read(*it, "bracket_lo", c.tdvp.bracket_lo);
        read(*it, "bracket_hi", c.tdvp.bracket_hi);
        read(*it, "observables", c.tdvp.observables);
    }
    if (auto it = j.find("optimize"); it != j.end()) {
        require_keys(*it, {"target", "max_evals", "freeze_edge", "curve"}, "optimize");
        if (auto t = it->find("target"); t != it->end())
            c.optimize.target = opt_target_from(t->get<std::string>());
        read(*it, "max_evals", c.optimize.max_evals);
        read(*it, "freeze_edge", c.optimize.freeze_edge);
        if (auto g = it->find("curve"); g != it->end())
            c.optimize.curve = grid_from(*g, "optimize.curve");
    }
    if (auto it = j.find("output"); it != j.end()) {
        require_keys(*it, {"dir", "prefix", "csv", "json"}, "output");
        read(*it, "dir", c.output.dir);
        read(*it, "prefix", c.output.prefix);
        read(*it, "csv", c.output.csv);
        read(*it, "json", c.output.json);
    }
    read(j, "preset", c.preset);

    validate(c);
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError(fmt_error("cannot open config file '%s'", path));
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string dump_config(const RunConfig& c) {
    json j;
    j["experiment"] = to_string(c.experiment);

    json lat{{"kind", to_string(c.model.lattice.kind)},
             {"lx", c.model.lattice.lx},
             {"ly", c.model.lattice.ly},
             {"boundary", to_string(c.model.lattice.boundary)}};
    json freq{{"mode", to_string(c.model.freq.mode)},   {"uniform", c.model.freq.uniform},
              {"corner", c.model.freq.corner},          {"edge", c.model.freq.edge},
              {"bulk", c.model.freq.bulk},              {"omega_a", c.model.freq.omega_a},
              {"omega_b", c.model.freq.omega_b}};
    j["model"] = json{{"lattice", lat}, {"freq", freq}};
    if (c.model.deform)
        j["model"]["deformation"] = json{{"a", c.model.deform->a}, {"b", c.model.deform->b}};

    j["numeric"] = json{{"dt", c.numeric.dt},
                        {"t_max", c.numeric.t_max},
                        {"tol", c.numeric.tol},
                        {"krylov_dim", c.numeric.krylov_dim},
                        {"dim_cap", c.numeric.dim_cap},
                        {"dense_cap", c.numeric.dense_cap}};
    j["evolve"] = json{{"observables", c.evolve.observables},
                       {"compare_undeformed", c.evolve.compare_undeformed}};
    j["spectrum"] = json{{"emit", c.spectrum.emit}};

    json fsa{{"su2_compare", c.fsa.su2_compare},
             {"mode_overlaps", c.fsa.mode_overlaps},
             {"emit", c.fsa.emit}};
    if (c.fsa.scan_a) fsa["scan_a"] = grid_to_json(*c.fsa.scan_a);
    if (c.fsa.scan_b) fsa["scan_b"] = grid_to_json(*c.fsa.scan_b);
    if (c.fsa.scan_omega) fsa["scan_omega"] = grid_to_json(*c.fsa.scan_omega);
    if (!c.fsa.compare.empty()) {
        json arr = json::array();
        for (const auto& d : c.fsa.compare) arr.push_back(json{{"a", d.a}, {"b", d.b}});
        fsa["compare"] = arr;
    }
    j["fsa"] = fsa;

    j["tdvp"] = json{{"c_a", c.tdvp.c_a},
                     {"c_b", c.tdvp.c_b},
                     {"omega", c.tdvp.omega},
                     {"epsilon", c.tdvp.epsilon},
                     {"t_max", c.tdvp.t_max},
                     {"dt_out", c.tdvp.dt_out},
                     {"omegas", c.tdvp.omegas},
                     {"find_omega_c", c.tdvp.find_omega_c},
                     {"bracket_lo", c.tdvp.bracket_lo},
                     {"bracket_hi", c.tdvp.bracket_hi},
                     {"observables", c.tdvp.observables}};

    json opt{{"target", to_string(c.optimize.target)},
             {"max_evals", c.optimize.max_evals},
             {"freeze_edge", c.optimize.freeze_edge}};
    if (c.optimize.curve) opt["curve"] = grid_to_json(*c.optimize.curve);
    j["optimize"] = opt;

    j["output"] = json{{"dir", c.output.dir},
                       {"prefix", c.output.prefix},
                       {"csv", c.output.csv},
                       {"json", c.output.json}};
    if (!c.preset.empty()) j["preset"] = c.preset;
    return j.dump(2);
}

uint64_t config_hash(const RunConfig& c) {
    const std::string s = dump_config(c);
    uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (const unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

std::string config_hash_hex(const RunConfig& c) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(config_hash(c)));
    return buf;
}

void validate(const RunConfig& c) {
    const auto& lat = c.model.lattice;
    if (lat.lx < 1 || lat.ly < 1) throw ValidationError("lattice extents must be positive");
    if (!(c.numeric.dt > 0.0)) throw ValidationError("dt must be positive");
    if (!(c.numeric.t_max > 0.0)) throw ValidationError("t_max must be positive");
    if (!(c.numeric.tol > 0.0)) throw ValidationError("tolerance must be positive");
    if (c.numeric.krylov_dim < 2) throw ValidationError("krylov_dim must be at least 2");
    if (c.numeric.dim_cap < 1) throw ValidationError("dim_cap must be positive");
    if (c.numeric.dense_cap < 1) throw ValidationError("dense_cap must be positive");
    if (c.optimize.max_evals < 1) throw ValidationError("max_evals must be positive");
    if (!(c.tdvp.dt_out > 0.0)) throw ValidationError("tdvp dt_out must be positive");
    if (c.tdvp.c_a < 1.0 || c.tdvp.c_b < 1.0)
        throw ValidationError("coordination exponents must be at least 1");
    if (c.tdvp.epsilon < 0.0) throw ValidationError("regularization must be nonnegative");
    if (c.tdvp.find_omega_c && !(c.tdvp.bracket_lo < c.tdvp.bracket_hi))
        throw ValidationError("frequency bracket must satisfy lo < hi");
    for (const auto& obs : c.evolve.observables) {
        if (obs == "fidelity" || obs == "domainwall") continue;
        if (obs.rfind("site:", 0) == 0) continue;
        throw ValidationError(fmt_error("unknown observable '%s'", obs));
    }
    if (c.fsa.scan_a.has_value() != c.fsa.scan_b.has_value())
        throw ValidationError("deformation scans need both scan_a and scan_b");
    if (c.output.dir.empty()) throw ValidationError("output dir must not be empty");
}

std::vector<double> resolve_freq(const SiteGraph& graph, const FreqSpec& freq) {
    switch (freq.mode) {
        case FreqSpec::Mode::uniform: return uniform_freq(graph, freq.uniform);
        case FreqSpec::Mode::site_class: return class_freq(graph, freq.corner, freq.edge, freq.bulk);
        case FreqSpec::Mode::sublattice:
            return sublattice_freq(graph, freq.omega_a, freq.omega_b);
    }
    return uniform_freq(graph);
}

ModelSpec resolve_model(const SiteGraph& graph, const ModelConfig& model) {
    return ModelSpec{resolve_freq(graph, model.freq), model.deform};
}

namespace {

RunConfig base_square(int l, Boundary b) {
    RunConfig c;
    c.model.lattice = LatticeSpec{LatticeKind::square, l, l, b};
    return c;
}

RunConfig make_preset(const std::string& name) {
    if (name == "fig1b-4x4") {
        RunConfig c = base_square(4, Boundary::periodic);
        c.experiment = Experiment::evolve;
        c.model.deform = Deformation{0.0244, 0.0506};
        c.evolve.observables = {"fidelity"};
        c.evolve.compare_undeformed = true;
        c.numeric.t_max = 20.0;
        c.numeric.dt = 0.01;
        return c;
    }
    if (name == "fig2b") {
        RunConfig c;
        c.experiment = Experiment::tdvp;
        c.model.lattice = LatticeSpec{LatticeKind::decorated_honeycomb, 2, 2, Boundary::periodic};
        c.tdvp.epsilon = 4e-4;
        c.tdvp.t_max = 50.0;
        c.tdvp.omegas = {0.7, 0.8, 0.841, 0.9, 1.0};
        return c;
    }
    if (name == "fig2c") {
        RunConfig c;
        c.experiment = Experiment::optimize;
        c.model.lattice = LatticeSpec{LatticeKind::decorated_honeycomb, 2, 2, Boundary::periodic};
        c.model.freq.mode = FreqSpec::Mode::sublattice;
        c.optimize.target = OptimizeConfig::Target::frequency;
        c.optimize.max_evals = 120;
        c.optimize.curve = GridSpec{0.70, 1.00, 0.01};
        return c;
    }
    if (name == "fig3b-4x4") {
        RunConfig c = base_square(4, Boundary::open);
        c.experiment = Experiment::evolve;
        c.model.freq.mode = FreqSpec::Mode::site_class;
        c.model.freq.corner = 1.0 - 0.12;
        c.evolve.observables = {"domainwall"};
        c.evolve.compare_undeformed = true;
        c.numeric.t_max = 20.0;
        c.numeric.dt = 0.02;
        return c;
    }
    if (name == "figS1") {
        RunConfig c = base_square(4, Boundary::periodic);
        c.experiment = Experiment::fsa;
        c.fsa.scan_a = GridSpec{0.0, 0.05, 0.0025};
        c.fsa.scan_b = GridSpec{0.0, 0.08, 0.0025};
        return c;
    }
    if (name == "figS2") {
        RunConfig c = base_square(4, Boundary::periodic);
        c.experiment = Experiment::fsa;
        c.fsa.mode_overlaps = true;
        c.model.deform = Deformation{0.0244, 0.0506};
        c.fsa.compare = {Deformation{0.0217, 0.0556}};
        return c;
    }
    if (name == "figS3") {
        RunConfig c = base_square(4, Boundary::periodic);
        c.experiment = Experiment::fsa;
        c.fsa.su2_compare = true;
        c.model.deform = Deformation{0.0244, 0.0506};
        c.numeric.t_max = 15.0;
        c.numeric.dt = 0.01;
        return c;
    }
    if (name == "figS5") {
        RunConfig c;
        c.experiment = Experiment::tdvp;
        c.model.lattice = LatticeSpec{LatticeKind::decorated_honeycomb, 2, 2, Boundary::periodic};
        c.model.freq.mode = FreqSpec::Mode::sublattice;
        c.tdvp.omega = 0.841;
        c.tdvp.epsilon = 4e-4;
        c.tdvp.t_max = 30.0;
        c.tdvp.dt_out = 0.05;
        c.tdvp.observables = true;
        return c;
    }
    if (name == "figS6") {
        RunConfig c;
        c.experiment = Experiment::fsa;
        c.model.lattice = LatticeSpec{LatticeKind::decorated_honeycomb, 2, 2, Boundary::periodic};
        c.model.freq.mode = FreqSpec::Mode::sublattice;
        c.fsa.scan_omega = GridSpec{0.70, 1.00, 0.0025};
        return c;
    }
    if (name == "honeycomb18") {
        RunConfig c;
        c.experiment = Experiment::optimize;
        c.model.lattice = LatticeSpec{LatticeKind::honeycomb, 3, 3, Boundary::periodic};
        c.optimize.target = OptimizeConfig::Target::deformation;
        c.optimize.max_evals = 250;
        return c;
    }
    if (name == "honeycomb32") {
        RunConfig c;
        c.experiment = Experiment::evolve;
        c.model.lattice = LatticeSpec{LatticeKind::honeycomb, 4, 4, Boundary::periodic};
        c.model.deform = Deformation{0.03037, 0.06203};
        c.evolve.observables = {"fidelity"};
        c.numeric.t_max = 8.0;
        c.numeric.dt = 0.02;
        return c;
    }
    return RunConfig{};  // unreachable; callers check the catalog first
}

int edit_distance(const std::string& a, const std::string& b) {
    std::vector<int> prev(b.size() + 1), cur(b.size() + 1);
    for (size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<int>(j);
    for (size_t i = 1; i <= a.size(); ++i) {
        cur[0] = static_cast<int>(i);
        for (size_t j = 1; j <= b.size(); ++j) {
            const int sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

}  // namespace

std::vector<PresetInfo> list_presets() {
    return {
        {"fig1b-4x4",
         "Square 4x4 periodic: fidelity revivals of the plain and the optimally deformed model"},
        {"fig2b",
         "Variational flow trajectories for several sublattice frequency ratios, regularized at "
         "4e-4"},
        {"fig2c",
         "Decorated honeycomb 20 sites: first-revival fidelity against the frequency ratio"},
        {"fig3b-4x4",
         "Square 4x4 open: domain-wall dynamics with and without the corner frequency reduction"},
        {"figS1", "Square 4x4 periodic: subspace leakage over the deformation plane"},
        {"figS2",
         "Square 4x4 periodic: projected eigenmode overlaps with exact eigenstates for reference "
         "deformations"},
        {"figS3",
         "Square 4x4 periodic: exact revivals against the su(2) reference plus Casimir dynamics"},
        {"figS5",
         "Decorated honeycomb 20 sites: variational vs exact local observables at the critical "
         "frequency"},
        {"figS6", "Decorated honeycomb 20 sites: subspace leakage against frequency detuning"},
        {"honeycomb18", "Honeycomb 18 sites periodic: deformation optimization of the revival"},
        {"honeycomb32",
         "Honeycomb 32 sites periodic: one deformed evolution through the first revival"},
    };
}

RunConfig preset_config(const std::string& name) {
    const auto catalog = list_presets();
    const bool known = std::any_of(catalog.begin(), catalog.end(),
                                   [&](const PresetInfo& p) { return p.name == name; });
    if (!known) {
        std::string best;
        int best_d = 1 << 20;
        for (const auto& p : catalog) {
            const int d = edit_distance(name, p.name);
            if (d < best_d) {
                best_d = d;
                best = p.name;
            }
        }
        throw ValidationError(fmt_error("unknown preset '%s' (closest match: '%s')", name, best));
    }
    RunConfig c = make_preset(name);
    c.preset = name;
    c.output.prefix = name;
    validate(c);
    return c;
}

}  // namespace scarlab
