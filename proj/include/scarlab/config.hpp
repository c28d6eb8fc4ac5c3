#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scarlab/lattice.hpp"
#include "scarlab/operators.hpp"

namespace scarlab {

inline constexpr const char* kVersion = "0.1.0";

// Site frequencies, one scheme at a time: a single value everywhere, values
// by site class (open lattices), or values by sublattice.
struct FreqSpec {
    enum class Mode { uniform, site_class, sublattice };
    Mode mode = Mode::uniform;
    double uniform = 1.0;
    double corner = 1.0, edge = 1.0, bulk = 1.0;
    double omega_a = 1.0, omega_b = 1.0;
};

struct ModelConfig {
    LatticeSpec lattice;
    FreqSpec freq;
    std::optional<Deformation> deform;
};

enum class Experiment { evolve, spectrum, fsa, tdvp, optimize, scan };

struct NumericConfig {
    double dt = 0.01;
    double t_max = 20.0;
    double tol = 1e-10;
    int krylov_dim = 30;
    int64_t dim_cap = 4'000'000;
    int64_t dense_cap = 2048;
};

struct GridSpec {
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;
    std::vector<double> points() const;
};

// evolve: which series to emit.
struct EvolveConfig {
    std::vector<std::string> observables = {"fidelity"};  // fidelity, domainwall, site:<idx>:<kind>
    bool compare_undeformed = false;  // add a second column for the unmodified model
};

// spectrum: what to compute from full diagonalization.
struct SpectrumConfig {
    std::vector<std::string> emit = {"energies", "entropy", "overlap"};
};

// fsa: deformation / frequency scans and the su(2) comparison.
struct FsaConfig {
    bool su2_compare = false;
    bool mode_overlaps = false;          // projected eigenmodes vs full spectrum
    std::optional<GridSpec> scan_a;      // square deformation scan
    std::optional<GridSpec> scan_b;
    std::optional<GridSpec> scan_omega;  // decorated frequency scan
    std::vector<std::string> emit = {"leakage", "literal"};
    std::vector<Deformation> compare;  // extra deformations for the overlap report
};

struct TdvpConfig {
    int c_a = 2;
    int c_b = 3;
    double omega = 1.0;
    double epsilon = 0.0;
    double t_max = 50.0;
    double dt_out = 0.01;
    std::vector<double> omegas;  // when set, one trajectory per value
    bool find_omega_c = false;
    double bracket_lo = 0.7;
    double bracket_hi = 1.0;
    bool observables = false;  // sample lattice observables along the trajectory
};

struct OptimizeConfig {
    enum class Target { deformation, boundary, frequency };
    Target target = Target::deformation;
    int max_evals = 400;
    bool freeze_edge = false;
    std::optional<GridSpec> curve;  // frequency target: also emit F_T(omega)
};

struct OutputConfig {
    std::string dir = "out";
    std::string prefix;  // defaults to the experiment name
    bool csv = true;
    bool json = true;
};

struct RunConfig {
    Experiment experiment = Experiment::evolve;
    ModelConfig model;
    NumericConfig numeric;
    EvolveConfig evolve;
    SpectrumConfig spectrum;
    FsaConfig fsa;
    TdvpConfig tdvp;
    OptimizeConfig optimize;
    OutputConfig output;
    std::string preset;  // informational: the preset this config came from
};

const char* experiment_name(Experiment e);

// Strict JSON round trip: parsing rejects unknown keys at every level and
// validates ranges before any computation starts.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);
std::string dump_config(const RunConfig& config);

// FNV-1a over the canonical serialization; stable across runs.
uint64_t config_hash(const RunConfig& config);
std::string config_hash_hex(const RunConfig& config);

void validate(const RunConfig& config);

std::vector<double> resolve_freq(const SiteGraph& graph, const FreqSpec& freq);
ModelSpec resolve_model(const SiteGraph& graph, const ModelConfig& model);

struct PresetInfo {
    std::string name;
    std::string description;
};

std::vector<PresetInfo> list_presets();
RunConfig preset_config(const std::string& name);  // unknown name: suggests the closest

}  // namespace scarlab
