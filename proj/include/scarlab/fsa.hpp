#pragma once

#include <Eigen/Dense>
#include <vector>

#include "scarlab/eigen.hpp"
#include "scarlab/evolve.hpp"
#include "scarlab/operators.hpp"

namespace scarlab {

// Forward-scattering subspace: the Krylov-like ladder generated by H+ from
// the A vacuum and H- from the B vacuum, stitched in the middle Hamming
// shell. Vectors are shell-homogeneous, so cross-chain orthogonality is
// exact by construction.

enum class ChainSource { a_side, middle, b_side };

struct FsaBasis {
    Eigen::MatrixXd vectors;         // dim x (n_sites + 1), orthonormal columns
    std::vector<double> prenorms_a;  // ||(H+)^n |M_A>||, n = 0..n_A
    std::vector<double> prenorms_b;  // ||(H-)^n |M_B>||, n = 0..n_B
    std::vector<ChainSource> labels;

    int64_t size() const { return vectors.cols(); }
};

// Equal-sublattice lattices (square, honeycomb): pure A-chain on 0..N/2-1,
// stitched middle at N/2, pure B-chain on N..N/2+1.
FsaBasis build_fsa_symmetric(const SparseReal& hp, const SparseReal& hm,
                             const ConstrainedBasis& basis);

// Decorated honeycomb: A-chain 0..3N/5-1, middle 3N/5, B-chain N..3N/5+1.
FsaBasis build_fsa_decorated(const SparseReal& hp, const SparseReal& hm,
                             const ConstrainedBasis& basis);

struct VariancePair {
    // sum_n ||(1-Q) H |n>||^2: zero exactly when the span is invariant.
    double leakage = 0.0;
    // Tr(Q H^2) - Tr(Q H)^2 with the second term the square of the trace,
    // reported alongside for comparison with the conventional expression.
    double literal = 0.0;
};

VariancePair subspace_variance(const SparseReal& h, const FsaBasis& fsa);

struct SubspaceDiagnostics {
    VariancePair variance;
    Eigen::MatrixXd projected_h;        // <n|H|m>, tridiagonal up to roundoff
    Eigen::VectorXd mode_energies;
    Eigen::MatrixXd modes;              // columns, coordinates in the FSA basis
    std::vector<double> mode_overlaps;  // per mode, max |<e|E>|^2 over exact eigenstates
};

// Diagonalizes the projected Hamiltonian and scores each approximate
// eigenmode against the exact spectrum (diagonalized here unless supplied).
SubspaceDiagnostics projected_spectrum(const SparseReal& h, const FsaBasis& fsa,
                                       const SpectrumResult* full = nullptr);

struct FrequencyCriteria {
    int c_a = 0;  // uniform connectivity of sublattice A
    int c_b = 0;
    int n_a = 0;
    int n_b = 0;
    double omega_s = 0.0;        // exact chain-norm matching at n=1: sqrt(n_B/n_A)
    double omega_general = 0.0;  // connectivity form sqrt(c_A/c_B)
};

FrequencyCriteria frequency_criteria(const SiteGraph& graph);

// One deformed model on the lattice of `basis`: H with dressing (a, b),
// symmetric FSA, both variance numbers.
VariancePair deformation_leakage(const ConstrainedBasis& basis, double a, double b);

// One frequency-detuned model on the decorated lattice: freq omega on the
// A sublattice, 1 on B, decorated FSA.
VariancePair decorated_leakage(const ConstrainedBasis& basis, double omega);

struct Scan1D {
    std::vector<double> grid;
    std::vector<double> leakage;
    std::vector<double> literal;
    int64_t argmin_index = 0;
    double argmin = 0.0;  // parabolic-refined
    double min_value = 0.0;
};

struct Scan2D {
    std::vector<double> grid_a;
    std::vector<double> grid_b;
    Eigen::MatrixXd leakage;  // grid_a.size() x grid_b.size()
    Eigen::MatrixXd literal;
    int64_t argmin_ia = 0;
    int64_t argmin_ib = 0;
    double argmin_a = 0.0;  // parabolic-refined per axis
    double argmin_b = 0.0;
    double min_value = 0.0;
};

Scan2D scan_deformation(const ConstrainedBasis& basis, const std::vector<double>& grid_a,
                        const std::vector<double>& grid_b);

Scan1D scan_decorated_frequency(const ConstrainedBasis& basis,
                                const std::vector<double>& omegas);

// |<S,S| exp(-i Sx t) |S,S>|^2 for spin S = N/2: cos(t/2)^(2N), period 2*pi.
TimeSeries su2_reference_fidelity(int n_sites, const std::vector<double>& times);

// Exact spin-(N/2) ladder generators on the (N+1)-dimensional irrep,
// normalized so sp + sm is the x generator with integer-spaced spectrum:
// the quench from the highest weight revives with period exactly 2*pi.
struct SpinGenerators {
    SparseReal sp;
    SparseReal sm;
};

SpinGenerators spin_generators(int n_sites);

// <psi(t)|C|psi(t)> on the grid {0, dt, ..., <= t_max}.
TimeSeries casimir_dynamics(const SparseReal& h, const SparseReal& casimir,
                            const CVec& psi0, double t_max, double dt,
                            const EvolveOptions& opts = {});

}  // namespace scarlab
