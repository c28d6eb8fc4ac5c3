#pragma once

#include "scarlab/operators.hpp"

namespace scarlab {

struct SpectrumResult {
    Eigen::VectorXd energies;   // ascending
    Eigen::MatrixXd vectors;    // columns match energies
};

inline constexpr int64_t kDefaultDenseCap = 20000;

SpectrumResult full_diagonalize(const SparseReal& h, int64_t dense_cap = kDefaultDenseCap);

// Bipartition by unit-cell column: sites with cell x < lx/2 on the left.
struct Bipartition {
    std::vector<int> left;
    std::vector<int> right;
};
Bipartition half_x_cut(const SiteGraph& graph);

// Von Neumann entropy of the reduced state, computed from the singular
// values of the amplitude matrix indexed by the legal restrictions of the
// configurations to each side of the cut.
double entanglement_entropy(const ConstrainedBasis& basis, const CVec& psi,
                            const Bipartition& cut);

// |<eigenstate_k | target>|^2 for every column of the spectrum.
std::vector<double> overlap_profile(const SpectrumResult& spec, const CVec& target);

// Scar-band extraction: split [E_min, E_max] into equal windows and keep the
// state of largest target overlap per window when it exceeds the floor.
struct ScarBandMember {
    int64_t eigen_index;
    double energy;
    double overlap;
};
std::vector<ScarBandMember> scar_band(const SpectrumResult& spec, const CVec& target,
                                      int windows, double floor = 1e-8);

}  // namespace scarlab
