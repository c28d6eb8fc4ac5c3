#include "scarlab/eigen.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "scarlab/errors.hpp"

namespace scarlab {

SpectrumResult full_diagonalize(const SparseReal& h, int64_t dense_cap) {
    if (h.n > dense_cap)
        throw CapExceededError("dimension " + std::to_string(h.n) +
                               " exceeds dense diagonalization cap " +
                               std::to_string(dense_cap));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.to_dense());
    if (solver.info() != Eigen::Success)
        throw NumericalError("dense eigendecomposition failed");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

Bipartition half_x_cut(const SiteGraph& graph) {
    Bipartition cut;
    const int half = graph.lx / 2;
    for (int s = 0; s < graph.n_sites; ++s) {
        if (graph.positions[s].cx < half)
            cut.left.push_back(s);
        else
            cut.right.push_back(s);
    }
    if (cut.left.empty() || cut.right.empty())
        throw ValidationError("half-x cut is degenerate for this lattice");
    return cut;
}

namespace {

uint64_t extract_bits(uint64_t config, const std::vector<int>& sites) {
    uint64_t out = 0;
    for (size_t k = 0; k < sites.size(); ++k)
        if (config & (uint64_t{1} << sites[k])) out |= uint64_t{1} << k;
    return out;
}

}  // namespace

double entanglement_entropy(const ConstrainedBasis& basis, const CVec& psi,
                            const Bipartition& cut) {
    if (psi.size() != basis.dim()) throw ValidationError("state dimension mismatch");

    std::unordered_map<uint64_t, int> left_id, right_id;
    std::vector<std::pair<int, int>> coords(basis.dim());
    for (int64_t i = 0; i < basis.dim(); ++i) {
        const uint64_t c = basis.configs[i];
        const uint64_t lc = extract_bits(c, cut.left);
        const uint64_t rc = extract_bits(c, cut.right);
        auto [lit, lnew] = left_id.emplace(lc, static_cast<int>(left_id.size()));
        auto [rit, rnew] = right_id.emplace(rc, static_cast<int>(right_id.size()));
        coords[i] = {lit->second, rit->second};
    }

    Eigen::MatrixXcd amp = Eigen::MatrixXcd::Zero(left_id.size(), right_id.size());
    for (int64_t i = 0; i < basis.dim(); ++i)
        amp(coords[i].first, coords[i].second) = psi[i];

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(amp);
    double s = 0.0;
    for (int64_t k = 0; k < svd.singularValues().size(); ++k) {
        const double p = svd.singularValues()[k] * svd.singularValues()[k];
        if (p > 1e-15) s -= p * std::log(p);
    }
    return s;
}

std::vector<double> overlap_profile(const SpectrumResult& spec, const CVec& target) {
    if (target.size() != spec.vectors.rows())
        throw ValidationError("target dimension mismatch");
    const Eigen::VectorXd pr = spec.vectors.transpose() * target.real();
    const Eigen::VectorXd pi = spec.vectors.transpose() * target.imag();
    std::vector<double> out(pr.size());
    for (int64_t k = 0; k < pr.size(); ++k) out[k] = pr[k] * pr[k] + pi[k] * pi[k];
    return out;
}

std::vector<ScarBandMember> scar_band(const SpectrumResult& spec, const CVec& target,
                                      int windows, double floor) {
    if (windows < 1) throw ValidationError("window count must be positive");
    const std::vector<double> ov = overlap_profile(spec, target);
    const int64_t n = spec.energies.size();
    const double emin = spec.energies[0];
    const double emax = spec.energies[n - 1];
    const double width = (emax - emin) / windows;
    std::vector<ScarBandMember> band;
    int64_t k = 0;
    for (int w = 0; w < windows; ++w) {
        const double hi = w + 1 == windows ? emax + 1.0 : emin + (w + 1) * width;
        int64_t best = -1;
        for (; k < n && spec.energies[k] < hi; ++k)
            if (best < 0 || ov[k] > ov[best]) best = k;
        if (best >= 0 && ov[best] >= floor)
            band.push_back({best, spec.energies[best], ov[best]});
    }
    return band;
}

}  // namespace scarlab
