#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "scarlab/basis.hpp"
#include "scarlab/eigen.hpp"
#include "scarlab/errors.hpp"
#include "scarlab/lattice.hpp"
#include "scarlab/operators.hpp"

TEST_SUITE_BEGIN("eigen");

using namespace scarlab;

TEST_CASE("full diagonalization reproduces the dense solver") {
    SiteGraph g = build_lattice({LatticeKind::square, 3, 3, Boundary::open});
    ConstrainedBasis basis = enumerate_basis(g);
    SparseReal h = build_pxp(basis, uniform_freq(g));
    SpectrumResult spec = full_diagonalize(h);
    Eigen::MatrixXd dense = h.to_dense();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(dense);
    REQUIRE(spec.energies.size() == basis.dim());
    CHECK((spec.energies - ref.eigenvalues()).cwiseAbs().maxCoeff() < 1e-10);
    for (int64_t k = 1; k < spec.energies.size(); ++k)
        CHECK(spec.energies[k] >= spec.energies[k - 1]);
    // Columns are orthonormal eigenvectors of the operator itself.
    Eigen::MatrixXd gram = spec.vectors.transpose() * spec.vectors;
    CHECK((gram - Eigen::MatrixXd::Identity(basis.dim(), basis.dim())).cwiseAbs().maxCoeff() <
          1e-10);
    Eigen::MatrixXd resid =
        dense * spec.vectors - spec.vectors * spec.energies.asDiagonal();
    CHECK(resid.cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("dense cap rejects oversized problems") {
    SiteGraph g = build_lattice({LatticeKind::square, 3, 3, Boundary::open});
    ConstrainedBasis basis = enumerate_basis(g);
    SparseReal h = build_pxp(basis, uniform_freq(g));
    CHECK_THROWS_AS(full_diagonalize(h, basis.dim() - 1), CapExceededError);
}

TEST_CASE("half cut splits unit cells by column") {
    SiteGraph g = build_lattice({LatticeKind::square, 4, 4, Boundary::periodic});
    Bipartition cut = half_x_cut(g);
    CHECK(cut.left.size() == 8);
    CHECK(cut.right.size() == 8);
    std::vector<int> all(cut.left);
    all.insert(all.end(), cut.right.begin(), cut.right.end());
    std::sort(all.begin(), all.end());
    for (int r = 0; r < g.n_sites; ++r) CHECK(all[r] == r);
}

TEST_CASE("entanglement entropy hits the textbook values") {
    SiteGraph g = build_lattice({LatticeKind::square, 4, 1, Boundary::open});
    ConstrainedBasis basis = enumerate_basis(g);
    Bipartition cut = half_x_cut(g);
    REQUIRE(cut.left.size() == 2);

    // Any single configuration is a product state across the cut.
    CVec prod = unit_state(basis, 0b0101);
    CHECK(entanglement_entropy(basis, prod, cut) == doctest::Approx(0.0).epsilon(1e-12));

    // Superposition that only differs on the right half stays unentangled.
    CVec right_only =
        (unit_state(basis, 0b0000) + unit_state(basis, 0b1000)) / std::sqrt(2.0);
    CHECK(entanglement_entropy(basis, right_only, cut) < 1e-12);

    // Two branches orthogonal on both halves give exactly log 2.
    CVec bell = (unit_state(basis, 0b0000) + unit_state(basis, 0b0101)) / std::sqrt(2.0);
    CHECK(entanglement_entropy(basis, bell, cut) == doctest::Approx(std::log(2.0)));

    // Three mutually orthogonal branches give log 3.
    CVec ghz = (unit_state(basis, 0b0000) + unit_state(basis, 0b0101) +
                unit_state(basis, 0b1010)) /
               std::sqrt(3.0);
    CHECK(entanglement_entropy(basis, ghz, cut) == doctest::Approx(std::log(3.0)));
}

TEST_CASE("overlap profile resolves eigenstates and sums to one") {
    SiteGraph g = build_lattice({LatticeKind::square, 3, 3, Boundary::open});
    ConstrainedBasis basis = enumerate_basis(g);
    SparseReal h = build_pxp(basis, uniform_freq(g));
    SpectrumResult spec = full_diagonalize(h);
    CVec target = unit_state(basis, maximally_excited(g, Sublattice::A));
    std::vector<double> prof = overlap_profile(spec, target);
    REQUIRE(static_cast<int64_t>(prof.size()) == spec.energies.size());
    double total = 0.0;
    for (double p : prof) total += p;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));

    int64_t k = spec.energies.size() / 3;
    CVec eig = spec.vectors.col(k).cast<cplx>();
    std::vector<double> delta = overlap_profile(spec, eig);
    for (int64_t j = 0; j < spec.energies.size(); ++j) {
        // Eigenvalues of this model are generically non-degenerate away from
        // the spectral reflection; a loose floor keeps the check robust.
        if (j == k)
            CHECK(delta[j] == doctest::Approx(1.0).epsilon(1e-8));
        else
            CHECK(delta[j] < 1e-8);
    }
}

TEST_CASE("scar band keeps one dominant state per energy window") {
    SiteGraph g = build_lattice({LatticeKind::square, 3, 3, Boundary::open});
    ConstrainedBasis basis = enumerate_basis(g);
    SparseReal h = build_pxp(basis, uniform_freq(g));
    SpectrumResult spec = full_diagonalize(h);
    CVec target = unit_state(basis, maximally_excited(g, Sublattice::A));
    std::vector<double> prof = overlap_profile(spec, target);

    int windows = 9;
    std::vector<ScarBandMember> band = scar_band(spec, target, windows);
    CHECK(!band.empty());
    CHECK(static_cast<int>(band.size()) <= windows);
    double best = *std::max_element(prof.begin(), prof.end());
    double band_best = 0.0;
    for (size_t i = 0; i < band.size(); ++i) {
        const ScarBandMember& m = band[i];
        REQUIRE(m.eigen_index >= 0);
        REQUIRE(m.eigen_index < spec.energies.size());
        CHECK(m.energy == doctest::Approx(spec.energies[m.eigen_index]));
        CHECK(m.overlap == doctest::Approx(prof[m.eigen_index]));
        if (i > 0) CHECK(m.energy > band[i - 1].energy);
        band_best = std::max(band_best, m.overlap);
    }
    // The globally dominant eigenstate always survives the per-window argmax.
    CHECK(band_best == doctest::Approx(best));

    // A floor above every overlap empties the band.
    CHECK(scar_band(spec, target, windows, 2.0).empty());
}

TEST_SUITE_END();
