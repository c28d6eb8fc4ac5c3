#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "scarlab/basis.hpp"
#include "scarlab/eigen.hpp"
#include "scarlab/evolve.hpp"
#include "scarlab/lattice.hpp"
#include "scarlab/operators.hpp"

TEST_SUITE_BEGIN("evolve");

using namespace scarlab;

namespace {

struct Fixture {
    SiteGraph graph;
    ConstrainedBasis basis;
    SparseReal h;
    CVec neel;

    Fixture()
        : graph(build_lattice({LatticeKind::square, 3, 3, Boundary::open})),
          basis(enumerate_basis(graph)),
          h(build_pxp(basis, uniform_freq(graph))),
          neel(unit_state(basis, maximally_excited(graph, Sublattice::A))) {}
};

}  // namespace

TEST_CASE("time grid covers zero through t_max inclusively") {
    std::vector<double> g = time_grid(1.0, 0.25);
    REQUIRE(g.size() == 5);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == doctest::Approx(1.0));
    // A t_max that is not a multiple of dt stops at the last point below it.
    std::vector<double> h = time_grid(1.0, 0.3);
    CHECK(h.back() <= 1.0 + 1e-12);
    CHECK(h.back() == doctest::Approx(0.9));
    for (size_t i = 1; i < h.size(); ++i) CHECK(h[i] > h[i - 1]);
}

TEST_CASE("lanczos propagation matches the dense path") {
    Fixture f;
    std::vector<double> times = {0.0, 0.3, 0.7, 1.9, 4.2};
    std::vector<CVec> dense_states, krylov_states;
    EvolveOptions dense_opts;  // dim 63 stays below the default cap
    propagate(f.h, f.neel, times,
              [&](int64_t, const CVec& v) { dense_states.push_back(v); }, dense_opts);
    EvolveOptions kry;
    kry.dense_cap = 1;
    propagate(f.h, f.neel, times,
              [&](int64_t, const CVec& v) { krylov_states.push_back(v); }, kry);
    REQUIRE(dense_states.size() == times.size());
    REQUIRE(krylov_states.size() == times.size());
    for (size_t k = 0; k < times.size(); ++k) {
        CHECK((dense_states[k] - krylov_states[k]).cwiseAbs().maxCoeff() < 1e-8);
        CHECK(krylov_states[k].norm() == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("evolution is unitary and reversible") {
    Fixture f;
    EvolveOptions kry;
    kry.dense_cap = 1;
    CVec fwd = evolve_to(f.h, f.neel, 2.5, kry);
    CHECK(fwd.norm() == doctest::Approx(1.0).epsilon(1e-10));
    CVec back = evolve_to(f.h, fwd, -2.5, kry);
    CHECK((back - f.neel).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("eigenstates only pick up a phase") {
    Fixture f;
    SpectrumResult spec = full_diagonalize(f.h);
    int64_t mid = spec.energies.size() / 2;
    CVec psi = spec.vectors.col(mid).cast<cplx>();
    double e = spec.energies[mid];
    double t = 1.37;
    CVec out = evolve_to(f.h, psi, t);
    cplx phase = std::exp(cplx(0.0, -e * t));
    CHECK((out - phase * psi).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("return amplitudes square to the fidelity series") {
    Fixture f;
    double t_max = 3.0, dt = 0.5;
    TimeSeries fid = fidelity_series(f.h, f.neel, t_max, dt);
    std::vector<double> grid = time_grid(t_max, dt);
    std::vector<cplx> amps = return_amplitudes(f.h, f.neel, grid);
    REQUIRE(fid.times.size() == grid.size());
    REQUIRE(amps.size() == grid.size());
    CHECK(fid.values[0] == doctest::Approx(1.0));
    CHECK(std::abs(amps[0] - cplx(1.0, 0.0)) < 1e-12);
    for (size_t k = 0; k < grid.size(); ++k) {
        CHECK(fid.times[k] == doctest::Approx(grid[k]));
        CHECK(fid.values[k] == doctest::Approx(std::norm(amps[k])).epsilon(1e-8));
    }
}

TEST_CASE("observable series tracks pointwise expectations") {
    Fixture f;
    SparseOperator n0 = build_local_observable(f.basis, 4, LocalKind::density);
    double t_max = 2.0, dt = 0.4;
    TimeSeries obs = observable_series(f.h, f.neel, n0, t_max, dt);
    std::vector<double> grid = time_grid(t_max, dt);
    REQUIRE(obs.times.size() == grid.size());
    for (size_t k = 0; k < grid.size(); ++k) {
        CVec psi = evolve_to(f.h, f.neel, grid[k]);
        CHECK(obs.values[k] == doctest::Approx(n0.expectation(psi).real()).epsilon(1e-7));
    }
}

TEST_CASE("krylov subspace smaller than requested dimension still converges") {
    // A 2-site chain has dim 3; the solver must clamp its subspace to it.
    SiteGraph g = build_lattice({LatticeKind::square, 2, 1, Boundary::open});
    ConstrainedBasis b = enumerate_basis(g);
    SparseReal h = build_pxp(b, uniform_freq(g));
    EvolveOptions kry;
    kry.dense_cap = 1;
    kry.krylov_dim = 30;
    CVec psi0 = unit_state(b, 0);
    CVec out = evolve_to(h, psi0, 1.0, kry);
    CHECK(out.norm() == doctest::Approx(1.0).epsilon(1e-10));
    EvolveOptions dense;
    CVec ref = evolve_to(h, psi0, 1.0, dense);
    CHECK((out - ref).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_SUITE_END();
