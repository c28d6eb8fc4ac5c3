#include <algorithm>
#include <cstdint>

#include "doctest.h"
#include "scarlab/basis.hpp"
#include "scarlab/errors.hpp"

TEST_SUITE_BEGIN("basis");

using namespace scarlab;

namespace {

// Brute force oracle: filter all 2^N bitmasks by the adjacency constraint.
std::vector<uint64_t> brute_force(const SiteGraph& g) {
    std::vector<uint64_t> out;
    for (uint64_t c = 0; c < (1ull << g.n_sites); ++c) {
        bool ok = true;
        for (int r = 0; r < g.n_sites && ok; ++r)
            if ((c >> r) & 1ull) ok = (c & g.neighbor_mask[r]) == 0;
        if (ok) out.push_back(c);
    }
    return out;
}

}  // namespace

TEST_CASE("enumeration matches the brute force filter") {
    const LatticeSpec specs[] = {
        {LatticeKind::square, 3, 3, Boundary::open},
        {LatticeKind::square, 3, 3, Boundary::periodic},
        {LatticeKind::square, 4, 3, Boundary::periodic},
        {LatticeKind::honeycomb, 2, 2, Boundary::periodic},
        {LatticeKind::honeycomb, 2, 2, Boundary::open},
        {LatticeKind::decorated_honeycomb, 2, 2, Boundary::periodic},
    };
    for (const auto& spec : specs) {
        SiteGraph g = build_lattice(spec);
        REQUIRE(g.n_sites <= 20);
        ConstrainedBasis basis = enumerate_basis(g);
        std::vector<uint64_t> oracle = brute_force(g);
        REQUIRE(basis.dim() == static_cast<int64_t>(oracle.size()));
        CHECK(std::equal(basis.configs.begin(), basis.configs.end(), oracle.begin()));
    }
}

TEST_CASE("known dimensions of hard square gases") {
    // Open n x n squares: 2, 7, 63, 1234 for n = 1..4.
    for (int n = 1; n <= 4; ++n) {
        SiteGraph g = build_lattice({LatticeKind::square, n, n, Boundary::open});
        ConstrainedBasis basis = enumerate_basis(g);
        const int64_t expected[] = {2, 7, 63, 1234};
        CHECK(basis.dim() == expected[n - 1]);
    }
    SiteGraph torus = build_lattice({LatticeKind::square, 4, 4, Boundary::periodic});
    CHECK(enumerate_basis(torus).dim() == 743);
}

TEST_CASE("lookup inverts the config list") {
    SiteGraph g = build_lattice({LatticeKind::square, 3, 4, Boundary::periodic});
    ConstrainedBasis basis = enumerate_basis(g);
    CHECK(std::is_sorted(basis.configs.begin(), basis.configs.end()));
    for (int64_t i = 0; i < basis.dim(); ++i)
        CHECK(basis.index_of(basis.configs[i]) == i);
    // Two adjacent excitations are never present.
    CHECK(basis.index_of(0b11) == -1);
    CHECK(basis.index_of(0) == 0);  // empty configuration sorts first
}

TEST_CASE("dim cap rejects oversized spaces") {
    SiteGraph g = build_lattice({LatticeKind::square, 4, 4, Boundary::periodic});
    CHECK_THROWS_AS(enumerate_basis(g, 100), CapExceededError);
}

TEST_CASE("maximally excited states fill one sublattice") {
    SiteGraph g = build_lattice({LatticeKind::square, 4, 4, Boundary::periodic});
    ConstrainedBasis basis = enumerate_basis(g);
    uint64_t ma = maximally_excited(g, Sublattice::A);
    uint64_t mb = maximally_excited(g, Sublattice::B);
    CHECK(ma == g.sublattice_mask(Sublattice::A));
    CHECK(mb == g.sublattice_mask(Sublattice::B));
    CHECK((ma & mb) == 0);
    CHECK(basis.index_of(ma) >= 0);
    CHECK(basis.index_of(mb) >= 0);
}

TEST_CASE("hamming distances count flips from the reference") {
    SiteGraph g = build_lattice({LatticeKind::square, 3, 3, Boundary::periodic});
    ConstrainedBasis basis = enumerate_basis(g);
    uint64_t ref = maximally_excited(g, Sublattice::A);
    std::vector<int> d = hamming_from(basis, ref);
    REQUIRE(static_cast<int64_t>(d.size()) == basis.dim());
    CHECK(d[basis.index_of(ref)] == 0);
    // The empty configuration sits exactly |A| flips away.
    CHECK(d[basis.index_of(0)] == g.n_sublattice(Sublattice::A));
    for (int64_t i = 0; i < basis.dim(); ++i) {
        uint64_t diff = basis.configs[i] ^ ref;
        int pop = 0;
        while (diff) {
            pop += diff & 1;
            diff >>= 1;
        }
        CHECK(d[i] == pop);
    }
}
