#include <algorithm>
#include <set>

#include "doctest.h"
#include "scarlab/errors.hpp"
#include "scarlab/lattice.hpp"

TEST_SUITE_BEGIN("lattice");

using namespace scarlab;

namespace {

void check_adjacency_wellformed(const SiteGraph& g) {
    REQUIRE(static_cast<int>(g.adjacency.size()) == g.n_sites);
    for (int r = 0; r < g.n_sites; ++r) {
        const auto& nb = g.adjacency[r];
        CHECK(std::is_sorted(nb.begin(), nb.end()));
        CHECK(std::adjacent_find(nb.begin(), nb.end()) == nb.end());
        for (int s : nb) {
            CHECK(s != r);
            CHECK(s >= 0);
            CHECK(s < g.n_sites);
            const auto& back = g.adjacency[s];
            CHECK(std::binary_search(back.begin(), back.end(), r));
        }
        uint64_t mask = 0;
        for (int s : nb) mask |= 1ull << s;
        CHECK(g.neighbor_mask[r] == mask);
    }
}

int degree_count(const SiteGraph& g, int deg) {
    int n = 0;
    for (const auto& nb : g.adjacency)
        if (static_cast<int>(nb.size()) == deg) ++n;
    return n;
}

}  // namespace

TEST_CASE("square periodic lattice structure") {
    SiteGraph g = build_lattice({LatticeKind::square, 4, 4, Boundary::periodic});
    CHECK(g.n_sites == 16);
    check_adjacency_wellformed(g);
    CHECK(degree_count(g, 4) == 16);
    // Bipartite checkerboard: neighbours always change sublattice.
    for (int r = 0; r < g.n_sites; ++r)
        for (int s : g.adjacency[r]) CHECK(g.sublattice[r] != g.sublattice[s]);
    CHECK(g.n_sublattice(Sublattice::A) == 8);
    CHECK(g.n_sublattice(Sublattice::B) == 8);
    for (int r = 0; r < g.n_sites; ++r) CHECK(g.site_class[r] == SiteClass::bulk);
}

TEST_CASE("square open lattice site classes") {
    SiteGraph g = build_lattice({LatticeKind::square, 4, 4, Boundary::open});
    CHECK(g.n_sites == 16);
    check_adjacency_wellformed(g);
    CHECK(degree_count(g, 2) == 4);   // corners
    CHECK(degree_count(g, 3) == 8);   // edges
    CHECK(degree_count(g, 4) == 4);   // bulk
    int corners = 0, edges = 0, bulk = 0;
    for (int r = 0; r < g.n_sites; ++r) {
        if (g.site_class[r] == SiteClass::corner) ++corners;
        else if (g.site_class[r] == SiteClass::edge) ++edges;
        else ++bulk;
    }
    CHECK(corners == 4);
    CHECK(edges == 8);
    CHECK(bulk == 4);
    // Classes line up with degree on the open square.
    for (int r = 0; r < g.n_sites; ++r) {
        const int deg = static_cast<int>(g.adjacency[r].size());
        if (g.site_class[r] == SiteClass::corner) CHECK(deg == 2);
        if (g.site_class[r] == SiteClass::edge) CHECK(deg == 3);
        if (g.site_class[r] == SiteClass::bulk) CHECK(deg == 4);
    }
}

TEST_CASE("honeycomb periodic lattice structure") {
    SiteGraph g = build_lattice({LatticeKind::honeycomb, 3, 3, Boundary::periodic});
    CHECK(g.n_sites == 18);
    check_adjacency_wellformed(g);
    CHECK(degree_count(g, 3) == 18);
    for (int r = 0; r < g.n_sites; ++r)
        for (int s : g.adjacency[r]) CHECK(g.sublattice[r] != g.sublattice[s]);
    CHECK(g.n_sublattice(Sublattice::A) == 9);
    CHECK(g.n_sublattice(Sublattice::B) == 9);

    SiteGraph g4 = build_lattice({LatticeKind::honeycomb, 4, 4, Boundary::periodic});
    CHECK(g4.n_sites == 32);
    check_adjacency_wellformed(g4);
    CHECK(degree_count(g4, 3) == 32);
}

TEST_CASE("decorated honeycomb splits vertices and edge midpoints") {
    SiteGraph g = build_lattice({LatticeKind::decorated_honeycomb, 2, 2, Boundary::periodic});
    CHECK(g.n_sites == 20);
    check_adjacency_wellformed(g);
    // Vertices (B) keep degree 3, midpoints (A) connect the two endpoints.
    int na = 0, nb = 0;
    for (int r = 0; r < g.n_sites; ++r) {
        const int deg = static_cast<int>(g.adjacency[r].size());
        if (g.sublattice[r] == Sublattice::A) {
            CHECK(deg == 2);
            ++na;
        } else {
            CHECK(deg == 3);
            ++nb;
        }
        // No two midpoints touch and no two vertices touch.
        for (int s : g.adjacency[r]) CHECK(g.sublattice[r] != g.sublattice[s]);
    }
    CHECK(na == 12);  // 3 midpoints per cell
    CHECK(nb == 8);   // 2 vertices per cell
    CHECK(g.sublattice_mask(Sublattice::A) ==
          (~g.sublattice_mask(Sublattice::B) & ((1ull << g.n_sites) - 1)));
}

TEST_CASE("square deformation targets on the periodic lattice") {
    SiteGraph g = build_lattice({LatticeKind::square, 4, 4, Boundary::periodic});
    for (int r = 0; r < g.n_sites; ++r) {
        DeformationTargets t = neighbor_rotations(g, r);
        CHECK(t.axial.size() == 4);
        CHECK(t.diagonal.size() == 4);
        CHECK(t.triples.size() == 4);
        for (const auto& grp : t.axial) {
            CHECK(grp.complete);
            CHECK(grp.sites.size() == 1);
        }
        for (const auto& grp : t.diagonal) {
            CHECK(grp.complete);
            CHECK(grp.sites.size() == 1);
        }
        std::set<int> triple_sites;
        for (const auto& grp : t.triples) {
            CHECK(grp.complete);
            CHECK(grp.sites.size() == 3);
            triple_sites.insert(grp.sites.begin(), grp.sites.end());
        }
        // Triples draw from the 8 sites at distance 2 around r.
        for (int s : triple_sites) CHECK(s != r);
    }
}

TEST_CASE("square deformation targets lose groups at the open boundary") {
    SiteGraph g = build_lattice({LatticeKind::square, 4, 4, Boundary::open});
    int incomplete = 0;
    for (int r = 0; r < g.n_sites; ++r) {
        DeformationTargets t = neighbor_rotations(g, r);
        CHECK(t.axial.size() == 4);
        CHECK(t.diagonal.size() == 4);
        CHECK(t.triples.size() == 4);
        for (const auto& grp : t.axial) incomplete += !grp.complete;
        for (const auto& grp : t.diagonal) incomplete += !grp.complete;
        for (const auto& grp : t.triples) incomplete += !grp.complete;
    }
    CHECK(incomplete > 0);
    // A site two steps from every wall keeps everything; 4x4 has none, so
    // check the centre of a 5x5 patch.
    SiteGraph g5 = build_lattice({LatticeKind::square, 5, 5, Boundary::open});
    DeformationTargets c = neighbor_rotations(g5, 12);
    for (const auto& grp : c.axial) CHECK(grp.complete);
    for (const auto& grp : c.diagonal) CHECK(grp.complete);
    for (const auto& grp : c.triples) CHECK(grp.complete);
}

TEST_CASE("honeycomb deformation targets") {
    SiteGraph g = build_lattice({LatticeKind::honeycomb, 3, 3, Boundary::periodic});
    for (int r = 0; r < g.n_sites; ++r) {
        DeformationTargets t = neighbor_rotations(g, r);
        CHECK(t.axial.size() == 6);  // next-nearest neighbours
        CHECK(t.diagonal.empty());
        CHECK(t.triples.size() == 3);  // one pair group per nearest neighbour
        for (const auto& grp : t.axial) CHECK(grp.sites.size() == 1);
        for (const auto& grp : t.triples) CHECK(grp.sites.size() == 2);
    }
}

TEST_CASE("periodic wrap at extent 2 collapses distinct neighbours") {
    // On a 2-cell torus the two axial directions reach the same site, so the
    // neighbour list shrinks while the group lists keep their multiplicity.
    SiteGraph g = build_lattice({LatticeKind::square, 2, 2, Boundary::periodic});
    check_adjacency_wellformed(g);
    for (int r = 0; r < g.n_sites; ++r) CHECK(g.adjacency[r].size() == 2);
}

TEST_CASE("lattice validation rejects bad extents") {
    CHECK_THROWS_AS(build_lattice({LatticeKind::square, 0, 4, Boundary::open}),
                    ValidationError);
    CHECK_THROWS_AS(build_lattice({LatticeKind::square, 1, 4, Boundary::periodic}),
                    ValidationError);
    SiteGraph g = build_lattice({LatticeKind::decorated_honeycomb, 2, 2, Boundary::periodic});
    CHECK_THROWS_AS(neighbor_rotations(g, 0), ValidationError);
    CHECK_THROWS_AS(neighbor_rotations(build_lattice({}), 99), ValidationError);
}

TEST_CASE("graph json dump names every site") {
    SiteGraph g = build_lattice({LatticeKind::square, 2, 3, Boundary::open});
    std::string js = graph_to_json(g);
    CHECK(js.find("\"n_sites\"") != std::string::npos);
    CHECK(js.find("\"neighbors\"") != std::string::npos);
    CHECK(js.find("square") != std::string::npos);
}
