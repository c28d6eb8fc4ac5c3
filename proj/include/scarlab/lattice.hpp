#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace scarlab {

enum class LatticeKind { square, honeycomb, decorated_honeycomb };
enum class Boundary { periodic, open };
enum class Sublattice : uint8_t { A, B };
enum class SiteClass : uint8_t { corner, edge, bulk };

struct LatticeSpec {
    LatticeKind kind = LatticeKind::square;
    int lx = 4;
    int ly = 4;
    Boundary boundary = Boundary::periodic;
};

struct SitePos {
    int cx, cy;  // unit cell
    int b;       // basis index within the cell
};

struct SiteGraph {
    LatticeKind kind;
    Boundary boundary;
    int lx = 0, ly = 0;
    int n_sites = 0;
    std::vector<std::vector<int>> adjacency;  // sorted, irreflexive, symmetric
    std::vector<uint64_t> neighbor_mask;
    std::vector<Sublattice> sublattice;
    std::vector<SiteClass> site_class;
    std::vector<SitePos> positions;

    int n_sublattice(Sublattice s) const;
    uint64_t sublattice_mask(Sublattice s) const;
};

// Site indexing is row-major over cells, then basis index:
//   site = (cy*lx + cx)*n_basis + b.
// Square: one site per cell. Honeycomb: b=0,1 are the two vertices.
// Decorated honeycomb: b=0,1 vertices (sublattice B), b=2,3,4 edge
// midpoints (sublattice A).
SiteGraph build_lattice(const LatticeSpec& spec);

// Diagonal projector groups attached to a site's flip term in the deformed
// models. Every group is a product of ground-state projectors over `sites`;
// groups referencing sites lost to an open boundary are returned with
// complete=false and must not be applied.
struct ProjectorGroup {
    std::vector<int> sites;
    bool complete = true;
};

struct DeformationTargets {
    // Square: the four axial distance-2 singles, the four diagonal singles
    // and the four three-site groups (one per 90-degree rotation).
    // Honeycomb: six next-nearest-neighbour singles in `axial` and the
    // three common-neighbour pair groups in `triples`; `diagonal` empty.
    std::vector<ProjectorGroup> axial;
    std::vector<ProjectorGroup> diagonal;
    std::vector<ProjectorGroup> triples;
};

DeformationTargets neighbor_rotations(const SiteGraph& graph, int site);

std::string graph_to_json(const SiteGraph& graph);

}  // namespace scarlab
