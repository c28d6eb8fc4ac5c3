#include "scarlab/lattice.hpp"

#include <algorithm>
#include <array>

#include "json.hpp"
#include "scarlab/errors.hpp"

namespace scarlab {

namespace {

int n_basis_for(LatticeKind kind) {
    switch (kind) {
        case LatticeKind::square: return 1;
        case LatticeKind::honeycomb: return 2;
        case LatticeKind::decorated_honeycomb: return 5;
    }
    throw ValidationError("unknown lattice kind");
}

int wrap(int v, int l) { return ((v % l) + l) % l; }

struct CellIndexer {
    const SiteGraph& g;
    int nb;

    // -1 when the cell falls outside an open lattice.
    int site(int cx, int cy, int b) const {
        if (g.boundary == Boundary::periodic) {
            cx = wrap(cx, g.lx);
            cy = wrap(cy, g.ly);
        } else if (cx < 0 || cx >= g.lx || cy < 0 || cy >= g.ly) {
            return -1;
        }
        return (cy * g.lx + cx) * nb + b;
    }
};

void add_edge(SiteGraph& g, int a, int b) {
    if (a < 0 || b < 0) return;
    g.adjacency[a].push_back(b);
    g.adjacency[b].push_back(a);
}

int full_coordination(const SiteGraph& g, int site) {
    switch (g.kind) {
        case LatticeKind::square: return 4;
        case LatticeKind::honeycomb: return 3;
        case LatticeKind::decorated_honeycomb:
            return g.sublattice[site] == Sublattice::A ? 2 : 3;
    }
    throw ValidationError("unknown lattice kind");
}

void finalize(SiteGraph& g) {
    for (int s = 0; s < g.n_sites; ++s) {
        auto& adj = g.adjacency[s];
        std::sort(adj.begin(), adj.end());
        adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
        uint64_t mask = 0;
        for (int t : adj) mask |= uint64_t{1} << t;
        g.neighbor_mask[s] = mask;
        const int full = full_coordination(g, s);
        const int deg = static_cast<int>(adj.size());
        g.site_class[s] = deg >= full          ? SiteClass::bulk
                          : deg == full - 1    ? SiteClass::edge
                                               : SiteClass::corner;
    }
}

}  // namespace

int SiteGraph::n_sublattice(Sublattice s) const {
    return static_cast<int>(std::count(sublattice.begin(), sublattice.end(), s));
}

uint64_t SiteGraph::sublattice_mask(Sublattice s) const {
    uint64_t mask = 0;
    for (int i = 0; i < n_sites; ++i)
        if (sublattice[i] == s) mask |= uint64_t{1} << i;
    return mask;
}

SiteGraph build_lattice(const LatticeSpec& spec) {
    if (spec.lx < 1 || spec.ly < 1)
        throw ValidationError("lattice extent must be positive");
    if (spec.boundary == Boundary::periodic && (spec.lx < 2 || spec.ly < 2))
        throw ValidationError("periodic lattices require lx, ly >= 2");

    const int nb = n_basis_for(spec.kind);
    const int64_t n = static_cast<int64_t>(spec.lx) * spec.ly * nb;
    if (n > 64)
        throw ValidationError("lattice has " + std::to_string(n) +
                              " sites; the configuration encoding supports at most 64");

    SiteGraph g;
    g.kind = spec.kind;
    g.boundary = spec.boundary;
    g.lx = spec.lx;
    g.ly = spec.ly;
    g.n_sites = static_cast<int>(n);
    g.adjacency.resize(n);
    g.neighbor_mask.resize(n);
    g.sublattice.resize(n);
    g.site_class.resize(n);
    g.positions.resize(n);

    const CellIndexer at{g, nb};

    for (int cy = 0; cy < g.ly; ++cy) {
        for (int cx = 0; cx < g.lx; ++cx) {
            for (int b = 0; b < nb; ++b)
                g.positions[at.site(cx, cy, b)] = SitePos{cx, cy, b};
        }
    }

    switch (spec.kind) {
        case LatticeKind::square:
            for (int cy = 0; cy < g.ly; ++cy) {
                for (int cx = 0; cx < g.lx; ++cx) {
                    const int s = at.site(cx, cy, 0);
                    g.sublattice[s] = (cx + cy) % 2 == 0 ? Sublattice::A : Sublattice::B;
                    add_edge(g, s, at.site(cx + 1, cy, 0));
                    add_edge(g, s, at.site(cx, cy + 1, 0));
                }
            }
            break;

        case LatticeKind::honeycomb:
            // b=0 and b=1 are the two vertices of the cell; vertex 1 bonds to
            // vertex 0 of its own cell and of the cells at +x and +y.
            for (int cy = 0; cy < g.ly; ++cy) {
                for (int cx = 0; cx < g.lx; ++cx) {
                    const int v0 = at.site(cx, cy, 0);
                    const int v1 = at.site(cx, cy, 1);
                    g.sublattice[v0] = Sublattice::A;
                    g.sublattice[v1] = Sublattice::B;
                    add_edge(g, v1, v0);
                    add_edge(g, v1, at.site(cx + 1, cy, 0));
                    add_edge(g, v1, at.site(cx, cy + 1, 0));
                }
            }
            break;

        case LatticeKind::decorated_honeycomb:
            // Vertices (b=0,1) form sublattice B; one midpoint atom per
            // honeycomb bond (b=2,3,4) forms sublattice A with two
            // neighbours each. Original vertex-vertex bonds are replaced by
            // vertex-midpoint bonds.
            for (int cy = 0; cy < g.ly; ++cy) {
                for (int cx = 0; cx < g.lx; ++cx) {
                    const int v0 = at.site(cx, cy, 0);
                    const int v1 = at.site(cx, cy, 1);
                    const int m0 = at.site(cx, cy, 2);
                    const int m1 = at.site(cx, cy, 3);
                    const int m2 = at.site(cx, cy, 4);
                    g.sublattice[v0] = Sublattice::B;
                    g.sublattice[v1] = Sublattice::B;
                    g.sublattice[m0] = Sublattice::A;
                    g.sublattice[m1] = Sublattice::A;
                    g.sublattice[m2] = Sublattice::A;
                    add_edge(g, m0, v1);
                    add_edge(g, m0, v0);
                    add_edge(g, m1, v1);
                    add_edge(g, m1, at.site(cx + 1, cy, 0));
                    add_edge(g, m2, v1);
                    add_edge(g, m2, at.site(cx, cy + 1, 0));
                }
            }
            break;
    }

    finalize(g);
    return g;
}

namespace {

ProjectorGroup offsets_group(const CellIndexer& at, const SitePos& p,
                             std::initializer_list<std::pair<int, int>> offsets) {
    ProjectorGroup group;
    for (auto [dx, dy] : offsets) {
        const int s = at.site(p.cx + dx, p.cy + dy, 0);
        if (s < 0)
            group.complete = false;
        else
            group.sites.push_back(s);
    }
    return group;
}

DeformationTargets square_targets(const SiteGraph& g, int site) {
    const CellIndexer at{g, 1};
    const SitePos p = g.positions[site];
    DeformationTargets t;
    // Base offsets rotated clockwise through the four orientations.
    for (auto [dx, dy] : {std::pair{0, 2}, {2, 0}, {0, -2}, {-2, 0}})
        t.axial.push_back(offsets_group(at, p, {{dx, dy}}));
    for (auto [dx, dy] : {std::pair{1, 1}, {1, -1}, {-1, -1}, {-1, 1}})
        t.diagonal.push_back(offsets_group(at, p, {{dx, dy}}));
    t.triples.push_back(offsets_group(at, p, {{-1, 1}, {0, 2}, {1, 1}}));
    t.triples.push_back(offsets_group(at, p, {{1, 1}, {2, 0}, {1, -1}}));
    t.triples.push_back(offsets_group(at, p, {{1, -1}, {0, -2}, {-1, -1}}));
    t.triples.push_back(offsets_group(at, p, {{-1, -1}, {-2, 0}, {-1, 1}}));
    return t;
}

DeformationTargets honeycomb_targets(const SiteGraph& g, int site) {
    DeformationTargets t;
    // Next-nearest neighbours reached through each nearest neighbour; on the
    // honeycomb every such walk lands on a distinct distance-2 site and each
    // pair sharing a common neighbour forms one two-site group.
    for (int v : g.adjacency[site]) {
        ProjectorGroup pair;
        for (int w : g.adjacency[v]) {
            if (w == site) continue;
            t.axial.push_back(ProjectorGroup{{w}, true});
            pair.sites.push_back(w);
        }
        if (pair.sites.size() != 2) pair.complete = false;
        t.triples.push_back(std::move(pair));
    }
    return t;
}

}  // namespace

DeformationTargets neighbor_rotations(const SiteGraph& graph, int site) {
    if (site < 0 || site >= graph.n_sites)
        throw ValidationError("site index out of range");
    switch (graph.kind) {
        case LatticeKind::square: return square_targets(graph, site);
        case LatticeKind::honeycomb: return honeycomb_targets(graph, site);
        case LatticeKind::decorated_honeycomb:
            throw ValidationError("deformation targets are not defined on the decorated lattice");
    }
    throw ValidationError("unknown lattice kind");
}

std::string graph_to_json(const SiteGraph& graph) {
    nlohmann::json j;
    switch (graph.kind) {
        case LatticeKind::square: j["kind"] = "square"; break;
        case LatticeKind::honeycomb: j["kind"] = "honeycomb"; break;
        case LatticeKind::decorated_honeycomb: j["kind"] = "decorated-honeycomb"; break;
    }
    j["boundary"] = graph.boundary == Boundary::periodic ? "periodic" : "open";
    j["lx"] = graph.lx;
    j["ly"] = graph.ly;
    j["n_sites"] = graph.n_sites;
    nlohmann::json sites = nlohmann::json::array();
    for (int s = 0; s < graph.n_sites; ++s) {
        nlohmann::json row;
        row["index"] = s;
        row["cell"] = {graph.positions[s].cx, graph.positions[s].cy};
        row["basis"] = graph.positions[s].b;
        row["sublattice"] = graph.sublattice[s] == Sublattice::A ? "A" : "B";
        switch (graph.site_class[s]) {
            case SiteClass::corner: row["class"] = "corner"; break;
            case SiteClass::edge: row["class"] = "edge"; break;
            case SiteClass::bulk: row["class"] = "bulk"; break;
        }
        row["neighbors"] = graph.adjacency[s];
        sites.push_back(row);
    }
    j["sites"] = sites;
    return j.dump(2);
}

}  // namespace scarlab
