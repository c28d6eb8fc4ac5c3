#include "scarlab/basis.hpp"

#include <bit>

#include "scarlab/errors.hpp"

namespace scarlab {

ConstrainedBasis enumerate_basis(const SiteGraph& graph, int64_t dim_cap) {
    ConstrainedBasis basis;
    basis.graph = graph;

    // Depth-first over sites from the most significant bit down, ground
    // branch first, which emits configurations in ascending numeric order.
    // `forbid` carries the union of neighbour masks of every excited site.
    std::vector<uint64_t>& out = basis.configs;
    const int n = graph.n_sites;

    struct Frame {
        int next_site;
        uint64_t config;
        uint64_t forbid;
    };
    std::vector<Frame> stack;
    stack.reserve(2 * n + 2);
    stack.push_back({n - 1, 0, 0});
    while (!stack.empty()) {
        const Frame f = stack.back();
        stack.pop_back();
        if (f.next_site < 0) {
            if (static_cast<int64_t>(out.size()) >= dim_cap)
                throw CapExceededError("constrained space exceeds dimension cap " +
                                       std::to_string(dim_cap));
            out.push_back(f.config);
            continue;
        }
        const uint64_t bit = uint64_t{1} << f.next_site;
        // Excited branch pushed first so the ground branch is processed first.
        if ((f.forbid & bit) == 0)
            stack.push_back({f.next_site - 1, f.config | bit,
                             f.forbid | graph.neighbor_mask[f.next_site]});
        stack.push_back({f.next_site - 1, f.config, f.forbid});
    }

    basis.lookup.reserve(2 * out.size());
    for (int64_t i = 0; i < static_cast<int64_t>(out.size()); ++i)
        basis.lookup.emplace(out[i], i);
    return basis;
}

uint64_t maximally_excited(const SiteGraph& graph, Sublattice s) {
    return graph.sublattice_mask(s);
}

std::vector<int> hamming_from(const ConstrainedBasis& basis, uint64_t reference) {
    std::vector<int> d(basis.configs.size());
    for (size_t i = 0; i < basis.configs.size(); ++i)
        d[i] = std::popcount(basis.configs[i] ^ reference);
    return d;
}

}  // namespace scarlab
