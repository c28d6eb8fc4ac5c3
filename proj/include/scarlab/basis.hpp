#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "scarlab/lattice.hpp"

namespace scarlab {

// A configuration is a bitmask over sites; bit r set means site r excited.
// The constrained space keeps only configurations with no two adjacent
// excitations.

struct ConstrainedBasis {
    SiteGraph graph;
    std::vector<uint64_t> configs;  // ascending
    std::unordered_map<uint64_t, int64_t> lookup;

    int64_t dim() const { return static_cast<int64_t>(configs.size()); }

    // -1 when the configuration is not in the constrained space.
    int64_t index_of(uint64_t config) const {
        auto it = lookup.find(config);
        return it == lookup.end() ? -1 : it->second;
    }
};

inline constexpr int64_t kDefaultDimCap = 4'000'000;

ConstrainedBasis enumerate_basis(const SiteGraph& graph, int64_t dim_cap = kDefaultDimCap);

uint64_t maximally_excited(const SiteGraph& graph, Sublattice s);

std::vector<int> hamming_from(const ConstrainedBasis& basis, uint64_t reference);

}  // namespace scarlab
