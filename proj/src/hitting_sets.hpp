#pragma once

// Set-family utilities over small integer universes (indices into an atom list).

#include <cstdint>
#include <optional>
#include <vector>

namespace causalog::detail {

/// Sorted, duplicate-free list of element indices.
using IndexSet = std::vector<std::uint32_t>;
using Family = std::vector<IndexSet>;

bool intersects(const IndexSet& a, const IndexSet& b);
bool is_subset(const IndexSet& small, const IndexSet& big);
bool contains(const IndexSet& s, std::uint32_t e);
IndexSet set_union(const IndexSet& a, const IndexSet& b);

/// Sorted antichain: duplicates and strict supersets of other members removed.
Family minimize(Family family);

/// All subset-minimal transversals (Berge's incremental algorithm).
/// A family containing the empty set has no transversal.
Family minimal_hitting_sets(const Family& sets);

/// Smallest transversal size using only elements outside `forbidden`, by
/// branch and bound; nullopt when some set lies inside `forbidden`.
std::optional<std::size_t> minimum_hitting_set_size(const Family& sets, const IndexSet& forbidden);

}  // namespace causalog::detail
