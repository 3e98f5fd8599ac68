#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "causalog/abduction.hpp"
#include "causalog/datalog.hpp"
#include "causalog/relmodel.hpp"

namespace causalog {

using VertexSet = std::set<Constant>;

struct Hypergraph {
  VertexSet vertices;
  std::set<VertexSet> hyperedges;

  bool operator==(const Hypergraph&) const = default;
};

/// A tree over bag indices together with the bag labelling.
struct TreeDecomposition {
  std::vector<VertexSet> bags;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  /// max |bag| - 1, clamped at 0 so the empty hypergraph has width 0.
  std::size_t width() const;
};

struct WidthReport {
  std::size_t width = 0;
  bool is_exact = false;
};

enum class DecompositionMode { kHeuristic, kExact };

/// Largest hypergraph accepted by exact mode.
inline constexpr std::size_t kExactVertexCap = 12;

/// Vertices are the active domain; one hyperedge per atom, the set of its constants.
Hypergraph hypergraph_of(const Instance& instance);
Hypergraph hypergraph_of(const AtomSet& atoms);

/// Why `td` is not a tree decomposition of `h`, or nullopt when it is one.
/// Checks the tree shape, vertex cover, hyperedge cover and connectedness.
std::optional<std::string> check_decomposition(const Hypergraph& h, const TreeDecomposition& td);

/// Heuristic mode eliminates vertices by minimum fill-in (ties broken by
/// canonical vertex order). Exact mode runs a subset dynamic program over
/// elimination orderings and throws DomainError above kExactVertexCap vertices.
/// Every result is validated with check_decomposition before it is returned.
std::pair<TreeDecomposition, WidthReport> tree_decomposition(const Hypergraph& h,
                                                             DecompositionMode mode);

/// Decomposition induced by eliminating vertices in `order` (a permutation of h.vertices).
TreeDecomposition decomposition_from_order(const Hypergraph& h, const std::vector<Constant>& order);

/// Every rule body has an atom whose variables include all variables of the body.
bool is_guarded(const Program& program);

/// True when the program is guarded and the heuristic width of the hypergraph
/// of E is at most `k`: the regime where relevance is fixed-parameter
/// tractable. Gated problems are still solved by the general solver.
bool fpt_gate(const AbductionProblem& ap, std::size_t k);

}  // namespace causalog
