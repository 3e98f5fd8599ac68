#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "causalog/datalog.hpp"
#include "causalog/relmodel.hpp"

namespace causalog {

struct QueryShape {
  bool linear = false;
  /// Some atom order lets only consecutive atoms share variables, with all predicates distinct.
  bool chain_join = false;
  /// Body positions in an order where each variable's atoms are contiguous and
  /// hold no repeated predicate. Empty unless linear.
  std::vector<std::size_t> witness_order;
};

/// Shape of a single-rule conjunctive query. Throws DomainError for any other program.
QueryShape query_shape(const Program& program);

/// Directed network with integer capacities.
struct FlowNetwork {
  static constexpr std::int64_t kInfinite = std::int64_t{1} << 40;

  struct Edge {
    std::size_t from;
    std::size_t to;
    std::int64_t capacity;
  };

  std::size_t node_count = 0;
  std::size_t source = 0;
  std::size_t sink = 0;
  std::vector<Edge> edges;

  std::size_t add_node() { return node_count++; }
  std::size_t add_edge(std::size_t from, std::size_t to, std::int64_t capacity);
};

struct FlowResult {
  /// At least FlowNetwork::kInfinite when an uncuttable path exists.
  std::int64_t value = 0;
  /// Edge indices from the source side to the sink side. The source side is the
  /// set reachable from the source in the final residual network, which is the
  /// same for every maximum flow.
  std::vector<std::size_t> cut;
  std::vector<bool> source_side;
};

/// Dinic's algorithm. Throws DomainError when source equals sink, a node index
/// is out of range or a capacity is negative.
FlowResult max_flow(const FlowNetwork& net);

/// Size of a smallest contingency set of `t` for `answer`, computed as a
/// minimum vertex cut in a layered network of partial witnesses. Throws
/// DomainError when the query is not linear, repeats a predicate, `answer` is
/// not an answer, or `t` is not an actual cause.
std::size_t min_contingency_via_cut(const Instance& instance, const Program& program,
                                    const Tuple& answer, const Atom& t);

}  // namespace causalog
