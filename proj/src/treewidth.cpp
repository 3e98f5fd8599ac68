#include "causalog/treewidth.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "causalog/error.hpp"

namespace causalog {

std::size_t TreeDecomposition::width() const {
  std::size_t w = 0;
  for (const auto& b : bags) w = std::max(w, b.size());
  return w == 0 ? 0 : w - 1;
}

Hypergraph hypergraph_of(const AtomSet& atoms) {
  Hypergraph h;
  for (const auto& a : atoms) {
    VertexSet e(a.args.begin(), a.args.end());
    h.vertices.insert(e.begin(), e.end());
    h.hyperedges.insert(std::move(e));
  }
  return h;
}

Hypergraph hypergraph_of(const Instance& instance) { return hypergraph_of(instance.all()); }

namespace {

// Primal graph over vertex indices in canonical order.
struct Primal {
  std::vector<Constant> names;
  std::vector<std::set<std::size_t>> adj;
};

Primal primal_of(const Hypergraph& h) {
  Primal g;
  g.names.assign(h.vertices.begin(), h.vertices.end());
  g.adj.resize(g.names.size());
  auto id = [&](const Constant& c) {
    auto it = std::lower_bound(g.names.begin(), g.names.end(), c);
    if (it == g.names.end() || *it != c) {
      throw DomainError("hyperedge vertex " + c.to_string() + " is not a vertex");
    }
    return static_cast<std::size_t>(it - g.names.begin());
  };
  for (const auto& e : h.hyperedges) {
    std::vector<std::size_t> ids;
    for (const auto& c : e) ids.push_back(id(c));
    for (auto a : ids) {
      for (auto b : ids) {
        if (a != b) g.adj[a].insert(b);
      }
    }
  }
  return g;
}

std::size_t fill_in(const std::vector<std::set<std::size_t>>& adj, std::size_t v) {
  std::size_t missing = 0;
  for (auto a = adj[v].begin(); a != adj[v].end(); ++a) {
    for (auto b = std::next(a); b != adj[v].end(); ++b) {
      if (!adj[*a].contains(*b)) ++missing;
    }
  }
  return missing;
}

std::vector<std::size_t> min_fill_order(const Primal& g) {
  auto adj = g.adj;
  std::vector<bool> done(adj.size(), false);
  std::vector<std::size_t> order;
  for (std::size_t step = 0; step < adj.size(); ++step) {
    std::size_t best = adj.size();
    std::size_t best_fill = std::numeric_limits<std::size_t>::max();
    for (std::size_t v = 0; v < adj.size(); ++v) {
      if (done[v]) continue;
      auto f = fill_in(adj, v);
      if (f < best_fill) {
        best_fill = f;
        best = v;
      }
    }
    for (auto a : adj[best]) {
      for (auto b : adj[best]) {
        if (a != b) adj[a].insert(b);
      }
      adj[a].erase(best);
    }
    adj[best].clear();
    done[best] = true;
    order.push_back(best);
  }
  return order;
}

// Vertices outside `eliminated` ∪ {v} reachable from v through `eliminated`:
// the neighbourhood of v once every vertex of `eliminated` is gone.
std::size_t later_degree(const Primal& g, std::uint32_t eliminated, std::size_t v) {
  std::uint32_t seen = 1u << v;
  std::vector<std::size_t> stack{v};
  std::size_t count = 0;
  while (!stack.empty()) {
    auto u = stack.back();
    stack.pop_back();
    for (auto w : g.adj[u]) {
      if (seen & (1u << w)) continue;
      seen |= 1u << w;
      if (eliminated & (1u << w)) {
        stack.push_back(w);
      } else {
        ++count;
      }
    }
  }
  return count;
}

std::vector<std::size_t> exact_order(const Primal& g) {
  const std::size_t n = g.names.size();
  const std::uint32_t full = (1u << n) - 1;
  constexpr auto kInf = std::numeric_limits<std::size_t>::max();
  // tw[S]: best width of eliminating S first; choice[S]: the last vertex of S eliminated.
  std::vector<std::size_t> tw(std::size_t{1} << n, kInf);
  std::vector<std::size_t> choice(std::size_t{1} << n, 0);
  tw[0] = 0;
  for (std::uint32_t s = 1; s <= full; ++s) {
    for (std::size_t v = 0; v < n; ++v) {
      if (!(s & (1u << v))) continue;
      auto rest = s & ~(1u << v);
      auto cand = std::max(tw[rest], later_degree(g, rest, v));
      if (cand < tw[s]) {
        tw[s] = cand;
        choice[s] = v;
      }
    }
  }
  std::vector<std::size_t> order(n);
  std::uint32_t s = full;
  for (std::size_t i = n; i-- > 0;) {
    order[i] = choice[s];
    s &= ~(1u << choice[s]);
  }
  return order;
}

TreeDecomposition from_order(const Primal& g, const std::vector<std::size_t>& order) {
  const std::size_t n = order.size();
  TreeDecomposition td;
  if (n == 0) {
    td.bags.emplace_back();
    return td;
  }
  std::vector<std::size_t> position(n);
  for (std::size_t i = 0; i < n; ++i) position[order[i]] = i;
  auto adj = g.adj;
  std::vector<std::size_t> roots;
  for (std::size_t i = 0; i < n; ++i) {
    auto v = order[i];
    VertexSet bag{g.names[v]};
    std::size_t parent = n;
    for (auto w : adj[v]) {
      bag.insert(g.names[w]);
      parent = std::min(parent, position[w]);
    }
    td.bags.push_back(std::move(bag));
    if (parent == n) {
      roots.push_back(i);
    } else {
      td.edges.emplace_back(i, parent);
    }
    for (auto a : adj[v]) {
      for (auto b : adj[v]) {
        if (a != b) adj[a].insert(b);
      }
      adj[a].erase(v);
    }
    adj[v].clear();
  }
  // One root per connected component; chain them into a single tree.
  for (std::size_t i = 1; i < roots.size(); ++i) td.edges.emplace_back(roots[i - 1], roots[i]);
  return td;
}

}  // namespace

TreeDecomposition decomposition_from_order(const Hypergraph& h, const std::vector<Constant>& order) {
  auto g = primal_of(h);
  if (order.size() != g.names.size()) throw DomainError("elimination order must list every vertex once");
  std::vector<std::size_t> ids;
  std::vector<bool> used(g.names.size(), false);
  for (const auto& c : order) {
    auto it = std::lower_bound(g.names.begin(), g.names.end(), c);
    if (it == g.names.end() || *it != c) throw DomainError(c.to_string() + " is not a vertex");
    auto i = static_cast<std::size_t>(it - g.names.begin());
    if (used[i]) throw DomainError("elimination order must list every vertex once");
    used[i] = true;
    ids.push_back(i);
  }
  return from_order(g, ids);
}

std::optional<std::string> check_decomposition(const Hypergraph& h, const TreeDecomposition& td) {
  const std::size_t n = td.bags.size();
  if (n == 0) return "the tree has no nodes";
  if (td.edges.size() != n - 1) return "the tree must have one edge fewer than nodes";
  std::vector<std::size_t> root(n);
  std::iota(root.begin(), root.end(), 0);
  auto find = [&](std::size_t x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [a, b] : td.edges) {
    if (a >= n || b >= n) return std::string("edge endpoint out of range");
    auto ra = find(a), rb = find(b);
    if (ra == rb) return std::string("the edges contain a cycle");
    root[ra] = rb;
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (const auto& bag : td.bags) {
    for (const auto& v : bag) {
      if (!h.vertices.contains(v)) return "bag vertex " + v.to_string() + " is not a vertex";
    }
  }
  for (const auto& v : h.vertices) {
    std::vector<std::size_t> holding;
    for (std::size_t i = 0; i < n; ++i) {
      if (td.bags[i].contains(v)) holding.push_back(i);
    }
    if (holding.empty()) return "vertex " + v.to_string() + " is in no bag";
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{holding.front()};
    seen[holding.front()] = true;
    std::size_t reached = 0;
    while (!stack.empty()) {
      auto x = stack.back();
      stack.pop_back();
      ++reached;
      for (auto y : adj[x]) {
        if (!seen[y] && td.bags[y].contains(v)) {
          seen[y] = true;
          stack.push_back(y);
        }
      }
    }
    if (reached != holding.size()) return "the bags holding " + v.to_string() + " are not connected";
  }
  for (const auto& e : h.hyperedges) {
    bool covered = std::any_of(td.bags.begin(), td.bags.end(), [&](const VertexSet& bag) {
      return std::includes(bag.begin(), bag.end(), e.begin(), e.end());
    });
    if (!covered) return std::string("a hyperedge is in no bag");
  }
  return std::nullopt;
}

std::pair<TreeDecomposition, WidthReport> tree_decomposition(const Hypergraph& h,
                                                             DecompositionMode mode) {
  auto g = primal_of(h);
  WidthReport report;
  std::vector<std::size_t> order;
  if (mode == DecompositionMode::kExact) {
    if (g.names.size() > kExactVertexCap) {
      throw DomainError("exact tree-width is limited to " + std::to_string(kExactVertexCap) +
                        " vertices, got " + std::to_string(g.names.size()));
    }
    order = exact_order(g);
    report.is_exact = true;
  } else {
    order = min_fill_order(g);
  }
  auto td = from_order(g, order);
  if (auto why = check_decomposition(h, td)) throw Error("invalid tree decomposition: " + *why);
  report.width = td.width();
  return {std::move(td), report};
}

bool is_guarded(const Program& program) {
  for (const auto& r : program.rules()) {
    auto vars = r.body_variables();
    bool guarded = std::any_of(r.body.begin(), r.body.end(), [&](const Literal& l) {
      auto lv = l.variables();
      return std::includes(lv.begin(), lv.end(), vars.begin(), vars.end());
    });
    if (!guarded) return false;
  }
  return true;
}

bool fpt_gate(const AbductionProblem& ap, std::size_t k) {
  if (!is_guarded(ap.program())) return false;
  return tree_decomposition(hypergraph_of(ap.edb()), DecompositionMode::kHeuristic).second.width <= k;
}

}  // namespace causalog
