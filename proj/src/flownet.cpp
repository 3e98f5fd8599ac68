#include "causalog/flownet.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <set>

#include "causalog/error.hpp"

namespace causalog {

// ---------------------------------------------------------------------------
// Query shape

namespace {

const Rule& single_rule(const Program& program) {
  if (program.rules().size() != 1) {
    throw DomainError("expected a single-rule conjunctive query, got " +
                      std::to_string(program.rules().size()) + " rules");
  }
  return program.rules().front();
}

bool shares_variable(const Literal& a, const Literal& b) {
  auto va = a.variables();
  auto vb = b.variables();
  return std::any_of(va.begin(), va.end(), [&](const std::string& v) { return vb.contains(v); });
}

// Orders of the body built one atom at a time; `fits(order, next)` decides
// whether `next` may follow. Whether a prefix can be completed depends only on
// the atoms used and the last one, so dead ends are memoized on that pair.
std::optional<std::vector<std::size_t>> find_order(
    std::size_t n, const std::function<bool(const std::vector<std::size_t>&, std::size_t)>& fits) {
  std::vector<std::size_t> order;
  std::vector<bool> used(n, false);
  std::set<std::pair<std::vector<bool>, std::size_t>> dead;
  std::function<bool()> extend = [&]() -> bool {
    if (order.size() == n) return true;
    if (!order.empty() && dead.contains({used, order.back()})) return false;
    for (std::size_t a = 0; a < n; ++a) {
      if (used[a] || !fits(order, a)) continue;
      used[a] = true;
      order.push_back(a);
      if (extend()) return true;
      order.pop_back();
      used[a] = false;
    }
    if (!order.empty()) dead.insert({used, order.back()});
    return false;
  };
  if (!extend()) return std::nullopt;
  return order;
}

}  // namespace

QueryShape query_shape(const Program& program) {
  const auto& body = single_rule(program).body;
  const std::size_t n = body.size();
  QueryShape shape;

  // No self-join among the atoms holding any one variable.
  bool self_join = false;
  for (std::size_t i = 0; i < n && !self_join; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (body[i].predicate == body[j].predicate && shares_variable(body[i], body[j])) {
        self_join = true;
        break;
      }
    }
  }
  if (!self_join) {
    // A variable seen earlier must still be held by the last atom.
    auto contiguous = [&](const std::vector<std::size_t>& order, std::size_t a) {
      if (order.empty()) return true;
      const auto last = body[order.back()].variables();
      for (const auto& x : body[a].variables()) {
        if (last.contains(x)) continue;
        for (auto i : order) {
          if (body[i].variables().contains(x)) return false;
        }
      }
      return true;
    };
    if (auto order = find_order(n, contiguous)) {
      shape.linear = true;
      shape.witness_order = std::move(*order);
    }
  }

  std::set<std::string> preds;
  for (const auto& l : body) preds.insert(l.predicate);
  if (preds.size() == n) {
    auto consecutive_only = [&](const std::vector<std::size_t>& order, std::size_t a) {
      for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        if (shares_variable(body[order[i]], body[a])) return false;
      }
      return true;
    };
    shape.chain_join = find_order(n, consecutive_only).has_value();
  }
  return shape;
}

// ---------------------------------------------------------------------------
// Max flow

std::size_t FlowNetwork::add_edge(std::size_t from, std::size_t to, std::int64_t capacity) {
  edges.push_back(Edge{from, to, capacity});
  return edges.size() - 1;
}

namespace {

class Dinic {
 public:
  explicit Dinic(const FlowNetwork& net) : adj_(net.node_count), level_(net.node_count), iter_(net.node_count) {
    for (const auto& e : net.edges) {
      adj_[e.from].push_back(arcs_.size());
      arcs_.push_back(Arc{e.to, e.capacity});
      adj_[e.to].push_back(arcs_.size());
      arcs_.push_back(Arc{e.from, 0});
    }
  }

  std::int64_t run(std::size_t s, std::size_t t) {
    std::int64_t total = 0;
    while (bfs(s, t)) {
      std::fill(iter_.begin(), iter_.end(), 0);
      while (auto pushed = dfs(s, t, FlowNetwork::kInfinite)) total += pushed;
      if (total >= FlowNetwork::kInfinite) break;
    }
    return total;
  }

  std::vector<bool> residual_reach(std::size_t s) const {
    std::vector<bool> seen(adj_.size(), false);
    std::vector<std::size_t> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      auto u = stack.back();
      stack.pop_back();
      for (auto a : adj_[u]) {
        if (arcs_[a].cap > 0 && !seen[arcs_[a].to]) {
          seen[arcs_[a].to] = true;
          stack.push_back(arcs_[a].to);
        }
      }
    }
    return seen;
  }

 private:
  struct Arc {
    std::size_t to;
    std::int64_t cap;
  };

  bool bfs(std::size_t s, std::size_t t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<std::size_t> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      auto u = q.front();
      q.pop();
      for (auto a : adj_[u]) {
        if (arcs_[a].cap > 0 && level_[arcs_[a].to] < 0) {
          level_[arcs_[a].to] = level_[u] + 1;
          q.push(arcs_[a].to);
        }
      }
    }
    return level_[t] >= 0;
  }

  std::int64_t dfs(std::size_t u, std::size_t t, std::int64_t limit) {
    if (u == t) return limit;
    for (auto& i = iter_[u]; i < adj_[u].size(); ++i) {
      auto a = adj_[u][i];
      auto& arc = arcs_[a];
      if (arc.cap <= 0 || level_[arc.to] != level_[u] + 1) continue;
      if (auto got = dfs(arc.to, t, std::min(limit, arc.cap))) {
        arc.cap -= got;
        arcs_[a ^ 1].cap += got;
        return got;
      }
    }
    return 0;
  }

  std::vector<std::vector<std::size_t>> adj_;
  std::vector<Arc> arcs_;
  std::vector<int> level_;
  std::vector<std::size_t> iter_;
};

}  // namespace

FlowResult max_flow(const FlowNetwork& net) {
  if (net.source >= net.node_count || net.sink >= net.node_count) {
    throw DomainError("source and sink must be nodes of the network");
  }
  if (net.source == net.sink) throw DomainError("source and sink must differ");
  for (const auto& e : net.edges) {
    if (e.from >= net.node_count || e.to >= net.node_count) throw DomainError("edge endpoint out of range");
    if (e.capacity < 0) throw DomainError("edge capacities must be non-negative");
  }
  Dinic d(net);
  FlowResult r;
  r.value = d.run(net.source, net.sink);
  r.source_side = d.residual_reach(net.source);
  for (std::size_t i = 0; i < net.edges.size(); ++i) {
    const auto& e = net.edges[i];
    if (e.capacity > 0 && r.source_side[e.from] && !r.source_side[e.to]) r.cut.push_back(i);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Minimum contingency through a cut

namespace {

using Binding = std::map<std::string, Constant>;

struct Candidate {
  Atom atom;
  Binding binding;
  bool endogenous;
};

// Tuples of `instance` matching `lit` under the head bindings.
std::vector<Candidate> candidates(const Instance& instance, const Literal& lit, const Binding& head) {
  std::vector<Candidate> out;
  for (const auto& a : instance.all()) {
    if (a.predicate != lit.predicate || a.arity() != lit.arity()) continue;
    Binding b;
    bool ok = true;
    for (std::size_t i = 0; i < lit.arity() && ok; ++i) {
      const auto& term = lit.terms[i];
      if (!term.is_variable()) {
        ok = term.value == a.args[i];
        continue;
      }
      if (auto h = head.find(term.name); h != head.end() && h->second != a.args[i]) ok = false;
      auto [it, fresh] = b.emplace(term.name, a.args[i]);
      if (!fresh && it->second != a.args[i]) ok = false;
    }
    if (ok) out.push_back(Candidate{a, std::move(b), instance.is_endogenous(a)});
  }
  return out;
}

bool agree(const Binding& x, const Binding& y) {
  for (const auto& [v, c] : x) {
    if (auto it = y.find(v); it != y.end() && it->second != c) return false;
  }
  return true;
}

}  // namespace

std::size_t min_contingency_via_cut(const Instance& instance, const Program& program,
                                    const Tuple& answer, const Atom& t) {
  auto shape = query_shape(program);
  if (!shape.linear) throw DomainError("min-cut contingencies need a linear query");
  const auto& rule = program.rules().front();
  std::set<std::string> preds;
  for (const auto& l : rule.body) preds.insert(l.predicate);
  if (preds.size() != rule.body.size()) {
    throw DomainError("min-cut contingencies need a query without repeated predicates");
  }
  if (!holds(program, instance.all(), answer)) {
    throw DomainError("(" + to_string(answer) + ") is not an answer of the query on this instance");
  }
  if (!instance.is_endogenous(t)) throw DomainError(t.to_string() + " is not an endogenous tuple of the instance");

  Binding head;
  for (std::size_t i = 0; i < rule.head.arity(); ++i) {
    if (rule.head.terms[i].is_variable()) head.emplace(rule.head.terms[i].name, answer[i]);
  }
  const std::size_t n = shape.witness_order.size();
  std::vector<std::vector<Candidate>> layers;
  for (auto pos : shape.witness_order) layers.push_back(candidates(instance, rule.body[pos], head));

  // Layer and index of t, if it can take part in a witness at all.
  std::optional<std::pair<std::size_t, std::size_t>> where;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < layers[i].size(); ++j) {
      if (layers[i][j].atom == t) where = {i, j};
    }
  }
  auto not_cause = [&] { return DomainError(t.to_string() + " is not an actual cause"); };
  if (!where) throw not_cause();

  // Witnesses through t, one candidate index per layer.
  std::vector<std::vector<std::size_t>> through_t;
  std::vector<std::size_t> path(n);
  std::function<void(std::size_t)> walk = [&](std::size_t i) {
    if (i == n) {
      through_t.push_back(path);
      return;
    }
    for (std::size_t j = 0; j < layers[i].size(); ++j) {
      if (i == where->first && j != where->second) continue;
      if (i > 0 && !agree(layers[i - 1][path[i - 1]].binding, layers[i][j].binding)) continue;
      path[i] = j;
      walk(i + 1);
    }
  };
  walk(0);

  std::optional<std::int64_t> best;
  for (const auto& w : through_t) {
    FlowNetwork net;
    net.source = net.add_node();
    net.sink = net.add_node();
    std::vector<std::vector<std::size_t>> in(n), out(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < layers[i].size(); ++j) {
        in[i].push_back(net.add_node());
        out[i].push_back(net.add_node());
        if (i == where->first && j == where->second) continue;
        bool spared = w[i] == j || !layers[i][j].endogenous;
        net.add_edge(in[i][j], out[i][j], spared ? FlowNetwork::kInfinite : 1);
      }
    }
    for (std::size_t j = 0; j < layers[0].size(); ++j) net.add_edge(net.source, in[0][j], FlowNetwork::kInfinite);
    for (std::size_t j = 0; j < layers[n - 1].size(); ++j) {
      net.add_edge(out[n - 1][j], net.sink, FlowNetwork::kInfinite);
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t a = 0; a < layers[i].size(); ++a) {
        for (std::size_t b = 0; b < layers[i + 1].size(); ++b) {
          if (agree(layers[i][a].binding, layers[i + 1][b].binding)) {
            net.add_edge(out[i][a], in[i + 1][b], FlowNetwork::kInfinite);
          }
        }
      }
    }
    auto value = max_flow(net).value;
    if (value < FlowNetwork::kInfinite && (!best || value < *best)) best = value;
  }
  if (!best) throw not_cause();
  return static_cast<std::size_t>(*best);
}

}  // namespace causalog
