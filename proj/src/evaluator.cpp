// Semi-naive evaluation over interned constants.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <unordered_map>

#include "causalog/datalog.hpp"
#include "causalog/error.hpp"

namespace causalog {

namespace {

using Id = std::uint32_t;
constexpr Id kUnbound = std::numeric_limits<Id>::max();

struct CTerm {
  bool is_var;
  Id id;  // variable slot or constant id
};

struct CLiteral {
  Id pred;
  std::vector<CTerm> terms;
};

struct CRule {
  CLiteral head;
  std::vector<CLiteral> body;
  Id num_vars = 0;
};

std::uint64_t hash_row(const Id* row, std::size_t arity) {
  std::uint64_t h = 1469598103934665603ULL;
  for (std::size_t i = 0; i < arity; ++i) {
    h ^= row[i];
    h *= 1099511628211ULL;
  }
  return h;
}

// Append-only relation. Row numbers grow monotonically, so per-column index
// lists are sorted and a semi-naive window [lo, hi) is a contiguous slice.
class Relation {
 public:
  explicit Relation(std::size_t arity) : arity_(arity), index_(arity) {}

  std::size_t arity() const noexcept { return arity_; }
  Id rows() const noexcept { return rows_; }
  const Id* row(Id i) const noexcept { return data_.data() + static_cast<std::size_t>(i) * arity_; }

  // Returns false when the row is already present.
  bool insert(const Id* row) {
    if (arity_ == 0) {
      if (rows_ > 0) return false;
      ++rows_;
      return true;
    }
    auto h = hash_row(row, arity_);
    auto& bucket = buckets_[h];
    for (Id r : bucket) {
      if (std::equal(row, row + arity_, this->row(r))) return false;
    }
    Id id = rows_++;
    bucket.push_back(id);
    data_.insert(data_.end(), row, row + arity_);
    for (std::size_t c = 0; c < arity_; ++c) index_[c][row[c]].push_back(id);
    return true;
  }

  bool contains(const Id* row) const {
    if (arity_ == 0) return rows_ > 0;
    auto it = buckets_.find(hash_row(row, arity_));
    if (it == buckets_.end()) return false;
    return std::any_of(it->second.begin(), it->second.end(),
                       [&](Id r) { return std::equal(row, row + arity_, this->row(r)); });
  }

  const std::vector<Id>* lookup(std::size_t column, Id value) const {
    auto it = index_[column].find(value);
    return it == index_[column].end() ? nullptr : &it->second;
  }

 private:
  std::size_t arity_;
  Id rows_ = 0;
  std::vector<Id> data_;
  std::unordered_map<std::uint64_t, std::vector<Id>> buckets_;
  std::vector<std::unordered_map<Id, std::vector<Id>>> index_;
};

struct Window {
  Id lo;
  Id hi;
};

}  // namespace

struct Evaluator::Impl {
  Program program;
  std::vector<Atom> universe;
  std::map<std::string, Id> pred_ids;
  std::vector<std::string> pred_names;
  std::vector<std::size_t> pred_arity;
  std::map<Constant, Id> const_ids;
  std::vector<Constant> constants;
  std::vector<CRule> rules;
  std::vector<std::pair<Id, std::vector<Id>>> facts;  // interned universe
  Id answer_pred = 0;

  Impl(Program p, std::vector<Atom> u) : program(std::move(p)), universe(std::move(u)) {
    auto heads = program.head_predicates();
    for (const auto& [name, arity] : program.schema().arities()) intern_pred(name, arity);
    for (const auto& r : program.rules()) rules.push_back(compile(r));
    answer_pred = pred_ids.at(program.answer_predicate());
    for (const auto& a : universe) {
      if (heads.contains(a.predicate)) {
        throw DomainError("fact " + a.to_string() + " uses predicate " + a.predicate +
                          ", which is defined by a rule");
      }
      Id pid = intern_pred(a.predicate, a.arity());
      std::vector<Id> row;
      row.reserve(a.arity());
      for (const auto& c : a.args) row.push_back(intern_const(c));
      facts.emplace_back(pid, std::move(row));
    }
  }

  Id intern_pred(const std::string& name, std::size_t arity) {
    auto [it, inserted] = pred_ids.emplace(name, static_cast<Id>(pred_names.size()));
    if (inserted) {
      pred_names.push_back(name);
      pred_arity.push_back(arity);
    } else if (pred_arity[it->second] != arity) {
      throw DomainError("arity conflict for predicate " + name + ": used with " +
                        std::to_string(pred_arity[it->second]) + " and " +
                        std::to_string(arity) + " arguments");
    }
    return it->second;
  }

  Id intern_const(const Constant& c) {
    auto [it, inserted] = const_ids.emplace(c, static_cast<Id>(constants.size()));
    if (inserted) constants.push_back(c);
    return it->second;
  }

  std::optional<Id> find_const(const Constant& c) const {
    auto it = const_ids.find(c);
    if (it == const_ids.end()) return std::nullopt;
    return it->second;
  }

  CRule compile(const Rule& r) {
    std::map<std::string, Id> slots;
    auto lit = [&](const Literal& l) {
      CLiteral out{pred_ids.at(l.predicate), {}};
      for (const auto& t : l.terms) {
        if (t.is_variable()) {
          auto [it, inserted] = slots.emplace(t.name, static_cast<Id>(slots.size()));
          out.terms.push_back({true, it->second});
        } else {
          out.terms.push_back({false, intern_const(t.value)});
        }
      }
      return out;
    };
    CRule out;
    for (const auto& b : r.body) out.body.push_back(lit(b));
    out.head = lit(r.head);
    out.num_vars = static_cast<Id>(slots.size());
    return out;
  }

  struct State {
    std::vector<Relation> rels;
    std::vector<Id> stable;  // rows < stable are "old"
    std::vector<Id> recent;  // rows in [stable, recent) are the current delta
  };

  struct Goal {
    Id pred;
    std::vector<Id> row;
  };

  State fresh_state() const {
    State s;
    s.rels.reserve(pred_names.size());
    for (auto a : pred_arity) s.rels.emplace_back(a);
    s.stable.assign(pred_names.size(), 0);
    s.recent.assign(pred_names.size(), 0);
    return s;
  }

  // Enumerates all bindings of rule.body[pos..] within the windows.
  template <typename Emit>
  bool join(const State& s, const CRule& rule, std::size_t pos, const std::vector<Window>& win,
            std::vector<Id>& binding, Emit& emit) const {
    if (pos == rule.body.size()) return emit(binding);
    const auto& lit = rule.body[pos];
    const auto& rel = s.rels[lit.pred];
    Window w = win[pos];
    if (w.lo >= w.hi) return true;

    std::vector<Id> newly;
    auto try_row = [&](Id r) -> bool {
      const Id* row = rel.row(r);
      newly.clear();
      bool ok = true;
      for (std::size_t c = 0; c < lit.terms.size() && ok; ++c) {
        const auto& t = lit.terms[c];
        if (!t.is_var) {
          ok = row[c] == t.id;
        } else if (binding[t.id] == kUnbound) {
          binding[t.id] = row[c];
          newly.push_back(t.id);
        } else {
          ok = binding[t.id] == row[c];
        }
      }
      bool cont = true;
      if (ok) {
        auto saved = newly;
        cont = join(s, rule, pos + 1, win, binding, emit);
        newly = std::move(saved);
      }
      for (Id v : newly) binding[v] = kUnbound;
      return cont;
    };

    // Index on the first bound column.
    for (std::size_t c = 0; c < lit.terms.size(); ++c) {
      const auto& t = lit.terms[c];
      Id value = t.is_var ? binding[t.id] : t.id;
      if (value == kUnbound) continue;
      const auto* rows = rel.lookup(c, value);
      if (rows == nullptr) return true;
      auto it = std::lower_bound(rows->begin(), rows->end(), w.lo);
      for (; it != rows->end() && *it < w.hi; ++it) {
        if (!try_row(*it)) return false;
      }
      return true;
    }
    for (Id r = w.lo; r < w.hi; ++r) {
      if (!try_row(r)) return false;
    }
    return true;
  }

  // Runs to fixpoint; returns early once `goal` is derived.
  State run(const Mask& present, const Goal* goal) const {
    if (present.size() != facts.size()) throw DomainError("mask size does not match universe");
    State s = fresh_state();
    for (std::size_t i = 0; i < facts.size(); ++i) {
      if (present[i]) s.rels[facts[i].first].insert(facts[i].second.data());
    }
    if (goal && s.rels[goal->pred].contains(goal->row.data())) return s;
    for (std::size_t p = 0; p < s.rels.size(); ++p) s.recent[p] = s.rels[p].rows();

    bool reached = false;
    std::vector<Id> head_row;
    for (;;) {
      for (const auto& rule : rules) {
        std::vector<Window> win(rule.body.size());
        for (std::size_t i = 0; i < rule.body.size(); ++i) {
          Id di = rule.body[i].pred;
          if (s.stable[di] >= s.recent[di]) continue;
          for (std::size_t j = 0; j < rule.body.size(); ++j) {
            Id pj = rule.body[j].pred;
            if (j < i) win[j] = {0, s.stable[pj]};
            else if (j == i) win[j] = {s.stable[pj], s.recent[pj]};
            else win[j] = {0, s.recent[pj]};
          }
          std::vector<Id> binding(rule.num_vars, kUnbound);
          auto emit = [&](const std::vector<Id>& b) {
            head_row.clear();
            for (const auto& t : rule.head.terms) head_row.push_back(t.is_var ? b[t.id] : t.id);
            if (s.rels[rule.head.pred].insert(head_row.data()) && goal &&
                goal->pred == rule.head.pred && goal->row == head_row) {
              reached = true;
              return false;
            }
            return true;
          };
          join(s, rule, 0, win, binding, emit);
          if (reached) return s;
        }
      }
      bool changed = false;
      for (std::size_t p = 0; p < s.rels.size(); ++p) {
        s.stable[p] = s.recent[p];
        s.recent[p] = s.rels[p].rows();
        changed = changed || s.stable[p] != s.recent[p];
      }
      if (!changed) return s;
    }
  }

  std::optional<Goal> make_goal(const Atom& atom) const {
    auto pit = pred_ids.find(atom.predicate);
    if (pit == pred_ids.end()) return std::nullopt;
    if (pred_arity[pit->second] != atom.arity()) {
      throw DomainError("goal " + atom.to_string() + " has the wrong arity for " + atom.predicate);
    }
    Goal g{pit->second, {}};
    for (const auto& c : atom.args) {
      auto id = find_const(c);
      if (!id) return std::nullopt;
      g.row.push_back(*id);
    }
    return g;
  }

  Atom decode(Id pred, const Id* row) const {
    Atom a{pred_names[pred], {}};
    for (std::size_t c = 0; c < pred_arity[pred]; ++c) a.args.push_back(constants[row[c]]);
    return a;
  }
};

Evaluator::Evaluator(Program program, std::vector<Atom> universe)
    : impl_(std::make_shared<const Impl>(std::move(program), std::move(universe))) {}

const Program& Evaluator::program() const noexcept { return impl_->program; }
const std::vector<Atom>& Evaluator::universe() const noexcept { return impl_->universe; }
std::size_t Evaluator::size() const noexcept { return impl_->universe.size(); }

AnswerSet Evaluator::answers(const Mask& present) const {
  auto s = impl_->run(present, nullptr);
  AnswerSet out;
  const auto& rel = s.rels[impl_->answer_pred];
  out.boolean = impl_->program.is_boolean();
  if (out.boolean) {
    out.truth = rel.rows() > 0;
    return out;
  }
  for (Id r = 0; r < rel.rows(); ++r) {
    out.tuples.insert(impl_->decode(impl_->answer_pred, rel.row(r)).args);
  }
  out.truth = !out.tuples.empty();
  return out;
}

bool Evaluator::holds(const Mask& present, const Tuple& answer) const {
  if (answer.size() != impl_->program.answer_arity()) {
    throw DomainError("answer has " + std::to_string(answer.size()) +
                      " constants but the answer predicate " +
                      impl_->program.answer_predicate() + " has arity " +
                      std::to_string(impl_->program.answer_arity()));
  }
  return entails(present, {Atom{impl_->program.answer_predicate(), answer}});
}

bool Evaluator::entails(const Mask& present, const std::vector<Atom>& goals) const {
  std::vector<Impl::Goal> compiled;
  for (const auto& g : goals) {
    auto c = impl_->make_goal(g);
    if (!c) return false;
    compiled.push_back(std::move(*c));
  }
  if (compiled.size() == 1) {
    auto s = impl_->run(present, &compiled.front());
    return s.rels[compiled.front().pred].contains(compiled.front().row.data());
  }
  auto s = impl_->run(present, nullptr);
  return std::all_of(compiled.begin(), compiled.end(),
                     [&](const Impl::Goal& g) { return s.rels[g.pred].contains(g.row.data()); });
}

AtomSet Evaluator::model(const Mask& present) const {
  auto s = impl_->run(present, nullptr);
  AtomSet out;
  for (Id p = 0; p < s.rels.size(); ++p) {
    for (Id r = 0; r < s.rels[p].rows(); ++r) out.insert(impl_->decode(p, s.rels[p].row(r)));
  }
  return out;
}

Grounding Evaluator::ground(const Mask& present) const {
  auto s = impl_->run(present, nullptr);
  Grounding g;
  // Atom numbering: universe facts keep their relative order, derived atoms follow.
  std::vector<std::vector<std::size_t>> ids(s.rels.size());
  for (Id p = 0; p < s.rels.size(); ++p) ids[p].assign(s.rels[p].rows(), 0);
  std::vector<bool> numbered_edb(s.rels.size(), false);
  const auto heads = impl_->program.head_predicates();
  for (Id p = 0; p < s.rels.size(); ++p) {
    if (heads.contains(impl_->pred_names[p])) continue;
    numbered_edb[p] = true;
    for (Id r = 0; r < s.rels[p].rows(); ++r) {
      ids[p][r] = g.atoms.size();
      g.atoms.push_back(impl_->decode(p, s.rels[p].row(r)));
    }
  }
  for (Id p = 0; p < s.rels.size(); ++p) {
    if (numbered_edb[p]) continue;
    for (Id r = 0; r < s.rels[p].rows(); ++r) {
      ids[p][r] = g.atoms.size();
      g.atoms.push_back(impl_->decode(p, s.rels[p].row(r)));
    }
  }
  // Row lookup by content for head atoms.
  auto row_of = [&](Id pred, const std::vector<Id>& row) -> Id {
    const auto& rel = s.rels[pred];
    if (rel.arity() == 0) return 0;
    const auto* rows = rel.lookup(0, row[0]);
    for (Id r : *rows) {
      if (std::equal(row.begin(), row.end(), rel.row(r))) return r;
    }
    throw std::logic_error("ground: head atom missing from model");
  };
  for (const auto& rule : impl_->rules) {
    std::vector<Window> win(rule.body.size());
    for (std::size_t j = 0; j < rule.body.size(); ++j) win[j] = {0, s.rels[rule.body[j].pred].rows()};
    std::vector<Id> binding(rule.num_vars, kUnbound);
    std::vector<Id> row;
    auto emit = [&](const std::vector<Id>& b) {
      GroundRule gr;
      row.clear();
      for (const auto& t : rule.head.terms) row.push_back(t.is_var ? b[t.id] : t.id);
      gr.head = ids[rule.head.pred][row_of(rule.head.pred, row)];
      for (const auto& lit : rule.body) {
        row.clear();
        for (const auto& t : lit.terms) row.push_back(t.is_var ? b[t.id] : t.id);
        gr.body.push_back(ids[lit.pred][row_of(lit.pred, row)]);
      }
      g.rules.push_back(std::move(gr));
      return true;
    };
    impl_->join(s, rule, 0, win, binding, emit);
  }
  return g;
}

}  // namespace causalog
