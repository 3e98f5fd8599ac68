#include "hitting_sets.hpp"

#include <algorithm>
#include <iterator>

namespace causalog::detail {

bool intersects(const IndexSet& a, const IndexSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i;
    else ++j;
  }
  return false;
}

bool is_subset(const IndexSet& small, const IndexSet& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

bool contains(const IndexSet& s, std::uint32_t e) { return std::binary_search(s.begin(), s.end(), e); }

IndexSet set_union(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Family minimize(Family family) {
  std::sort(family.begin(), family.end(), [](const IndexSet& a, const IndexSet& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  family.erase(std::unique(family.begin(), family.end()), family.end());
  Family out;
  for (auto& s : family) {
    bool dominated = std::any_of(out.begin(), out.end(),
                                 [&](const IndexSet& kept) { return is_subset(kept, s); });
    if (!dominated) out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Family minimal_hitting_sets(const Family& sets) {
  Family current{IndexSet{}};
  for (const auto& s : sets) {
    if (s.empty()) return {};
    Family next;
    for (const auto& h : current) {
      if (intersects(h, s)) {
        next.push_back(h);
        continue;
      }
      for (auto e : s) {
        IndexSet grown = h;
        grown.insert(std::upper_bound(grown.begin(), grown.end(), e), e);
        next.push_back(std::move(grown));
      }
    }
    current = minimize(std::move(next));
  }
  return current;
}

namespace {

struct BranchAndBound {
  Family sets;  // forbidden elements already stripped
  std::size_t best;

  void search(IndexSet& chosen) {
    if (chosen.size() >= best) return;
    // Branch on the smallest set not yet hit.
    const IndexSet* pick = nullptr;
    for (const auto& s : sets) {
      if (intersects(s, chosen)) continue;
      if (pick == nullptr || s.size() < pick->size()) pick = &s;
    }
    if (pick == nullptr) {
      best = chosen.size();
      return;
    }
    // Lower bound: at least one more element is needed.
    if (chosen.size() + 1 >= best) return;
    for (auto e : *pick) {
      chosen.insert(std::upper_bound(chosen.begin(), chosen.end(), e), e);
      search(chosen);
      chosen.erase(std::lower_bound(chosen.begin(), chosen.end(), e));
    }
  }
};

}  // namespace

std::optional<std::size_t> minimum_hitting_set_size(const Family& sets, const IndexSet& forbidden) {
  BranchAndBound bb;
  for (const auto& s : sets) {
    IndexSet allowed;
    std::set_difference(s.begin(), s.end(), forbidden.begin(), forbidden.end(),
                        std::back_inserter(allowed));
    if (allowed.empty()) return std::nullopt;
    bb.sets.push_back(std::move(allowed));
  }
  bb.sets = minimize(std::move(bb.sets));
  bb.best = bb.sets.size() + 1;  // any one-per-set choice is feasible
  IndexSet chosen;
  bb.search(chosen);
  return bb.best;
}

}  // namespace causalog::detail
