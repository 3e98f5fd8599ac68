#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "causalog/datalog.hpp"
#include "causalog/relmodel.hpp"

namespace causalog::testkit {

/// A program, an instance and one of its answers.
struct CorpusCase {
  Program program;
  Instance instance;
  Tuple answer;
  std::string family;  // "cq", "ucq", "recursive" or "linear"
};

struct CorpusOptions {
  std::size_t max_facts = 10;
  std::size_t domain_size = 3;
  /// Chance that a fact is exogenous; 0 gives all-endogenous instances.
  double exogenous_rate = 0.2;
};

/// Deterministic generator of small random cases for property suites.
class RandomCorpus {
 public:
  explicit RandomCorpus(std::uint64_t seed, CorpusOptions options = {});

  /// Conjunctive, union-of-conjunctive and recursive programs in rotation.
  CorpusCase next();
  /// Single-rule linear query with pairwise distinct predicates.
  CorpusCase next_linear();

  /// Random program of the given family with no instance attached.
  Program program(const std::string& family);
  /// Random facts over the extensional predicates of `program`.
  AtomSet facts(const Program& program, std::size_t count);
  /// Random endogenous/exogenous split of `facts`.
  Instance partition(const AtomSet& facts);

  std::mt19937_64& rng() noexcept { return rng_; }

 private:
  CorpusCase complete(Program program, std::string family);

  std::mt19937_64 rng_;
  CorpusOptions options_;
  std::size_t turn_ = 0;
};

}  // namespace causalog::testkit
