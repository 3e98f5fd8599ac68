// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 on any FAIL.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "causalog/abduction.hpp"
#include "causalog/causality.hpp"
#include "causalog/delprop.hpp"
#include "causalog/error.hpp"
#include "causalog/flownet.hpp"
#include "causalog/oracle.hpp"
#include "causalog/treewidth.hpp"
#include "fixtures.hpp"
#include "testkit/crosscheck.hpp"
#include "testkit/hardness_gadget.hpp"
#include "testkit/random_corpus.hpp"

namespace {

using namespace causalog;
using fixtures::atom;
using fixtures::atoms;
using Clock = std::chrono::steady_clock;

constexpr double kExampleSeconds = 1.0;
constexpr double kCorpusSeconds = 300.0;
constexpr double kCutMillis = 100.0;
constexpr std::size_t kCorpusCases = 500;
constexpr std::size_t kCorpusMaxEndogenous = 10;
constexpr std::size_t kLinearCases = 200;
constexpr std::size_t kLinearMaxFacts = 12;
constexpr std::size_t kMonotonePairs = 200;
constexpr std::size_t kMaxWidth = 5;
constexpr std::uint64_t kSeed = 7;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  failures += ok ? 0 : 1;
}

// Runs `body` and turns an exception into a failure with its message.
void criterion(int id, const std::function<std::pair<bool, std::string>()>& body) {
  try {
    auto [ok, detail] = body();
    report(id, ok, detail);
  } catch (const std::exception& e) {
    report(id, false, std::string("exception: ") + e.what());
  }
}

AtomSet cause_set(const std::vector<CausalExplanation>& v) {
  AtomSet out;
  for (const auto& e : v) out.insert(e.cause);
  return out;
}

AtomFamily deleted(const std::vector<DeletionSolution>& v) {
  AtomFamily out;
  for (const auto& s : v) out.insert(s.deleted);
  return out;
}

std::vector<testkit::CorpusCase> corpus_cases() {
  testkit::RandomCorpus corpus(kSeed, {.max_facts = kCorpusMaxEndogenous, .domain_size = 3, .exogenous_rate = 0.2});
  std::vector<testkit::CorpusCase> out;
  for (std::size_t i = 0; i < kCorpusCases; ++i) out.push_back(corpus.next());
  return out;
}

}  // namespace

int main() {
  criterion(1, [] {
    auto start = Clock::now();
    CauseQuery q(fixtures::q1(), fixtures::ex1(), fixtures::john_xml());
    auto causes = actual_causes(q);
    bool ok = cause_set(causes) == fixtures::ex1_causes();
    for (const auto& e : causes) ok = ok && e.responsibility == Rational(1, 2);
    AtomFamily expected{atoms({"Author(John,TKDE)"}), atoms({"Journal(TKDE,XML,30)"})};
    ok = ok && minimal_contingencies(q, atom("Author(John,TODS)")) == expected;
    double s = seconds_since(start);
    ok = ok && s < kExampleSeconds;
    return std::pair{ok, std::to_string(causes.size()) + " causes at 1/2, Author(John,TODS) contingencies match, " +
                             std::to_string(s) + " s"};
  });

  criterion(2, [] {
    CauseQuery q(fixtures::q1(), fixtures::ex1_partition(), fixtures::john_xml());
    auto got = cause_set(actual_causes(q));
    return std::pair{got == atoms({"Author(John,TODS)", "Author(John,TKDE)"}), "causes " + to_string(got)};
  });

  criterion(3, [] {
    bool vc = has_vc_cause(CauseQuery(fixtures::q1(), fixtures::ex1(), fixtures::john_xml()));
    bool view_safe = view_side_effect_free(DeletionTask(fixtures::q1(), fixtures::ex1(), fixtures::john_xml())).has_value();
    return std::pair{!vc && !view_safe, std::string("has_vc_cause=") + (vc ? "true" : "false") +
                                            ", view_side_effect_free=" + (view_safe ? "present" : "absent")};
  });

  criterion(4, [] {
    auto start = Clock::now();
    AbductionProblem ap(fixtures::q3(), {}, fixtures::ex3().all(), {parse_atom("ans")});
    std::set<AtomSet> got;
    for (const auto& d : diagnoses(ap)) got.insert(d.delta);
    std::set<AtomSet> expected{atoms({"S(a1)", "R(a2,a1)"}), atoms({"S(a3)", "R(a3,a3)"})};
    auto relevant = relevant_hypotheses(ap);
    auto via = causes_via_abduction(fixtures::ex3(), fixtures::q3());
    auto direct = cause_set(actual_causes(CauseQuery(fixtures::q3(), fixtures::ex3(), {})));
    double s = seconds_since(start);
    bool ok = got == expected && relevant == atoms({"S(a1)", "R(a2,a1)", "S(a3)", "R(a3,a3)"}) && via == direct &&
              s < kExampleSeconds;
    return std::pair{ok, "diagnoses " + std::to_string(got.size()) + ", relevant " + to_string(relevant) + ", " +
                             std::to_string(s) + " s"};
  });

  criterion(5, [] {
    DeletionTask task(fixtures::q1(), fixtures::ex1(), fixtures::john_xml());
    auto minimal = minimal_source_deletions(task);
    auto minimum = minimum_source_deletions(task);
    bool ok = deleted(minimal) == fixtures::ex1_deletions() && deleted(minimum) == fixtures::ex1_deletions();
    for (const auto& s : minimum) ok = ok && s.deleted.size() == 2;
    return std::pair{ok, std::to_string(minimal.size()) + " minimal, " + std::to_string(minimum.size()) +
                             " minimum solutions of size 2"};
  });

  criterion(6, [] {
    DeletionTask task(fixtures::q1(), fixtures::ex1_partition(), fixtures::john_xml(), DeletionScope::kEndogenousOnly);
    AtomFamily expected{atoms({"Author(John,TODS)", "Author(John,TKDE)"})};
    auto minimal = deleted(minimal_source_deletions(task));
    auto minimum = deleted(minimum_source_deletions(task));
    return std::pair{minimal == expected && minimum == expected,
                     "minimal and minimum delete " + (minimal.empty() ? std::string("nothing") : to_string(*minimal.begin()))};
  });

  criterion(7, [] {
    auto start = Clock::now();
    auto h = hypergraph_of(fixtures::ex1());
    auto [td, r] = tree_decomposition(h, DecompositionMode::kHeuristic);
    auto problem = check_decomposition(h, td);
    double s = seconds_since(start);
    bool ok = !problem && r.width <= kMaxWidth && s < kExampleSeconds;
    return std::pair{ok, "width " + std::to_string(r.width) + (problem ? ", invalid: " + *problem : ", valid") +
                             ", " + std::to_string(s) + " s"};
  });

  const auto cases = corpus_cases();
  std::size_t bridge_checks = 0, bridge_mismatches = 0;
  std::string first_bridge;
  criterion(8, [&] {
    auto start = Clock::now();
    std::size_t checks = 0, mismatches = 0, oversized = 0;
    std::string first;
    for (const auto& c : cases) {
      if (c.instance.endogenous().size() > kCorpusMaxEndogenous) ++oversized;
      for (const auto& r : testkit::crosscheck_case(c)) {
        std::size_t& n = r.group == testkit::CheckGroup::kOracle ? mismatches : bridge_mismatches;
        (r.group == testkit::CheckGroup::kOracle ? checks : bridge_checks) += 1;
        if (r.ok) continue;
        ++n;
        std::string& where = r.group == testkit::CheckGroup::kOracle ? first : first_bridge;
        if (where.empty()) where = r.name + ": " + r.detail;
      }
    }
    double s = seconds_since(start);
    bool ok = mismatches == 0 && oversized == 0 && s < kCorpusSeconds;
    return std::pair{ok, std::to_string(cases.size()) + " cases, " + std::to_string(checks) + " oracle checks, " +
                             std::to_string(mismatches) + " mismatches, " + std::to_string(s) + " s" +
                             (first.empty() ? "" : "; first: " + first)};
  });

  criterion(9, [&] {
    bool ok = bridge_checks > 0 && bridge_mismatches == 0;
    return std::pair{ok, std::to_string(bridge_checks) + " bridge checks on the same corpus, " +
                             std::to_string(bridge_mismatches) + " mismatches" +
                             (first_bridge.empty() ? "" : "; first: " + first_bridge)};
  });

  criterion(10, [] {
    testkit::RandomCorpus corpus(kSeed, {.max_facts = kLinearMaxFacts, .domain_size = 3, .exogenous_rate = 0.2});
    std::size_t causes = 0, mismatches = 0, slow = 0, oversized = 0;
    double worst_cut = 0, oracle_total = 0, cut_total = 0;
    for (std::size_t i = 0; i < kLinearCases; ++i) {
      auto c = corpus.next_linear();
      if (c.instance.size() > kLinearMaxFacts) ++oversized;
      CauseQuery q(c.program, c.instance, c.answer);
      auto explanations = actual_causes(q);
      auto start = Clock::now();
      std::vector<std::size_t> cuts;
      for (const auto& e : explanations) cuts.push_back(min_contingency_via_cut(c.instance, c.program, c.answer, e.cause));
      double ms = seconds_since(start) * 1000;
      cut_total += ms;
      worst_cut = std::max(worst_cut, ms);
      slow += ms >= kCutMillis;
      auto ostart = Clock::now();
      for (std::size_t k = 0; k < explanations.size(); ++k) {
        ++causes;
        auto ref = oracle_min_contingency(q, explanations[k].cause);
        auto rho = Rational::reciprocal(static_cast<std::int64_t>(cuts[k]) + 1);
        if (ref != cuts[k] || rho != explanations[k].responsibility) ++mismatches;
      }
      oracle_total += seconds_since(ostart) * 1000;
    }
    bool ok = mismatches == 0 && slow == 0 && oversized == 0 && causes > 0;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "%zu instances, %zu causes, %zu mismatches, worst cut %.2f ms, cut total %.1f ms vs oracle %.1f ms",
                  kLinearCases, causes, mismatches, worst_cut, cut_total, oracle_total);
    return std::pair{ok, std::string(buf)};
  });

  criterion(11, [] {
    testkit::RandomCorpus corpus(kSeed + 1);
    std::size_t violations = 0;
    for (std::size_t i = 0; i < kMonotonePairs; ++i) {
      auto program = corpus.program(i % 2 ? "recursive" : "ucq");
      auto small = corpus.facts(program, 6);
      auto large = small;
      for (const auto& f : corpus.facts(program, 6)) large.insert(f);
      auto lhs = evaluate(program, small).answers();
      auto rhs = evaluate(program, large).answers();
      violations += !std::includes(rhs.begin(), rhs.end(), lhs.begin(), lhs.end());
    }
    return std::pair{violations == 0, std::to_string(kMonotonePairs) + " pairs, " + std::to_string(violations) +
                                          " violations"};
  });

  // Not criteria: cut time on linear instances far beyond the oracle's reach, and
  // diagnosis time on the guarded hardness gadget as it grows.
  for (std::size_t facts : {50, 200, 800}) {
    testkit::RandomCorpus corpus(kSeed, {.max_facts = facts, .domain_size = 12, .exogenous_rate = 0.2});
    double worst = 0;
    std::size_t size = 0;
    for (int i = 0; i < 10; ++i) {
      auto c = corpus.next_linear();
      size = std::max(size, c.instance.size());
      for (const auto& t : c.instance.endogenous()) {
        auto start = Clock::now();
        try {
          min_contingency_via_cut(c.instance, c.program, c.answer, t);
        } catch (const DomainError&) {
        }
        worst = std::max(worst, seconds_since(start) * 1000);
      }
    }
    std::printf("info cut: instances up to %zu facts, worst %.2f ms per tuple\n", size, worst);
  }
  for (std::size_t vars : {8, 12, 16}) {
    auto ap = testkit::hardness_instance(vars, vars / 2 + 2, 2 * vars, kSeed);
    auto start = Clock::now();
    auto sol = diagnoses(ap);
    std::printf("info gadget: %zu propositions, %zu hypotheses, %zu diagnoses, %.2f ms\n", vars,
                ap.hypotheses().size(), sol.size(), seconds_since(start) * 1000);
  }

  std::printf("%s: %d failing criteria\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
