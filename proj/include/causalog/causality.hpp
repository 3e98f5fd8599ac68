#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "causalog/datalog.hpp"
#include "causalog/relmodel.hpp"

namespace causalog {

/// Exact non-negative rational, always in lowest terms.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t numerator, std::int64_t denominator);

  static Rational zero() { return {}; }
  /// 1/k for k >= 1.
  static Rational reciprocal(std::int64_t k) { return Rational(1, k); }

  std::int64_t numerator() const noexcept { return num_; }
  std::int64_t denominator() const noexcept { return den_; }

  /// "0" or "n/d", e.g. "1/2" and "1/1".
  std::string to_string() const;

  bool operator==(const Rational&) const = default;
  std::strong_ordering operator<=>(const Rational& other) const;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Threshold for the responsibility decision problem: 0 or 1/k, k >= 1.
class ResponsibilityThreshold {
 public:
  static ResponsibilityThreshold zero() { return ResponsibilityThreshold(Rational::zero()); }
  /// Throws DomainError for k < 1.
  static ResponsibilityThreshold one_over(std::int64_t k);

  const Rational& value() const noexcept { return v_; }

 private:
  explicit ResponsibilityThreshold(Rational v) : v_(v) {}
  Rational v_;
};

struct SupportCache;

/// A program, a partitioned instance and an answer the program derives on it.
///
/// The minimal supports of every answer are computed once, on first use, and
/// shared by copies of the query; concurrent readers see a single computation.
class CauseQuery {
 public:
  /// Throws DomainError unless `answer` is an answer of `program` on the instance
  /// (an empty tuple stands for `yes` of a boolean program).
  CauseQuery(Program program, Instance instance, Tuple answer);

  const Program& program() const noexcept { return program_; }
  const Instance& instance() const noexcept { return instance_; }
  const Tuple& answer() const noexcept { return answer_; }
  /// Q(D): every answer of the program on the full instance.
  const std::set<Tuple>& all_answers() const noexcept { return all_answers_; }

  struct Supports;
  const Supports& supports() const;

 private:
  Program program_;
  Instance instance_;
  Tuple answer_;
  std::set<Tuple> all_answers_;
  std::shared_ptr<SupportCache> cache_;
};

/// An actual cause with all its subset-minimal contingency sets.
struct CausalExplanation {
  Atom cause;
  AtomFamily contingencies;
  Rational responsibility;

  bool operator==(const CausalExplanation&) const = default;
};

/// Subset-minimal sets of endogenous tuples that, together with D^x, derive the
/// query answer. Empty when the answer does not hold; {∅} when D^x alone derives it.
AtomFamily minimal_supports(const CauseQuery& q);

/// Throws DomainError when `t` is not endogenous.
bool is_actual_cause(const CauseQuery& q, const Atom& t);

/// One explanation per actual cause, in canonical atom order.
std::vector<CausalExplanation> actual_causes(const CauseQuery& q);

/// Cont(D, Q(a), t). Throws DomainError when `t` is not an actual cause.
AtomFamily minimal_contingencies(const CauseQuery& q, const Atom& t);

/// 1/(1 + |smallest contingency|) for causes, 0 for other endogenous tuples.
/// Throws DomainError when `t` is not endogenous.
Rational responsibility(const CauseQuery& q, const Atom& t);

bool responsibility_exceeds(const CauseQuery& q, const Atom& t, const ResponsibilityThreshold& v);

/// Causes whose responsibility is maximal over D^n; every maximizer is returned.
AtomSet most_responsible_causes(const CauseQuery& q);

/// View-conditioned causes of the query's answer, keyed to their contingency
/// sets. A contingency Γ keeps every original answer, and removing Γ ∪ {t}
/// drops exactly the conditioned answer.
std::map<Atom, AtomFamily> vc_explanations(const CauseQuery& q);

AtomSet vc_causes(const CauseQuery& q);
bool has_vc_cause(const CauseQuery& q);

}  // namespace causalog
