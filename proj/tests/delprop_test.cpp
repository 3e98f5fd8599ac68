#include <gtest/gtest.h>

#include "causalog/causality.hpp"
#include "causalog/delprop.hpp"
#include "causalog/error.hpp"
#include "fixtures.hpp"

namespace causalog {
namespace {

using fixtures::atom;
using fixtures::atoms;

DeletionTask ex1_task(DeletionScope scope = DeletionScope::kAll) {
  return DeletionTask(fixtures::q1(), fixtures::ex1(), fixtures::john_xml(), scope);
}
DeletionTask ex5_task() {
  return DeletionTask(fixtures::q1(), fixtures::ex1_partition(), fixtures::john_xml(), DeletionScope::kEndogenousOnly);
}
DeletionTask single_fact_task() {
  return DeletionTask(parse_program("ans :- R(X)."), Instance(atoms({"R(a)"}), {}), {});
}
DeletionTask two_fact_task() {
  return DeletionTask(parse_program("Ans(X) :- R(X)."), Instance(atoms({"R(a)", "R(b)"}), {}), parse_tuple("a"));
}
DeletionTask vc_task() {
  return DeletionTask(fixtures::q1(), fixtures::vc_instance(), parse_tuple("j,t1"));
}
// (j,t) has the support {Author(j,v1)} over an exogenous journal and the
// support {Author(j,v2), Journal(v2,t,1)}.
DeletionTask mixed_support_task() {
  Instance inst(atoms({"Author(j,v1)", "Author(j,v2)", "Journal(v2,t,1)"}), atoms({"Journal(v1,t,1)"}));
  return DeletionTask(fixtures::q1(), inst, parse_tuple("j,t"), DeletionScope::kEndogenousOnly);
}

AtomFamily deleted(const std::vector<DeletionSolution>& v) {
  AtomFamily out;
  for (const auto& s : v) out.insert(s.deleted);
  return out;
}

TEST(DeletionTask, Validation) {
  EXPECT_THROW(DeletionTask(fixtures::q1(), fixtures::ex1(), parse_tuple("Nobody,XML")), DomainError);
  EXPECT_EQ(ex1_task().view().size(), 6u);
  EXPECT_EQ(ex5_task().deletable(), fixtures::ex1_partition().endogenous());
  EXPECT_EQ(ex1_task().deletable().size(), 7u);
  EXPECT_EQ(ex1_task().with_scope(DeletionScope::kEndogenousOnly).scope(), DeletionScope::kEndogenousOnly);
}

TEST(MinimalSourceDeletions, AuthorQuery) {
  auto sols = minimal_source_deletions(ex1_task());
  EXPECT_EQ(deleted(sols), fixtures::ex1_deletions());
  for (const auto& s : sols) {
    AtomSet rest = fixtures::ex1().all();
    for (const auto& t : s.deleted) rest.erase(t);
    EXPECT_EQ(s.remaining.all(), rest);
    EXPECT_EQ(s.kind, DeletionKind::kMinimalSse);
  }
}

TEST(MinimalSourceDeletions, EndogenousScope) {
  EXPECT_EQ(deleted(minimal_source_deletions(ex5_task())),
            AtomFamily{atoms({"Author(John,TODS)", "Author(John,TKDE)"})});
  EXPECT_EQ(deleted(minimal_source_deletions(single_fact_task())), AtomFamily{atoms({"R(a)"})});
}

TEST(MinimalSourceDeletions, ExogenousSupportHasNone) {
  DeletionTask t(parse_program("ans :- R(X)."), Instance(atoms({"R(a)"}), atoms({"R(b)"})), {},
                 DeletionScope::kEndogenousOnly);
  EXPECT_TRUE(minimal_source_deletions(t).empty());
  EXPECT_TRUE(minimum_source_deletions(t).empty());
  EXPECT_FALSE(view_side_effect_free(t).has_value());
}

TEST(MinimumSourceDeletions, Values) {
  auto sols = minimum_source_deletions(ex1_task());
  EXPECT_EQ(deleted(sols), fixtures::ex1_deletions());
  for (const auto& s : sols) EXPECT_EQ(s.deleted.size(), 2u);
  EXPECT_EQ(deleted(minimum_source_deletions(two_fact_task())), AtomFamily{atoms({"R(a)"})});
  AtomFamily mixed{atoms({"Author(j,v1)", "Author(j,v2)"}), atoms({"Author(j,v1)", "Journal(v2,t,1)"})};
  EXPECT_EQ(deleted(minimum_source_deletions(mixed_support_task())), mixed);
  EXPECT_EQ(deleted(minimal_source_deletions(mixed_support_task())), mixed);
}

TEST(ViewSideEffectFree, Values) {
  EXPECT_FALSE(view_side_effect_free(ex1_task()).has_value());
  auto two = view_side_effect_free(two_fact_task());
  ASSERT_TRUE(two.has_value());
  EXPECT_EQ(two->deleted, atoms({"R(a)"}));
  auto vc = view_side_effect_free(vc_task());
  ASSERT_TRUE(vc.has_value());
  EXPECT_EQ(vc->deleted, atoms({"Journal(v,t1,1)"}));
  EXPECT_EQ(deleted(minimal_view_safe_deletions(vc_task())), AtomFamily{atoms({"Journal(v,t1,1)"})});
}

TEST(Satisfies, Conditions) {
  auto t = ex1_task();
  EXPECT_TRUE(satisfies(t, atoms({"Author(John,TODS)", "Author(John,TKDE)"}), DeletionKind::kMinimalSse));
  EXPECT_FALSE(satisfies(t, atoms({"Author(John,TODS)", "Author(John,TKDE)", "Author(Tom,TKDE)"}),
                         DeletionKind::kMinimalSse));
  EXPECT_FALSE(satisfies(t, atoms({"Author(John,TODS)"}), DeletionKind::kMinimalSse));
  EXPECT_FALSE(satisfies(t, atoms({"Author(John,TODS)", "Author(John,TKDE)"}), DeletionKind::kViewSafe));
  EXPECT_FALSE(satisfies(ex5_task(), atoms({"Journal(TKDE,XML,30)", "Journal(TODS,XML,32)"}),
                         DeletionKind::kMinimalSse));
}

TEST(Mssep, Membership) {
  auto t = ex1_task();
  AtomSet rest = fixtures::ex1().all();
  rest.erase(atom("Author(John,TODS)"));
  rest.erase(atom("Author(John,TKDE)"));
  EXPECT_TRUE(in_mssep_s(t, rest));
  EXPECT_TRUE(in_mssep_c(t, rest));
  AtomSet smaller = rest;
  smaller.erase(atom("Author(Tom,TKDE)"));
  EXPECT_FALSE(in_mssep_s(t, smaller));
  EXPECT_FALSE(in_mssep_c(t, smaller));
  EXPECT_FALSE(in_mssep_s(t, fixtures::ex1().all()));

  auto m = mixed_support_task();
  // Deleting Author(j,v1) and Author(j,v2) is maximal and of maximum size.
  EXPECT_TRUE(in_mssep_s(m, atoms({"Journal(v1,t,1)", "Journal(v2,t,1)"})));
  EXPECT_TRUE(in_mssep_c(m, atoms({"Journal(v1,t,1)", "Journal(v2,t,1)"})));
  // Dropping the exogenous journal is out of scope.
  EXPECT_FALSE(in_mssep_s(m, atoms({"Author(j,v2)", "Journal(v2,t,1)"})));
}

TEST(Bridges, CausesFromDeletions) {
  EXPECT_EQ(causes_from_minimal_sse(ex1_task()), fixtures::ex1_causes());
  EXPECT_EQ(causes_from_minimal_sse(ex5_task()), atoms({"Author(John,TODS)", "Author(John,TKDE)"}));
  EXPECT_EQ(causes_from_minimal_sse(single_fact_task()), atoms({"R(a)"}));
}

TEST(Bridges, MrcFromMinimumDeletions) {
  EXPECT_EQ(mrc_from_minimum_sse(ex1_task()), fixtures::ex1_causes());
  EXPECT_EQ(mrc_from_minimum_sse(single_fact_task()), atoms({"R(a)"}));
}

TEST(Bridges, VcCausesFromViewSafeDeletions) {
  EXPECT_TRUE(vccauses_from_vsef(ex1_task()).empty());
  EXPECT_EQ(vccauses_from_vsef(two_fact_task()), atoms({"R(a)"}));
  EXPECT_EQ(vccauses_from_vsef(vc_task()), atoms({"Journal(v,t1,1)"}));
}

TEST(Bridges, DeletionsFromCauses) {
  EXPECT_EQ(deleted(delprop_from_causes(ex1_task(), DeletionKind::kMinimalSse)), fixtures::ex1_deletions());
  EXPECT_EQ(deleted(delprop_from_causes(ex1_task(), DeletionKind::kMinimumSse)), fixtures::ex1_deletions());
  EXPECT_TRUE(delprop_from_causes(ex1_task(), DeletionKind::kViewSafe).empty());
  EXPECT_EQ(deleted(delprop_from_causes(vc_task(), DeletionKind::kViewSafe)),
            AtomFamily{atoms({"Journal(v,t1,1)"})});
  EXPECT_EQ(deleted(delprop_from_causes(ex5_task(), DeletionKind::kMinimalSse)),
            AtomFamily{atoms({"Author(John,TODS)", "Author(John,TKDE)"})});
}

TEST(Solve, DispatchesOnKind) {
  EXPECT_EQ(solve(ex1_task(), DeletionKind::kMinimalSse), minimal_source_deletions(ex1_task()));
  EXPECT_EQ(solve(ex1_task(), DeletionKind::kMinimumSse), minimum_source_deletions(ex1_task()));
  EXPECT_TRUE(solve(ex1_task(), DeletionKind::kViewSafe).empty());
  EXPECT_EQ(to_string(DeletionKind::kViewSafe), "view-safe");
  EXPECT_EQ(to_string(DeletionScope::kEndogenousOnly), "endogenous-only");
}

}  // namespace
}  // namespace causalog
