#include <gtest/gtest.h>

#include "oddcolor/subroutine.hpp"

namespace {

using namespace oddcolor;

// Reveals vertices one at a time and keeps graph, coloring and trace alive
// for a hand-driven subroutine chain.
struct Bench {
  OnlineGraph graph;
  Coloring coloring;
  AuditTrace trace;

  SubroutineContext ctx() { return {&graph, &coloring, &trace}; }

  VertexId reveal(std::vector<VertexId> nbrs) {
    auto v = static_cast<VertexId>(graph.size());
    std::sort(nbrs.begin(), nbrs.end());
    graph.reveal({v, nbrs});
    return v;
  }

  Color color(Subroutine& s, VertexId v, BaseIndex b) {
    Color c = s.query(v, b);
    coloring.assign(v, c);
    return c;
  }

  template <class E>
  std::vector<E> events() const {
    std::vector<E> out;
    for (const auto& e : trace.events()) {
      if (const auto* p = std::get_if<E>(&e)) out.push_back(*p);
    }
    return out;
  }
};

std::unique_ptr<TerminalSubroutine> terminal(Bench& b, unsigned layer, std::uint64_t d_star, Color offset,
                                             std::uint64_t budget = 100) {
  return std::make_unique<TerminalSubroutine>(SubroutineConfig{layer, budget, d_star, offset}, b.ctx());
}

std::unique_ptr<ReducerSubroutine> reducer(Bench& b, std::unique_ptr<Subroutine> inner, std::uint64_t delta = 2) {
  ReducerParams params{RootPower::constant(delta), 100, static_cast<Color>(delta * delta + 2)};
  return std::make_unique<ReducerSubroutine>(SubroutineConfig{0, 100, 2, 0}, b.ctx(), params, std::move(inner));
}

TEST(Terminal, ColorsByBaseIndex) {
  Bench b;
  auto t = terminal(b, 0, 2, 10);
  VertexId a = b.reveal({});
  VertexId c = b.reveal({});
  b.coloring.assign(a, 1);
  b.coloring.assign(c, 1);
  EXPECT_EQ(t->add_base({a}), 1u);
  EXPECT_EQ(t->add_base({c, c}), 2u);
  EXPECT_EQ(t->base(2), std::vector<VertexId>{c});
  VertexId v = b.reveal({c});
  EXPECT_EQ(t->lowest_adjacent_base(v), BaseIndex{2});
  EXPECT_EQ(b.color(*t, v, 2), 12u);
  EXPECT_EQ(t->group(2), std::vector<VertexId>{v});
  EXPECT_THROW(t->query(v, 1), std::logic_error);  // not adjacent to base 1
  EXPECT_EQ(b.events<event::TerminalAssign>().size(), 1u);
  EXPECT_EQ(b.events<event::BaseAdded>().size(), 2u);
}

TEST(Terminal, BaseBudgetIsEnforced) {
  Bench b;
  auto t = terminal(b, 0, 2, 0, 1);
  VertexId a = b.reveal({});
  VertexId c = b.reveal({});
  t->add_base({a});
  EXPECT_THROW(t->add_base({c}), BudgetViolation);
  EXPECT_THROW(t->add_base({}), std::invalid_argument);
}

TEST(Terminal, RejectsBadConfig) {
  Bench b;
  EXPECT_THROW(terminal(b, 0, 3, 0), std::invalid_argument);
  EXPECT_THROW(TerminalSubroutine(SubroutineConfig{0, 1, 2, 0}, SubroutineContext{}), std::invalid_argument);
}

// C_5 arriving as x0, x1, x4, x2, x3.  With the base {x1, x4} (even-diameter
// 4 > d* = 2), x2 and x3 are both queried on base 1, get the same color and
// are adjacent: the inline check must report the pair.
TEST(Terminal, OddCycleBelowThePromiseIsReported) {
  Bench b;
  auto t = terminal(b, 0, 2, 0);
  VertexId x0 = b.reveal({});
  VertexId x1 = b.reveal({x0});
  VertexId x4 = b.reveal({x0});
  b.coloring.assign(x0, 5);
  b.coloring.assign(x1, 6);
  b.coloring.assign(x4, 6);
  t->add_base({x1, x4});
  VertexId x2 = b.reveal({x1});
  EXPECT_EQ(b.color(*t, x2, 1), 1u);
  VertexId x3 = b.reveal({x2, x4});
  try {
    t->query(x3, 1);
    FAIL() << "expected a promise violation";
  } catch (const PromiseViolation& pv) {
    EXPECT_EQ(pv.vertex(), x3);
    EXPECT_EQ(pv.conflicting_neighbor(), x2);
  }
}

TEST(Reducer, InnerDiameterMustCoverMerges) {
  Bench b;
  EXPECT_THROW(reducer(b, terminal(b, 1, 22, 200)), std::invalid_argument);
  EXPECT_NO_THROW(reducer(b, terminal(b, 1, 24, 200)));
  EXPECT_THROW(ReducerSubroutine(SubroutineConfig{0, 10, 2, 0}, b.ctx(), ReducerParams{}, nullptr),
               std::invalid_argument);
}

// Four singleton groups; a vertex joining group 1 with neighbors in groups
// 2, 3 and 4 raises deg_H+(1) to 3 > delta = 2 and triggers a merge.
TEST(Reducer, MergeBuildsInnerBasesFromBalls) {
  Bench b;
  auto r = reducer(b, terminal(b, 1, 24, 200));
  std::vector<VertexId> x;
  for (int i = 0; i < 4; ++i) {
    x.push_back(b.reveal({}));
    b.coloring.assign(x.back(), 1);
    EXPECT_EQ(r->add_base({x.back()}), static_cast<BaseIndex>(i + 1));
  }
  std::vector<VertexId> y;
  for (int i = 0; i < 4; ++i) {
    y.push_back(b.reveal({x[i]}));
    EXPECT_EQ(b.color(*r, y.back(), i + 1), 101u);  // group color 1 of block at 100
  }
  VertexId v = b.reveal({x[0], y[1], y[2], y[3]});
  EXPECT_EQ(b.color(*r, v, 1), 201u);  // terminal base 1 = X_D0 = {x0}

  auto merges = b.events<event::Merge>();
  ASSERT_EQ(merges.size(), 1u);
  EXPECT_EQ(merges[0].z, 1u);
  EXPECT_EQ(merges[0].d0, std::vector<BaseIndex>{1});
  EXPECT_EQ(merges[0].d1, (std::vector<BaseIndex>{2, 3, 4}));
  EXPECT_TRUE(merges[0].d2.empty());
  EXPECT_EQ(merges[0].bases_created, (std::vector<BaseIndex>{1, 2, 3, 4}));
  EXPECT_EQ(r->merge_roots(), std::vector<BaseIndex>{1});

  const Subroutine& inner = *r->inner();
  ASSERT_EQ(inner.base_count(), 4u);
  EXPECT_EQ(inner.base(1), std::vector<VertexId>{x[0]});
  EXPECT_EQ(inner.base(2), (std::vector<VertexId>{y[0], v}));
  EXPECT_EQ(inner.base(3), (std::vector<VertexId>{x[1], x[2], x[3]}));
  EXPECT_EQ(inner.base(4), (std::vector<VertexId>{y[1], y[2], y[3]}));

  // A later vertex of group 2 touching inner base 3 is delegated.
  VertexId w = b.reveal({x[1]});
  EXPECT_EQ(b.color(*r, w, 2), 203u);
  auto queries = b.events<event::GroupQuery>();
  ASSERT_FALSE(queries.empty());
  EXPECT_EQ(queries.back().step, QueryStep::Delegate);
  EXPECT_EQ(queries.back().vertex, w);
}

// Six groups arranged so that merging group 2 has a non-empty radius-2 ball:
// H+ edges 1-2, 2-3, 3-6, then 2-4 and 2-5 arrive with the merging vertex.
TEST(Reducer, MergeWithThreeBallsCreatesSixBases) {
  Bench b;
  auto r = reducer(b, terminal(b, 1, 24, 200));
  std::vector<VertexId> x;
  for (int i = 0; i < 6; ++i) {
    x.push_back(b.reveal({}));
    b.coloring.assign(x.back(), 1);
    r->add_base({x.back()});
  }
  VertexId y1 = b.reveal({x[0]});
  EXPECT_EQ(b.color(*r, y1, 1), 101u);
  VertexId y2 = b.reveal({x[1], y1});
  EXPECT_EQ(b.color(*r, y2, 2), 102u);
  VertexId y3 = b.reveal({x[2], y2});
  EXPECT_EQ(b.color(*r, y3, 3), 103u);
  VertexId y6 = b.reveal({x[5], y3});
  EXPECT_EQ(b.color(*r, y6, 6), 102u);
  VertexId y4 = b.reveal({x[3]});
  EXPECT_EQ(b.color(*r, y4, 4), 101u);
  VertexId y5 = b.reveal({x[4]});
  EXPECT_EQ(b.color(*r, y5, 5), 101u);
  EXPECT_EQ(r->hplus_neighbors(2), (std::set<BaseIndex>{1, 3}));

  VertexId v = b.reveal({x[1], y4, y5});
  EXPECT_EQ(b.color(*r, v, 2), 201u);
  auto merges = b.events<event::Merge>();
  ASSERT_EQ(merges.size(), 1u);
  EXPECT_EQ(merges[0].d0, std::vector<BaseIndex>{2});
  EXPECT_EQ(merges[0].d1, (std::vector<BaseIndex>{1, 3, 4, 5}));
  EXPECT_EQ(merges[0].d2, std::vector<BaseIndex>{6});
  EXPECT_EQ(merges[0].bases_created.size(), 6u);

  const Subroutine& inner = *r->inner();
  EXPECT_EQ(inner.base(1), std::vector<VertexId>{x[1]});
  EXPECT_EQ(inner.base(2), (std::vector<VertexId>{y2, v}));
  EXPECT_EQ(inner.base(3), (std::vector<VertexId>{x[0], x[2], x[3], x[4]}));
  EXPECT_EQ(inner.base(4), (std::vector<VertexId>{y1, y3, y4, y5}));
  EXPECT_EQ(inner.base(5), std::vector<VertexId>{x[5]});
  EXPECT_EQ(inner.base(6), std::vector<VertexId>{y6});
}

TEST(Reducer, EdgeInsideAGroupIsAPromiseViolation) {
  Bench b;
  auto r = reducer(b, terminal(b, 1, 24, 200));
  VertexId x = b.reveal({});
  b.coloring.assign(x, 1);
  r->add_base({x});
  VertexId y = b.reveal({x});
  b.color(*r, y, 1);
  VertexId z = b.reveal({x, y});
  EXPECT_THROW(r->query(z, 1), PromiseViolation);
}

TEST(Chain, LayersAndPaletteOffsets) {
  Bench b;
  LayerPlan plan(10000, 2);
  auto chain = make_subroutine_chain(plan, b.ctx(), 7);
  const Subroutine* s = chain.get();
  for (unsigned l = 0; l <= 2; ++l) {
    ASSERT_NE(s, nullptr);
    EXPECT_EQ(s->layer(), l);
    EXPECT_EQ(s->config().d_star, diameter_cap(l));
    EXPECT_EQ(s->config().base_budget, plan.base_budget(l));
    if (l == 2) {
      EXPECT_EQ(s->config().palette_offset, 7 + plan.terminal_offset());
      EXPECT_EQ(s->inner(), nullptr);
    }
    s = s->inner();
  }
}

}  // namespace
