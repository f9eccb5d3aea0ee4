#include <gtest/gtest.h>

#include "chord/graph_chords.hpp"
#include "support.hpp"

namespace chord::test {
namespace {

ConnSubset conn(const MetricGraph& g, std::vector<EdgeSegment> s) { return ConnSubset::from_segments(g, s); }

void expect_chord(const MetricGraph& g, const StepFunction& f, const Rational& r, const ChordSolution& s) {
  EXPECT_TRUE(is_connected(g, s.set));
  EXPECT_EQ(measure(s.set), r);
  EXPECT_EQ(integral_subset(f, s.set), 0);
  EXPECT_EQ(s.measure, r);
  EXPECT_EQ(s.integral, 0);
}

TEST(ArcOnSemiSimple, Examples) {
  const MetricGraph t = triangle();
  const StepFunction f = constant_per_edge(t, {1, -1, 0});
  const ClosedPath abc{{{0, true}, {1, true}, {2, true}}};
  const ConnSubset a = arc_on_semi_simple(t, abc, f, q(1, 2));
  EXPECT_EQ(measure(a), q(1, 2));
  EXPECT_EQ(integral_subset(f, a), 0);

  const ConnSubset p = arc_on_semi_simple(t, abc, f, 0);
  EXPECT_EQ(measure(p), 0);
  EXPECT_EQ(p, ConnSubset::point(t, {0, 0}));

  const StepFunction one = StepFunction::constant(t, 1);
  EXPECT_EQ(integral_subset(one, arc_on_semi_simple(t, abc, one, q(1, 2))), q(1, 2));
  EXPECT_THROW((void)arc_on_semi_simple(t, abc, f, q(3, 2)), PreconditionError);
  const MetricGraph loop = single_loop();
  const ClosedPath twice{{{0, true}, {0, true}}};
  EXPECT_THROW((void)arc_on_semi_simple(loop, twice, StepFunction::constant(loop, 0), q(1, 2)),
               PreconditionError);
}

// I_f(A) = (r/n) * path integral, so signs agree, on every path of a cover.
TEST(ArcOnSemiSimple, WindowScalingOnCoverPaths) {
  Rng rng(51);
  for (int i = 0; i < 200; ++i) {
    const MetricGraph g = random_graph(rng, 8, true);
    const StepFunction f = random_function(g, rng);
    const Rational r = q(uniform(rng, 0, 12), 12);
    for (const ClosedPath& c : compute_double_cover(g).paths) {
      const ConnSubset a = arc_on_semi_simple(g, c, f, r);
      EXPECT_EQ(measure(a), r);
      EXPECT_EQ(integral_subset(f, a), r / static_cast<long>(c.length()) * integral_path(f, c.steps));
    }
  }
}

TEST(WalkWindow, WrapsAroundTheCircle) {
  const MetricGraph t = triangle();
  const ClosedPath abc{{{0, true}, {1, true}, {2, true}}};
  EXPECT_EQ(walk_window(t, abc, q(5, 2), 1), conn(t, {{2, q(1, 2), 1}, {0, 0, q(1, 2)}}).set());
  EXPECT_EQ(walk_window(t, abc, 1, 0), Subset::point(t, {1, 0}));
  const ClosedPath back = reversed(abc);
  EXPECT_EQ(walk_window(t, back, 0, q(1, 3)), conn(t, {{2, q(2, 3), 1}}).set());
  const Step1D lifted = lift(constant_per_edge(t, {1, -1, 0}), back);
  EXPECT_EQ(lifted.integral(0, 1), 0);
  EXPECT_EQ(lifted.integral(1, 2), -1);
}

TEST(GraphChordSolve, Examples) {
  const MetricGraph th = theta();
  const StepFunction f = constant_per_edge(th, {1, -1, 0});
  expect_chord(th, f, q(1, 2), graph_chord_solve(th, f, q(1, 2)));
  const ChordSolution pt = graph_chord_solve(th, f, 0);
  expect_chord(th, f, 0, pt);

  const MetricGraph eight = figure_eight();
  const StepFunction pm = constant_per_edge(eight, {1, -1});
  const ChordSolution s = graph_chord_solve(eight, pm, 1);
  expect_chord(eight, pm, 1, s);
  EXPECT_TRUE(s.set.set().contains_vertex(eight, 0));

  EXPECT_THROW((void)graph_chord_solve(th, StepFunction::constant(th, 1), q(1, 2)), PreconditionError);
  EXPECT_THROW((void)graph_chord_solve(th, f, q(5, 4)), PreconditionError);
  EXPECT_THROW((void)graph_chord_solve(path3(), StepFunction::constant(path3(), 0), q(1, 2)), PreconditionError);
}

TEST(GraphChordSolve, RandomInstances) {
  Rng rng(52);
  const std::vector<Rational> rs = {0, q(1, 4), q(1, 3), q(1, 2), q(2, 3), 1};
  std::size_t homotopies = 0;
  for (int i = 0; i < 250; ++i) {
    const MetricGraph g = random_graph(rng, 10, true);
    const StepFunction f = random_zero_mean_function(g, rng);
    const Rational& r = rs[static_cast<std::size_t>(i) % rs.size()];
    const ChordSolution s = graph_chord_solve(g, f, r);
    expect_chord(g, f, r, s);
    EXPECT_TRUE(verify_double_cover(g, s.cover));
    if (s.schedule_time > 0) ++homotopies;
  }
  // The connecting curve is exercised, not only lucky windows.
  EXPECT_GT(homotopies, 20u);
}

struct OracleRange {
  Rational lo;
  Rational hi;
  bool exact_zero = false;
};

OracleRange oracle_range(const MetricGraph& g, const StepFunction& f, long cells, std::size_t k) {
  OracleRange out;
  bool first = true;
  for_each_grid_union(g, f, cells, k, [&](const std::vector<std::size_t>&, const Rational& sum) {
    if (first || sum < out.lo) out.lo = sum;
    if (first || sum > out.hi) out.hi = sum;
    out.exact_zero = out.exact_zero || sum == 0;
    first = false;
  });
  return out;
}

// 24 cells per edge: every union of k cells has measure k/24. The grid
// range brackets zero, the solver still returns an exact zero, and the
// library's own enumeration gives the same range.
TEST(GraphChordSolve, AgreesWithGridOracle) {
  Rng rng(53);
  std::size_t checked = 0;
  for (const MetricGraph& g : all_min_degree_two_graphs(3)) {
    for (int trial = 0; trial < 3; ++trial) {
      const StepFunction f = random_zero_mean(g, rng);
      const std::size_t k = static_cast<std::size_t>(uniform(rng, 1, 24));
      const Rational r = q(static_cast<long>(k), 24);
      const OracleRange o = oracle_range(g, f, 24, k);
      EXPECT_LE(o.lo, 0);
      EXPECT_GE(o.hi, 0);
      expect_chord(g, f, r, graph_chord_solve(g, f, r));
      const auto lib = grid_integral_range(g, f, r, 24);
      ASSERT_TRUE(lib.has_value());
      EXPECT_EQ(lib->lo, o.lo);
      EXPECT_EQ(lib->hi, o.hi);
      EXPECT_EQ(lib->exact_zero, o.exact_zero);
      ++checked;
    }
  }
  EXPECT_GE(checked, 20u);
}

TEST(EulerChordSolve, Examples) {
  const MetricGraph eight = figure_eight();
  const StepFunction pm = constant_per_edge(eight, {1, -1});
  const ChordSolution s = euler_chord_solve(eight, pm, q(3, 2));
  expect_chord(eight, pm, q(3, 2), s);
  EXPECT_EQ(s.set, conn(eight, {{0, q(1, 4), 1}, {1, 0, q(3, 4)}}));
  expect_chord(eight, pm, 0, euler_chord_solve(eight, pm, 0));
  const ChordSolution all = euler_chord_solve(eight, pm, 2);
  EXPECT_EQ(all.set, ConnSubset::whole(eight));
  EXPECT_THROW((void)euler_chord_solve(theta(), StepFunction::constant(theta(), 0), 1), PreconditionError);
  EXPECT_THROW((void)euler_chord_solve(eight, pm, 3), PreconditionError);
}

TEST(EulerChordSolve, RandomEulerGraphsAndGridOracle) {
  Rng rng(54);
  for (int i = 0; i < 250; ++i) {
    const MetricGraph g = random_euler_graph(rng, 10);
    const StepFunction f = random_zero_mean_function(g, rng);
    const long total = 12 * static_cast<long>(g.edge_count());
    for (const Rational& r : {q(0), q(uniform(rng, 1, total - 1), 12), q(static_cast<long>(g.edge_count()))}) {
      expect_chord(g, f, r, euler_chord_solve(g, f, r));
    }
  }
  for (int i = 0; i < 30; ++i) {
    const MetricGraph g = random_euler_graph(rng, 3);
    const StepFunction f = random_zero_mean(g, rng);
    const long cells = 24 * static_cast<long>(g.edge_count());
    const std::size_t k = static_cast<std::size_t>(uniform(rng, 1, std::min(cells, 30L)));
    const Rational r = q(static_cast<long>(k), 24);
    const OracleRange o = oracle_range(g, f, 24, k);
    EXPECT_LE(o.lo, 0);
    EXPECT_GE(o.hi, 0);
    expect_chord(g, f, r, euler_chord_solve(g, f, r));
  }
}

TEST(Evidence, SolversCoverTheirRange) {
  const EvidenceReport euler = chord_membership_evidence(figure_eight(), q(3, 2), 20, 7);
  EXPECT_EQ(euler.method, EvidenceReport::Method::euler_solver);
  EXPECT_EQ(euler.successes, 20u);

  const EvidenceReport cover = chord_membership_evidence(theta(), q(2, 3), 20, 7);
  EXPECT_EQ(cover.method, EvidenceReport::Method::double_cover_solver);
  EXPECT_EQ(cover.successes, 20u);

  const EvidenceReport grid = chord_membership_evidence(single_edge(), q(2, 3), 10, 7);
  EXPECT_EQ(grid.method, EvidenceReport::Method::grid_search);
  EXPECT_EQ(grid.trials, 10u);
  EXPECT_EQ(grid.successes + grid.failures + grid.inconclusive, 10u);
  EXPECT_EQ(grid.failing_seeds.size(), grid.failures);

  // Same seed, same report.
  const EvidenceReport again = chord_membership_evidence(single_edge(), q(2, 3), 10, 7);
  EXPECT_EQ(again.failing_seeds, grid.failing_seeds);
  EXPECT_EQ(again.successes, grid.successes);
}

}  // namespace
}  // namespace chord::test
