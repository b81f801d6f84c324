#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "fishgame/harvest.hpp"
#include "oracles.hpp"

using namespace fishgame;

namespace {

const double kS27 = std::sqrt(27.0);
// Joint optimum of the reference scenario (30-digit reference solve).
const double kJointEffort = 0.788214913949964569338416243199;
const double kJointPayoff = 1.12912503260194918087492600299;

ModelParams ref() { return ModelParams::reference_scenario(); }

}  // namespace

TEST(SteadyHarvestCurve, Values) {
  const auto p = ref();
  EXPECT_EQ(steady_harvest_curve(p, 0.0), 0.0);
  EXPECT_NEAR(steady_harvest_curve(p, 1.0), kS27 / 4, 1e-15);
  EXPECT_NEAR(steady_harvest_curve(p, 2.0), 2 * kS27 / 9, 1e-15);
  EXPECT_THROW(steady_harvest_curve(p, -1.0), DomainError);
}

TEST(MaxSustainablePoint, PeakOfCurve) {
  const auto p = ref();
  const auto pt = max_sustainable_point(p);
  EXPECT_NEAR(pt.effort, 1.0, 1e-15);
  EXPECT_NEAR(pt.harvest, kS27 / 4, 1e-15);
  EXPECT_NEAR(max_sustainable_point(p.with_q(2 * p.q())).effort, 0.5 * pt.effort, 1e-15);
  EXPECT_THROW(max_sustainable_point(p.with_q(0.0)), DomainError);

  const auto g = oracle::grid_argmax([&](double e) { return oracle::steady_harvest(p, e); },
                                     0.0, 10.0, 1000001);
  EXPECT_LE(g.value, pt.harvest + 1e-9);
  EXPECT_NEAR(g.argmax, pt.effort, g.cell);
}

TEST(EffortRoots, ExactReference) {
  const auto p = ref();
  const auto roots = effort_roots_for_harvest(p, 2 * kS27 / 9);
  EXPECT_NEAR(roots.e_low, 0.5, 1e-12);
  EXPECT_NEAR(roots.e_high, 2.0, 1e-12);
  EXPECT_NEAR(roots.waste, 1.5, 1e-12);
}

TEST(EffortRoots, RoundedTarget) {
  const auto p = ref();
  // Full-precision coefficients with H = 1.15 (30-digit reference solve).
  const auto exact = effort_roots_for_harvest(p, 1.15);
  EXPECT_NEAR(exact.e_low, 0.493967103899030047, 1e-13);
  EXPECT_NEAR(exact.e_high, 2.02442630715021507, 1e-13);
  // Two-decimal hand arithmetic: 1.15 E^2 - 2.9 E + 1.15, sqrt(3.12) -> 1.77.
  const auto hand = effort_roots_for_harvest(p, 1.15, QuadraticRounding::TwoDecimals);
  EXPECT_NEAR(hand.e_low, 1.13 / 2.3, 1e-12);
  EXPECT_NEAR(hand.e_high, 4.67 / 2.3, 1e-12);
  EXPECT_NEAR(hand.waste, 3.54 / 2.3, 1e-12);
}

TEST(EffortRoots, Quadratic) {
  const auto q = harvest_effort_quadratic(ref(), 1.15);
  EXPECT_NEAR(q.a2, 1.15, 1e-14);
  EXPECT_NEAR(q.a1, 2.3 - kS27, 1e-14);
  EXPECT_NEAR(q.a0, 1.15, 1e-14);
  EXPECT_GE(q.disc_q, 0.0);
  EXPECT_LT(harvest_effort_quadratic(ref(), 1.3).disc_q, 0.0);
}

TEST(EffortRoots, TangencyAndInfeasible) {
  const auto p = ref();
  const auto peak = max_sustainable_point(p);
  const auto t = effort_roots_for_harvest(p, peak.harvest);
  EXPECT_NEAR(t.e_low, 1.0, 1e-12);
  EXPECT_EQ(t.e_low, t.e_high);
  EXPECT_EQ(t.waste, 0.0);
  try {
    effort_roots_for_harvest(p, 1.3);
    FAIL() << "expected InfeasibleTarget";
  } catch (const InfeasibleTarget& e) {
    EXPECT_NEAR(e.peak(), kS27 / 4, 1e-15);
  }
  EXPECT_THROW(effort_roots_for_harvest(p, 0.0), DomainError);
}

TEST(EffortRoots, CurveConsistencyAndBracketing) {
  oracle::ProfitableParams gen(31);
  std::uniform_real_distribution<double> u(1e-3, 0.999);
  for (int i = 0; i < 300; ++i) {
    const auto p = gen();
    const auto peak = max_sustainable_point(p);
    const double h = peak.harvest * u(gen.engine());
    const auto roots = effort_roots_for_harvest(p, h);
    EXPECT_NEAR(oracle::steady_harvest(p, roots.e_low), h, 1e-9 * h);
    EXPECT_NEAR(oracle::steady_harvest(p, roots.e_high), h, 1e-9 * h);
    EXPECT_GT(roots.e_low, 0.0);
    EXPECT_LT(roots.e_low, peak.effort);
    EXPECT_GT(roots.e_high, peak.effort);
    EXPECT_EQ(roots.waste, roots.e_high - roots.e_low);
  }
}

TEST(WasteAtNash, BothModes) {
  const auto p = ref();
  const auto sol = nash_solve(p);
  const auto exact = waste_at_nash(p, sol);
  EXPECT_NEAR(exact.roots.e_low, 0.5, 1e-9);
  EXPECT_NEAR(exact.roots.e_high, 2.0, 1e-9);
  EXPECT_NEAR(exact.roots.waste, 1.5, 1e-9);
  EXPECT_LE(exact.consistency, 1e-6);
  const auto paper = waste_at_nash(p, sol, WasteMode::PaperRounded);
  EXPECT_EQ(paper.h_total, 1.15);
  EXPECT_NEAR(paper.roots.e_low, 0.4913043478, 1e-9);
  EXPECT_NEAR(paper.roots.e_high, 2.0304347826, 1e-9);
  EXPECT_NEAR(paper.roots.waste, 1.54, 5e-3);
}

TEST(CooperativeOptimum, Reference) {
  const auto p = ref();
  const auto c = cooperative_optimum(p);
  EXPECT_NEAR(c.e_joint, kJointEffort, 1e-12);
  EXPECT_NEAR(c.e_joint, best_response(p, 0.0), 1e-15);
  EXPECT_NEAR(c.u_joint, kJointPayoff, 1e-12);
  EXPECT_NEAR(c.u_nash_total, 4.0 / kS27, 1e-9);
  EXPECT_GT(c.gain, 0.3);
  EXPECT_NEAR(c.u_joint_per_player, 0.5 * c.u_joint, 1e-15);

  const auto g = oracle::grid_argmax(
      [&](double e) { return p.P() * oracle::steady_harvest(p, e) - p.C() * e; }, 0.0, 5.0, 100001);
  EXPECT_NEAR(c.e_joint, g.argmax, g.cell);
  EXPECT_NEAR(c.u_joint, g.value, 1e-8);
}

TEST(CooperativeOptimum, Unprofitable) {
  const auto c = cooperative_optimum(ModelParams(1.0, 1.0, 1.0, 0.5, 2.0));
  EXPECT_EQ(c.e_joint, 0.0);
  EXPECT_EQ(c.u_joint, 0.0);
  EXPECT_EQ(c.gain, 0.0);
}

TEST(CooperativeOptimum, Dominance) {
  oracle::ProfitableParams gen(37);
  for (int i = 0; i < 40; ++i) {
    const auto p = gen();
    const auto c = cooperative_optimum(p);
    EXPECT_GE(c.u_joint, c.u_nash_total - 1e-9);
    if (std::fabs(c.e_nash_total - c.e_joint) > 1e-6) {
      EXPECT_GT(c.u_joint, c.u_nash_total);
    }
  }
}

TEST(FigureCurves, CrossingAtEquilibrium) {
  const auto p = ref();
  const auto c = figure_curve_data(p, 2.0, p.K(), 101);
  ASSERT_EQ(c.n.size(), 101u);
  ASSERT_TRUE(c.crossing.has_value());
  EXPECT_NEAR(*c.crossing, kS27 / 3, p.K() / 100);
  EXPECT_NEAR(*c.crossing, equilibria(p, 2.0).second, 1e-12);

  const auto free = figure_curve_data(p, 0.0, 2.0 * p.K(), 11);
  for (double h : free.harvest) EXPECT_EQ(h, 0.0);
  ASSERT_TRUE(free.crossing.has_value());
  EXPECT_NEAR(*free.crossing, p.K(), 1e-12);

  EXPECT_FALSE(figure_curve_data(p, 0.0, 0.5 * p.K(), 11).crossing.has_value());
  EXPECT_THROW(figure_curve_data(p, 2.0, p.K(), 1), DomainError);
  EXPECT_THROW(figure_curve_data(p, 2.0, 0.0, 10), DomainError);
}
