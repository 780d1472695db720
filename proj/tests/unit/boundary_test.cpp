#include "fslbm/boundary.hpp"
#include "fslbm/scenario.hpp"
#include "test_rng.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace fslbm {
namespace {

// Small column of cells along z with hand-set populations and moments.
struct Column {
  Grid grid;
  std::vector<CellFlag> flags;
  std::vector<double> pre, post;
  std::vector<double> rho;
  std::vector<Vec3> u;

  explicit Column(int nz, Topology topo = {}) : grid(Extent{3, 1, nz}, topo) {
    const auto n = grid.size();
    flags.assign(n, CellFlag::Liquid);
    pre.assign(n * kQ, 0.0);
    post.assign(n * kQ, 0.0);
    rho.assign(n, 1.0);
    u.assign(n, Vec3::Zero());
  }

  LinkFields fields() const { return LinkFields{grid, flags, pre, post, rho, u}; }

  void fill_rest() {
    const auto& m = d3q19();
    for (CellIndex c = 0; c < grid.size(); ++c) {
      for (int q = 0; q < kQ; ++q) pre[c * kQ + q] = post[c * kQ + q] = m.weights[q];
    }
  }
};

Topology periodic_xy() {
  Topology t;
  t.periodic_x = t.periodic_y = true;
  return t;
}

TEST(Closure, FslCoefficientIdentities) {
  const auto& m = d3q19();
  TrtParams p;
  p.lambda_plus = -0.8;
  for (double delta : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    for (int q = 1; q < kQ; ++q) {
      const auto k = fsl_coefficients(q, delta, p, m);
      EXPECT_DOUBLE_EQ(k.a0 + k.abar0 + k.a1, 0.0);
      EXPECT_DOUBLE_EQ(k.abar0, 0.5);
      EXPECT_NEAR(k.C / p.lambda_plus, delta - 1.5, 1e-15);
      EXPECT_EQ(k.alpha_plus, 1.0);
      EXPECT_DOUBLE_EQ(k.D, -p.big_lambda_plus() * m.weights[q] / m.cs2);
      EXPECT_EQ(fsl_coefficients(q, delta, p, m, true).D, 0.0);
    }
  }
  EXPECT_THROW(fsl_coefficients(1, 1.5, p, m), ParameterError);
}

TEST(Closure, FskCoefficientsAreLocal) {
  const auto& m = d3q19();
  TrtParams p;
  const auto k = fsk_coefficients(7, p, m);
  EXPECT_EQ(k.a0, -1.0);
  EXPECT_EQ(k.abar0, 0.0);
  EXPECT_EQ(k.a1, 0.0);
  EXPECT_EQ(k.alpha_plus, 2.0);
  EXPECT_EQ(k.C, 0.0);
  EXPECT_DOUBLE_EQ(k.D, -2.0 * p.big_lambda_plus() / 36.0 * 3.0);
  EXPECT_EQ(fsk_coefficients(7, p, m, true).D, 0.0);
}

TEST(Closure, RestStateIsPreservedByEveryRule) {
  Column col(4, periodic_xy());
  col.fill_rest();
  const auto& m = d3q19();
  TrtParams p;
  p.lambda_plus = -1.3;
  const auto fields = col.fields();
  const BoundaryValue bval;
  for (int q = 1; q < kQ; ++q) {
    if (m.cz(q) <= 0) continue;
    const LinkCut cut{col.grid.index(1, 0, 2), q, 0.3};
    for (bool simplified : {false, true}) {
      const double fsk = *apply_closure(fsk_coefficients(q, p, m, simplified), cut, fields, bval, p, m);
      const double fsl = *apply_closure(fsl_coefficients(q, 0.3, p, m, simplified), cut, fields, bval, p, m);
      EXPECT_NEAR(fsk, m.weights[m.opposite[q]], 1e-16);
      EXPECT_NEAR(fsl, m.weights[m.opposite[q]], 1e-16);
    }
    EXPECT_NEAR(cli_wall(cut, fields, p, m), m.weights[q], 1e-16);
  }
}

TEST(Closure, InterpolatingRuleReportsMissingNeighbour) {
  Column col(3);
  col.fill_rest();
  col.flags[col.grid.index(1, 0, 0)] = CellFlag::Gas;
  const auto& m = d3q19();
  const LinkCut cut{col.grid.index(1, 0, 1), 5, 0.25};  // +z; x_b - c_q is gas
  EXPECT_FALSE(apply_closure(fsl_coefficients(5, 0.25, {}, m), cut, col.fields(), {}, {}, m).has_value());
  EXPECT_TRUE(apply_closure(fsk_coefficients(5, {}, m), cut, col.fields(), {}, {}, m).has_value());
}

TEST(Closure, CliReducesToBounceBackAtHalfCut) {
  testing::Gen gen(7);
  Column col(4, periodic_xy());
  for (auto& v : col.post) v = gen.uniform(0.0, 0.1);
  const auto& m = d3q19();
  const Vec3 uw(0.01, -0.02, 0.0);
  for (int q = 1; q < kQ; ++q) {
    const LinkCut cut{col.grid.index(1, 0, 2), q, 0.5};
    EXPECT_EQ(cli_wall(cut, col.fields(), {}, m, uw), bounce_back(cut, col.fields(), {}, m, uw));
  }
}

TEST(Closure, CliInterpolatesForGeneralCuts) {
  testing::Gen gen(8);
  Column col(4, periodic_xy());
  for (auto& v : col.post) v = gen.uniform(0.0, 0.1);
  const auto& m = d3q19();
  const int q = 5;
  const CellIndex xb = col.grid.index(1, 0, 2);
  const CellIndex behind = col.grid.index(1, 0, 1);
  const double delta = 0.2;
  const double k = 0.6 / 1.4;
  const double expected = col.post[xb * kQ + q] + k * (col.post[behind * kQ + q] - col.post[xb * kQ + 6]);
  EXPECT_NEAR(cli_wall({xb, q, delta}, col.fields(), {}, m), expected, 1e-16);
}

TEST(StressProjection, RoundTripWithoutTargetsIsIdentity) {
  testing::Gen gen(9);
  for (int trial = 0; trial < 500; ++trial) {
    Mat3 a;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) a(i, j) = gen.uniform(-1, 1);
    }
    const Mat3 S = 0.5 * (a + a.transpose());
    Vec3 n = gen.vec(1.0);
    if (n.norm() < 1e-3) continue;
    const Mat3 back = project_stress(S, n, StressTargets{std::nullopt, std::nullopt});
    EXPECT_LT((back - S).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(StressProjection, RemovesTangentialNormalShear) {
  testing::Gen gen(10);
  for (int trial = 0; trial < 200; ++trial) {
    Mat3 a;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) a(i, j) = gen.uniform(-1, 1);
    }
    const Mat3 S = a + a.transpose();
    const Vec3 n = gen.vec(1.0).normalized();
    const Mat3 P = project_stress(S, n);
    const Mat3 frame = local_frame(n);
    EXPECT_NEAR(frame.col(0).dot(P * n), 0.0, 1e-13);
    EXPECT_NEAR(frame.col(1).dot(P * n), 0.0, 1e-13);
    EXPECT_NEAR(n.dot(P * n), n.dot(S * n), 1e-13);  // normal-normal entry untouched
  }
  EXPECT_THROW(project_stress(Mat3::Identity(), Vec3::Zero()), ParameterError);
}

TEST(BoundaryValues, LinkVelocityExtrapolatesLinearProfiles) {
  Column col(6, periodic_xy());
  const double s = 0.003;
  for (CellIndex c = 0; c < col.grid.size(); ++c) col.u[c] = Vec3(s * col.grid.center(c)[2], 0.0, 0.0);
  const auto& m = d3q19();
  for (int q : {5, 15}) {
    if (m.cz(q) <= 0) continue;
    const CellIndex xb = col.grid.index(1, 0, 4);
    const double delta = 0.35;
    const Vec3 ub = link_velocity({xb, q, delta}, col.fields(), m);
    EXPECT_NEAR(ub[0], s * (4.5 + delta * m.cz(q)), 1e-16);
  }
  // No upwind liquid: falls back to the node velocity (first-order).
  col.flags[col.grid.index(1, 0, 3)] = CellFlag::Gas;
  EXPECT_EQ(link_velocity({col.grid.index(1, 0, 4), 5, 0.35}, col.fields(), m)[0], col.u[col.grid.index(1, 0, 4)][0]);
}

TEST(BoundaryValues, FiniteDifferenceShearRateOfLinearProfile) {
  Column col(6, periodic_xy());
  const double s = 0.004;
  for (CellIndex c = 0; c < col.grid.size(); ++c) col.u[c] = Vec3(s * col.grid.center(c)[2], 0.0, 0.0);
  std::vector<double> fill(col.grid.size(), 1.0);
  const Mat3 S = shear_rate(col.grid.index(1, 0, 3), col.fields(), fill, TrtParams{});
  EXPECT_NEAR(S(0, 2), 0.5 * s, 1e-16);
  EXPECT_NEAR(S(2, 0), 0.5 * s, 1e-16);
  EXPECT_NEAR(S(0, 0), 0.0, 1e-16);
}

TEST(BoundaryValues, LocalShearRateMatchesSteadyCouette) {
  Scenario sc;
  sc.kind = ScenarioKind::Couette;
  sc.rule = SurfaceRule::Fsl;
  sc.height = 8;
  sc.lambda_plus = -0.7;
  sc.shear = 0.002;
  sc.nonlinear = false;
  RunHooks hooks;
  int checked = 0;
  hooks.on_finish = [&](const ResolutionResult& r) {
    const auto cur = r.sim.populations().current();
    const LinkFields fields{r.sim.grid(), r.sim.flags(), cur, cur, r.sim.rho(), r.sim.u()};
    for (CellIndex c : r.geometry.active) {
      const Mat3 S = local_shear_rate(c, fields, r.sim.params());
      EXPECT_NEAR(S(0, 2), 0.5 * sc.shear, 1e-12);
      EXPECT_NEAR(S(0, 0), 0.0, 1e-12);
      ++checked;
    }
  };
  run_scenario(sc, hooks);
  EXPECT_GT(checked, 0);
}

TEST(BoundaryValues, InterfaceNormalPointsIntoTheGas) {
  Column col(5, periodic_xy());
  std::vector<double> fill(col.grid.size(), 1.0);
  for (int i = 0; i < 3; ++i) {
    fill[col.grid.index(i, 0, 3)] = 0.4;
    fill[col.grid.index(i, 0, 4)] = 0.0;
  }
  const auto n = interface_normal(col.grid.index(1, 0, 3), col.grid, col.flags, fill);
  ASSERT_TRUE(n.has_value());
  EXPECT_NEAR((*n - Vec3(0, 0, 1)).norm(), 0.0, 1e-15);
  EXPECT_FALSE(interface_normal(col.grid.index(1, 0, 1), col.grid, col.flags, fill).has_value());
}

TEST(BoundaryValues, CutFractionFromFill) {
  const Grid g(Extent{2, 1, 1}, Topology{});
  auto delta = [&](double phi_b, double phi_out) {
    std::vector<double> fill{phi_b, phi_out};
    return delta_from_fill({g.index(0, 0, 0), 1, 0.5}, g, fill);
  };
  EXPECT_DOUBLE_EQ(delta(1.0, 0.0), 0.5);
  EXPECT_DOUBLE_EQ(delta(0.75, 0.25), 0.5);
  EXPECT_DOUBLE_EQ(delta(0.9, 0.3), 0.4 / 0.6);
  EXPECT_DOUBLE_EQ(delta(1.0, 0.6), 1.0);
  EXPECT_DOUBLE_EQ(delta(0.4, 0.0), 0.0);
}

}  // namespace
}  // namespace fslbm
