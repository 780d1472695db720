#include "fslbm/free_surface.hpp"
#include "test_rng.hpp"

#include <gtest/gtest.h>

#include <algorithm>

namespace fslbm {
namespace {

// Flags are given row by row from the top (z = nz-1) down, one character per x:
// G gas, I interface, L liquid, W wall.
struct Slab {
  Grid grid;
  std::vector<CellFlag> flags;
  std::vector<double> fill;
  std::vector<double> rho;
  MassField mass;

  Slab(std::vector<std::string> rows, Topology topo = {})
      : grid(Extent{static_cast<int>(rows.front().size()), 1, static_cast<int>(rows.size())}, topo) {
    flags.resize(grid.size());
    const int nz = static_cast<int>(rows.size());
    for (int k = 0; k < nz; ++k) {
      const std::string& row = rows[nz - 1 - k];
      for (int i = 0; i < static_cast<int>(row.size()); ++i) {
        const char ch = row[i];
        flags[grid.index(i, 0, k)] = ch == 'G'   ? CellFlag::Gas
                                     : ch == 'I' ? CellFlag::Interface
                                     : ch == 'L' ? CellFlag::Liquid
                                                 : CellFlag::Wall;
      }
    }
    fill.assign(grid.size(), 0.0);
    rho.assign(grid.size(), 1.0);
    mass.mass.assign(grid.size(), 0.0);
    for (CellIndex c = 0; c < grid.size(); ++c) {
      if (flags[c] == CellFlag::Liquid) fill[c] = mass.mass[c] = 1.0;
      if (flags[c] == CellFlag::Interface) fill[c] = mass.mass[c] = 0.5;
    }
  }

  CellIndex at(int i, int k) const { return grid.index(i, 0, k); }
};

TEST(MassExchange, UniformRestStateExchangesNothing) {
  Slab s({"GGG", "III", "LLL"}, Topology{true, true, false, 0});
  std::vector<double> post(s.grid.size() * kQ);
  for (CellIndex c = 0; c < s.grid.size(); ++c) {
    for (int q = 0; q < kQ; ++q) post[c * kQ + q] = d3q19().weights[q];
  }
  const auto before = s.mass.mass;
  exchange_mass(post, s.grid, s.flags, s.fill, s.mass);
  EXPECT_EQ(s.mass.mass, before);
}

TEST(MassExchange, SingleLiquidLinkMovesTheNetFlux) {
  Slab s({"G", "I", "L"});
  std::vector<double> post(s.grid.size() * kQ, 0.0);
  const CellIndex x = s.at(0, 1);
  const CellIndex y = s.at(0, 0);
  post[x * kQ + 6] = 0.07;  // leaves x towards the liquid below
  post[y * kQ + 5] = 0.11;  // arrives at x from below
  exchange_mass(post, s.grid, s.flags, s.fill, s.mass);
  EXPECT_DOUBLE_EQ(s.mass.mass[x], 0.5 + 0.11 - 0.07);
  EXPECT_EQ(s.mass.mass[y], 1.0);  // liquid mass follows rho, not the exchange
}

TEST(MassExchange, InterfacePairsExchangeAntisymmetrically) {
  testing::Gen gen(21);
  for (int trial = 0; trial < 200; ++trial) {
    Slab s({"GGGG", "IIII", "LLLL"}, Topology{true, true, false, 0});
    std::vector<double> post(s.grid.size() * kQ);
    for (auto& v : post) v = gen.uniform(0.0, 0.1);
    for (int i = 0; i < 4; ++i) s.fill[s.at(i, 1)] = gen.uniform(0.0, 1.0);
    // Without liquid the interface row only trades with itself, so every link must cancel.
    for (CellIndex c = 0; c < s.grid.size(); ++c) {
      if (s.flags[c] == CellFlag::Liquid) s.flags[c] = CellFlag::Gas;
    }
    const double before = s.mass.total();
    exchange_mass(post, s.grid, s.flags, s.fill, s.mass);
    ASSERT_NEAR(s.mass.total(), before, 1e-14) << "trial " << trial;
  }
}

TEST(Conversion, ThresholdCrossingFillsAndPassesExcessOn) {
  // Centre of the middle row overfills; its gas neighbours above become interface.
  Slab s({"GGG", "III", "LLL"});
  const CellIndex centre = s.at(1, 1);
  s.mass.mass[centre] = 1.01;
  const double before = s.mass.total();
  const auto events = update_flags(s.grid, s.flags, s.fill, s.mass, s.rho);

  EXPECT_EQ(s.flags[centre], CellFlag::Liquid);
  EXPECT_EQ(s.mass.mass[centre], 1.0);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(s.flags[s.at(i, 2)], CellFlag::Interface);
  // Five interface neighbours share the excess: two old, three new.
  const double share = 0.01 / 5.0;
  EXPECT_NEAR(s.mass.mass[s.at(0, 1)], 0.5 + share, 1e-15);
  EXPECT_NEAR(s.mass.mass[s.at(2, 1)], 0.5 + share, 1e-15);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(s.mass.mass[s.at(i, 2)], share, 1e-15);
  EXPECT_NEAR(s.mass.total(), before, 1e-15);
  EXPECT_EQ(s.mass.residual, 0.0);

  auto count = [&](ConversionKind k) {
    return std::count_if(events.begin(), events.end(), [&](const ConversionEvent& e) { return e.kind == k; });
  };
  EXPECT_EQ(count(ConversionKind::InterfaceToLiquid), 1);
  EXPECT_EQ(count(ConversionKind::GasToInterface), 3);
  EXPECT_TRUE(std::is_sorted(events.begin(), events.end(),
                             [](const ConversionEvent& a, const ConversionEvent& b) { return a.cell < b.cell; }));
  EXPECT_DOUBLE_EQ(s.fill[s.at(0, 1)], 0.5 + share);
}

TEST(Conversion, ExactlyAtTheThresholdConverts) {
  Slab s({"GGG", "III", "LLL"});
  const CellIndex centre = s.at(1, 1);
  s.mass.mass[centre] = 1.0 + kConversionEpsilon;
  const auto events = update_flags(s.grid, s.flags, s.fill, s.mass, s.rho);
  EXPECT_EQ(s.flags[centre], CellFlag::Liquid);
  const auto it = std::find_if(events.begin(), events.end(), [&](const ConversionEvent& e) { return e.cell == centre; });
  ASSERT_NE(it, events.end());
  EXPECT_NEAR(it->excess_mass, kConversionEpsilon, 1e-15);
}

TEST(Conversion, WithinTheBandNothingHappens) {
  Slab s({"GGG", "III", "LLL"});
  s.mass.mass[s.at(0, 1)] = 1.0005;
  s.mass.mass[s.at(2, 1)] = -0.0005;
  const auto flags = s.flags;
  const auto events = update_flags(s.grid, s.flags, s.fill, s.mass, s.rho);
  EXPECT_TRUE(events.empty());
  EXPECT_EQ(s.flags, flags);
  EXPECT_EQ(s.fill[s.at(0, 1)], 1.0);  // clamped
  EXPECT_EQ(s.fill[s.at(2, 1)], 0.0);
}

TEST(Conversion, EmptyingExposesLiquidAndKeepsMass) {
  Slab s({"GGG", "III", "LLL"});
  const CellIndex centre = s.at(1, 1);
  s.mass.mass[centre] = -0.004;
  const double before = s.mass.total();
  update_flags(s.grid, s.flags, s.fill, s.mass, s.rho);
  EXPECT_EQ(s.flags[centre], CellFlag::Gas);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(s.flags[s.at(i, 0)], CellFlag::Interface);
  EXPECT_NEAR(s.mass.total(), before, 1e-15);
}

TEST(Conversion, CellsWithoutGasNeighboursFill) {
  Slab s({"WWW", "III", "LLL"});
  update_flags(s.grid, s.flags, s.fill, s.mass, s.rho);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(s.flags[s.at(i, 1)], CellFlag::Liquid);
}

TEST(Conversion, IsolatedExcessGoesToTheResidual) {
  Slab s({"G", "I", "G"});
  const CellIndex x = s.at(0, 1);
  s.mass.mass[x] = 0.3;
  const double before = s.mass.total();
  update_flags(s.grid, s.flags, s.fill, s.mass, s.rho);
  EXPECT_EQ(s.flags[x], CellFlag::Gas);  // no liquid neighbour left
  EXPECT_DOUBLE_EQ(s.mass.residual, 0.3);
  EXPECT_EQ(s.mass.isolated_warnings, 1u);
  EXPECT_DOUBLE_EQ(s.mass.total(), before);
}

TEST(NewInterfaceCell, AveragesPreexistingNeighbours) {
  Slab s({"GGG", "GIG", "LLL"});
  std::vector<Vec3> u(s.grid.size(), Vec3::Zero());
  s.rho[s.at(0, 0)] = 1.1;
  s.rho[s.at(1, 0)] = 1.0;
  s.rho[s.at(2, 0)] = 0.9;
  u[s.at(0, 0)] = Vec3(0.03, 0, 0);
  u[s.at(1, 0)] = Vec3(0.0, 0, 0.03);
  u[s.at(2, 0)] = Vec3(0.0, 0, 0);
  std::vector<double> pdf(s.grid.size() * kQ, 0.0);
  const CellIndex fresh = s.at(1, 1);
  const std::vector<CellIndex> fresh_cells{fresh};
  const TrtParams p;
  const MacroState st = init_new_interface_cell(fresh, pdf, s.grid, s.flags, s.rho, u, fresh_cells, p);
  EXPECT_NEAR(st.rho, 1.0, 1e-15);
  EXPECT_NEAR((st.u - Vec3(0.01, 0, 0.01)).norm(), 0.0, 1e-15);
  const MacroState back = moments(load(pdf, fresh), p, d3q19());
  EXPECT_NEAR(back.rho, 1.0, 1e-15);
  EXPECT_NEAR((back.u - st.u).norm(), 0.0, 1e-15);

  // Another fresh neighbour does not contribute.
  const std::vector<CellIndex> both{fresh, s.at(0, 0)};
  const MacroState st2 = init_new_interface_cell(fresh, pdf, s.grid, s.flags, s.rho, u, both, p);
  EXPECT_NEAR(st2.rho, 0.95, 1e-15);
}

TEST(NewInterfaceCell, FallsBackToRestWithoutNeighbours) {
  Slab s({"G", "I", "G"});
  std::vector<Vec3> u(s.grid.size(), Vec3::Zero());
  std::vector<double> pdf(s.grid.size() * kQ, 0.0);
  const MacroState st = init_new_interface_cell(s.at(0, 1), pdf, s.grid, s.flags, s.rho, u, {}, TrtParams{});
  EXPECT_EQ(st.rho, 1.0);
  EXPECT_EQ(st.u, Vec3::Zero());
}

TEST(Neighbours, DistinctNeighboursCollapsePeriodicImages) {
  Topology t;
  t.periodic_x = t.periodic_y = true;
  const Grid g(Extent{1, 1, 3}, t);
  const auto nbs = distinct_neighbors(g, g.index(0, 0, 1));
  EXPECT_EQ(nbs.size(), 2u);
  const Grid big(Extent{3, 3, 3}, Topology{});
  EXPECT_EQ(distinct_neighbors(big, big.index(1, 1, 1)).size(), 18u);
}

}  // namespace
}  // namespace fslbm
