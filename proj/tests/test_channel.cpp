// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "dyntdd/channel.hpp"

using namespace dyntdd;

TEST(Channel, EnbUePathloss) {
  const PathlossModel m;
  EXPECT_NEAR(pathloss_db(m, LinkType::EnbToUe, 100.0), 104.0, 1e-9);
  EXPECT_DOUBLE_EQ(pathloss_db(m, LinkType::EnbToUe, 100.0), pathloss_db(m, LinkType::UeToEnb, 100.0));
}

TEST(Channel, DecadeAddsSlope) {
  const PathlossModel m;
  EXPECT_NEAR(pathloss_db(m, LinkType::EnbToUe, 250.0) - pathloss_db(m, LinkType::EnbToUe, 25.0), 36.7, 1e-9);
  EXPECT_NEAR(pathloss_db(m, LinkType::EnbToEnb, 600.0) - pathloss_db(m, LinkType::EnbToEnb, 60.0), 40.0, 1e-9);
}

TEST(Channel, SingleSlopeEnbEnbAtOneKm) {
  PathlossModel m;
  m.enb_enb = {98.45, 20.0, INFINITY, 0.0, 0.0, 40.0};
  EXPECT_NEAR(pathloss_db(m, LinkType::EnbToEnb, 1000.0), 98.45, 1e-12);
}

TEST(Channel, LosPresetSwitchesSlopeAtBreakpoint) {
  const PathlossModel m = PathlossModel::los_enb_enb();
  EXPECT_NEAR(pathloss_db(m, LinkType::EnbToEnb, 100.0), 98.45 - 20.0, 1e-9);
  EXPECT_NEAR(pathloss_db(m, LinkType::EnbToEnb, 1000.0), 175.78, 1e-9);
}

TEST(Channel, UeUeBreakpointAtFiftyMetres) {
  const PathlossModel m;
  EXPECT_NEAR(pathloss_db(m, LinkType::UeToUe, 50.0), 98.45 + 20.0 * std::log10(0.05), 1e-9);
  EXPECT_NEAR(pathloss_db(m, LinkType::UeToUe, 100.0), 175.78 - 40.0, 1e-9);
}

TEST(Channel, RejectsNonPositiveDistance) {
  EXPECT_THROW(pathloss_db(PathlossModel{}, LinkType::EnbToUe, 0.0), std::invalid_argument);
  EXPECT_THROW(pathloss_db(PathlossModel{}, LinkType::EnbToUe, -3.0), std::invalid_argument);
}

TEST(Channel, MonotoneAndNonNegative) {
  const PathlossModel m;
  for (LinkType t : {LinkType::EnbToUe, LinkType::UeToEnb, LinkType::EnbToEnb, LinkType::UeToUe}) {
    double prev = 0.0;
    for (double d = 0.5; d < 3000.0; d *= 1.07) {
      const double pl = pathloss_db(m, t, d);
      EXPECT_GE(pl, 0.0);
      EXPECT_GE(pl, prev);
      prev = pl;
    }
  }
}

TEST(Channel, CouplingGain) {
  const AntennaGains g;
  EXPECT_DOUBLE_EQ(coupling_gain_db(110.0, NodeKind::PicoEnb, NodeKind::PicoEnb, g), -100.0);
  EXPECT_DOUBLE_EQ(coupling_gain_db(90.0, NodeKind::Ue, NodeKind::PicoEnb, g), -85.0);
  EXPECT_DOUBLE_EQ(coupling_gain_db(98.45, NodeKind::Ue, NodeKind::Ue, g), -98.45);
}

namespace {

NetworkLayout two_picos_one_ue() {
  NetworkLayout l;
  l.picos = {{0, 0}, {150, 0}};
  l.ues = {{20, 10}};
  l.serving = {0};
  l.cell_ues = {{0}, {}};
  return l;
}

}  // namespace

TEST(Channel, MatrixMatchesScalarOperations) {
  const auto l = two_picos_one_ue();
  const PathlossModel m;
  const CouplingMatrix cm = build_coupling_matrix(l, m);
  ASSERT_EQ(cm.size(), 3u);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(cm.gain_db(i, i), kNegInf);
    EXPECT_EQ(cm.gain_linear(i, i), 0.0);
  }
  const double pl_enb = pathloss_db(m, LinkType::EnbToEnb, 150.0);
  EXPECT_DOUBLE_EQ(cm.pathloss_db(0, 1), pl_enb);
  EXPECT_DOUBLE_EQ(cm.gain_db(0, 1), -pl_enb + 10.0);
  const double pl_ue = pathloss_db(m, LinkType::EnbToUe, std::hypot(20.0, 10.0));
  EXPECT_DOUBLE_EQ(cm.gain_db(2, 0), -pl_ue + 5.0);
  EXPECT_NEAR(cm.gain_linear(2, 0), std::pow(10.0, (-pl_ue + 5.0) / 10.0), 1e-25);
}

TEST(Channel, MatrixReciprocityAndBounds) {
  const auto l = generate_layout(1, 4, 10, 11);
  const CouplingMatrix cm = build_coupling_matrix(l, PathlossModel{});
  for (int a = 0; a < static_cast<int>(cm.size()); ++a)
    for (int b = 0; b < static_cast<int>(cm.size()); ++b) {
      EXPECT_EQ(cm.pathloss_db(a, b), cm.pathloss_db(b, a));
      if (a != b) {
        EXPECT_LE(cm.gain_db(a, b), 10.0);
      }
    }
}

TEST(Channel, MovingAwayNeverIncreasesGain) {
  auto l = two_picos_one_ue();
  double prev = INFINITY;
  for (double x = 50.0; x < 2000.0; x += 37.0) {
    l.picos[1] = {x, 0};
    const CouplingMatrix cm = build_coupling_matrix(l, PathlossModel{});
    EXPECT_LE(cm.gain_db(1, 0), prev);
    prev = cm.gain_db(1, 0);
  }
}
