#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "bbmlab/catalog.hpp"
#include "bbmlab/jump_theory.hpp"
#include "oracles.hpp"

using namespace bbmlab;

TEST(DimensionalConstant, ClosedFormValues) {
  // (1/N) |S^{N-1}| E|z_1| over the sphere: 2, 2, 2 pi / 3
  EXPECT_NEAR(dimensional_constant(1), 2.0, 1e-12);
  EXPECT_NEAR(dimensional_constant(2), 2.0, 1e-12);
  EXPECT_NEAR(dimensional_constant(3), 2.0 * std::numbers::pi / 3.0, 1e-12);
  for (int N = 1; N <= 3; ++N)
    EXPECT_NEAR(dimensional_constant_closed_form(N),
                2.0 / N * std::pow(std::numbers::pi, 0.5 * (N - 1)) / std::tgamma(0.5 * (N + 1)), 1e-14);
  EXPECT_THROW(dimensional_constant(4), Error);
}

TEST(JumpEnergy, RightHandSideFormula) {
  auto d = Domain::unit_box(2);
  FieldParams p{{"center", {0.5, 0.5}}, {"radius", {0.25}}};
  auto f = make_field("ball-indicator", d, p);
  EXPECT_NEAR(jump_energy_rhs(f->jump(), 2.0), 2.0 * 2 * std::numbers::pi * 0.25, 1e-12);
  std::string warn;
  auto c = make_field("constant", d);
  EXPECT_EQ(jump_energy_rhs(c->jump(), 2.0, &warn), 0.0);
  EXPECT_FALSE(warn.empty());
}

TEST(JumpVerify, StepInOneDimension) {
  auto d = Domain::unit_box(1);
  auto m = DomainMask::of_domain(d, 2048);
  auto f = make_field("step-1d", d, {{"at", {0.5003}}, {"height", {1.5}}});
  const double h = m.grid().h;
  SweepConfig cfg{{64 * h, 32 * h, 16 * h}, FitModel::linear, {}, 0.02, 0};
  for (double q : {2.0, 3.0}) {
    auto r = verify_jump_formula(*f, m, q, cfg);
    EXPECT_TRUE(r.report.pass) << "q=" << q;
    EXPECT_NEAR(r.report.rhs, 2.0 * std::pow(1.5, q), 1e-12);
  }
  EXPECT_THROW(verify_jump_formula(*f, m, 1.0, cfg), Error);
}

TEST(JumpVerify, VectorValuedPiecewiseConstant) {
  auto d = Domain::unit_box(1);
  auto m = DomainMask::of_domain(d, 4096);
  FieldParams p{{"codim", {2.0}}, {"breaks0", {0.31, 0.62}}, {"values", {0, 0, 1, 1, -1, 0.5}}};
  auto f = make_field("piecewise-constant-multi", d, p);
  const double h = m.grid().h;
  SweepConfig cfg{{64 * h, 32 * h, 16 * h}, FitModel::linear, {}, 0.02, 0};
  auto r = verify_jump_formula(*f, m, 2.0, cfg);
  // C_1 (|(1,1)|^2 + |(-2,-0.5)|^2)
  EXPECT_NEAR(r.report.rhs, 2.0 * (2.0 + 4.25), 1e-12);
  EXPECT_TRUE(r.report.pass);
}

TEST(Q1, SineRecoversTotalVariation) {
  auto d = Domain::unit_box(1);
  auto m = DomainMask::of_domain(d, 2048);
  auto f = make_field("sine", d);
  const double h = m.grid().h;
  SweepConfig cfg{{64 * h, 32 * h, 16 * h}, FitModel::linear, {}, 0.03, 0};
  auto r = verify_q1_full_bv(*f, m, cfg);
  EXPECT_NEAR(r.report.rhs, 4.0, 1e-10);
  EXPECT_TRUE(r.report.pass) << r.report.lhs;
}

TEST(Indicator, BbmValueIndependentOfQ) {
  auto d = Domain::unit_box(2);
  auto m = DomainMask::of_domain(d, 64);
  auto u = sample_analytic(*make_field("ball-indicator", d), m);
  const double eps = 10 * m.grid().h;
  const double a = bbm_value(u, 1.0, eps);
  for (double q : {1.5, 2.0, 3.0}) EXPECT_NEAR(bbm_value(u, q, eps), a, 1e-12 * a);
}

TEST(DirectionalW, StepLimitMatchesJumpIntegral) {
  auto d = Domain::unit_box(1);
  auto m = DomainMask::of_domain(d, 4096);
  auto f = make_field("step-1d", d, {{"at", {0.5003}}, {"height", {2.0}}});
  auto u = sample_analytic(*f, m);
  const double t = 32 * m.grid().h;
  CostSpec rational{CostKind::rational, 0.0};
  // W(2, 0) = 4 / 5
  EXPECT_NEAR(directional_w_rhs(f->jump(), rational, {1.0}), 0.8, 1e-12);
  EXPECT_NEAR(directional_w_limit(u, rational, {1.0}, t), 0.8, 1e-12);
  CostSpec power{CostKind::power, 3.0};
  EXPECT_NEAR(directional_w_limit(u, power, {-1.0}, t), 8.0, 1e-12);
}

TEST(DirectionalW, ObliqueHalfPlane) {
  auto d = Domain::unit_box(2);
  auto m = DomainMask::of_domain(d, 256);
  auto f = make_field("half-plane-indicator", d, {{"normal", {1.0, 0.0}}, {"offset", {0.50013}}});
  auto u = sample_analytic(*f, m);
  CostSpec w{CostKind::power, 2.0};
  std::vector<double> k{0.6, 0.8};
  const double rhs = directional_w_rhs(f->jump(), w, k);
  EXPECT_NEAR(rhs, 0.6, 1e-12);
  // the inner domain is eroded by t, so only a fraction 1 - 2t of the line is seen
  const double t = 8 * m.grid().h;
  EXPECT_NEAR(directional_w_limit(u, w, k, t), rhs * (1 - 2 * t), 0.03);
}

TEST(TwoSided, HoldsOnSeveralFields) {
  auto d = Domain::unit_box(2);
  auto m = DomainMask::of_domain(d, 96);
  const double h = m.grid().h;
  for (const char* name : {"ball-indicator", "polygon-indicator", "cone-eikonal", "sine"}) {
    auto u = sample_analytic(*make_field(name, d), m);
    for (double eps : {12 * h, 9 * h}) {
      auto r = verify_two_sided(u, 2.0, eps);
      EXPECT_TRUE(r.left.pass) << name << " " << r.left.lhs << " " << r.left.rhs;
      EXPECT_TRUE(r.right.pass) << name;
    }
  }
}

TEST(TwoSided, LatticeSupMatchesBruteOffsets) {
  auto d = Domain::unit_box(2);
  auto m = DomainMask::of_domain(d, 40);
  auto u = sample_analytic(*make_field("ball-indicator", d), m);
  const double h = m.grid().h, eps = 8 * h;
  auto in = erode(erode(m, eps), eps);
  auto r = verify_two_sided(u, 2.0, eps);
  double best = 0.0;
  for (int j = -8; j <= 8; ++j)
    for (int i = -8; i <= 8; ++i)
      if ((i || j) && i * i + j * j <= 64) best = std::max(best, oracle::lattice_shift(u, 2.0, {i, j, 0}, in));
  EXPECT_NEAR(r.b_lattice_sup, best, 1e-12 * best);
}

TEST(QMonotonicity, ExactOnRandomBlocks) {
  auto d = Domain::unit_box(2);
  auto m = DomainMask::of_domain(d, 48);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto f = make_field("piecewise-constant-multi", d, {{"codim", {2.0}}, {"pieces", {3.0}}, {"seed", {double(seed)}}});
    auto u = sample_analytic(*f, m);
    auto r = check_q_monotonicity(u, 1.5, 3.0, 8 * m.grid().h);
    EXPECT_TRUE(r.pass) << seed;
  }
}

TEST(Splitting, ExactOnRandomBlocks) {
  auto d = Domain::unit_box(2);
  auto m = DomainMask::of_domain(d, 48);
  auto f = make_field("piecewise-constant-multi", d, {{"pieces", {4.0}}, {"seed", {3.0}}});
  auto u = sample_analytic(*f, m);
  for (auto [a, b] : std::vector<std::pair<std::array<int, 3>, std::array<int, 3>>>{
           {{3, 0, 0}, {0, 2, 0}}, {{1, 1, 0}, {4, -1, 0}}, {{5, 0, 0}, {-2, 0, 0}}}) {
    auto r = check_splitting(u, 2.0, a, b);
    EXPECT_TRUE(r.pass) << r.lhs << " " << r.rhs;
  }
}

TEST(GagliardoBound, HoldsAtEveryEps) {
  auto d = Domain::unit_box(1);
  auto m = DomainMask::of_domain(d, 512);
  auto u = sample_analytic(*make_field("hoelder", d), m);
  const double h = m.grid().h;
  for (const auto& r : check_gagliardo_bound(u, 2.0, {64 * h, 32 * h, 16 * h, 8 * h})) EXPECT_TRUE(r.pass);
}
