#include <gtest/gtest.h>

#include <cmath>

#include "bbmlab/aviles_giga.hpp"
#include "oracles.hpp"

using namespace bbmlab;

TEST(Young, ConstantIsTheSharpMinimum) {
  EXPECT_NEAR(young_constant(), oracle::young_minimum_scan(), 1e-8);
}

TEST(Moments, DEtaMatchesMonteCarlo) {
  for (int N : {1, 2}) {
    Mollifier eta(MollifierProfile::polynomial_bump, 2, N, 64);
    const double mc = oracle::d_eta_monte_carlo(2, N, 10'000'000, 77 + N);
    EXPECT_NEAR(eta.d_eta(), mc, 5e-3 * mc) << "N=" << N;
  }
}

TEST(Moments, ValueMomentNeedsPAboveTwo) {
  Mollifier eta(MollifierProfile::polynomial_bump, 2, 2, 64);
  try {
    eta.val_moment(2.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::unsupported);
  }
}

TEST(Mollify, LinearFieldKeepsGradientAndHasNoHessian) {
  auto d = Domain::unit_box(2);
  auto m = DomainMask::of_domain(d, 64);
  auto f = make_field("linear", d, {{"slope", {0.6, -0.8}}});
  Mollifier eta(MollifierProfile::polynomial_bump, 2, 2, 64);
  auto mf = mollify(*f, m, eta, 8 * m.grid().h);
  std::size_t seen = 0;
  for (std::size_t i = 0; i < m.grid().size(); ++i) {
    if (!mf.inner.inside(i)) continue;
    ++seen;
    EXPECT_NEAR(mf.gradient_at(i)[0], 0.6, 1e-12);
    EXPECT_NEAR(mf.gradient_at(i)[1], -0.8, 1e-12);
    for (int a = 0; a < 4; ++a) EXPECT_NEAR(mf.eps_hessian_at(i)[a], 0.0, 1e-12);
  }
  EXPECT_GT(seen, 0u);
  auto e = ag_energy(mf, 3.0);
  EXPECT_NEAR(e.total(), 0.0, 1e-12);
}

TEST(Mollify, RoofEnergyMatchesDenseQuadratureAndIsEpsIndependent) {
  auto d = Domain::unit_box(1);
  auto m = DomainMask::of_domain(d, 4096);
  auto f = make_field("cone-eikonal", d, {{"center", {0.5001}}});
  Mollifier eta(MollifierProfile::polynomial_bump, 2, 1, 512);
  const double ref = oracle::roof_energy(2, 20000);
  for (int k : {64, 32}) {
    auto mf = mollify(*f, m, eta, k * m.grid().h);
    EXPECT_NEAR(ag_energy(mf, 3.0).total(), ref, 0.01 * ref) << k;
  }
}

TEST(Chain, OneDimensionalCone) {
  auto d = Domain::unit_box(1);
  auto m = DomainMask::of_domain(d, 4096);
  auto f = make_field("cone-eikonal", d, {{"center", {0.5001}}});
  Mollifier eta(MollifierProfile::polynomial_bump, 2, 1, 128);
  const double h = m.grid().h;
  AgConfig cfg;
  cfg.sweep.eps = {64 * h, 32 * h, 16 * h};
  auto r = check_ag_chain(*f, m, eta, cfg);
  ASSERT_EQ(r.rows.size(), 3u);
  for (const auto& rep : r.reports) EXPECT_TRUE(rep.pass) << rep.name << " " << rep.lhs << " " << rep.rhs;
  // a gradient jump of size 2 at one point: (1/3) 2^3
  EXPECT_NEAR(gamma_limit_value(*f->gradient_jump()), 8.0 / 3.0, 1e-12);
  for (const auto& row : r.rows) EXPECT_EQ(row.young_violations, 0u);
}

TEST(UpperBound, ZigzagAndUnsupportedExponent) {
  auto d = Domain::unit_box(1);
  auto m = DomainMask::of_domain(d, 2048);
  auto f = make_field("zigzag-eikonal", d);
  Mollifier eta(MollifierProfile::exponential_bump, 1, 1, 128);
  const double h = m.grid().h;
  AgConfig cfg;
  cfg.sweep.eps = {32 * h, 16 * h, 8 * h};
  auto r = check_ag_upper_bound(*f, m, eta, 3.0, 4.0, cfg);
  for (const auto& rep : r.reports) EXPECT_TRUE(rep.pass) << rep.name;
  EXPECT_THROW(check_ag_upper_bound(*f, m, eta, 3.0, 2.0, cfg), Error);
}
