#include <gtest/gtest.h>

#include <cmath>

#include "dampeuler/diagnostics.hpp"
#include "dampeuler/dynamics.hpp"
#include "dampeuler/error.hpp"
#include "dampeuler/initial_data.hpp"

namespace de = dampeuler;

namespace {

const de::TransformParams kLog{de::PressureLaw::logarithmic(1.0)};
const de::DampingLaw kDamped{3.0, 1.0};

de::SymState sym_state(const de::Grid1D& g, auto v, auto u, double t = 0.0) {
  return {de::Field::sample(g, v), de::Field::sample(g, u), t};
}

double phi(double x) { return 0.2 * de::bump_profile(x, 1.5); }
double dphi(double x) { return 0.2 * de::bump_profile_derivative(x, 1.5); }

de::RunResult smooth_run(std::size_t n, de::Formulation f, double t_end = 1.0) {
  const de::Grid1D g(-6.0, 6.0, n);
  de::SolverConfig cfg;
  cfg.t_end = t_end;
  const auto init = de::make_initial({0.05, 2.0}, g, kLog);
  return de::run(cfg, f, {kLog, kDamped, de::Nonlinearity::Full, {}}, init);
}

}  // namespace

TEST(DampingLaw, Rate) {
  EXPECT_DOUBLE_EQ(kDamped.rate(0.0), 3.0);
  EXPECT_DOUBLE_EQ(kDamped.rate(1.0), 1.5);
  EXPECT_DOUBLE_EQ((de::DampingLaw{2.0, 2.0}.rate(1.0)), 0.5);
  EXPECT_THROW((de::DampingLaw{-1.0, 1.0}.validate()), de::Error);
}

TEST(SymRhs, BackgroundIsEquilibrium) {
  const de::Grid1D g(-5.0, 5.0, 101);
  const auto k = de::sym_rhs({de::Field(g), de::Field(g), 0.0}, kLog, kDamped);
  EXPECT_EQ(k.dv.max_abs(), 0.0);
  EXPECT_EQ(k.du.max_abs(), 0.0);
}

TEST(SymRhs, UniformDensityAtRestIsEquilibrium) {
  const de::Grid1D g(-5.0, 5.0, 101);
  const auto k = de::sym_rhs({de::Field(g, 0.3), de::Field(g), 2.0}, kLog, kDamped);
  EXPECT_EQ(k.dv.max_abs(), 0.0);
  EXPECT_EQ(k.du.max_abs(), 0.0);
}

TEST(SymRhs, VelocityPulse) {
  const de::Grid1D g(-3.0, 3.0, 1201);
  const auto s = sym_state(g, [](double) { return 0.0; }, phi);
  const auto k = de::sym_rhs(s, kLog, kDamped);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.x(i);
    EXPECT_NEAR(k.dv[i], -dphi(x), 2e-6);
    EXPECT_NEAR(k.du[i], -3 * phi(x) - phi(x) * dphi(x), 2e-6);
  }
}

TEST(SymRhs, LinearizedDropsQuadraticTerms) {
  const de::Grid1D g(-3.0, 3.0, 301);
  const auto s = sym_state(g, phi, phi);
  const auto full = de::sym_rhs(s, kLog, kDamped);
  const auto lin = de::sym_rhs(s, kLog, kDamped, de::Nonlinearity::Linearized);
  const de::Field vx = de::central_derivative(s.v);
  const de::Field ux = de::central_derivative(s.u);
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_DOUBLE_EQ(lin.dv[i], -ux[i]);
    EXPECT_DOUBLE_EQ(lin.du[i], -vx[i] - 3.0 * s.u[i]);
  }
  EXPECT_GT((full.du - lin.du).max_abs(), 0.0);
}

TEST(SymRhs, RejectsNonFinite) {
  const de::Grid1D g(-1.0, 1.0, 32);
  de::SymState s{de::Field(g), de::Field(g), 0.0};
  s.u[5] = INFINITY;
  EXPECT_THROW((void)de::sym_rhs(s, kLog, kDamped), de::Error);
}

TEST(ConsRhs, UniformStates) {
  const de::Grid1D g(-2.0, 2.0, 64);
  const auto rest = de::cons_rhs({de::Field(g, 1.0), de::Field(g, 0.0), 0.0}, kLog.law(), kDamped);
  EXPECT_EQ(rest.drho.max_abs(), 0.0);
  EXPECT_EQ(rest.dm.max_abs(), 0.0);
  const auto moving = de::cons_rhs({de::Field(g, 1.0), de::Field(g, 0.4), 0.0}, kLog.law(), kDamped);
  EXPECT_EQ(moving.drho.max_abs(), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_DOUBLE_EQ(moving.dm[i], -3.0 * 0.4);
}

TEST(ConsRhs, FluxPartConservesMass) {
  const de::Grid1D g(-5.0, 5.0, 401);
  const de::ConsState s{de::Field::sample(g, [](double x) { return 1.0 + 0.5 * (1 + std::tanh(4 * x)) * 0.5; }),
                        de::Field::sample(g, [](double x) { return 0.2 * de::bump_profile(x, 2.0); }), 0.0};
  for (auto lim : {de::Limiter::None, de::Limiter::Minmod}) {
    const auto k = de::cons_rhs(s, kLog.law(), {0.0, 1.0}, lim);
    double total = 0.0;
    for (double d : k.drho.values()) total += d;
    EXPECT_NEAR(total * g.dx(), 0.0, 1e-12);
  }
}

TEST(Cfl, TimeStep) {
  const de::Grid1D g(-5.0, 5.0, 101);
  de::SolverConfig cfg;
  EXPECT_DOUBLE_EQ(de::cfl_dt({de::Field(g), de::Field(g), 0.0}, kLog, cfg), 0.4 * g.dx());
  EXPECT_DOUBLE_EQ(de::cfl_dt({de::Field(g), de::Field(g, 1.0), 0.0}, kLog, cfg), 0.2 * g.dx());
}

TEST(Cfl, DegenerateConeIsHyperbolicityLoss) {
  const de::TransformParams poly(de::PressureLaw(de::LawKind::Polytropic, 2.0, 1.0));
  const de::Grid1D g(-5.0, 5.0, 101);
  de::SymState s{de::Field(g), de::Field(g), 0.0};
  s.v[40] = -1.0;
  try {
    (void)de::cfl_dt(s, poly, de::SolverConfig{});
    FAIL();
  } catch (const de::Error& e) {
    EXPECT_EQ(e.code(), de::ErrorCode::HyperbolicityLoss);
  }
}

TEST(SolverConfig, Validation) {
  de::SolverConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.cfl = 1.2;
  EXPECT_THROW(cfg.validate(), de::Error);
  cfg = {};
  cfg.snapshot_stride = 0;
  EXPECT_THROW(cfg.validate(), de::Error);
  cfg = {};
  cfg.fixed_dt = -1.0;
  EXPECT_THROW(cfg.validate(), de::Error);
}

TEST(Run, BackgroundStaysBackground) {
  const de::Grid1D g(-10.0, 10.0, 201);
  de::SolverConfig cfg;
  cfg.fixed_dt = 0.01;
  cfg.t_end = 10.0;
  cfg.store_snapshots = true;
  cfg.snapshot_stride = 100;
  const auto res = de::run(cfg, de::Formulation::Symmetric, {kLog, kDamped, de::Nonlinearity::Full, {}},
                           de::make_initial({0.0, 1.0}, g, kLog));
  EXPECT_EQ(res.status, de::RunStatus::CompletedGlobal);
  EXPECT_EQ(res.steps, 1000u);
  for (const auto& s : res.snapshots) {
    EXPECT_LE(s.v.max_abs(), 1e-13);
    EXPECT_LE(s.u.max_abs(), 1e-13);
  }
}

TEST(Run, ConservativeBackgroundStaysBackground) {
  const de::Grid1D g(-10.0, 10.0, 201);
  de::SolverConfig cfg;
  cfg.t_end = 5.0;
  const auto res = de::run(cfg, de::Formulation::Conservative,
                           {kLog, kDamped, de::Nonlinearity::Full, {}},
                           de::make_initial({0.0, 1.0}, g, kLog));
  ASSERT_TRUE(res.final_cons.has_value());
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_NEAR(res.final_cons->rho[i], 1.0, 1e-13);
    EXPECT_NEAR(res.final_cons->m[i], 0.0, 1e-13);
  }
}

TEST(Run, UniformVelocityDecaysLikeDampingOde) {
  const de::Grid1D g(-1.0, 1.0, 32);
  const double u0 = 0.25;
  de::SymState s{de::Field(g), de::Field(g, u0), 0.0};
  for (int i = 0; i < 100; ++i) {
    s = de::rk4_step(s, 0.01, [](const de::SymState& st) { return de::sym_rhs(st, kLog, kDamped); });
  }
  EXPECT_NEAR(s.t, 1.0, 1e-14);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(s.u[i], u0 / 8.0, 1e-8);
}

TEST(Run, LinearTemporalOrder) {
  const de::Grid1D g(-10.0, 10.0, 201);
  const auto init = de::make_initial({0.05, 2.0}, g, kLog);
  const de::RunSetup setup{kLog, {0.0, 1.0}, de::Nonlinearity::Linearized, {}};
  const auto solve = [&](double dt) {
    de::SolverConfig cfg;
    cfg.fixed_dt = dt;
    cfg.t_end = 1.0;
    return de::run(cfg, de::Formulation::Symmetric, setup, init).final_state;
  };
  const auto ref = solve(0.1 / 64);
  const double e1 = (solve(0.1).v - ref.v).max_abs();
  const double e2 = (solve(0.05).v - ref.v).max_abs();
  EXPECT_GE(std::log2(e1 / e2), 3.5) << e1 << ' ' << e2;
}

TEST(Run, ConservativeMassConserved) {
  const de::Grid1D g(-20.0, 20.0, 801);
  de::SolverConfig cfg;
  cfg.t_end = 5.0;
  de::InitialData id{0.3, 1.0};
  id.u_profile = {de::ProfileKind::Bump, {}};
  const auto init = de::make_initial(id, g, kLog);
  const auto res = de::run(cfg, de::Formulation::Conservative,
                           {kLog, kDamped, de::Nonlinearity::Full, {}}, init);
  ASSERT_EQ(res.status, de::RunStatus::CompletedGlobal);
  double m0 = 0.0;
  double m1 = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    m0 += init.cons.rho[i];
    m1 += res.final_cons->rho[i];
  }
  EXPECT_NEAR(m1 * g.dx(), m0 * g.dx(), 1e-11);
}

TEST(Run, SelfConvergence) {
  for (auto [f, need] : {std::pair{de::Formulation::Symmetric, 1.8},
                         std::pair{de::Formulation::Conservative, 1.5}}) {
    const auto a = smooth_run(801, f).final_state;
    const auto b = smooth_run(1601, f).final_state;
    const auto c = smooth_run(3201, f).final_state;
    const auto restrict = [](const de::Field& fine, const de::Field& coarse) {
      double e = 0.0;
      for (std::size_t i = 0; i < coarse.size(); ++i) e = std::max(e, std::abs(fine[2 * i] - coarse[i]));
      return e;
    };
    const double order = std::log2(restrict(b.v, a.v) / restrict(c.v, b.v));
    EXPECT_GE(order, need) << de::to_string(f);
  }
}

TEST(Run, TriplesAreUniform) {
  const de::Grid1D g(-20.0, 20.0, 401);
  de::SolverConfig cfg;
  cfg.t_end = 3.0;
  cfg.snapshot_stride = 10;
  cfg.capture_triples = true;
  const auto res = de::run(cfg, de::Formulation::Symmetric,
                           {kLog, kDamped, de::Nonlinearity::Full, {}},
                           de::make_initial({0.05, 1.0}, g, kLog));
  ASSERT_FALSE(res.triples.empty());
  for (const auto& tr : res.triples) {
    EXPECT_NEAR(tr.mid.t - tr.prev.t, tr.next.t - tr.mid.t, 1e-12);
  }
}

TEST(Run, ObserverSeesStartStrideAndEnd) {
  const de::Grid1D g(-20.0, 20.0, 401);
  de::SolverConfig cfg;
  cfg.fixed_dt = 0.1;
  cfg.t_end = 1.05;
  cfg.snapshot_stride = 4;
  std::vector<double> times;
  const auto res = de::run(cfg, de::Formulation::Symmetric,
                           {kLog, kDamped, de::Nonlinearity::Full, {}},
                           de::make_initial({0.05, 1.0}, g, kLog),
                           [&](const de::SymState& s, double) { times.push_back(s.t); });
  EXPECT_EQ(res.steps, 11u);
  ASSERT_EQ(times.size(), 4u);
  EXPECT_EQ(times[0], 0.0);
  EXPECT_NEAR(times[1], 0.4, 1e-12);
  EXPECT_NEAR(times[2], 0.8, 1e-12);
  EXPECT_NEAR(times[3], 1.05, 1e-12);
}

TEST(Run, StepLimitIsError) {
  const de::Grid1D g(-20.0, 20.0, 401);
  de::SolverConfig cfg;
  cfg.max_steps = 5;
  const auto res = de::run(cfg, de::Formulation::Symmetric,
                           {kLog, kDamped, de::Nonlinearity::Full, {}},
                           de::make_initial({0.05, 1.0}, g, kLog));
  EXPECT_EQ(res.status, de::RunStatus::Error);
  EXPECT_EQ(res.steps, 5u);
}

TEST(Dissipation, AnnihilatesLowDegreePolynomialsInInterior) {
  const de::Grid1D g(-1.0, 1.0, 64);
  const auto d = de::high_order_dissipation(de::Field::sample(g, [](double x) { return 1 + x * x; }), 0.2, 1.0);
  for (std::size_t i = 3; i + 3 < g.size(); ++i) EXPECT_NEAR(d[i], 0.0, 1e-10);
}
