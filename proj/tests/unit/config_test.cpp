#include <gtest/gtest.h>

#include <string>

#include "dampeuler/config.hpp"
#include "dampeuler/error.hpp"

namespace de = dampeuler;

namespace {

const std::string kData = DAMPEULER_TEST_DATA;

de::Error parse_failure(const std::string& text) {
  try {
    (void)de::parse_config(text);
  } catch (const de::Error& e) {
    return e;
  }
  ADD_FAILURE() << "config accepted:\n" << text;
  return {de::ErrorCode::InvalidArgument, "none"};
}

}  // namespace

TEST(Config, MinimalFileGetsDefaults) {
  const auto cfg = de::load_config(kData + "/minimal.toml");
  EXPECT_EQ(cfg.law.kind(), de::LawKind::Logarithmic);
  EXPECT_EQ(cfg.law.k1(), 1.0);
  EXPECT_EQ(cfg.law.offset(), 0.0);
  EXPECT_EQ(cfg.damping.mu, 3.0);
  EXPECT_EQ(cfg.damping.lambda, 1.0);
  EXPECT_EQ(cfg.initial.epsilon, 0.05);
  EXPECT_EQ(cfg.initial.radius, 1.0);
  EXPECT_EQ(cfg.solver.cfl, 0.4);
  EXPECT_EQ(cfg.solver.t_end, 50.0);
  EXPECT_EQ(cfg.diagnostics.m, 3);
  EXPECT_EQ(cfg.grid.n, 2000u);
  EXPECT_EQ(cfg.grid.x_min, -60.0);
  EXPECT_EQ(cfg.grid.x_max, 60.0);
  EXPECT_EQ(cfg.solver.limiter, de::Limiter::Minmod);
  EXPECT_EQ(cfg.formulation, de::Formulation::Symmetric);
  EXPECT_TRUE(cfg.output.csv);
  EXPECT_TRUE(cfg.output.svg);
  EXPECT_TRUE(cfg.notices.empty());
}

TEST(Config, EmptyTextIsDefaultConfig) {
  const auto cfg = de::parse_config("");
  EXPECT_EQ(cfg.law.kind(), de::LawKind::Logarithmic);
  EXPECT_EQ(cfg.grid.n, 2000u);
}

TEST(Config, GammaDerivesExponent) {
  const auto cfg = de::load_config(kData + "/polytropic_gamma.toml");
  EXPECT_EQ(cfg.law.kind(), de::LawKind::Polytropic);
  EXPECT_NEAR(cfg.law.exponent(), 0.4, 1e-15);
  EXPECT_EQ(cfg.law.k1(), 2.0);
  const auto chap = de::parse_config("[law]\nkind = chaplygin\ngamma = 0.5\n");
  EXPECT_DOUBLE_EQ(chap.law.exponent(), -1.5);
}

TEST(Config, InconsistentExponentAndGamma) {
  EXPECT_EQ(parse_failure("[law]\nkind = polytropic\nA = 1\ngamma = 3\n").code(),
            de::ErrorCode::ValidationError);
}

TEST(Config, AllSections) {
  const auto cfg = de::parse_config(R"(
# full example
[law]
kind = "chaplygin"   # generalized Chaplygin gas
A = -2
K1 = 2.0
K = 0.5
[damping]
mu = 4
lambda = 0.5
[initial]
epsilon = 0.1
R = 2
rho_profile = zero
u_profile = bump
[grid]
x_min = -30
x_max = 40
n = 700
[solver]
cfl = 0.3
t_end = 12.5
snapshot_stride = 7
limiter = none
formulation = conservative
dissipation = 0.1
[diagnostics]
m = 4
gradient_threshold = 1e5
vacuum_threshold = 1e-6
support_tol = 1e-10
[output]
directory = "results/run 1"
csv = false
svg = off
)");
  EXPECT_EQ(cfg.law.kind(), de::LawKind::Chaplygin);
  EXPECT_EQ(cfg.law.exponent(), -2.0);
  EXPECT_EQ(cfg.law.offset(), 0.5);
  EXPECT_EQ(cfg.damping.lambda, 0.5);
  EXPECT_EQ(cfg.initial.radius, 2.0);
  EXPECT_EQ(cfg.initial.rho_profile.kind, de::ProfileKind::Zero);
  EXPECT_EQ(cfg.initial.u_profile.kind, de::ProfileKind::Bump);
  EXPECT_EQ(cfg.grid.n, 700u);
  EXPECT_EQ(cfg.grid.x_max, 40.0);
  EXPECT_EQ(cfg.solver.snapshot_stride, 7u);
  EXPECT_EQ(cfg.solver.limiter, de::Limiter::None);
  EXPECT_EQ(cfg.formulation, de::Formulation::Conservative);
  EXPECT_EQ(cfg.solver.dissipation, 0.1);
  EXPECT_EQ(cfg.diagnostics.m, 4);
  EXPECT_EQ(cfg.diagnostics.thresholds.gradient, 1e5);
  EXPECT_EQ(cfg.diagnostics.support_tol, 1e-10);
  EXPECT_EQ(cfg.output.directory, "results/run 1");
  EXPECT_FALSE(cfg.output.csv);
  EXPECT_FALSE(cfg.output.svg);
}

TEST(Config, ParseErrorsCarryLineNumbers) {
  const auto bad_value = parse_failure("[damping]\nmu = 3\nlambda = fast\n");
  EXPECT_EQ(bad_value.code(), de::ErrorCode::ParseError);
  EXPECT_NE(std::string(bad_value.what()).find(":3:"), std::string::npos) << bad_value.what();

  EXPECT_EQ(parse_failure("[damping]\nnu = 3\n").code(), de::ErrorCode::ParseError);
  EXPECT_EQ(parse_failure("[physics]\nmu = 3\n").code(), de::ErrorCode::ParseError);
  EXPECT_EQ(parse_failure("mu = 3\n").code(), de::ErrorCode::ParseError);
  EXPECT_EQ(parse_failure("[damping\nmu = 3\n").code(), de::ErrorCode::ParseError);
  EXPECT_EQ(parse_failure("[damping]\nmu 3\n").code(), de::ErrorCode::ParseError);
  EXPECT_EQ(parse_failure("[law]\nkind = ideal\n").code(), de::ErrorCode::ParseError);
  EXPECT_EQ(parse_failure("[grid]\nn = 20.5\n").code(), de::ErrorCode::ParseError);
}

TEST(Config, ValidationErrorsNameTheInvariant) {
  const auto density = parse_failure("[initial]\nepsilon = 5\nrho_profile = bump_derivative\n");
  EXPECT_EQ(density.code(), de::ErrorCode::ValidationError);
  EXPECT_NE(std::string(density.what()).find("NonPositiveDensity"), std::string::npos);

  const auto domain = parse_failure("[grid]\nx_min = -1\nx_max = 1\n");
  EXPECT_NE(std::string(domain.what()).find("SupportExceedsDomain"), std::string::npos);

  EXPECT_EQ(parse_failure("[law]\nkind = polytropic\nA = -0.5\n").code(), de::ErrorCode::ValidationError);
  EXPECT_EQ(parse_failure("[damping]\nmu = -1\n").code(), de::ErrorCode::ValidationError);
  EXPECT_EQ(parse_failure("[solver]\ncfl = 1.5\n").code(), de::ErrorCode::ValidationError);
  EXPECT_EQ(parse_failure("[diagnostics]\nm = 0\n").code(), de::ErrorCode::ValidationError);
  EXPECT_EQ(parse_failure("[grid]\nn = 8\n").code(), de::ErrorCode::ValidationError);
  EXPECT_EQ(parse_failure("[initial]\nrho_profile = table\n").code(), de::ErrorCode::ValidationError);
}

TEST(Config, Notices) {
  const auto low_m = de::parse_config("[diagnostics]\nm = 2\n");
  ASSERT_EQ(low_m.notices.size(), 1u);
  EXPECT_NE(low_m.notices[0].find("m = 2"), std::string::npos);

  const auto weak = de::parse_config("[damping]\nmu = 2\n");
  ASSERT_EQ(weak.notices.size(), 1u);
  EXPECT_NE(weak.notices[0].find("mu <= 2"), std::string::npos);

  EXPECT_TRUE(de::parse_config("[damping]\nmu = 2\nlambda = 0.5\n").notices.empty());
}

TEST(Config, TableProfileResolvesRelativePath) {
  const auto cfg = de::load_config(kData + "/table.toml");
  EXPECT_EQ(cfg.initial.rho_profile.kind, de::ProfileKind::Table);
  EXPECT_EQ(cfg.initial.rho_profile.table.size(), 3u);
}

TEST(Config, MissingFile) {
  try {
    (void)de::load_config(kData + "/does_not_exist.toml");
    FAIL();
  } catch (const de::Error& e) {
    EXPECT_EQ(e.code(), de::ErrorCode::IoError);
  }
}
