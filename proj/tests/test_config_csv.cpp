#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "etlqr/comparison.hpp"
#include "etlqr/config.hpp"
#include "etlqr/csv_log.hpp"

namespace etlqr {
namespace {

Scenario parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("etlqr_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

TEST(Config, EmptyGivesReferenceScenario) {
  const Scenario s = parse("");
  const Scenario d;
  EXPECT_EQ(s.vehicle.m, 1421.0);
  EXPECT_EQ(s.vehicle.mu, 0.6);
  EXPECT_EQ(s.vehicle.Vx, 18.0);
  EXPECT_EQ(s.vehicle.Iz, 2570.0);
  EXPECT_EQ(s.vehicle.Cf, 170550.0);
  EXPECT_EQ(s.vehicle.Cr, 137844.0);
  EXPECT_EQ(s.vehicle.lf, 1.191);
  EXPECT_EQ(s.vehicle.lr, 1.513);
  EXPECT_EQ(s.weights.Q, Mat4(Vec4(30, 10, 1, 1).asDiagonal()));
  EXPECT_EQ(s.weights.R, 1000.0);
  EXPECT_EQ(s.N, Mat4::Identity());
  EXPECT_EQ(s.G, Mat4::Identity());
  EXPECT_EQ(s.design.z_bar, 1.0);
  EXPECT_EQ(s.design.epsilon, 1.0);
  EXPECT_EQ(s.design.theta_l, 8.0);
  EXPECT_EQ(s.design.theta_r, 0.1);
  EXPECT_EQ(s.t_end, 15.0);
  EXPECT_EQ(s.dt, 0.01);
  EXPECT_EQ(s.period, 0.01);
  EXPECT_TRUE(s.x0.isZero(0.0));
  ASSERT_TRUE(s.disturbance.has_value());
  EXPECT_EQ(s.disturbance->xi_bar, Vec4(3e-4, 1e-3, 0, 0));
  EXPECT_EQ(s.disturbance->phases, d.disturbance->phases);
}

TEST(Config, ExplicitReferenceFileMatchesDefaults) {
  const Scenario s = load_config(ETLQR_TEST_DATA "/reference.ini");
  const Scenario d;
  EXPECT_EQ(s.vehicle.Cf, d.vehicle.Cf);
  EXPECT_EQ(s.weights.Q, d.weights.Q);
  EXPECT_EQ(s.design.theta_r, d.design.theta_r);
  EXPECT_EQ(s.disturbance->phases, d.disturbance->phases);
}

TEST(Config, NegativeMassNamesField) {
  try {
    parse("[vehicle]\nm = -1\n");
    FAIL() << "accepted m = -1";
  } catch (const InvalidParameter& e) {
    EXPECT_EQ(e.field(), "m");
  }
}

TEST(Config, OriginalMechanismAccepted) {
  const Scenario s = parse("[etm]\ntheta_l = 1\ntheta_r = 1\n");
  EXPECT_EQ(s.design.theta_l, 1.0);
  EXPECT_EQ(s.design.theta_r, 1.0);
  EXPECT_EQ(strategy_name(make_strategy(StrategyKind::etm_improved, s)), "etm-original");
}

TEST(Config, SyntaxErrorReportsLine) {
  try {
    parse("[vehicle]\nm = 1421\n[etm\n");
    FAIL();
  } catch (const ConfigParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
  EXPECT_THROW(parse("[vehicle]\nmass = 3\n"), ConfigParseError);
  EXPECT_THROW(parse("[wheels]\nn = 4\n"), ConfigParseError);
  EXPECT_THROW(parse("[vehicle]\nm = heavy\n"), ConfigParseError);
  EXPECT_THROW(parse("[lqr]\nQ = 1, 2, 3\n"), ConfigParseError);
  EXPECT_THROW(parse("[disturbance]\nseed = -3\n"), ConfigParseError);
  EXPECT_THROW(parse("[etm]\ntheta_r = 0\n"), InvalidParameter);
  EXPECT_THROW(parse("[etm]\nN = 1, 0, 0, 1\n"), InvalidParameter);
  EXPECT_THROW(parse("[sim]\ndt = 0\n"), InvalidParameter);
}

TEST(Config, FullMatricesAndDisturbanceSwitch) {
  const Scenario s = parse(
      "[lqr]\nQ = 2,1,0,0, 1,2,0,0, 0,0,1,0, 0,0,0,1\n[disturbance]\nenabled = false\n[sim]\nperiod = 0.05\n");
  EXPECT_EQ(s.weights.Q(0, 1), 1.0);
  EXPECT_EQ(s.weights.Q(1, 0), 1.0);
  EXPECT_FALSE(s.disturbance.has_value());
  EXPECT_EQ(s.period, 0.05);
  EXPECT_THROW(load_config("/nonexistent/etlqr.ini"), ConfigParseError);
}

TEST(CsvLog, FormatIsScientificSeventeenDigits) {
  EXPECT_EQ(format_double(0.1), "1.0000000000000001e-01");
  EXPECT_EQ(format_double(-1500.0), "-1.5000000000000000e+03");
  EXPECT_EQ(format_double(-0.0), "0.0000000000000000e+00");
}

bool logs_equal(const SimLog& a, const SimLog& b) {
  return a.times == b.times && a.states == b.states && a.inputs == b.inputs && a.clock == b.clock &&
         a.triggered == b.triggered && a.triggers == b.triggers && a.disturbances == b.disturbances;
}

TEST(CsvLog, RoundTripsRandomLogs) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> logu(-300.0, 300.0);
  std::bernoulli_distribution coin(0.2);
  const auto value = [&] { return (coin(rng) ? -1.0 : 1.0) * std::pow(10.0, logu(rng)); };
  for (int trial = 0; trial < 20; ++trial) {
    SimLog log;
    for (int i = 0; i < 50; ++i) {
      const double t = 0.01 * i;
      log.times.push_back(t);
      log.states.emplace_back(value(), value(), value(), value());
      log.inputs.push_back(value());
      log.clock.push_back(value());
      const bool fired = coin(rng);
      log.triggered.push_back(fired);
      if (fired) {
        log.triggers.push_back(t);
      }
      log.disturbances.emplace_back(value(), 0.0, -0.0, value());
    }
    std::stringstream buffer;
    write_log_csv(buffer, log);
    EXPECT_TRUE(logs_equal(read_log_csv(buffer), log)) << "trial " << trial;
  }
}

TEST(CsvLog, RoundTripsSimulationLog) {
  const Scenario s;
  const auto runs = simulate_strategies(s, {StrategyKind::etm_improved});
  std::stringstream buffer;
  write_log_csv(buffer, runs.front().log);
  EXPECT_TRUE(logs_equal(read_log_csv(buffer), runs.front().log));
}

TEST(CsvLog, RejectsMalformedInput) {
  std::istringstream no_header("1,2,3\n");
  EXPECT_THROW(read_log_csv(no_header), std::runtime_error);
  std::istringstream short_row("t,beta_t,psidot_t,edot,e,delta_t,Z,triggered,xi1,xi2,xi3,xi4\n1,2\n");
  EXPECT_THROW(read_log_csv(short_row), std::runtime_error);
}

TEST(Comparison, WritesAllOutputs) {
  RunManifest m;
  m.output_directory = scratch_dir("all");
  const auto rows = run_comparison(m, Scenario{});
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].strategy, "time");
  EXPECT_EQ(rows[0].triggers, 1500u);
  EXPECT_EQ(rows[0].savings_pct, 0.0);
  EXPECT_GT(rows[1].triggers, rows[2].triggers);
  EXPECT_LT(rows[1].triggers, rows[0].triggers);
  for (const auto& r : rows) {
    EXPECT_GE(r.min_iet, r.tau - 0.01 - 1e-12) << r.strategy;
  }
  for (auto kind : m.strategies) {
    EXPECT_TRUE(std::filesystem::exists(m.log_file(kind)));
    EXPECT_TRUE(std::filesystem::exists(m.trajectory_file(kind)));
  }
  const std::string summary = slurp(m.summary_file());
  EXPECT_EQ(summary.rfind("strategy,triggers,min_iet,mean_iet,tau,savings_pct\n", 0), 0u);
  EXPECT_EQ(summary.find('\r'), std::string::npos);
  EXPECT_EQ(slurp(m.trajectory_file(StrategyKind::time)).rfind("X,Y,X_ref,Y_ref\n", 0), 0u);
}

TEST(Comparison, SingleStrategyManifest) {
  RunManifest m;
  m.output_directory = scratch_dir("single");
  m.strategies = {StrategyKind::etm_original};
  const auto rows = run_comparison(m, Scenario{});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].strategy, "etm-original");
  std::size_t csv_count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(m.output_directory)) {
    csv_count += entry.path().filename().string().rfind("log_", 0) == 0;
  }
  EXPECT_EQ(csv_count, 1u);
}

TEST(Comparison, SameSeedGivesIdenticalFiles) {
  RunManifest a, b;
  a.output_directory = scratch_dir("det_a");
  b.output_directory = scratch_dir("det_b");
  Scenario s;
  s.reseed(17);
  run_comparison(a, s);
  run_comparison(b, s);
  for (auto kind : a.strategies) {
    EXPECT_EQ(slurp(a.log_file(kind)), slurp(b.log_file(kind)));
    EXPECT_EQ(slurp(a.trajectory_file(kind)), slurp(b.trajectory_file(kind)));
  }
  EXPECT_EQ(slurp(a.summary_file()), slurp(b.summary_file()));
}

TEST(Comparison, ManifestValidation) {
  RunManifest m;
  m.strategies = {StrategyKind::time, StrategyKind::time};
  EXPECT_THROW(m.validate(), std::invalid_argument);
  m.strategies.clear();
  EXPECT_THROW(m.validate(), std::invalid_argument);
  EXPECT_EQ(strategy_kind_from_string("etm-improved"), StrategyKind::etm_improved);
  EXPECT_THROW(strategy_kind_from_string("sometimes"), std::invalid_argument);
}

TEST(Certificate, ReportsBoundAndDesignDependence) {
  const Scenario s;
  const PlantMatrices plant = s.plant();
  const SynthesisResult improved = synthesize(plant, s.weights, s.N, s.design);
  const SynthesisResult original = synthesize(plant, s.weights, s.N, EtmDesign::original());
  const std::string text = emit_certificate(plant, improved, s.design);
  for (const char* key : {"K =", "eig(A - BK)", "CARE residual", "Lyapunov residual", "lambda_min(M)",
                          "lambda_min(N)", "|MBK|", "sigma", "tau"}) {
    EXPECT_NE(text.find(key), std::string::npos) << key;
  }
  EXPECT_NE(text.find(format_double(improved.tau)), std::string::npos);
  EXPECT_GT(improved.tau, 0.0);
  EXPECT_NEAR(improved.sigma / original.sigma, 0.00125, 1e-15);
}

}  // namespace
}  // namespace etlqr
