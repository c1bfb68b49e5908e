#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "etlqr/model.hpp"
#include "oracles.hpp"

namespace etlqr {
namespace {

TEST(BuildPlant, ReferenceVehicleEntries) {
  const PlantMatrices plant = build_plant(VehicleParams{});
  // Direct evaluation of the closed-form entries for m=1421, mu=0.6, Vx=18, ...
  EXPECT_NEAR(plant.A(0, 0), -7.2342012667135815, 1e-13);
  EXPECT_NEAR(plant.A(1, 1), -7.230481792295719, 1e-13);
  EXPECT_NEAR(plant.B(1), 47.4221906614786, 1e-12);
  EXPECT_EQ(plant.G, Mat4::Identity());
}

TEST(BuildPlant, StructuralZeros) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20; ++i) {
    const PlantMatrices plant = build_plant(oracle::random_vehicle(rng));
    EXPECT_EQ(plant.A(3, 2), 1.0);
    EXPECT_EQ(plant.A(3, 3), 0.0);
    EXPECT_EQ(plant.B(3), 0.0);
    EXPECT_TRUE(plant.A.col(2).head<3>().isZero(0.0));
    EXPECT_TRUE(plant.A.col(3).isZero(0.0));
  }
}

TEST(BuildPlant, MatchesBicycleModelOracle) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 100; ++i) {
    const VehicleParams p = oracle::random_vehicle(rng);
    const PlantMatrices got = build_plant(p);
    const PlantMatrices want = oracle::plant_from_bicycle_model(p);
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) {
        EXPECT_LE(std::abs(got.A(r, c) - want.A(r, c)), 1e-12 * std::max(1.0, std::abs(want.A(r, c))))
            << "A(" << r << "," << c << ") sample " << i;
      }
      EXPECT_LE(std::abs(got.B(r) - want.B(r)), 1e-12 * std::max(1.0, std::abs(want.B(r))));
    }
  }
}

TEST(BuildPlant, FrictionScalesTireTerms) {
  VehicleParams p;
  p.mu = 0.4;
  VehicleParams p2 = p;
  p2.mu = 0.8;
  const PlantMatrices a = build_plant(p);
  const PlantMatrices b = build_plant(p2);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 2; ++c) {
      const double base = (r == 0 && c == 1) ? a.A(r, c) + 1.0 : a.A(r, c);
      const double doubled = (r == 0 && c == 1) ? b.A(r, c) + 1.0 : b.A(r, c);
      EXPECT_NEAR(doubled, 2.0 * base, 1e-12 * std::abs(base));
    }
    EXPECT_EQ(b.B(r), 2.0 * a.B(r));
  }
}

TEST(BuildPlant, GOverride) {
  const Mat4 G = Vec4(1, 2, 3, 4).asDiagonal();
  EXPECT_EQ(build_plant(VehicleParams{}, G).G, G);
}

TEST(BuildPlant, RejectsUnphysicalParameters) {
  const auto expect_field = [](VehicleParams p, const std::string& field) {
    try {
      build_plant(p);
      ADD_FAILURE() << "accepted invalid " << field;
    } catch (const InvalidParameter& e) {
      EXPECT_EQ(e.field(), field);
    }
  };
  VehicleParams p;
  p.m = -1;
  expect_field(p, "m");
  p = {};
  p.Iz = 0;
  expect_field(p, "Iz");
  p = {};
  p.Vx = 0;
  expect_field(p, "Vx");
  p = {};
  p.Cf = -5;
  expect_field(p, "Cf");
  p = {};
  p.Cr = 0;
  expect_field(p, "Cr");
  p = {};
  p.mu = 1.5;
  expect_field(p, "mu");
  p = {};
  p.lr = NAN;
  expect_field(p, "lr");
}

TEST(Equilibrium, StraightRoadIsOrigin) {
  VehicleParams p;
  p.rho = 0.0;
  const Equilibrium eq = equilibrium(p);
  EXPECT_EQ(eq.beta_star, 0.0);
  EXPECT_EQ(eq.psidot_star, 0.0);
  EXPECT_EQ(eq.delta_star, 0.0);
}

TEST(Equilibrium, YawRateFollowsCurvature) {
  VehicleParams p;
  p.rho = 0.001;
  EXPECT_NEAR(equilibrium(p).psidot_star, 0.018, 1e-15);
}

TEST(Equilibrium, LinearInCurvature) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    VehicleParams p = oracle::random_vehicle(rng);
    const Equilibrium a = equilibrium(p);
    p.rho *= 2.0;
    const Equilibrium b = equilibrium(p);
    EXPECT_EQ(b.beta_star, 2.0 * a.beta_star);
    EXPECT_EQ(b.psidot_star, 2.0 * a.psidot_star);
    EXPECT_EQ(b.delta_star, 2.0 * a.delta_star);
  }
}

// The equilibrium must be a steady state of the bicycle model: zero sideslip
// and yaw accelerations at (beta*, psidot*, delta*).
TEST(Equilibrium, IsSteadyStateOfBicycleModel) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const VehicleParams p = oracle::random_vehicle(rng);
    const Equilibrium eq = equilibrium(p);
    const Eigen::Vector2d rates = oracle::bicycle_rates(p, eq.beta_star, eq.psidot_star, eq.delta_star);
    EXPECT_NEAR(rates(0), 0.0, 1e-12);
    EXPECT_NEAR(rates(1), 0.0, 1e-10);
  }
}

std::vector<double> sample_times(double t_end, double dt) {
  std::vector<double> t;
  for (int i = 0; i <= static_cast<int>(std::lround(t_end / dt)); ++i) {
    t.push_back(i * dt);
  }
  return t;
}

TEST(Trajectory, ZeroErrorFollowsReference) {
  VehicleParams p;
  p.rho = 0.001;
  const auto t = sample_times(15.0, 0.01);
  const std::vector<double> e(t.size(), 0.0);
  const Trajectory tr = reconstruct_trajectory(t, e, p, {3.0, -2.0, 0.4});
  ASSERT_EQ(tr.actual.size(), t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    EXPECT_LE(std::hypot(tr.actual[i].x - tr.reference[i].x, tr.actual[i].y - tr.reference[i].y), 1e-9);
  }
  EXPECT_DOUBLE_EQ(tr.reference.front().x, 3.0);
  EXPECT_DOUBLE_EQ(tr.reference.front().y, -2.0);
}

TEST(Trajectory, StraightRoadConstantOffset) {
  VehicleParams p;
  p.rho = 0.0;
  const auto t = sample_times(2.0, 0.1);
  const std::vector<double> e(t.size(), 0.25);
  const Trajectory tr = reconstruct_trajectory(t, e, p);
  for (std::size_t i = 0; i < t.size(); ++i) {
    EXPECT_NEAR(tr.reference[i].x, p.Vx * t[i], 1e-12);
    EXPECT_EQ(tr.reference[i].y, 0.0);
    EXPECT_NEAR(tr.actual[i].x, tr.reference[i].x, 1e-12);
    EXPECT_NEAR(tr.actual[i].y, 0.25, 1e-12);
  }
}

TEST(Trajectory, ArcLengthIsSpeedTimesDuration) {
  VehicleParams p;
  p.rho = 0.001;
  const auto t = sample_times(15.0, 0.01);
  const Trajectory tr = reconstruct_trajectory(t, std::vector<double>(t.size(), 0.0), p);
  double length = 0.0;
  for (std::size_t i = 1; i < tr.reference.size(); ++i) {
    length += std::hypot(tr.reference[i].x - tr.reference[i - 1].x, tr.reference[i].y - tr.reference[i - 1].y);
  }
  // Sum of chords undershoots the arc by ~rho^2 ds^3 / 24 per segment.
  EXPECT_NEAR(length, 270.0, 1e-6);
  // Every reference point sits on the circle of radius 1/rho about (0, 1/rho).
  for (const auto& pt : tr.reference) {
    EXPECT_NEAR(std::hypot(pt.x, pt.y - 1000.0), 1000.0, 1e-9);
  }
}

TEST(Trajectory, EmptyInputGivesEmptyOutput) {
  const Trajectory tr = reconstruct_trajectory(std::vector<double>{}, std::vector<double>{}, VehicleParams{});
  EXPECT_TRUE(tr.actual.empty());
  EXPECT_TRUE(tr.reference.empty());
}

}  // namespace
}  // namespace etlqr
