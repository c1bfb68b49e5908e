#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace etlqr {

using Vec4 = Eigen::Matrix<double, 4, 1>;
using RowVec4 = Eigen::Matrix<double, 1, 4>;
using Mat4 = Eigen::Matrix<double, 4, 4>;

/// Raised when a physical or design parameter violates its admissible range.
/// `field()` names the offending parameter as it appears in configuration files.
class InvalidParameter : public std::invalid_argument {
 public:
  InvalidParameter(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Linear bicycle-model constants plus road curvature.
struct VehicleParams {
  double m = 1421.0;       // mass [kg]
  double mu = 0.6;         // road friction coefficient [-]
  double Vx = 18.0;        // longitudinal velocity [m/s]
  double Iz = 2570.0;      // yaw moment of inertia [kg m^2]
  double Cf = 170550.0;    // front cornering stiffness [N/rad]
  double Cr = 137844.0;    // rear cornering stiffness [N/rad]
  double lf = 1.191;       // front axle to CG [m]
  double lr = 1.513;       // rear axle to CG [m]
  double rho = 0.001;      // road curvature [1/m]

  /// Throws InvalidParameter naming the first violated field.
  void validate() const;
};

/// Tracking error relative to the steady-state cornering equilibrium.
struct ErrorState {
  double beta_t = 0.0;    // sideslip error [rad]
  double psidot_t = 0.0;  // yaw-rate error [rad/s]
  double edot = 0.0;      // lateral error rate [m/s]
  double e = 0.0;         // lateral error [m]

  Vec4 vector() const { return {beta_t, psidot_t, edot, e}; }
  static ErrorState from(const Vec4& x) { return {x(0), x(1), x(2), x(3)}; }
};

/// x' = A x + B u + G xi
struct PlantMatrices {
  Mat4 A = Mat4::Zero();
  Vec4 B = Vec4::Zero();
  Mat4 G = Mat4::Identity();
};

struct Equilibrium {
  double beta_star = 0.0;    // [rad]
  double psidot_star = 0.0;  // [rad/s]
  double delta_star = 0.0;   // [rad]
};

PlantMatrices build_plant(const VehicleParams& p, const std::optional<Mat4>& G = std::nullopt);

Equilibrium equilibrium(const VehicleParams& p);

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Start pose of the reference path in the global frame.
struct PathPose {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;  // [rad]
};

struct Trajectory {
  std::vector<Point2> actual;
  std::vector<Point2> reference;
};

/// Maps logged lateral errors onto the global frame. The reference path is the
/// constant-curvature arc traversed at Vx; the actual path is displaced from it
/// by e(t) along the left-pointing path normal. Display only.
Trajectory reconstruct_trajectory(std::span<const double> times, std::span<const double> lateral_error,
                                  const VehicleParams& p, const PathPose& start = {});

}  // namespace etlqr
