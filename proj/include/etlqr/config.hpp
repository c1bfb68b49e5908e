#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "etlqr/model.hpp"
#include "etlqr/sim.hpp"
#include "etlqr/synthesis.hpp"

namespace etlqr {

/// Malformed configuration text. `line()` is 0 when the problem is tied to a key
/// rather than a physical line.
class ConfigParseError : public std::runtime_error {
 public:
  ConfigParseError(const std::string& what, unsigned long line = 0)
      : std::runtime_error(what), line_(line) {}
  unsigned long line() const noexcept { return line_; }

 private:
  unsigned long line_;
};

/// Everything needed to reproduce one comparison. Defaults are the reference
/// scenario: 15 s at 0.01 s, Q = diag(30, 10, 1, 1), R = 1000, N = G = I,
/// z_bar = epsilon = 1, theta_l = 8, theta_r = 0.1.
struct Scenario {
  VehicleParams vehicle;
  LqrWeights weights;
  Mat4 N = Mat4::Identity();
  Mat4 G = Mat4::Identity();
  EtmDesign design;
  double t_end = 15.0;
  double dt = 0.01;
  double period = 0.01;  // time-triggered baseline
  Vec4 x0 = Vec4::Zero();
  std::optional<Disturbance> disturbance = Disturbance::seeded(Vec4(3e-4, 1e-3, 0.0, 0.0), 0.3,
                                                               Vec4(1.0, 2.0, 0.0, 0.0), 0);
  PathPose start;

  /// Throws InvalidParameter naming the first violated field.
  void validate() const;

  PlantMatrices plant() const { return build_plant(vehicle, G); }
  SimConfig sim_config(const Strategy& strategy) const;
  /// Re-draws disturbance phases from a new seed, keeping amplitude and frequencies.
  void reseed(std::uint64_t seed);
};

/// INI-style text with sections [vehicle], [lqr], [etm], [sim], [disturbance].
/// Vector values are comma-separated; Q, N and G accept 4 values (diagonal)
/// or 16 (row-major). Missing keys keep their defaults.
Scenario parse_config(std::istream& in);
Scenario load_config(const std::filesystem::path& path);

}  // namespace etlqr
