#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "etlqr/etm.hpp"
#include "etlqr/model.hpp"
#include "etlqr/synthesis.hpp"

namespace etlqr {

/// Raised when the closed loop leaves the physically meaningful region.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bounded, decaying disturbance
///   xi_i(t) = xi_bar_i exp(-a t) sin(w_i t + phi_i),
/// with phases drawn from `seed`.
struct Disturbance {
  Vec4 xi_bar = Vec4(3e-4, 1e-3, 0.0, 0.0);
  double decay_rate = 0.3;                  // a [1/s]
  Vec4 frequencies = Vec4(1.0, 2.0, 0.0, 0.0);  // [rad/s]
  std::uint64_t seed = 0;
  Vec4 phases = Vec4::Zero();               // [rad]

  /// Builds a disturbance whose phases are uniform on [0, 2 pi) from a
  /// portable 64-bit Mersenne Twister stream.
  static Disturbance seeded(const Vec4& xi_bar, double decay_rate, const Vec4& frequencies, std::uint64_t seed);

  void validate() const;
};

Vec4 disturbance_at(const Disturbance& d, double t);

struct SimConfig {
  double t_end = 15.0;
  double dt = 0.01;
  Vec4 initial_state = Vec4::Zero();
  Strategy strategy = EventTriggered{};
  std::optional<Disturbance> disturbance = Disturbance::seeded(Vec4(3e-4, 1e-3, 0.0, 0.0), 0.3,
                                                               Vec4(1.0, 2.0, 0.0, 0.0), 0);
  double divergence_limit = 1e6;

  void validate() const;
  /// Number of integration steps; the log holds steps() + 1 samples.
  std::size_t steps() const;
};

struct SimLog {
  std::vector<double> times;
  std::vector<Vec4> states;
  std::vector<double> inputs;        // delta_tilde applied on [t_i, t_i + dt)
  std::vector<double> clock;         // Z(t_i)
  std::vector<bool> triggered;       // event fired at t_i (t0 initialises the hold, not an event)
  std::vector<double> triggers;      // t_k, k >= 1
  std::vector<Vec4> disturbances;    // xi(t_i)

  std::size_t trigger_count() const { return triggers.size(); }
  /// Inter-event times, including the gap from t0 to the first event.
  std::vector<double> inter_event_times() const;
};

Vec4 rhs(const Vec4& x_tilde, double delta_tilde, const Vec4& xi, const PlantMatrices& plant);

/// Classical RK4 over [t, t + dt] with the input held and xi sampled at stage times.
Vec4 integrate_step(const Vec4& x_tilde, double delta_tilde_held, double t, double dt,
                    const std::optional<Disturbance>& d, const PlantMatrices& plant);

SimLog run(const SimConfig& cfg, const PlantMatrices& plant, const SynthesisResult& syn);

Trajectory reconstruct_trajectory(const SimLog& log, const VehicleParams& p, const PathPose& start = {});

}  // namespace etlqr
