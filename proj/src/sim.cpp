#include "etlqr/sim.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace etlqr {

Disturbance Disturbance::seeded(const Vec4& xi_bar, double decay_rate, const Vec4& frequencies, std::uint64_t seed) {
  Disturbance d;
  d.xi_bar = xi_bar;
  d.decay_rate = decay_rate;
  d.frequencies = frequencies;
  d.seed = seed;
  // std::mt19937_64 output is fully specified by the standard; the
  // distribution adaptors are not, so map to [0, 1) by hand.
  std::mt19937_64 rng(seed);
  for (int i = 0; i < 4; ++i) {
    const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    d.phases(i) = 2.0 * std::numbers::pi * unit;
  }
  return d;
}

void Disturbance::validate() const {
  if (!xi_bar.allFinite() || (xi_bar.array() < 0.0).any()) {
    throw InvalidParameter("xi_bar", "components must be finite and >= 0");
  }
  if (!std::isfinite(decay_rate) || decay_rate <= 0.0) {
    throw InvalidParameter("decay_rate", "must be finite and > 0");
  }
  if (!frequencies.allFinite()) {
    throw InvalidParameter("frequencies", "must be finite");
  }
  if (!phases.allFinite()) {
    throw InvalidParameter("phases", "must be finite");
  }
}

Vec4 disturbance_at(const Disturbance& d, double t) {
  const double envelope = std::exp(-d.decay_rate * t);
  Vec4 xi;
  for (int i = 0; i < 4; ++i) {
    xi(i) = d.xi_bar(i) * envelope * std::sin(d.frequencies(i) * t + d.phases(i));
  }
  return xi;
}

void SimConfig::validate() const {
  if (!std::isfinite(t_end) || t_end <= 0.0) {
    throw InvalidParameter("t_end", "must be finite and > 0");
  }
  if (!std::isfinite(dt) || dt <= 0.0 || dt > t_end) {
    throw InvalidParameter("dt", "must satisfy 0 < dt <= t_end");
  }
  if (!initial_state.allFinite()) {
    throw InvalidParameter("x0", "must be finite");
  }
  if (const auto* tt = std::get_if<TimeTriggered>(&strategy)) {
    if (!std::isfinite(tt->period) || tt->period <= 0.0) {
      throw InvalidParameter("period", "must be finite and > 0");
    }
  } else {
    std::get<EventTriggered>(strategy).design.validate();
  }
  if (disturbance) {
    disturbance->validate();
  }
}

std::size_t SimConfig::steps() const { return static_cast<std::size_t>(std::floor(t_end / dt + 1e-9)); }

std::vector<double> SimLog::inter_event_times() const {
  std::vector<double> iets;
  iets.reserve(triggers.size());
  double previous = times.empty() ? 0.0 : times.front();
  for (double t : triggers) {
    iets.push_back(t - previous);
    previous = t;
  }
  return iets;
}

Vec4 rhs(const Vec4& x_tilde, double delta_tilde, const Vec4& xi, const PlantMatrices& plant) {
  return plant.A * x_tilde + plant.B * delta_tilde + plant.G * xi;
}

Vec4 integrate_step(const Vec4& x_tilde, double delta_tilde_held, double t, double dt,
                    const std::optional<Disturbance>& d, const PlantMatrices& plant) {
  const auto f = [&](double time, const Vec4& x) {
    const Vec4 xi = d ? disturbance_at(*d, time) : Vec4::Zero();
    return rhs(x, delta_tilde_held, xi, plant);
  };
  const double h = 0.5 * dt;
  const Vec4 k1 = f(t, x_tilde);
  const Vec4 k2 = f(t + h, x_tilde + h * k1);
  const Vec4 k3 = f(t + h, x_tilde + h * k2);
  const Vec4 k4 = f(t + dt, x_tilde + dt * k3);
  return x_tilde + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

SimLog run(const SimConfig& cfg, const PlantMatrices& plant, const SynthesisResult& syn) {
  cfg.validate();
  const std::size_t n = cfg.steps();

  SimLog log;
  log.times.reserve(n + 1);
  log.states.reserve(n + 1);
  log.inputs.reserve(n + 1);
  log.clock.reserve(n + 1);
  log.triggered.reserve(n + 1);
  log.disturbances.reserve(n + 1);

  Vec4 x = cfg.initial_state;
  const double z0 = std::visit(
      [](const auto& s) {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, TimeTriggered>) {
          return s.period;
        } else {
          return s.design.z_bar;
        }
      },
      cfg.strategy);
  EtmState state = EtmState::initial(x, z0);

  for (std::size_t i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) * cfg.dt;
    bool fired = false;
    if (i > 0) {
      ClockStep step = std::visit(
          [&](const auto& s) {
            if constexpr (std::is_same_v<std::decay_t<decltype(s)>, TimeTriggered>) {
              return step_periodic(state, x, t, s.period);
            } else {
              return step_clock(state, x, t, cfg.dt, syn, s.design);
            }
          },
          cfg.strategy);
      state = step.state;
      fired = step.triggered;
      if (fired) {
        log.triggers.push_back(t);
      }
    }

    const double u = control_input(cfg.strategy, state, x, syn.K);
    log.times.push_back(t);
    log.states.push_back(x);
    log.inputs.push_back(u);
    log.clock.push_back(state.z);
    log.triggered.push_back(fired);
    log.disturbances.push_back(cfg.disturbance ? disturbance_at(*cfg.disturbance, t) : Vec4::Zero());

    if (i == n) {
      break;
    }
    x = integrate_step(x, u, t, cfg.dt, cfg.disturbance, plant);
    if (!x.allFinite() || x.norm() > cfg.divergence_limit) {
      std::ostringstream msg;
      msg << "closed loop diverged at t = " << t + cfg.dt << " s (|x| = " << x.norm() << ")";
      throw DivergenceError(msg.str());
    }
  }
  return log;
}

Trajectory reconstruct_trajectory(const SimLog& log, const VehicleParams& p, const PathPose& start) {
  std::vector<double> e;
  e.reserve(log.states.size());
  for (const auto& x : log.states) {
    e.push_back(x(3));
  }
  return reconstruct_trajectory(log.times, e, p, start);
}

}  // namespace etlqr
