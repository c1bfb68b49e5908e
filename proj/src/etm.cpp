#include "etlqr/etm.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <type_traits>

namespace etlqr {

namespace {

// Floating-point slack when deciding the clock has reached zero; keeps
// z_bar / (epsilon dt) steps from overshooting by one sample through rounding.
constexpr double kClockSlack = 1e-12;

}  // namespace

std::string strategy_name(const Strategy& s) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, TimeTriggered>) {
          return "time";
        } else {
          return (v.design.theta_l == 1.0 && v.design.theta_r == 1.0) ? "etm-original" : "etm-improved";
        }
      },
      s);
}

double varpi(const Vec4& x_tilde, const Vec4& eta, double z, const SynthesisResult& syn, const EtmDesign& d) {
  const double eta_norm = eta.norm();
  if (eta_norm == 0.0) {
    throw std::logic_error("varpi: event error must be nonzero");
  }
  const double ratio = x_tilde.norm() / eta_norm;
  const double quadratic = d.theta_l * syn.lambda_min_N / syn.lambda_min_M;
  const double linear = 2.0 * (1.0 + z) * d.theta_r * syn.mbk_norm / syn.lambda_min_M;
  return quadratic * ratio * ratio - linear * ratio;
}

double omega(const Vec4& x_tilde, const Vec4& eta, double z, const SynthesisResult& syn, const EtmDesign& d) {
  if ((eta.array() == 0.0).all()) {
    return -d.epsilon;
  }
  return std::min(0.0, varpi(x_tilde, eta, z, syn, d)) - d.epsilon;
}

ClockStep step_clock(const EtmState& s, const Vec4& x_tilde_now, double now, double dt, const SynthesisResult& syn,
                     const EtmDesign& d) {
  assert(dt > 0.0);
  const Vec4 x_prev = s.held_state - s.eta;
  const double rate = omega(x_prev, s.eta, s.z, syn, d);

  ClockStep out{s, false};
  double z = s.z + rate * dt;
  if (z <= kClockSlack * d.z_bar) {
    z = 0.0;
  }
  out.state.z = z;
  out.state.eta = s.held_state - x_tilde_now;

  if (z == 0.0) {
    out.triggered = true;
    out.state.z = d.z_bar;
    out.state.held_state = x_tilde_now;
    out.state.eta.setZero();
    out.state.last_trigger_time = now;
  }
  return out;
}

ClockStep step_periodic(const EtmState& s, const Vec4& x_tilde_now, double now, double period) {
  ClockStep out{s, false};
  const double elapsed = now - s.last_trigger_time;
  if (elapsed >= period * (1.0 - 1e-9)) {
    out.triggered = true;
    out.state.held_state = x_tilde_now;
    out.state.last_trigger_time = now;
    out.state.eta.setZero();
    out.state.z = period;
  } else {
    out.state.eta = s.held_state - x_tilde_now;
    out.state.z = period - elapsed;
  }
  return out;
}

double control_input(const Strategy& /*strategy*/, const EtmState& s, const Vec4& /*x_tilde_now*/,
                     const RowVec4& K) {
  // Both strategies hold the most recent sample; they differ only in when it is refreshed.
  return -K.dot(s.held_state);
}

}  // namespace etlqr
