#pragma once

#include <string>
#include <variant>

#include "etlqr/model.hpp"
#include "etlqr/synthesis.hpp"

namespace etlqr {

/// Periodic sampling baseline.
struct TimeTriggered {
  double period = 0.01;  // [s]
};

/// Clock-variable event trigger.
struct EventTriggered {
  EtmDesign design;
};

using Strategy = std::variant<TimeTriggered, EventTriggered>;

std::string strategy_name(const Strategy& s);

/// Per-run trigger state. `eta` is always `held_state` minus the most recently
/// observed plant state, so that state is recoverable as `held_state - eta`.
struct EtmState {
  double z = 0.0;
  Vec4 eta = Vec4::Zero();
  double last_trigger_time = 0.0;
  Vec4 held_state = Vec4::Zero();

  /// State at the initial instant t0: the hold is loaded with x0 and the clock is full.
  static EtmState initial(const Vec4& x0, double z_bar, double t0 = 0.0) { return {z_bar, Vec4::Zero(), t0, x0}; }
};

/// Drain-rate shaping term
///   varpi = (theta_l lmin(N) / lmin(M)) r^2 - 2 (1 + z) (theta_r |MBK| / lmin(M)) r,
/// with r = |x| / |eta|. Requires eta != 0.
double varpi(const Vec4& x_tilde, const Vec4& eta, double z, const SynthesisResult& syn, const EtmDesign& d);

/// omega = min(0, varpi) - epsilon for eta != 0, and -epsilon for eta == 0.
double omega(const Vec4& x_tilde, const Vec4& eta, double z, const SynthesisResult& syn, const EtmDesign& d);

struct ClockStep {
  EtmState state;
  bool triggered = false;
};

/// Advances the clock over one sampling interval of length dt ending at `now`.
///
/// The drain rate is evaluated at the left end of the interval (the previous
/// sample, with the hold as it was then) and integrated by explicit Euler with
/// z clamped at zero. Afterwards eta is refreshed against `x_tilde_now`; if the
/// clock hit zero the event fires at `now`: z <- z_bar, hold <- x_tilde_now, eta <- 0.
ClockStep step_clock(const EtmState& s, const Vec4& x_tilde_now, double now, double dt, const SynthesisResult& syn,
                     const EtmDesign& d);

/// Periodic counterpart of step_clock: fires once `period` has elapsed since the last update.
/// `z` holds the time remaining until the next sample.
ClockStep step_periodic(const EtmState& s, const Vec4& x_tilde_now, double now, double period);

/// Zero-order-hold steering correction -K x(t_k).
double control_input(const Strategy& strategy, const EtmState& s, const Vec4& x_tilde_now, const RowVec4& K);

}  // namespace etlqr
