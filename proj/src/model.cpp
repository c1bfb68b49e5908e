#include "etlqr/model.hpp"

#include <cmath>

namespace etlqr {

namespace {

void require_positive(double value, const char* field) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw InvalidParameter(field, "must be finite and > 0");
  }
}

}  // namespace

void VehicleParams::validate() const {
  require_positive(m, "m");
  require_positive(Iz, "Iz");
  require_positive(Vx, "Vx");
  require_positive(Cf, "Cf");
  require_positive(Cr, "Cr");
  require_positive(lf, "lf");
  require_positive(lr, "lr");
  if (!std::isfinite(mu) || mu <= 0.0 || mu > 1.0) {
    throw InvalidParameter("mu", "must lie in (0, 1]");
  }
  if (!std::isfinite(rho)) {
    throw InvalidParameter("rho", "must be finite");
  }
}

PlantMatrices build_plant(const VehicleParams& p, const std::optional<Mat4>& G) {
  p.validate();

  const double cs = p.Cf + p.Cr;                                 // total cornering stiffness
  const double cm = p.lf * p.Cf - p.lr * p.Cr;                   // stiffness moment
  const double ci = p.lf * p.lf * p.Cf + p.lr * p.lr * p.Cr;     // stiffness inertia

  PlantMatrices plant;
  auto& A = plant.A;
  A(0, 0) = -p.mu * cs / (p.m * p.Vx);
  A(0, 1) = -1.0 - p.mu * cm / (p.m * p.Vx * p.Vx);
  A(1, 0) = -p.mu * cm / p.Iz;
  A(1, 1) = -p.mu * ci / (p.Iz * p.Vx);
  A(2, 0) = -p.mu * cs / p.m;
  A(2, 1) = -p.mu * cm / (p.m * p.Vx);
  A(3, 2) = 1.0;

  plant.B << p.mu * p.Cf / (p.m * p.Vx), p.mu * p.lf * p.Cf / p.Iz, p.mu * p.Cf / p.m, 0.0;

  if (G) {
    if (!G->allFinite()) {
      throw InvalidParameter("G", "entries must be finite");
    }
    plant.G = *G;
  }
  return plant;
}

Equilibrium equilibrium(const VehicleParams& p) {
  p.validate();
  const double L = p.lf + p.lr;
  const double v2 = p.Vx * p.Vx;

  Equilibrium eq;
  eq.beta_star = (p.lr - p.lf * p.m * v2 / (p.mu * p.Cr * L)) * p.rho;
  eq.psidot_star = p.Vx * p.rho;
  eq.delta_star = L * p.rho + p.m * v2 * (p.lr * p.Cr - p.lf * p.Cf) * p.rho / (p.mu * p.Cf * p.Cr * L);
  return eq;
}

Trajectory reconstruct_trajectory(std::span<const double> times, std::span<const double> lateral_error,
                                  const VehicleParams& p, const PathPose& start) {
  if (times.size() != lateral_error.size()) {
    throw std::invalid_argument("reconstruct_trajectory: times and lateral_error differ in length");
  }
  Trajectory out;
  out.actual.reserve(times.size());
  out.reference.reserve(times.size());

  const double c0 = std::cos(start.heading);
  const double s0 = std::sin(start.heading);

  for (std::size_t i = 0; i < times.size(); ++i) {
    const double s = p.Vx * times[i];
    const double heading = start.heading + p.rho * s;
    const double ch = std::cos(heading);
    const double sh = std::sin(heading);

    Point2 ref;
    if (p.rho == 0.0) {
      ref = {start.x + s * c0, start.y + s * s0};
    } else {
      ref = {start.x + (sh - s0) / p.rho, start.y - (ch - c0) / p.rho};
    }
    out.reference.push_back(ref);
    // left normal (-sin, cos)
    out.actual.push_back({ref.x - lateral_error[i] * sh, ref.y + lateral_error[i] * ch});
  }
  return out;
}

}  // namespace etlqr
