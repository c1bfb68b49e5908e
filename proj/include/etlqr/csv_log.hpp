#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "etlqr/model.hpp"
#include "etlqr/sim.hpp"

namespace etlqr {

/// Fixed-width scientific notation with 17 significant digits, exact on re-parse.
std::string format_double(double value);

/// Columns: t,beta_t,psidot_t,edot,e,delta_t,Z,triggered,xi1,xi2,xi3,xi4
void write_log_csv(std::ostream& out, const SimLog& log);
SimLog read_log_csv(std::istream& in);

/// Columns: X,Y,X_ref,Y_ref
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

}  // namespace etlqr
