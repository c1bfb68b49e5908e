#include "etlqr/csv_log.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace etlqr {

namespace {

constexpr const char* kLogHeader = "t,beta_t,psidot_t,edot,e,delta_t,Z,triggered,xi1,xi2,xi3,xi4";
constexpr std::size_t kLogColumns = 12;

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t begin = 0;
  while (true) {
    const auto comma = line.find(',', begin);
    fields.push_back(line.substr(begin, comma == std::string_view::npos ? std::string_view::npos : comma - begin));
    if (comma == std::string_view::npos) {
      return fields;
    }
    begin = comma + 1;
  }
}

double to_double(std::string_view s, std::size_t line_no) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::runtime_error("log csv line " + std::to_string(line_no) + ": bad number '" + std::string(s) + "'");
  }
  return value;
}

}  // namespace

std::string format_double(double value) {
  if (value == 0.0) {
    value = 0.0;  // drop the sign of -0
  }
  std::array<char, 40> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::scientific, 16);
  if (ec != std::errc()) {
    throw std::runtime_error("format_double: conversion failed");
  }
  return {buf.data(), ptr};
}

void write_log_csv(std::ostream& out, const SimLog& log) {
  out << kLogHeader << '\n';
  for (std::size_t i = 0; i < log.times.size(); ++i) {
    const Vec4& x = log.states[i];
    const Vec4& xi = log.disturbances[i];
    out << format_double(log.times[i]);
    for (int k = 0; k < 4; ++k) {
      out << ',' << format_double(x(k));
    }
    out << ',' << format_double(log.inputs[i]) << ',' << format_double(log.clock[i]) << ','
        << (log.triggered[i] ? 1 : 0);
    for (int k = 0; k < 4; ++k) {
      out << ',' << format_double(xi(k));
    }
    out << '\n';
  }
}

SimLog read_log_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kLogHeader) {
    throw std::runtime_error("log csv: missing or unexpected header");
  }
  SimLog log;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    const auto f = split(line);
    if (f.size() != kLogColumns) {
      throw std::runtime_error("log csv line " + std::to_string(line_no) + ": expected 12 fields");
    }
    const double t = to_double(f[0], line_no);
    log.times.push_back(t);
    log.states.emplace_back(to_double(f[1], line_no), to_double(f[2], line_no), to_double(f[3], line_no),
                            to_double(f[4], line_no));
    log.inputs.push_back(to_double(f[5], line_no));
    log.clock.push_back(to_double(f[6], line_no));
    const bool fired = f[7] == "1";
    if (!fired && f[7] != "0") {
      throw std::runtime_error("log csv line " + std::to_string(line_no) + ": triggered flag must be 0 or 1");
    }
    log.triggered.push_back(fired);
    if (fired) {
      log.triggers.push_back(t);
    }
    log.disturbances.emplace_back(to_double(f[8], line_no), to_double(f[9], line_no), to_double(f[10], line_no),
                                  to_double(f[11], line_no));
  }
  return log;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
  out << "X,Y,X_ref,Y_ref\n";
  for (std::size_t i = 0; i < trajectory.actual.size(); ++i) {
    out << format_double(trajectory.actual[i].x) << ',' << format_double(trajectory.actual[i].y) << ','
        << format_double(trajectory.reference[i].x) << ',' << format_double(trajectory.reference[i].y) << '\n';
  }
}

}  // namespace etlqr
