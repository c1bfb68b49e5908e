#include "etlqr/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace etlqr {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"vehicle", {"m", "mu", "Vx", "Iz", "Cf", "Cr", "lf", "lr", "rho"}},
      {"lqr", {"Q", "R"}},
      {"etm", {"z_bar", "epsilon", "theta_l", "theta_r", "N"}},
      {"sim", {"t_end", "dt", "period", "x0", "start_x", "start_y", "start_heading"}},
      {"disturbance", {"enabled", "xi_bar", "decay_rate", "frequencies", "seed", "G"}},
  };
  return keys;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double parse_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ConfigParseError(key + ": expected a number, got '" + t + "'");
  }
  return value;
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    const auto comma = text.find(',', begin);
    const auto end = comma == std::string::npos ? text.size() : comma;
    out.push_back(parse_double(key, text.substr(begin, end - begin)));
    if (comma == std::string::npos) {
      break;
    }
    begin = comma + 1;
  }
  return out;
}

Vec4 parse_vec4(const std::string& key, const std::string& text) {
  const auto values = parse_list(key, text);
  if (values.size() != 4) {
    throw ConfigParseError(key + ": expected 4 comma-separated values");
  }
  return Vec4(values[0], values[1], values[2], values[3]);
}

Mat4 parse_mat4(const std::string& key, const std::string& text) {
  const auto values = parse_list(key, text);
  if (values.size() == 4) {
    return Vec4(values[0], values[1], values[2], values[3]).asDiagonal();
  }
  if (values.size() == 16) {
    Mat4 out;
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) {
        out(r, c) = values[static_cast<std::size_t>(4 * r + c)];
      }
    }
    return out;
  }
  throw ConfigParseError(key + ": expected 4 (diagonal) or 16 (row-major) values");
}

bool parse_bool(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes" || t == "on") {
    return true;
  }
  if (t == "false" || t == "0" || t == "no" || t == "off") {
    return false;
  }
  throw ConfigParseError(key + ": expected a boolean, got '" + t + "'");
}

std::uint64_t parse_seed(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ConfigParseError(key + ": expected a non-negative integer, got '" + t + "'");
  }
  return value;
}

// Applies `fn` to the value of section.key when present.
template <typename Fn>
void with(const pt::ptree& tree, const std::string& section, const std::string& key, Fn&& fn) {
  if (const auto child = tree.get_child_optional(pt::ptree::path_type(section + "." + key, '.'))) {
    fn(section + "." + key, child->data());
  }
}

}  // namespace

void Scenario::validate() const {
  vehicle.validate();
  weights.validate();
  design.validate();
  if (!N.allFinite() || (N - N.transpose()).norm() > 1e-12 * (1.0 + N.norm()) || min_eigenvalue_symmetric(N) <= 0.0) {
    throw InvalidParameter("N", "must be symmetric positive definite");
  }
  if (!G.allFinite()) {
    throw InvalidParameter("G", "entries must be finite");
  }
  if (!std::isfinite(period) || period <= 0.0) {
    throw InvalidParameter("period", "must be finite and > 0");
  }
  if (!std::isfinite(start.x) || !std::isfinite(start.y) || !std::isfinite(start.heading)) {
    throw InvalidParameter("start_x", "start pose must be finite");
  }
  sim_config(EventTriggered{design}).validate();
}

SimConfig Scenario::sim_config(const Strategy& strategy) const {
  SimConfig cfg;
  cfg.t_end = t_end;
  cfg.dt = dt;
  cfg.initial_state = x0;
  cfg.strategy = strategy;
  cfg.disturbance = disturbance;
  return cfg;
}

void Scenario::reseed(std::uint64_t seed) {
  if (disturbance) {
    disturbance = Disturbance::seeded(disturbance->xi_bar, disturbance->decay_rate, disturbance->frequencies, seed);
  }
}

Scenario parse_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigParseError("line " + std::to_string(e.line()) + ": " + e.message(), e.line());
  }

  for (const auto& [section, body] : tree) {
    const auto known = known_keys().find(section);
    if (known == known_keys().end() || body.data().size() > 0) {
      throw ConfigParseError("unknown section or top-level key '" + section + "'");
    }
    for (const auto& [key, value] : body) {
      if (!known->second.contains(key)) {
        throw ConfigParseError("unknown key '" + section + "." + key + "'");
      }
    }
  }

  Scenario s;
  const auto num = [&](const std::string& sec, const std::string& key, double& target) {
    with(tree, sec, key, [&](const std::string& k, const std::string& v) { target = parse_double(k, v); });
  };

  num("vehicle", "m", s.vehicle.m);
  num("vehicle", "mu", s.vehicle.mu);
  num("vehicle", "Vx", s.vehicle.Vx);
  num("vehicle", "Iz", s.vehicle.Iz);
  num("vehicle", "Cf", s.vehicle.Cf);
  num("vehicle", "Cr", s.vehicle.Cr);
  num("vehicle", "lf", s.vehicle.lf);
  num("vehicle", "lr", s.vehicle.lr);
  num("vehicle", "rho", s.vehicle.rho);

  with(tree, "lqr", "Q", [&](const auto& k, const auto& v) { s.weights.Q = parse_mat4(k, v); });
  num("lqr", "R", s.weights.R);

  num("etm", "z_bar", s.design.z_bar);
  num("etm", "epsilon", s.design.epsilon);
  num("etm", "theta_l", s.design.theta_l);
  num("etm", "theta_r", s.design.theta_r);
  with(tree, "etm", "N", [&](const auto& k, const auto& v) { s.N = parse_mat4(k, v); });

  num("sim", "t_end", s.t_end);
  num("sim", "dt", s.dt);
  bool period_given = false;
  with(tree, "sim", "period", [&](const auto& k, const auto& v) {
    s.period = parse_double(k, v);
    period_given = true;
  });
  if (!period_given) {
    s.period = s.dt;
  }
  with(tree, "sim", "x0", [&](const auto& k, const auto& v) { s.x0 = parse_vec4(k, v); });
  num("sim", "start_x", s.start.x);
  num("sim", "start_y", s.start.y);
  num("sim", "start_heading", s.start.heading);

  bool enabled = true;
  Disturbance d = *s.disturbance;
  with(tree, "disturbance", "enabled", [&](const auto& k, const auto& v) { enabled = parse_bool(k, v); });
  with(tree, "disturbance", "xi_bar", [&](const auto& k, const auto& v) { d.xi_bar = parse_vec4(k, v); });
  num("disturbance", "decay_rate", d.decay_rate);
  with(tree, "disturbance", "frequencies", [&](const auto& k, const auto& v) { d.frequencies = parse_vec4(k, v); });
  with(tree, "disturbance", "seed", [&](const auto& k, const auto& v) { d.seed = parse_seed(k, v); });
  with(tree, "disturbance", "G", [&](const auto& k, const auto& v) { s.G = parse_mat4(k, v); });
  s.disturbance = enabled ? std::optional(Disturbance::seeded(d.xi_bar, d.decay_rate, d.frequencies, d.seed))
                          : std::nullopt;

  s.validate();
  return s;
}

Scenario load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigParseError("cannot open config file '" + path.string() + "'");
  }
  return parse_config(in);
}

}  // namespace etlqr
