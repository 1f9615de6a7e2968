#include "dwell/potential.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>

#include "dwell/errors.hpp"

namespace dwell {

PotentialSpec::PotentialSpec(double v0, double vl, double vr, double b)
    : v0_(v0), vl_(vl), vr_(vr), b_(b) {
  if (!std::isfinite(v0) || !std::isfinite(vl) || !std::isfinite(vr) ||
      !std::isfinite(b)) {
    throw ValidationError("potential parameters must be finite");
  }
  if (!(b > 0.0 && b < 1.0)) {
    throw ValidationError("barrier width b must lie in (0, 1)");
  }
  if (v0 < std::max(vl, vr)) {
    throw ValidationError("barrier height v0 must not be below either well floor");
  }
}

double evaluate(const PotentialSpec& spec, double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("position outside the box [0, 1]");
  }
  if (x < spec.w()) return spec.vl();
  if (x <= spec.right_edge()) return spec.v0();
  return spec.vr();
}

PotentialSpec make_symmetric(double v0, double b) {
  if (!(v0 > 0.0)) throw ValidationError("barrier height v0 must be positive");
  return PotentialSpec(v0, 0.0, 0.0, b);
}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double parse_number(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ValidationError("config: value for '" + key + "' is not a number");
  }
  if (used != text.size()) {
    throw ValidationError("config: trailing characters after '" + key + "'");
  }
  return value;
}

}  // namespace

PotentialSpec parse_potential_config(std::istream& in) {
  std::optional<double> v0, b;
  double vl = 0.0;
  double vr = 0.0;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = trim(std::string_view(line).substr(0, line.find('#')));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("config line " + std::to_string(lineno) +
                            ": expected key=value");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key == "v0") {
      v0 = parse_number(key, value);
    } else if (key == "vL") {
      vl = parse_number(key, value);
    } else if (key == "vR") {
      vr = parse_number(key, value);
    } else if (key == "b") {
      b = parse_number(key, value);
    } else {
      throw ValidationError("config line " + std::to_string(lineno) +
                            ": unknown key '" + key + "'");
    }
  }
  if (!v0 || !b) throw ValidationError("config: keys v0 and b are required");
  return PotentialSpec(*v0, vl, vr, *b);
}

PotentialSpec parse_potential_config(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_potential_config(in);
}

}  // namespace dwell
