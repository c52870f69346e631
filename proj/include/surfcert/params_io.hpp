#pragma once

#include <complex>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "surfcert/model.hpp"

namespace surfcert::model {

struct ParamsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline Complex parse_complex(const std::string& v, const std::string& key) {
  const auto comma = v.find(',');
  if (comma == std::string::npos)
    throw ParamsError("key '" + key + "': complex values are written as \"re,im\"");
  try {
    std::size_t used = 0;
    const std::string re_s = trim(v.substr(0, comma)), im_s = trim(v.substr(comma + 1));
    const double re = std::stod(re_s, &used);
    if (used != re_s.size()) throw std::invalid_argument(re_s);
    const double im = std::stod(im_s, &used);
    if (used != im_s.size()) throw std::invalid_argument(im_s);
    return {re, im};
  } catch (const std::exception&) {
    throw ParamsError("key '" + key + "': cannot parse complex value '" + v + "'");
  }
}

inline double parse_real(const std::string& v, const std::string& key) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ParamsError("key '" + key + "': cannot parse real value '" + v + "'");
  }
}

}  // namespace detail

// Flat key = value parameter file. Complex values as "re,im". Keys:
//   node1..node11, pole1..pole3, lambda, eps, fiber_radius, rho_profile
// Omitted scalars resolve automatically; omitted points default to the
// standard layout. '#' starts a comment.
inline ModelParams parse_params_text(std::istream& in) {
  ModelParams p = default_points();
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParamsError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string val = detail::trim(line.substr(eq + 1));
    if (key.rfind("node", 0) == 0) {
      int idx = 0;
      try {
        idx = std::stoi(key.substr(4));
      } catch (const std::exception&) {
        throw ParamsError("unknown key '" + key + "'");
      }
      if (idx < 1 || idx > 11) throw ParamsError("node index out of range in '" + key + "'");
      p.nodes[static_cast<std::size_t>(idx - 1)] = detail::parse_complex(val, key);
    } else if (key.rfind("pole", 0) == 0) {
      int idx = 0;
      try {
        idx = std::stoi(key.substr(4));
      } catch (const std::exception&) {
        throw ParamsError("unknown key '" + key + "'");
      }
      if (idx < 1 || idx > 3) throw ParamsError("pole index out of range in '" + key + "'");
      p.pole_nodes[static_cast<std::size_t>(idx - 1)] = detail::parse_complex(val, key);
    } else if (key == "lambda") {
      p.lambda = detail::parse_real(val, key);
    } else if (key == "eps") {
      p.eps = detail::parse_real(val, key);
    } else if (key == "fiber_radius") {
      p.fiber_radius = detail::parse_real(val, key);
    } else if (key == "rho_profile") {
      p.rho_profile = val;
    } else {
      throw ParamsError("unknown key '" + key + "'");
    }
  }
  try {
    p.validate_points();
  } catch (const std::exception& e) {
    throw ParamsError(std::string("invalid parameters: ") + e.what());
  }
  return p;
}

inline ModelParams parse_params_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParamsError("cannot open params file '" + path + "'");
  return parse_params_text(in);
}

}  // namespace surfcert::model
