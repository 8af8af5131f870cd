#include "helixlab/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace helixlab {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

void dump_value(const nlohmann::json& j, std::string& out) {
  using nlohmann::json;
  switch (j.type()) {
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += json(it.key()).dump();
        out += ':';
        dump_value(it.value(), out);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ',';
        first = false;
        dump_value(v, out);
      }
      out += ']';
      break;
    }
    case json::value_t::number_float:
      out += format_double(j.get<double>());
      break;
    default:
      out += j.dump();
      break;
  }
}

}  // namespace

std::string dump_json(const nlohmann::json& j) {
  std::string out;
  dump_value(j, out);
  out += '\n';
  return out;
}

nlohmann::json wrap_report(const std::string& tool_version,
                           nlohmann::json config_echo, nlohmann::json result) {
  nlohmann::json j;
  j["tool_version"] = tool_version;
  j["config_echo"] = std::move(config_echo);
  j["result"] = std::move(result);
  return j;
}

nlohmann::json theorem_report_json(const TheoremReport& rep) {
  nlohmann::json j;
  j["theorem_id"] = to_string(rep.theorem_id);
  j["samples"] = rep.samples;
  nlohmann::json premises = nlohmann::json::array();
  for (const PremiseCheck& p : rep.premises) {
    premises.push_back({{"name", p.name},
                        {"holds", p.holds},
                        {"residual", p.residual},
                        {"tol", p.tol}});
  }
  j["premises"] = std::move(premises);
  j["conclusion"] = {{"holds", rep.conclusion.holds},
                     {"residual", rep.conclusion.residual},
                     {"tol", rep.conclusion.tol}};
  j["verdict"] = to_string(rep.verdict);
  if (!rep.note.empty()) j["note"] = rep.note;
  return j;
}

nlohmann::json helix_space_json(const HelixSpace& space,
                                const std::vector<HelixAngle>& basis_angles) {
  nlohmann::json j;
  j["dim"] = space.basis.dim();
  nlohmann::json basis = nlohmann::json::array();
  for (int c = 0; c < space.basis.dim(); ++c) {
    nlohmann::json col = nlohmann::json::array();
    for (int r = 0; r < space.basis.ambient_dim(); ++r) {
      col.push_back(space.basis.basis(r, c));
    }
    basis.push_back(std::move(col));
  }
  j["basis"] = std::move(basis);
  j["residual"] = space.residual;
  j["sample_count"] = space.sample_count;
  nlohmann::json angles = nlohmann::json::array();
  for (const HelixAngle& a : basis_angles) {
    angles.push_back({{"mean", a.mean}, {"stddev", a.stddev}});
  }
  j["basis_angles"] = std::move(angles);
  return j;
}

Vec parse_direction_spec(const std::string& spec, int n, bool* warn_drift) {
  if (warn_drift) *warn_drift = false;
  Vec d = Vec::Zero(n);
  if (!spec.empty() && spec[0] == 'e') {
    int axis = 0;
    try {
      axis = std::stoi(spec.substr(1));
    } catch (...) {
      throw BadParameter("direction spec: expected e<k> or (x, y, ...)");
    }
    if (axis < 1 || axis > n) {
      throw BadParameter("direction spec: axis index out of range for dimension " +
                         std::to_string(n));
    }
    d[axis - 1] = 1.0;
    return d;
  }
  std::string body = spec;
  if (!body.empty() && body.front() == '(') {
    if (body.back() != ')') {
      throw BadParameter("direction spec: unbalanced parentheses");
    }
    body = body.substr(1, body.size() - 2);
  }
  std::stringstream ss(body);
  std::string item;
  int k = 0;
  while (std::getline(ss, item, ',')) {
    if (k >= n) throw BadParameter("direction spec: too many components");
    try {
      d[k++] = std::stod(item);
    } catch (...) {
      throw BadParameter("direction spec: bad number '" + item + "'");
    }
  }
  if (k != n) {
    throw BadParameter("direction spec: expected " + std::to_string(n) +
                       " components, got " + std::to_string(k));
  }
  double norm = d.norm();
  if (norm < 1e-12) throw BadParameter("direction spec: zero vector");
  if (warn_drift && std::abs(norm - 1.0) > 1e-6) *warn_drift = true;
  return d / norm;
}

}  // namespace helixlab
