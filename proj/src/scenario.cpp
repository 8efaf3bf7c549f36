#include "formation/scenario.hpp"

#include "formation/lie_so3.hpp"

#include <Eigen/Geometry>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

namespace formation {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string with_location(const std::string& message, const std::string& key, int line) {
  std::ostringstream os;
  if (line > 0) os << "line " << line << ": ";
  if (!key.empty()) os << "key '" << key << "': ";
  os << message;
  return os.str();
}

int line_of_offset(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(offset), '\n'));
}

class Reader {
 public:
  Reader(const std::string& text, const json& doc) : text_(text), doc_(doc) {}

  [[noreturn]] void fail(const std::string& key, const std::string& message) const {
    // Best-effort line: first occurrence of the quoted key in the source.
    const std::string root = key.substr(0, key.find('['));
    const std::size_t pos = text_.find("\"" + root + "\"");
    const int line = pos == std::string::npos ? 0 : line_of_offset(text_, pos);
    throw ScenarioError(message, key, line);
  }

  bool has(const std::string& key) const { return doc_.contains(key); }
  const json& at(const std::string& key) const {
    if (!doc_.contains(key)) fail(key, "missing required key");
    return doc_.at(key);
  }

  double number(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    const json& v = doc_.at(key);
    if (!v.is_number()) fail(key, "expected a number");
    return v.get<double>();
  }

  long integer(const std::string& key, long fallback) const {
    if (!has(key)) return fallback;
    const json& v = doc_.at(key);
    if (v.is_number_integer()) return v.get<long>();
    if (v.is_number_float() && std::floor(v.get<double>()) == v.get<double>()) {
      return static_cast<long>(v.get<double>());
    }
    fail(key, "expected an integer");
  }

  Vec3 vec3(const json& v, const std::string& key) const {
    if (!v.is_array() || v.size() != 3) fail(key, "expected an array of 3 numbers");
    Vec3 out;
    for (int c = 0; c < 3; ++c) {
      if (!v[static_cast<std::size_t>(c)].is_number()) fail(key, "expected an array of 3 numbers");
      out[c] = v[static_cast<std::size_t>(c)].get<double>();
    }
    if (!out.allFinite()) fail(key, "non-finite value");
    return out;
  }

  std::vector<Vec3> vec3_list(const std::string& key) const {
    const json& v = at(key);
    if (!v.is_array()) fail(key, "expected an array of 3-vectors");
    std::vector<Vec3> out;
    for (std::size_t k = 0; k < v.size(); ++k) {
      out.push_back(vec3(v[k], key + "[" + std::to_string(k + 1) + "]"));
    }
    return out;
  }

 private:
  const std::string& text_;
  const json& doc_;
};

json vec_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

json vec_list_json(const std::vector<Vec3>& list) {
  json out = json::array();
  for (const auto& v : list) out.push_back(vec_json(v));
  return out;
}

// Leaves already-normalized vectors bit-identical so that serialization
// round-trips exactly.
Vec3 normalize_bearing(const Vec3& b) {
  const double n = b.norm();
  return std::abs(n - 1.0) > 1e-14 ? Vec3(b / n) : b;
}

}  // namespace

ScenarioError::ScenarioError(std::string message, std::string key, int line)
    : FormationError(with_location(message, key, line)), key_(std::move(key)), line_(line) {}

std::vector<Vec3> random_attitudes(std::size_t count, std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 2u};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal;
  std::vector<Vec3> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    Eigen::Quaterniond q(normal(rng), normal(rng), normal(rng), normal(rng));
    q.normalize();
    out.push_back(log_so3_vec(project_to_so3(q.toRotationMatrix())));
  }
  return out;
}

std::vector<Vec3> random_positions(std::size_t count, std::uint64_t seed, const BoundingBox& box) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 1u};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Vec3> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    Vec3 p;
    for (int c = 0; c < 3; ++c) p[c] = box.min[c] + unit(rng) * (box.max[c] - box.min[c]);
    out.push_back(p);
  }
  return out;
}

Scenario parse_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ScenarioError(std::string("JSON syntax error: ") + e.what(), {},
                        line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1));
  }
  if (!doc.is_object()) throw ScenarioError("scenario must be a JSON object", {}, 1);

  const Reader r(text, doc);
  Scenario s;

  static const std::vector<std::string> known = {
      "description", "agents", "edges", "desired_bearings", "target_positions",
      "initial_positions", "initial_attitudes", "bounding_box", "eps", "w_lin", "w_ang",
      "k_pos", "tol_potential", "max_steps", "integrator", "seed"};
  for (const auto& item : doc.items()) {
    if (std::find(known.begin(), known.end(), item.key()) == known.end()) {
      s.warnings.push_back("ignoring unknown key '" + item.key() + "'");
    }
  }

  if (r.has("description")) {
    if (!doc["description"].is_string()) r.fail("description", "expected a string");
    s.description = doc["description"].get<std::string>();
  }

  s.agents = static_cast<int>(r.integer("agents", 0));
  if (!r.has("agents")) r.fail("agents", "missing required key");
  if (s.agents < 1) r.fail("agents", "agent count must be positive");

  const json& edges = r.at("edges");
  if (!edges.is_array()) r.fail("edges", "expected an array of [i, j] pairs");
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const std::string key = "edges[" + std::to_string(k + 1) + "]";
    const json& e = edges[k];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
      r.fail(key, "expected a pair of integer agent indices");
    }
    const long i = e[0].get<long>();
    const long j = e[1].get<long>();
    if (i < 1 || i > s.agents || j < 1 || j > s.agents) {
      r.fail(key, "agent index out of range 1.." + std::to_string(s.agents));
    }
    if (i == j) r.fail(key, "self-loop");
    s.edges.push_back({static_cast<int>(i - 1), static_cast<int>(j - 1)});
  }

  const std::vector<Vec3> raw_bearings = r.vec3_list("desired_bearings");
  if (raw_bearings.size() != s.edges.size()) {
    r.fail("desired_bearings", "has " + std::to_string(raw_bearings.size()) +
                                   " entries but edges has " + std::to_string(s.edges.size()));
  }
  for (std::size_t k = 0; k < raw_bearings.size(); ++k) {
    const double n = raw_bearings[k].norm();
    if (!(n > 1e-12)) r.fail("desired_bearings[" + std::to_string(k + 1) + "]", "zero vector");
    if (std::abs(n - 1.0) > 1e-6) {
      std::ostringstream os;
      os << "desired_bearings[" << k + 1 << "] has norm " << n << "; normalized";
      s.warnings.push_back(os.str());
    }
    s.desired_bearings.push_back(normalize_bearing(raw_bearings[k]));
  }

  if (r.has("target_positions")) {
    s.target_positions = r.vec3_list("target_positions");
    if (static_cast<int>(s.target_positions.size()) != s.agents) {
      r.fail("target_positions", "has " + std::to_string(s.target_positions.size()) +
                                     " entries but agents is " + std::to_string(s.agents));
    }
  }

  const long seed = r.integer("seed", 0);
  if (seed < 0) r.fail("seed", "must be non-negative");
  s.seed = static_cast<std::uint64_t>(seed);

  const auto is_random = [&](const std::string& key) {
    return r.has(key) && doc[key].is_string() && doc[key].get<std::string>() == "random";
  };

  if (is_random("initial_positions")) {
    BoundingBox box;
    if (r.has("bounding_box")) {
      const json& b = doc["bounding_box"];
      if (!b.is_object() || !b.contains("min") || !b.contains("max")) {
        r.fail("bounding_box", "expected {\"min\": [..], \"max\": [..]}");
      }
      box.min = r.vec3(b["min"], "bounding_box.min");
      box.max = r.vec3(b["max"], "bounding_box.max");
      if ((box.max - box.min).minCoeff() < 0.0) r.fail("bounding_box", "min exceeds max");
    }
    s.initial_positions = random_positions(static_cast<std::size_t>(s.agents), s.seed, box);
  } else {
    s.initial_positions = r.vec3_list("initial_positions");
  }
  if (static_cast<int>(s.initial_positions.size()) != s.agents) {
    r.fail("initial_positions", "has " + std::to_string(s.initial_positions.size()) +
                                    " entries but agents is " + std::to_string(s.agents));
  }

  if (is_random("initial_attitudes")) {
    s.initial_attitudes = random_attitudes(static_cast<std::size_t>(s.agents), s.seed);
  } else if (r.has("initial_attitudes")) {
    s.initial_attitudes = r.vec3_list("initial_attitudes");
  } else {
    s.initial_attitudes.assign(static_cast<std::size_t>(s.agents), Vec3::Zero());
  }
  if (static_cast<int>(s.initial_attitudes.size()) != s.agents) {
    r.fail("initial_attitudes", "has " + std::to_string(s.initial_attitudes.size()) +
                                    " entries but agents is " + std::to_string(s.agents));
  }

  s.eps = r.number("eps", s.eps);
  s.w_lin = r.number("w_lin", s.w_lin);
  s.w_ang = r.number("w_ang", s.w_ang);
  s.k_pos = r.number("k_pos", s.k_pos);
  s.tol_potential = r.number("tol_potential", s.tol_potential);
  s.max_steps = r.integer("max_steps", s.max_steps);
  if (r.has("integrator")) {
    if (!doc["integrator"].is_string()) r.fail("integrator", "expected a string");
    try {
      s.integrator = parse_integrator(doc["integrator"].get<std::string>());
    } catch (const InvalidConfigError& e) {
      r.fail("integrator", e.what());
    }
  }

  for (const char* key : {"eps", "w_lin", "w_ang", "k_pos", "tol_potential"}) {
    if (!(r.number(key, 1.0) > 0.0)) r.fail(key, "must be positive");
  }
  if (s.max_steps < 1) r.fail("max_steps", "must be at least 1");
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string serialize_scenario(const Scenario& s) {
  ordered_json doc;
  if (!s.description.empty()) doc["description"] = s.description;
  doc["agents"] = s.agents;
  json edges = json::array();
  for (const auto& e : s.edges) edges.push_back(json::array({e.i + 1, e.j + 1}));
  doc["edges"] = edges;
  doc["desired_bearings"] = vec_list_json(s.desired_bearings);
  if (!s.target_positions.empty()) doc["target_positions"] = vec_list_json(s.target_positions);
  doc["initial_positions"] = vec_list_json(s.initial_positions);
  doc["initial_attitudes"] = vec_list_json(s.initial_attitudes);
  doc["eps"] = s.eps;
  doc["w_lin"] = s.w_lin;
  doc["w_ang"] = s.w_ang;
  doc["k_pos"] = s.k_pos;
  doc["tol_potential"] = s.tol_potential;
  doc["max_steps"] = s.max_steps;
  doc["integrator"] = to_string(s.integrator);
  doc["seed"] = s.seed;
  return doc.dump(2) + "\n";
}

SimConfig Scenario::to_config() const {
  SimConfig cfg;
  try {
    cfg.graph = FormationGraph(agents, edges, desired_bearings);
  } catch (const InvalidGraphError& e) {
    throw ScenarioError(e.what(), "edges");
  }
  cfg.initial.agents.resize(static_cast<std::size_t>(agents));
  for (std::size_t i = 0; i < cfg.initial.agents.size(); ++i) {
    cfg.initial.agents[i].p = initial_positions[i];
    cfg.initial.agents[i].R = exp_so3(initial_attitudes[i]);
  }
  cfg.eps = eps;
  cfg.w_lin = w_lin;
  cfg.w_ang = w_ang;
  cfg.k_pos = k_pos;
  cfg.tol_potential = tol_potential;
  cfg.max_steps = max_steps;
  cfg.integrator = integrator;
  cfg.seed = seed;
  return cfg;
}

}  // namespace formation
