#include "formation/export.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

namespace formation {

const char* const kTrajectoryCsvHeader =
    "step,agent,px,py,pz,R00,R01,R02,R10,R11,R12,R20,R21,R22,vx,vy,vz,wx,wy,wz,potential";

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fixed(double x, int digits = 2) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kMargin = 48.0;

struct Point2 {
  double u;
  double v;
};

Point2 isometric(const Vec3& p) {
  const double c = std::sqrt(3.0) / 2.0;  // cos 30deg
  return {(p.x() - p.y()) * c, (p.x() + p.y()) * 0.5 - p.z()};
}

std::vector<Vec3> fit_to(const std::vector<Vec3>& shape, const std::vector<Vec3>& reference) {
  if (shape.empty() || shape.size() != reference.size()) return shape;
  const auto centroid = [](const std::vector<Vec3>& pts) {
    Vec3 c = Vec3::Zero();
    for (const auto& p : pts) c += p;
    return Vec3(c / static_cast<double>(pts.size()));
  };
  const auto radius = [](const std::vector<Vec3>& pts, const Vec3& c) {
    double sum = 0.0;
    for (const auto& p : pts) sum += (p - c).squaredNorm();
    return std::sqrt(sum / static_cast<double>(pts.size()));
  };
  const Vec3 cs = centroid(shape);
  const Vec3 cr = centroid(reference);
  const double rs = radius(shape, cs);
  const double rr = radius(reference, cr);
  const double scale = rs > 0.0 ? rr / rs : 1.0;
  std::vector<Vec3> out;
  for (const auto& p : shape) out.push_back(cr + scale * (p - cs));
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

double parse_number(const std::string& cell, int line) {
  char* end = nullptr;
  const double x = std::strtod(cell.c_str(), &end);
  if (end == cell.c_str() || *end != '\0') {
    throw FormationError("trajectory csv line " + std::to_string(line) + ": bad number '" + cell + "'");
  }
  return x;
}

}  // namespace

std::vector<Vec3> positions_of(const NetworkState& s) {
  std::vector<Vec3> out;
  for (const auto& a : s.agents) out.push_back(a.p);
  return out;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << kTrajectoryCsvHeader << '\n';
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    const NetworkState& s = traj.states[k];
    for (std::size_t i = 0; i < s.size(); ++i) {
      const AgentState& a = s.agents[i];
      const AgentControl u = k < traj.controls.size() ? traj.controls[k].u[i] : AgentControl{};
      out << s.step << ',' << i + 1;
      for (int c = 0; c < 3; ++c) out << ',' << num(a.p[c]);
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) out << ',' << num(a.R.matrix()(r, c));
      for (int c = 0; c < 3; ++c) out << ',' << num(u.v[c]);
      for (int c = 0; c < 3; ++c) out << ',' << num(u.w[c]);
      out << ',' << num(traj.potentials[k]) << '\n';
    }
  }
}

void write_potential_csv(std::ostream& out, const Trajectory& traj) {
  out << "step,potential\n";
  for (std::size_t k = 0; k < traj.potentials.size(); ++k) {
    out << traj.states[k].step << ',' << num(traj.potentials[k]) << '\n';
  }
}

void write_controls_csv(std::ostream& out, const Trajectory& traj) {
  out << "step,agent,v_norm,w_norm,norm\n";
  for (std::size_t k = 0; k < traj.controls.size(); ++k) {
    const auto& rec = traj.controls[k];
    for (std::size_t i = 0; i < rec.u.size(); ++i) {
      out << traj.states[k].step << ',' << i + 1 << ',' << num(rec.u[i].v.norm()) << ','
          << num(rec.u[i].w.norm()) << ',' << num(traj.control_norms[k][i]) << '\n';
    }
  }
}

Trajectory read_trajectory_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kTrajectoryCsvHeader) {
    throw FormationError("trajectory csv: missing or unexpected header");
  }
  Trajectory traj;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != 21) {
      throw FormationError("trajectory csv line " + std::to_string(lineno) + ": expected 21 fields");
    }
    const long step = std::stol(cells[0]);
    const std::size_t agent = std::stoul(cells[1]);
    if (traj.states.empty() || traj.states.back().step != step) {
      traj.states.push_back(NetworkState{{}, step});
      traj.controls.emplace_back();
      traj.potentials.push_back(parse_number(cells[20], lineno));
    }
    NetworkState& s = traj.states.back();
    if (agent != s.size() + 1) {
      throw FormationError("trajectory csv line " + std::to_string(lineno) + ": agents out of order");
    }
    AgentState a;
    AgentControl u;
    Mat3 r;
    for (int c = 0; c < 3; ++c) a.p[c] = parse_number(cells[2 + c], lineno);
    for (int k = 0; k < 9; ++k) r(k / 3, k % 3) = parse_number(cells[5 + k], lineno);
    for (int c = 0; c < 3; ++c) u.v[c] = parse_number(cells[14 + c], lineno);
    for (int c = 0; c < 3; ++c) u.w[c] = parse_number(cells[17 + c], lineno);
    a.R = Rotation::unchecked(r);
    s.agents.push_back(a);
    traj.controls.back().u.push_back(u);
  }
  for (const auto& rec : traj.controls) {
    std::vector<double> norms;
    for (const auto& u : rec.u) norms.push_back(std::sqrt(u.v.squaredNorm() + u.w.squaredNorm()));
    traj.control_norms.push_back(norms);
  }
  return traj;
}

void write_formation_svg(std::ostream& out, const FormationGraph& graph,
                         const std::vector<Vec3>& initial, const std::vector<Vec3>& desired,
                         const std::vector<Vec3>& final) {
  const std::vector<Vec3> target = fit_to(desired, final);

  struct Layer {
    const std::vector<Vec3>* points;
    const char* color;
    const char* label;
  };
  const Layer layers[] = {{&initial, "#999999", "initial"},
                          {&target, "#d62728", "desired"},
                          {&final, "#1f77b4", "final"}};

  double umin = 1e300, umax = -1e300, vmin = 1e300, vmax = -1e300;
  for (const auto& layer : layers) {
    for (const auto& p : *layer.points) {
      const Point2 q = isometric(p);
      umin = std::min(umin, q.u);
      umax = std::max(umax, q.u);
      vmin = std::min(vmin, q.v);
      vmax = std::max(vmax, q.v);
    }
  }
  if (umin > umax) umin = umax = vmin = vmax = 0.0;
  const double span = std::max({umax - umin, vmax - vmin, 1e-9});
  const double scale = std::min(kWidth, kHeight - 24.0) - 2.0 * kMargin;
  const auto screen = [&](const Vec3& p) {
    const Point2 q = isometric(p);
    return Point2{kMargin + (q.u - umin) / span * scale, 24.0 + kMargin + (q.v - vmin) / span * scale};
  };

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  double legend_x = kMargin;
  for (const auto& layer : layers) {
    if (layer.points->empty()) continue;
    out << "<circle cx=\"" << fixed(legend_x) << "\" cy=\"20\" r=\"5\" fill=\"" << layer.color << "\"/>"
        << "<text x=\"" << fixed(legend_x + 10) << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"12\">"
        << layer.label << "</text>\n";
    legend_x += 90.0;
  }

  for (const auto& layer : layers) {
    const auto& pts = *layer.points;
    if (pts.size() != static_cast<std::size_t>(graph.num_agents())) continue;
    out << "<g stroke=\"" << layer.color << "\" fill=\"" << layer.color << "\">\n";
    for (const auto& e : graph.edges()) {
      const Point2 a = screen(pts[static_cast<std::size_t>(e.i)]);
      const Point2 b = screen(pts[static_cast<std::size_t>(e.j)]);
      out << "<line x1=\"" << fixed(a.u) << "\" y1=\"" << fixed(a.v) << "\" x2=\"" << fixed(b.u)
          << "\" y2=\"" << fixed(b.v) << "\" stroke-width=\"1.5\"/>\n";
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Point2 a = screen(pts[i]);
      out << "<circle cx=\"" << fixed(a.u) << "\" cy=\"" << fixed(a.v) << "\" r=\"4\"/>"
          << "<text x=\"" << fixed(a.u + 6) << "\" y=\"" << fixed(a.v - 6)
          << "\" stroke=\"none\" font-family=\"sans-serif\" font-size=\"10\">" << i + 1 << "</text>\n";
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
}

void write_potential_svg(std::ostream& out, const std::vector<double>& potentials) {
  // Zeros are drawn at the smallest positive value.
  double floor_value = 0.0;
  for (double p : potentials)
    if (p > 0.0 && (floor_value == 0.0 || p < floor_value)) floor_value = p;
  if (floor_value == 0.0) floor_value = 1e-300;

  std::vector<double> logs;
  logs.reserve(potentials.size());
  for (double p : potentials) logs.push_back(std::log10(std::max(p, floor_value)));
  double lo = logs.empty() ? 0.0 : *std::min_element(logs.begin(), logs.end());
  double hi = logs.empty() ? 1.0 : *std::max_element(logs.begin(), logs.end());
  lo = std::floor(lo);
  hi = std::ceil(hi);
  if (hi <= lo) hi = lo + 1.0;

  const double left = 72.0, right = kWidth - 24.0, top = 24.0, bottom = kHeight - 48.0;
  const double last = potentials.size() > 1 ? static_cast<double>(potentials.size() - 1) : 1.0;
  const auto x_of = [&](double k) { return left + k / last * (right - left); };
  const auto y_of = [&](double l) { return bottom - (l - lo) / (hi - lo) * (bottom - top); };

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<g stroke=\"black\" font-family=\"sans-serif\" font-size=\"11\">\n"
      << "<line x1=\"" << left << "\" y1=\"" << bottom << "\" x2=\"" << right << "\" y2=\"" << bottom << "\"/>\n"
      << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << bottom << "\"/>\n";

  const int decades = static_cast<int>(hi - lo);
  const int stride = std::max(1, decades / 10);
  for (int d = static_cast<int>(lo); d <= static_cast<int>(hi); d += stride) {
    const double y = y_of(d);
    out << "<line x1=\"" << left - 4 << "\" y1=\"" << fixed(y) << "\" x2=\"" << left << "\" y2=\"" << fixed(y) << "\"/>"
        << "<text x=\"" << left - 8 << "\" y=\"" << fixed(y + 4) << "\" stroke=\"none\" text-anchor=\"end\">1e"
        << d << "</text>\n";
  }
  for (int t = 0; t <= 4; ++t) {
    const double k = last * t / 4.0;
    out << "<text x=\"" << fixed(x_of(k)) << "\" y=\"" << bottom + 16
        << "\" stroke=\"none\" text-anchor=\"middle\">" << static_cast<long>(std::lround(k)) << "</text>\n";
  }
  out << "<text x=\"" << (left + right) / 2 << "\" y=\"" << kHeight - 10
      << "\" stroke=\"none\" text-anchor=\"middle\">step</text>\n"
      << "<text x=\"16\" y=\"" << (top + bottom) / 2 << "\" stroke=\"none\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << (top + bottom) / 2 << ")\">potential</text>\n"
      << "</g>\n";

  // At most ~2000 vertices; the last sample is always kept.
  const std::size_t stride_pts = std::max<std::size_t>(1, logs.size() / 2000);
  out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
  for (std::size_t k = 0; k < logs.size(); k += stride_pts) {
    out << fixed(x_of(static_cast<double>(k))) << ',' << fixed(y_of(logs[k])) << ' ';
  }
  if (!logs.empty() && (logs.size() - 1) % stride_pts != 0) {
    out << fixed(x_of(static_cast<double>(logs.size() - 1))) << ',' << fixed(y_of(logs.back()));
  }
  out << "\"/>\n</svg>\n";
}

}  // namespace formation
