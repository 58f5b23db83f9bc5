#include "robenergy/trajectory.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "robenergy/errors.hpp"

namespace robenergy {

namespace {

using json = nlohmann::ordered_json;

std::vector<std::string> split_csv_line(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      cells.push_back(line.substr(start));
      break;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return cells;
}

double parse_double(const std::string& cell, const std::string& source, int line) {
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    throw ParseError(source, line, "cannot parse number from \"" + cell + "\"");
  if (!std::isfinite(value)) throw ParseError(source, line, "non-finite value \"" + cell + "\"");
  return value;
}

std::string format_double(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

// Checks that cells [offset, offset+n) are named prefix_1..prefix_n.
bool matches_block(const std::vector<std::string>& header, std::size_t offset, std::size_t n,
                   const std::string& prefix) {
  if (offset + n > header.size()) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (header[offset + i] != prefix + "_" + std::to_string(i + 1)) return false;
  }
  return true;
}

// Second-order first derivative on a (possibly non-uniform) grid; exact for
// quadratics. values holds one sample per point for a single column.
std::vector<VecX> differentiate(const std::vector<double>& t, const std::vector<VecX>& values) {
  const std::size_t n = t.size();
  std::vector<VecX> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double c_prev, c_self, c_next;
    std::size_t i_prev, i_self, i_next;
    if (i == 0) {
      const double h1 = t[1] - t[0], h2 = t[2] - t[1];
      c_prev = -(2.0 * h1 + h2) / (h1 * (h1 + h2));
      c_self = (h1 + h2) / (h1 * h2);
      c_next = -h1 / (h2 * (h1 + h2));
      i_prev = 0, i_self = 1, i_next = 2;
    } else if (i == n - 1) {
      const double h1 = t[n - 2] - t[n - 3], h2 = t[n - 1] - t[n - 2];
      c_prev = h2 / (h1 * (h1 + h2));
      c_self = -(h1 + h2) / (h1 * h2);
      c_next = (h1 + 2.0 * h2) / (h2 * (h1 + h2));
      i_prev = n - 3, i_self = n - 2, i_next = n - 1;
    } else {
      const double h1 = t[i] - t[i - 1], h2 = t[i + 1] - t[i];
      c_prev = -h2 / (h1 * (h1 + h2));
      c_self = (h2 - h1) / (h1 * h2);
      c_next = h1 / (h2 * (h1 + h2));
      i_prev = i - 1, i_self = i, i_next = i + 1;
    }
    out[i] = c_prev * values[i_prev] + c_self * values[i_self] + c_next * values[i_next];
  }
  return out;
}

}  // namespace

Trajectory::Trajectory(int dof, std::vector<TrajectoryPoint> points) : dof_(dof) {
  if (dof <= 0) throw InputError("trajectory DOF must be positive");
  if (points.empty()) throw InputError("trajectory has no samples");

  has_velocity_ = points.front().qd.size() > 0;
  has_acceleration_ = points.front().qdd.size() > 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const TrajectoryPoint& p = points[i];
    if (p.q.size() != dof)
      throw InputError("trajectory sample " + std::to_string(i) + " has " +
                       std::to_string(p.q.size()) + " positions, expected " + std::to_string(dof));
    const bool qd_here = p.qd.size() > 0;
    const bool qdd_here = p.qdd.size() > 0;
    if (qd_here != has_velocity_ || qdd_here != has_acceleration_)
      throw InputError("trajectory sample " + std::to_string(i) +
                       " has inconsistent derivative presence");
    if ((qd_here && p.qd.size() != dof) || (qdd_here && p.qdd.size() != dof))
      throw InputError("trajectory sample " + std::to_string(i) + " has a dimension mismatch");
    if (!std::isfinite(p.t) || !p.q.allFinite() || !p.qd.allFinite() || !p.qdd.allFinite())
      throw InputError("trajectory sample " + std::to_string(i) + " contains non-finite values");
    if (i > 0 && p.t <= points[i - 1].t)
      throw InputError("non-monotonic timestamp at sample " + std::to_string(i) + " (t = " +
                       format_double(p.t) + " after t = " + format_double(points[i - 1].t) + ")");
  }
  points_ = std::move(points);
}

double Trajectory::duration() const {
  return points_.size() < 2 ? 0.0 : points_.back().t - points_.front().t;
}

Trajectory parse_trajectory_csv(const std::string& text, const std::string& source_name) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ParseError(source_name, 1, "empty trajectory file");

  const auto header = split_csv_line(line);
  if (header.empty() || header[0] != "t")
    throw ParseError(source_name, 1, "header must start with column t");

  std::size_t dof = 0;
  while (matches_block(header, 1, dof + 1, "q")) ++dof;
  if (dof == 0) throw ParseError(source_name, 1, "header declares no q_1..q_n columns");

  std::size_t expected = 1 + dof;
  bool has_dq = matches_block(header, expected, dof, "dq");
  if (has_dq) expected += dof;
  bool has_ddq = matches_block(header, expected, dof, "ddq");
  if (has_ddq) expected += dof;
  if (header.size() != expected)
    throw ParseError(source_name, 1,
                     "unexpected header column \"" + header[std::min(expected, header.size() - 1)] +
                         "\" (grammar: t,q_1..q_n[,dq_1..dq_n][,ddq_1..ddq_n])");

  std::vector<TrajectoryPoint> points;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;  // tolerate a trailing blank line
    const auto cells = split_csv_line(line);
    if (cells.size() != expected)
      throw ParseError(source_name, line_no,
                       "row has " + std::to_string(cells.size()) + " cells, expected " +
                           std::to_string(expected));
    TrajectoryPoint p;
    p.t = parse_double(cells[0], source_name, line_no);
    p.q.resize(dof);
    std::size_t col = 1;
    for (std::size_t i = 0; i < dof; ++i) p.q[i] = parse_double(cells[col++], source_name, line_no);
    if (has_dq) {
      p.qd.resize(dof);
      for (std::size_t i = 0; i < dof; ++i)
        p.qd[i] = parse_double(cells[col++], source_name, line_no);
    }
    if (has_ddq) {
      p.qdd.resize(dof);
      for (std::size_t i = 0; i < dof; ++i)
        p.qdd[i] = parse_double(cells[col++], source_name, line_no);
    }
    if (!points.empty() && p.t <= points.back().t)
      throw ParseError(source_name, line_no, "non-monotonic timestamp " + cells[0]);
    points.push_back(std::move(p));
  }
  if (points.empty()) throw ParseError(source_name, line_no, "no samples");
  return Trajectory(static_cast<int>(dof), std::move(points));
}

Trajectory load_trajectory_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open trajectory file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_trajectory_csv(buffer.str(), path);
}

std::string trajectory_to_csv(const Trajectory& traj) {
  std::ostringstream out;
  out << "t";
  for (int i = 1; i <= traj.dof(); ++i) out << ",q_" << i;
  if (traj.has_velocity())
    for (int i = 1; i <= traj.dof(); ++i) out << ",dq_" << i;
  if (traj.has_acceleration())
    for (int i = 1; i <= traj.dof(); ++i) out << ",ddq_" << i;
  out << "\n";
  for (const TrajectoryPoint& p : traj.points()) {
    out << format_double(p.t);
    for (int i = 0; i < traj.dof(); ++i) out << "," << format_double(p.q[i]);
    for (int i = 0; i < p.qd.size(); ++i) out << "," << format_double(p.qd[i]);
    for (int i = 0; i < p.qdd.size(); ++i) out << "," << format_double(p.qdd[i]);
    out << "\n";
  }
  return out.str();
}

Trajectory parse_trajectory_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("trajectory JSON: ") + e.what());
  }
  try {
    const int dof = doc.at("dof").get<int>();
    std::vector<TrajectoryPoint> points;
    for (const auto& node : doc.at("points")) {
      TrajectoryPoint p;
      p.t = node.at("t").get<double>();
      const auto to_vec = [](const json& arr) {
        VecX v(arr.size());
        for (std::size_t i = 0; i < arr.size(); ++i) v[i] = arr[i].get<double>();
        return v;
      };
      p.q = to_vec(node.at("q"));
      if (node.contains("dq")) p.qd = to_vec(node["dq"]);
      if (node.contains("ddq")) p.qdd = to_vec(node["ddq"]);
      points.push_back(std::move(p));
    }
    return Trajectory(dof, std::move(points));
  } catch (const json::exception& e) {
    throw ParseError(std::string("trajectory JSON: ") + e.what());
  }
}

std::string trajectory_to_json(const Trajectory& traj) {
  json doc;
  doc["dof"] = traj.dof();
  json points = json::array();
  for (const TrajectoryPoint& p : traj.points()) {
    json node;
    node["t"] = p.t;
    node["q"] = std::vector<double>(p.q.begin(), p.q.end());
    if (p.qd.size()) node["dq"] = std::vector<double>(p.qd.begin(), p.qd.end());
    if (p.qdd.size()) node["ddq"] = std::vector<double>(p.qdd.begin(), p.qdd.end());
    points.push_back(std::move(node));
  }
  doc["points"] = std::move(points);
  return doc.dump(2) + "\n";
}

Trajectory derive_missing(const Trajectory& traj) {
  if (traj.has_velocity() && traj.has_acceleration()) return traj;
  if (traj.size() < 3)
    throw InputError("derive_missing needs at least 3 samples, got " +
                     std::to_string(traj.size()));

  const std::size_t n = traj.size();
  std::vector<double> t(n);
  std::vector<VecX> q(n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = traj.points()[i].t;
    q[i] = traj.points()[i].q;
  }

  std::vector<VecX> qd(n);
  if (traj.has_velocity()) {
    for (std::size_t i = 0; i < n; ++i) qd[i] = traj.points()[i].qd;
  } else {
    qd = differentiate(t, q);
  }
  std::vector<VecX> qdd(n);
  if (traj.has_acceleration()) {
    for (std::size_t i = 0; i < n; ++i) qdd[i] = traj.points()[i].qdd;
  } else {
    qdd = differentiate(t, qd);
  }

  std::vector<TrajectoryPoint> points(n);
  for (std::size_t i = 0; i < n; ++i)
    points[i] = {t[i], std::move(q[i]), std::move(qd[i]), std::move(qdd[i])};
  return Trajectory(traj.dof(), std::move(points));
}

Trajectory time_scale(const Trajectory& traj, double scale) {
  if (!(scale > 0.0)) throw InputError("time scale must be positive, got " + format_double(scale));

  std::vector<TrajectoryPoint> points;
  points.reserve(traj.size());
  for (const TrajectoryPoint& p : traj.points()) {
    TrajectoryPoint out;
    out.t = scale * p.t;
    out.q = p.q;
    if (p.qd.size()) out.qd = p.qd / scale;
    if (p.qdd.size()) out.qdd = p.qdd / (scale * scale);
    points.push_back(std::move(out));
  }
  return Trajectory(traj.dof(), std::move(points));
}

Trajectory resample(const Trajectory& traj, double dt) {
  if (!(dt > 0.0)) throw InputError("resample step must be positive");
  if (!traj.has_velocity())
    throw InputError("resample requires velocities; run derive_missing first");
  if (traj.size() < 2) throw InputError("resample needs at least 2 samples");
  if (dt > traj.duration())
    throw InputError("resample step " + format_double(dt) + " exceeds trajectory duration " +
                     format_double(traj.duration()));

  const auto& pts = traj.points();
  const double t_begin = pts.front().t;
  const double t_end = pts.back().t;
  const double tol = 1e-9 * std::max(1.0, std::abs(t_end));

  std::vector<double> grid;
  for (std::size_t k = 0;; ++k) {
    const double t = t_begin + static_cast<double>(k) * dt;
    if (t >= t_end - tol) break;
    grid.push_back(t);
  }
  grid.push_back(t_end);

  std::vector<TrajectoryPoint> out;
  out.reserve(grid.size());
  std::size_t seg = 0;
  for (double t : grid) {
    while (seg + 2 < pts.size() && pts[seg + 1].t <= t) ++seg;
    const TrajectoryPoint& a = pts[seg];
    const TrajectoryPoint& b = pts[seg + 1];
    const double h = b.t - a.t;
    const double s = (t - a.t) / h;

    // cubic Hermite basis and its derivatives in s
    const double h00 = (2 * s - 3) * s * s + 1, h10 = ((s - 2) * s + 1) * s;
    const double h01 = (3 - 2 * s) * s * s, h11 = (s - 1) * s * s;
    const double g00 = 6 * s * (s - 1), g10 = (3 * s - 4) * s + 1;
    const double g01 = -g00, g11 = (3 * s - 2) * s;
    const double k00 = 12 * s - 6, k10 = 6 * s - 4, k01 = -k00, k11 = 6 * s - 2;

    TrajectoryPoint p;
    p.t = t;
    p.q = h00 * a.q + h01 * b.q + h * (h10 * a.qd + h11 * b.qd);
    p.qd = (g00 * a.q + g01 * b.q) / h + g10 * a.qd + g11 * b.qd;
    p.qdd = (k00 * a.q + k01 * b.q) / (h * h) + (k10 * a.qd + k11 * b.qd) / h;
    out.push_back(std::move(p));
  }
  return Trajectory(traj.dof(), std::move(out));
}

}  // namespace robenergy
