#pragma once

#include <string>
#include <vector>

#include "robenergy/transform.hpp"

namespace robenergy {

/// One timestamped joint-space sample. qd and qdd have size 0 when the
/// source data carried no derivatives; absence is distinct from zero so a
/// positions-only log is never silently treated as a static hold.
struct TrajectoryPoint {
  double t = 0.0;  // s
  VecX q;
  VecX qd;
  VecX qdd;
};

/// Ordered list of samples with strictly increasing timestamps. Derivative
/// presence is uniform across points. Immutable; transformations return new
/// trajectories.
class Trajectory {
 public:
  Trajectory() = default;

  /// Validates dimensions, presence uniformity and timestamp monotonicity;
  /// throws InputError on violation.
  Trajectory(int dof, std::vector<TrajectoryPoint> points);

  int dof() const { return dof_; }
  const std::vector<TrajectoryPoint>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  bool has_velocity() const { return has_velocity_; }
  bool has_acceleration() const { return has_acceleration_; }

  /// t_last - t_first; zero for fewer than two samples.
  double duration() const;

 private:
  int dof_ = 0;
  std::vector<TrajectoryPoint> points_;
  bool has_velocity_ = false;
  bool has_acceleration_ = false;
};

// CSV interchange. Header grammar:
//   t,q_1,...,q_n[,dq_1,...,dq_n][,ddq_1,...,ddq_n]
// UTF-8, '.' decimal separator, one sample per row. Errors name the source
// and the offending line.
Trajectory parse_trajectory_csv(const std::string& text,
                                const std::string& source_name = "<string>");
Trajectory load_trajectory_csv(const std::string& path);

/// Serializes at 17 significant digits so parse -> serialize -> parse is
/// field-exact.
std::string trajectory_to_csv(const Trajectory& traj);

// JSON mirror format (see docs/formats.md).
Trajectory parse_trajectory_json(const std::string& text);
std::string trajectory_to_json(const Trajectory& traj);

/// Fills absent derivative columns by second-order finite differences on the
/// (possibly non-uniform) time grid: central stencils at interior points,
/// one-sided three-point stencils at the endpoints. Present columns are
/// never overwritten; qdd is derived from qd. Requires at least 3 points.
Trajectory derive_missing(const Trajectory& traj);

/// Exact kinematic reparameterization t -> scale*t: positions unchanged,
/// velocities divided by scale, accelerations by scale^2. Requires scale > 0.
Trajectory time_scale(const Trajectory& traj, double scale);

/// Resamples positions on a uniform grid of step dt via cubic Hermite
/// interpolation (slopes from qd); qd and qdd are re-derived from the
/// interpolant. Endpoints are preserved. Requires velocities present and
/// 0 < dt <= duration.
Trajectory resample(const Trajectory& traj, double dt);

}  // namespace robenergy
