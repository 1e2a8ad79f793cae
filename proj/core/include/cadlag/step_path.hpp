#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace cadlag {

using Vec = std::vector<double>;

/// max_i |v_i|
double sup_norm(const Vec& v);

struct JumpDelta {
    double time;
    Vec delta;
};

/// Completed graph of a step path: the polygonal curve in [0,T] x R^d made of
/// the horizontal plateau segments plus a connecting segment at every jump.
/// Stored as its vertex list; segments are consecutive vertex pairs.
struct CompletedGraph {
    std::vector<double> times;
    std::vector<Vec> points;

    std::size_t segment_count() const { return times.empty() ? 0 : times.size() - 1; }
};

/// A d-dimensional cadlag step path on [0, T]: right-continuous, piecewise
/// constant, with finitely many jumps at strictly increasing times in (0, T].
/// Values stored are post-jump values. Immutable after construction; jumps of
/// size zero are merged away so consecutive values always differ.
class StepPath {
  public:
    StepPath(std::size_t dimension, double horizon, Vec initial_value,
             std::vector<std::pair<double, Vec>> jumps = {});

    /// Scalar convenience: jumps given as (time, post-jump value).
    static StepPath scalar(double horizon, double initial_value,
                           std::vector<std::pair<double, double>> jumps = {});
    static StepPath constant(std::size_t dimension, double horizon, Vec value);
    static StepPath zero(std::size_t dimension, double horizon);

    std::size_t dimension() const { return dim_; }
    double horizon() const { return horizon_; }
    const Vec& initial_value() const { return initial_; }

    std::size_t jump_count() const { return times_.size(); }
    double jump_time(std::size_t i) const { return times_[i]; }
    const std::vector<double>& jump_times() const { return times_; }
    /// Post-jump value of the i-th jump.
    Vec value_after_jump(std::size_t i) const;
    /// Value on the i-th constancy interval; index 0 is the initial value,
    /// index jump_count() is the final value.
    Vec plateau(std::size_t i) const;

    /// x(t), right-continuous. Requires 0 <= t <= T.
    Vec eval(double t) const;
    /// x(t-); equals the initial value at t = 0. Requires 0 <= t <= T.
    Vec left_limit(double t) const;
    /// x(t) - x(t-); zero vector when t is not a jump time.
    Vec jump_at(double t) const;
    /// All (time, jump size) pairs with time <= t.
    std::vector<JumpDelta> jumps_up_to(double t) const;

    /// Total variation on [0, t]: sum over jumps s <= t of sum_i |dx_i(s)|.
    double total_variation(double t) const;
    /// sup_{s <= t} max_i |x_i(s)|.
    double running_sup(double t) const;

    CompletedGraph completed_graph() const;

    /// Number of jumps with time <= t.
    std::size_t jumps_before_or_at(double t) const;
    /// Number of jumps with time < t.
    std::size_t jumps_strictly_before(double t) const;

    /// Path frozen at x(t) from t onward (jumps after t removed).
    StepPath truncate_after(double t) const;
    /// Coordinate i as a scalar path.
    StepPath coordinate(std::size_t i) const;

    /// Scalar value at t for one-dimensional paths.
    double at(double t) const;
    double left_at(double t) const;

    StepPath operator+(const StepPath& other) const;
    StepPath operator-(const StepPath& other) const;
    StepPath operator-() const;
    StepPath scaled(double c) const;
    /// Coordinatewise scaling by a fixed vector.
    StepPath scaled(const Vec& c) const;
    /// Path plus a constant vector.
    StepPath shifted(const Vec& c) const;

    bool operator==(const StepPath& other) const;

  private:
    std::size_t dim_ = 1;
    double horizon_ = 0.0;
    Vec initial_;
    std::vector<double> times_;
    Vec values_; // flattened row-major, jump i occupies [i*dim_, (i+1)*dim_)

    void check_time(double t) const;
    const double* value_ptr(std::size_t i) const { return values_.data() + i * dim_; }
};

/// 0, all jump times of x and y, T. Requires equal horizons.
std::vector<double> merged_breakpoints(const StepPath& x, const StepPath& y);

/// Exact sup_t max_i |x_i(t) - y_i(t)| over [0, T].
double sup_norm_distance(const StepPath& x, const StepPath& y);

/// sup of max_i |x_i(t)| over t in [a, b); set include_right to close at b.
double window_sup_norm(const StepPath& x, double a, double b, bool include_right = false);

} // namespace cadlag
