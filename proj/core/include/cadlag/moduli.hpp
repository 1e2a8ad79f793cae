#pragma once

#include "cadlag/step_path.hpp"

namespace cadlag {

/// Which value a path contributes at an evaluation time.
enum class Eval { cadlag, left_limit };

/// M1 oscillation modulus:
///   w'(x, delta) = sup { dist(x_t, [x_s, x_r]) : 0 v (t-delta) <= s <= t <= r <= (t+delta) ^ T }
/// where [x_s, x_r] is the line segment between the two values and dist uses
/// the max norm. Exact for step paths (enumeration over critical
/// configurations); zero for coordinatewise monotone paths.
double m1_modulus(const StepPath& x, double delta);

/// Same supremum with s, t, r restricted to [t1, t2] and no delta constraint.
double m1_modulus_window(const StepPath& x, double t1, double t2);

/// Local oscillation u(x, t, delta) = sup { max_i |x_i(r) - x_i(s)| } over
/// s, r in [0 v (t-delta), (t+delta) ^ T].
double local_oscillation(const StepPath& x, double t, double delta);

/// Largest increment of x immediately followed by an increment of y:
///   sup { max over i of |x_i(s) - x_i(t)| ^ |y_i(t) - y_i(u)| :
///         s < t < u <= s + delta, 0 <= s, u <= T }.
/// ex / ey select whether x resp. y enter through their value or left limit.
/// Exact for step paths.
double consecutive_increment_modulus(const StepPath& x, const StepPath& y, double delta,
                                     Eval ex = Eval::cadlag, Eval ey = Eval::cadlag);

/// Maximum number of ordered pairs 0 <= t_1 <= t_2 <= ... <= t_{2n} <= T with
/// |x_{t_{2i}} - x_{t_{2i-1}}| >= a (max norm) for every i. Computed greedily
/// over the value sequence.
long increment_count(const StepPath& x, double a);

/// First time s > t at which some coordinate of alpha moves by more than a
/// relative to the values on the trailing window [t v (s - mu), s]:
///   inf { s > t : sup { |alpha_i(r) - alpha_i(s)| : t v (s-mu) <= r <= s, i } > a }.
/// Returns T + 1 when no such time exists (sentinel).
double first_large_increment_time(const StepPath& alpha, double a, double t, double mu);

/// sup { max_i |x_i(u) - x_i(s)| ^ |y_i(s-) - y_i(r-)| : lo <= u < s < r <= hi }.
/// Used to test whether an x-increment precedes a y-increment inside a window.
double window_ordered_increment_sup(const StepPath& x, const StepPath& y, double lo, double hi);

/// Distance from point c to the segment {lambda*a + (1-lambda)*b} in max norm,
/// minimized exactly over lambda in [0, 1].
double segment_distance(const Vec& c, const Vec& a, const Vec& b);

} // namespace cadlag
