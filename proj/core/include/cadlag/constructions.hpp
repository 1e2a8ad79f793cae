#pragma once

#include "cadlag/step_path.hpp"

#include <cstdint>
#include <utility>

namespace cadlag {

/// Finite partition 0 = p_0 < p_1 < ... <= T of the time axis.
struct PartitionGrid {
    std::vector<double> points;

    PartitionGrid() = default;
    explicit PartitionGrid(std::vector<double> pts);

    double mesh() const;      // largest gap between consecutive points
    double min_gap() const;   // smallest gap between consecutive points
    double max_point() const { return points.back(); }
    /// Membership up to a relative tolerance of 1e-9 * max_point().
    bool contains(double x) const;

    /// Points {0} followed by mesh * (j + offset_fraction) for j = 0, 1, ...
    /// up to the horizon, with mesh = horizon * 2^-level. The fractional
    /// offset keeps grid points away from dyadic event times.
    static PartitionGrid shifted_dyadic(double horizon, int level,
                                        double offset_fraction = 0.7);
};

/// Smallest grid point >= x, except that a grid member is bumped to the next
/// strictly larger point (smallest point >= x + min_gap/2). Throws
/// std::domain_error when no such point exists or x is outside [0, max].
double grid_ceil(const PartitionGrid& grid, double x);
/// Mirror image of grid_ceil; grid members bump strictly down.
double grid_floor(const PartitionGrid& grid, double x);

/// Throws std::invalid_argument if a grid point collides with one of the
/// given event times, or the mesh equals a difference of two event times.
void validate_grid(const PartitionGrid& grid, const std::vector<double>& event_times);

/// Strictly decreasing positive thresholds a_1 > a_2 > ... > a_K.
struct ThresholdLadder {
    std::vector<double> values;

    ThresholdLadder() = default;
    explicit ThresholdLadder(std::vector<double> vals);

    /// a_k = a1 * (1 + 1e-3/sqrt(2)) * 2^-(k-1). The irrational-flavored
    /// factor keeps thresholds off round jump sizes.
    static ThresholdLadder geometric(double a1, int count);
};

/// Throws std::invalid_argument if a ladder value equals one of the given
/// jump sizes exactly.
void validate_ladder(const ThresholdLadder& ladder, const std::vector<double>& jump_sizes);

/// One excursion window: tau is the trigger time of a large backward
/// increment, rho its grid ceiling (clamped at the horizon), floor_tau the
/// grid floor of tau (0 when none exists).
struct ExcursionWindow {
    double tau;
    double rho;
    double floor_tau;
};

struct ExcursionWindows {
    std::vector<ExcursionWindow> windows;
    double threshold; // the scale a that triggered the windows
    PartitionGrid grid;
};

/// Greedy left-to-right scan: starting from rho_0 = 0, tau_j is the first
/// time > rho_{j-1} at which some coordinate of H moves by more than a over
/// the backward window [max(rho_{j-1}, t - mesh), t]; rho_j = grid_ceil(tau_j)
/// or the horizon when the ceiling leaves the grid.
ExcursionWindows excursion_windows(const StepPath& H, double a, const PartitionGrid& grid);

/// First component: t -> H(t) - H(tau_j -) on each [tau_j, rho_j), zero
/// elsewhere. Second component: H minus the first.
std::pair<StepPath, StepPath> corrected_integrand(const StepPath& H, const ExcursionWindows& w);

/// Tail handling of the monotone bridge: `cutoff` pins the bridge to 1 from
/// the first time the path is within gamma/2 of its terminal value;
/// `terminal` jumps to 1 exactly at the right endpoint.
enum class BridgeTail { cutoff, terminal };

/// Monotone nondecreasing cadlag step function xi with xi(t1) = 0 (except the
/// degenerate cutoff case), xi(t2) = 1, and
/// |x(t) - [x(t1) + xi(t)(x(t2) - x(t1))]| <= gamma on [t1, t2].
/// Returned on the full horizon: 0 before t1, 1 from t2 on. Requires a scalar
/// path whose oscillation modulus on [t1, t2] is < gamma/2.
StepPath monotone_bridge(const StepPath& x, double t1, double t2, double gamma,
                         BridgeTail tail);

/// Causal monotone step approximation: xi = x(sigma_j) on [sigma_j, sigma_{j+1})
/// where sigma_{j+1} is the first time in (sigma_j, t2) at which x departs from
/// x(sigma_j) by more than gamma; never reads x(t2). |x - xi| <= gamma on
/// [t1, t2). Requires window modulus < gamma/2 (right endpoint excluded) and
/// fewer than max_increments gamma-increments over the whole horizon.
StepPath adapted_monotone_step(const StepPath& x, double t1, double t2, double gamma,
                               long max_increments);

struct IntegratorDecomposition {
    StepPath xi;  // coordinatewise nondecreasing, values in [0,1]^d
    StepPath phi; // X - X(t1) - xi * (X(t2) - X(t1)); small on the window
    Vec dX_win;   // X(t2) - X(t1)
};

/// X(t) = X(t1) + xi(t) * dX_win + phi(t) with |phi| <= d*gamma on [t1, t2].
/// Requires the oscillation modulus of X on [t1, t2] to be <= gamma/2.
IntegratorDecomposition decompose_integrator(const StepPath& X, double t1, double t2,
                                             double gamma,
                                             BridgeTail tail = BridgeTail::terminal);

struct IntegrandDecomposition {
    Vec c2;       // H(floor_tau) - H(tau-)
    StepPath zeta; // coordinatewise nondecreasing bridge on [floor_tau, rho]
    StepPath psi;  // residual, |psi| <= d*gamma on [floor_tau, rho]
    Vec dH_win;   // H(rho) - H(floor_tau)
};

/// On [tau, rho): H(t) - H(tau-) = c2 + zeta(t) * dH_win + psi(t).
/// Requires the oscillation modulus of H on [floor_tau, rho] to be <= gamma/2.
IntegrandDecomposition decompose_integrand(const StepPath& H, const ExcursionWindow& win,
                                           double gamma,
                                           BridgeTail tail = BridgeTail::cutoff);

struct AdaptedIntegrandDecomposition {
    StepPath zeta_hat; // causal coordinatewise monotone step, |zeta_hat| <= 2 sup|H|
    StepPath psi_hat;  // H_corrected - zeta_hat; |psi_hat| <= d*gamma on [tau, rho)
};

/// Causal split of the corrected integrand piece on [tau, rho). Jumps exactly
/// at rho are ignored (the window is right-open). Requires window modulus
/// <= gamma/2 on [tau, rho) and fewer than max_increments gamma-increments.
AdaptedIntegrandDecomposition decompose_integrand_adapted(const StepPath& H_corrected,
                                                          const ExcursionWindow& win,
                                                          double gamma,
                                                          long max_increments);

/// t -> integral of zeta(s-) d xi(s) over (min(t,tau), min(t,rho)]; lands in
/// [0,1]^d and is coordinatewise nondecreasing when zeta, xi are.
StepPath scaling_term_path(const StepPath& zeta, const StepPath& xi,
                           const ExcursionWindow& win);
Vec scaling_term(const StepPath& zeta, const StepPath& xi, const ExcursionWindow& win,
                 double t);

/// The five-summand breakdown of the corrected-integrand window integral.
/// All five terms and the reference integral are paths in t; their sum equals
/// the reference up to floating-point noise (reconstruction_error).
struct WindowRemainder {
    ExcursionWindow window;
    Vec c2;
    Vec dH_win;
    Vec dX_win;
    StepPath Y;     // scaling term path for this window
    StepPath term1; // dH_win * dX_win * Y
    StepPath term2; // c2 * dX_win * (xi(t^rho) - xi(t^tau))
    StepPath term3; // dX_win * integral of psi(s-) d xi(s)
    StepPath term4; // integral of zeta_hat(s-) d phi(s)
    StepPath term5; // integral of psi_hat(s-) d phi(s)
    StepPath window_integral; // integral of H_corrected(s-) dX(s) over the window
    double reconstruction_error;
};

std::vector<WindowRemainder> remainder_split(const StepPath& H, const StepPath& X,
                                             const ExcursionWindows& w, double gamma,
                                             long max_increments);

/// Oscillation and size gate: both paths have oscillation modulus at scale
/// delta at most gamma/2, and the gamma-capped increment count of H as well
/// as both running sups stay within bound.
bool event_A(const StepPath& H, const StepPath& X, double gamma, double delta,
             double bound, double a_k);

/// True when no window contains an ordered pair of a large X-increment
/// followed by a large H-increment: the ordered increment sup of every window
/// stays <= gamma/4.
bool event_Gamma(const StepPath& H, const StepPath& X, const ExcursionWindows& w,
                 double gamma);

/// Jump times of H banded by threshold: above[k] lists times with
/// |dH|_inf > values[k]; bands[0] = above[0], bands[k] = times with
/// |dH|_inf in (values[k], values[k-1]].
struct BandedJumpTimes {
    std::vector<std::vector<double>> above;
    std::vector<std::vector<double>> bands;
};

BandedJumpTimes limit_jump_times(const StepPath& H, const ThresholdLadder& ladder);

} // namespace cadlag
