#include "cadlag/constructions.hpp"

#include "cadlag/moduli.hpp"
#include "cadlag/stieltjes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cadlag {

namespace {

double membership_tol(const PartitionGrid& g) { return 1e-9 * std::max(1.0, g.max_point()); }

// Index of the grid point matching x within tolerance, or -1.
std::ptrdiff_t member_index(const PartitionGrid& g, double x) {
    const double tol = membership_tol(g);
    auto it = std::lower_bound(g.points.begin(), g.points.end(), x - tol);
    if (it != g.points.end() && std::fabs(*it - x) <= tol)
        return it - g.points.begin();
    return -1;
}

// (time, value) knots of a scalar step function: value holds from each knot
// time until the next one, and past the last knot.
using Knots = std::vector<std::pair<double, double>>;

StepPath scalar_from_knots(double horizon, double before, const Knots& knots) {
    double init = before;
    std::vector<std::pair<double, double>> jumps;
    for (const auto& [t, v] : knots) {
        if (t == 0.0)
            init = v;
        else
            jumps.emplace_back(t, v);
    }
    return StepPath::scalar(horizon, init, jumps);
}

StepPath from_coordinates(const std::vector<StepPath>& comps, double horizon) {
    const std::size_t d = comps.size();
    std::vector<double> times;
    Vec init(d);
    for (std::size_t i = 0; i < d; ++i) {
        const auto& ts = comps[i].jump_times();
        times.insert(times.end(), ts.begin(), ts.end());
        init[i] = comps[i].initial_value()[0];
    }
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    std::vector<std::pair<double, Vec>> jumps;
    jumps.reserve(times.size());
    for (double t : times) {
        Vec v(d);
        for (std::size_t i = 0; i < d; ++i) v[i] = comps[i].at(t);
        jumps.emplace_back(t, std::move(v));
    }
    return StepPath(d, horizon, std::move(init), std::move(jumps));
}

void check_window_times(const StepPath& x, double t1, double t2) {
    if (t1 < 0.0 || t2 > x.horizon())
        throw std::domain_error("window outside [0, T]");
    if (!(t1 < t2)) throw std::invalid_argument("window start must precede end");
}

// Core of the monotone bridge on [t1, t2]; assumes the caller validated the
// oscillation precondition. Returns knots with first time t1, last value 1.
Knots bridge_knots(const StepPath& x, double t1, double t2, double gamma, BridgeTail tail) {
    const double xt1 = x.at(t1);
    const double xt2 = x.at(t2);
    const double den = xt2 - xt1;
    const auto lam_of = [&](double v) {
        if (den == 0.0) return 0.0;
        return std::clamp((v - xt1) / den, 0.0, 1.0);
    };

    Knots knots{{t1, 0.0}};
    double lam = 0.0;
    const auto& times = x.jump_times();
    for (double s : times) {
        if (s <= t1) continue;
        if (s > t2) break;
        const double level = xt1 + lam * den;
        if (std::fabs(x.at(s) - level) > gamma) {
            lam = lam_of(x.at(s));
            if (lam != knots.back().second) knots.emplace_back(s, lam);
        }
    }

    if (tail == BridgeTail::terminal) {
        if (knots.back().second != 1.0) knots.emplace_back(t2, 1.0);
    } else {
        // First time the path sits within gamma/2 of its terminal value; the
        // final plateau always qualifies.
        double bar = t2;
        if (std::fabs(xt1 - xt2) <= gamma / 2.0) {
            bar = t1;
        } else {
            for (double s : times) {
                if (s <= t1) continue;
                if (s > t2) break;
                if (std::fabs(x.at(s) - xt2) <= gamma / 2.0) {
                    bar = s;
                    break;
                }
            }
        }
        while (!knots.empty() && knots.back().first >= bar) knots.pop_back();
        knots.emplace_back(bar, 1.0);
    }

    for (std::size_t i = 1; i < knots.size(); ++i)
        if (knots[i].second < knots[i - 1].second)
            throw std::logic_error("monotone_bridge: non-monotone weight sequence");

    // The gamma error bound is part of the construction's guarantee; check it
    // at every plateau of |x - (x(t1) + xi * (x(t2) - x(t1)))| over [t1, t2].
    const double tol = gamma * (1.0 + 1e-9) + 1e-12 * (1.0 + std::fabs(xt1) + std::fabs(xt2));
    const auto xi_at = [&](double t) {
        double v = 0.0;
        for (const auto& [kt, kv] : knots) {
            if (kt > t) break;
            v = kv;
        }
        return v;
    };
    std::vector<double> probes{t1, t2};
    for (double s : times)
        if (s > t1 && s <= t2) probes.push_back(s);
    for (const auto& [kt, kv] : knots) probes.push_back(kt);
    for (double t : probes) {
        const double err = std::fabs(x.at(t) - (xt1 + xi_at(t) * den));
        if (err > tol) throw std::logic_error("monotone_bridge: error bound violated");
    }
    return knots;
}

// Core of the causal step approximation on [t1, t2); never reads x(t2).
Knots adapted_knots(const StepPath& x, double t1, double t2, double gamma) {
    Knots knots{{t1, x.at(t1)}};
    double cur = knots.back().second;
    for (double s : x.jump_times()) {
        if (s <= t1) continue;
        if (s >= t2) break;
        if (std::fabs(x.at(s) - cur) > gamma) {
            cur = x.at(s);
            knots.emplace_back(s, cur);
        }
    }
    bool up = true, down = true;
    for (std::size_t i = 1; i < knots.size(); ++i) {
        if (knots[i].second < knots[i - 1].second) up = false;
        if (knots[i].second > knots[i - 1].second) down = false;
    }
    if (!up && !down)
        throw std::logic_error("adapted_monotone_step: non-monotone piece sequence");
    return knots;
}

// Drops every jump at or after the cut time, freezing the path at its left
// limit there.
StepPath drop_from(const StepPath& x, double cut) {
    std::vector<std::pair<double, Vec>> jumps;
    for (std::size_t i = 0; i < x.jump_count(); ++i) {
        const double t = x.jump_time(i);
        if (t >= cut) break;
        jumps.emplace_back(t, x.value_after_jump(i));
    }
    return StepPath(x.dimension(), x.horizon(), x.initial_value(), std::move(jumps));
}

} // namespace

PartitionGrid::PartitionGrid(std::vector<double> pts) : points(std::move(pts)) {
    if (points.size() < 2) throw std::invalid_argument("grid needs at least two points");
    if (points.front() != 0.0) throw std::invalid_argument("grid must start at 0");
    for (std::size_t i = 1; i < points.size(); ++i)
        if (!(points[i] > points[i - 1]))
            throw std::invalid_argument("grid points must be strictly increasing");
}

double PartitionGrid::mesh() const {
    double m = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i) m = std::max(m, points[i] - points[i - 1]);
    return m;
}

double PartitionGrid::min_gap() const {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < points.size(); ++i) m = std::min(m, points[i] - points[i - 1]);
    return m;
}

bool PartitionGrid::contains(double x) const { return member_index(*this, x) >= 0; }

PartitionGrid PartitionGrid::shifted_dyadic(double horizon, int level, double offset_fraction) {
    if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
    if (level < 0) throw std::invalid_argument("level must be nonnegative");
    if (offset_fraction < 0.0 || offset_fraction >= 1.0)
        throw std::invalid_argument("offset fraction must lie in [0, 1)");
    const double m = horizon * std::ldexp(1.0, -level);
    std::vector<double> pts{0.0};
    for (long j = 0;; ++j) {
        const double p = m * (static_cast<double>(j) + offset_fraction);
        if (p > horizon) break;
        if (p > 0.0) pts.push_back(p);
    }
    return PartitionGrid(std::move(pts));
}

double grid_ceil(const PartitionGrid& grid, double x) {
    if (x < 0.0 || x > grid.max_point())
        throw std::domain_error("grid_ceil: point outside grid range");
    double target = x;
    const std::ptrdiff_t idx = member_index(grid, x);
    if (idx >= 0) target = grid.points[idx] + grid.min_gap() / 2.0;
    auto it = std::lower_bound(grid.points.begin(), grid.points.end(), target);
    if (it == grid.points.end())
        throw std::domain_error("grid_ceil: no grid point above");
    return *it;
}

double grid_floor(const PartitionGrid& grid, double x) {
    if (x < 0.0 || x > grid.max_point())
        throw std::domain_error("grid_floor: point outside grid range");
    double target = x;
    const std::ptrdiff_t idx = member_index(grid, x);
    if (idx >= 0) target = grid.points[idx] - grid.min_gap() / 2.0;
    auto it = std::upper_bound(grid.points.begin(), grid.points.end(), target);
    if (it == grid.points.begin())
        throw std::domain_error("grid_floor: no grid point below");
    return *(it - 1);
}

void validate_grid(const PartitionGrid& grid, const std::vector<double>& event_times) {
    const double tol = membership_tol(grid);
    for (double e : event_times) {
        for (double p : grid.points)
            if (std::fabs(p - e) <= tol)
                throw std::invalid_argument("grid point collides with an event time");
    }
    const double mesh = grid.mesh();
    for (double a : event_times)
        for (double b : event_times)
            if (a != b && std::fabs(mesh - std::fabs(a - b)) <= tol)
                throw std::invalid_argument("grid mesh equals a difference of event times");
}

ThresholdLadder::ThresholdLadder(std::vector<double> vals) : values(std::move(vals)) {
    if (values.empty()) throw std::invalid_argument("ladder needs at least one value");
    double prev = std::numeric_limits<double>::infinity();
    for (double v : values) {
        if (!(v > 0.0)) throw std::invalid_argument("ladder values must be positive");
        if (!(v < prev)) throw std::invalid_argument("ladder values must strictly decrease");
        prev = v;
    }
}

ThresholdLadder ThresholdLadder::geometric(double a1, int count) {
    if (!(a1 > 0.0)) throw std::invalid_argument("ladder base must be positive");
    if (count < 1) throw std::invalid_argument("ladder needs at least one value");
    const double off = 1.0 + 1e-3 / std::sqrt(2.0);
    std::vector<double> vals(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) vals[static_cast<std::size_t>(k)] = a1 * off * std::ldexp(1.0, -k);
    return ThresholdLadder(std::move(vals));
}

void validate_ladder(const ThresholdLadder& ladder, const std::vector<double>& jump_sizes) {
    for (double v : ladder.values)
        for (double s : jump_sizes)
            if (v == s)
                throw std::invalid_argument("ladder value collides with a jump size");
}

ExcursionWindows excursion_windows(const StepPath& H, double a, const PartitionGrid& grid) {
    if (!(a > 0.0)) throw std::invalid_argument("excursion_windows: threshold must be positive");
    const double T = H.horizon();
    const double mesh = grid.mesh();
    ExcursionWindows out;
    out.threshold = a;
    out.grid = grid;
    double prev_rho = 0.0;
    while (true) {
        const double tau = first_large_increment_time(H, a, prev_rho, mesh);
        if (tau > T) break;
        double rho;
        if (tau > grid.max_point()) {
            rho = T;
        } else {
            double target = tau;
            const std::ptrdiff_t idx = member_index(grid, tau);
            if (idx >= 0) target = grid.points[idx] + grid.min_gap() / 2.0;
            auto it = std::lower_bound(grid.points.begin(), grid.points.end(), target);
            rho = (it == grid.points.end()) ? T : *it;
        }
        rho = std::min(rho, T);
        double fl = 0.0;
        {
            double target = tau;
            const std::ptrdiff_t idx = member_index(grid, tau);
            if (idx >= 0) target = grid.points[idx] - grid.min_gap() / 2.0;
            auto it = std::upper_bound(grid.points.begin(), grid.points.end(), target);
            if (it != grid.points.begin()) fl = *(it - 1);
        }
        out.windows.push_back({tau, rho, fl});
        if (rho >= T) break;
        prev_rho = rho;
    }
    return out;
}

std::pair<StepPath, StepPath> corrected_integrand(const StepPath& H, const ExcursionWindows& w) {
    const std::size_t d = H.dimension();
    const double T = H.horizon();
    std::vector<double> events = H.jump_times();
    for (const ExcursionWindow& win : w.windows) {
        events.push_back(win.tau);
        events.push_back(win.rho);
    }
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());

    const auto value_at = [&](double t) -> Vec {
        for (const ExcursionWindow& win : w.windows) {
            if (t >= win.tau && t < win.rho) {
                Vec v = H.eval(t);
                const Vec base = H.left_limit(win.tau);
                for (std::size_t i = 0; i < d; ++i) v[i] -= base[i];
                return v;
            }
        }
        return Vec(d, 0.0);
    };

    std::vector<std::pair<double, Vec>> jumps;
    Vec prev(d, 0.0);
    for (double t : events) {
        if (t <= 0.0) continue;
        Vec v = value_at(t);
        if (v != prev) {
            jumps.emplace_back(t, v);
            prev = std::move(v);
        }
    }
    StepPath tilde(d, T, Vec(d, 0.0), std::move(jumps));
    StepPath rest = H - tilde;
    return {std::move(tilde), std::move(rest)};
}

StepPath monotone_bridge(const StepPath& x, double t1, double t2, double gamma, BridgeTail tail) {
    if (x.dimension() != 1)
        throw std::invalid_argument("monotone_bridge: scalar path required");
    check_window_times(x, t1, t2);
    if (!(gamma > 0.0)) throw std::invalid_argument("monotone_bridge: gamma must be positive");
    if (!(m1_modulus_window(x, t1, t2) < gamma / 2.0))
        throw std::invalid_argument("monotone_bridge: oscillation modulus not below gamma/2");
    return scalar_from_knots(x.horizon(), 0.0, bridge_knots(x, t1, t2, gamma, tail));
}

StepPath adapted_monotone_step(const StepPath& x, double t1, double t2, double gamma,
                               long max_increments) {
    if (x.dimension() != 1)
        throw std::invalid_argument("adapted_monotone_step: scalar path required");
    check_window_times(x, t1, t2);
    if (!(gamma > 0.0))
        throw std::invalid_argument("adapted_monotone_step: gamma must be positive");
    const StepPath open = drop_from(x, t2);
    if (!(m1_modulus_window(open, t1, t2) < gamma / 2.0))
        throw std::invalid_argument("adapted_monotone_step: oscillation modulus not below gamma/2");
    if (!(increment_count(x, gamma) < max_increments))
        throw std::invalid_argument("adapted_monotone_step: too many large increments");
    const Knots knots = adapted_knots(x, t1, t2, gamma);
    return scalar_from_knots(x.horizon(), knots.front().second, knots);
}

IntegratorDecomposition decompose_integrator(const StepPath& X, double t1, double t2,
                                             double gamma, BridgeTail tail) {
    check_window_times(X, t1, t2);
    if (!(gamma > 0.0)) throw std::invalid_argument("decompose_integrator: gamma must be positive");
    if (!(m1_modulus_window(X, t1, t2) <= gamma / 2.0))
        throw std::invalid_argument("decompose_integrator: oscillation modulus exceeds gamma/2");
    const std::size_t d = X.dimension();
    const double T = X.horizon();
    std::vector<StepPath> comps;
    comps.reserve(d);
    for (std::size_t i = 0; i < d; ++i) {
        const StepPath xi_c = X.coordinate(i);
        comps.push_back(scalar_from_knots(T, 0.0, bridge_knots(xi_c, t1, t2, gamma, tail)));
    }
    StepPath xi = from_coordinates(comps, T);
    Vec start = X.eval(t1);
    Vec dX = X.eval(t2);
    for (std::size_t i = 0; i < d; ++i) dX[i] -= start[i];
    StepPath phi = X - StepPath::constant(d, T, start) - xi.scaled(dX);
    const double bound = static_cast<double>(d) * gamma;
    const double tol = bound * (1.0 + 1e-9) + 1e-12 * (1.0 + X.running_sup(T));
    if (window_sup_norm(phi, t1, t2, true) > tol)
        throw std::logic_error("decompose_integrator: residual exceeds d*gamma on the window");
    return {std::move(xi), std::move(phi), std::move(dX)};
}

IntegrandDecomposition decompose_integrand(const StepPath& H, const ExcursionWindow& win,
                                           double gamma, BridgeTail tail) {
    const double t1 = win.floor_tau;
    const double t2 = win.rho;
    check_window_times(H, t1, t2);
    if (!(gamma > 0.0)) throw std::invalid_argument("decompose_integrand: gamma must be positive");
    if (!(m1_modulus_window(H, t1, t2) <= gamma / 2.0))
        throw std::invalid_argument("decompose_integrand: oscillation modulus exceeds gamma/2");
    const std::size_t d = H.dimension();
    const double T = H.horizon();
    std::vector<StepPath> comps;
    comps.reserve(d);
    for (std::size_t i = 0; i < d; ++i) {
        const StepPath hi = H.coordinate(i);
        comps.push_back(scalar_from_knots(T, 0.0, bridge_knots(hi, t1, t2, gamma, tail)));
    }
    StepPath zeta = from_coordinates(comps, T);
    Vec floor_val = H.eval(t1);
    Vec c2 = floor_val;
    const Vec pre_tau = H.left_limit(win.tau);
    for (std::size_t i = 0; i < d; ++i) c2[i] -= pre_tau[i];
    Vec dH = H.eval(t2);
    for (std::size_t i = 0; i < d; ++i) dH[i] -= floor_val[i];
    StepPath psi = H - StepPath::constant(d, T, floor_val) - zeta.scaled(dH);
    const double bound = static_cast<double>(d) * gamma;
    const double tol = bound * (1.0 + 1e-9) + 1e-12 * (1.0 + H.running_sup(T));
    if (window_sup_norm(psi, t1, t2, true) > tol)
        throw std::logic_error("decompose_integrand: residual exceeds d*gamma on the window");
    return {std::move(c2), std::move(zeta), std::move(psi), std::move(dH)};
}

AdaptedIntegrandDecomposition decompose_integrand_adapted(const StepPath& H_corrected,
                                                          const ExcursionWindow& win,
                                                          double gamma, long max_increments) {
    check_window_times(H_corrected, win.tau, win.rho);
    if (!(gamma > 0.0))
        throw std::invalid_argument("decompose_integrand_adapted: gamma must be positive");
    const StepPath piece = drop_from(H_corrected, win.rho);
    if (!(m1_modulus_window(piece, win.tau, win.rho) <= gamma / 2.0))
        throw std::invalid_argument(
            "decompose_integrand_adapted: oscillation modulus exceeds gamma/2");
    if (!(increment_count(piece, gamma) < max_increments))
        throw std::invalid_argument("decompose_integrand_adapted: too many large increments");
    const std::size_t d = piece.dimension();
    const double T = piece.horizon();
    std::vector<StepPath> comps;
    comps.reserve(d);
    for (std::size_t i = 0; i < d; ++i) {
        const StepPath pc = piece.coordinate(i);
        comps.push_back(scalar_from_knots(T, 0.0, adapted_knots(pc, win.tau, win.rho, gamma)));
    }
    StepPath zeta_hat = from_coordinates(comps, T);
    StepPath psi_hat = H_corrected - zeta_hat;
    const double bound = static_cast<double>(d) * gamma;
    const double tol = bound * (1.0 + 1e-9) + 1e-12 * (1.0 + H_corrected.running_sup(T));
    if (window_sup_norm(psi_hat, win.tau, win.rho, false) > tol)
        throw std::logic_error(
            "decompose_integrand_adapted: residual exceeds d*gamma on the window");
    return {std::move(zeta_hat), std::move(psi_hat)};
}

StepPath scaling_term_path(const StepPath& zeta, const StepPath& xi, const ExcursionWindow& win) {
    return window_integral(zeta, xi, win.tau, win.rho);
}

Vec scaling_term(const StepPath& zeta, const StepPath& xi, const ExcursionWindow& win, double t) {
    return scaling_term_path(zeta, xi, win).eval(t);
}

std::vector<WindowRemainder> remainder_split(const StepPath& H, const StepPath& X,
                                             const ExcursionWindows& w, double gamma,
                                             long max_increments) {
    if (H.dimension() != X.dimension() || H.horizon() != X.horizon())
        throw std::invalid_argument("remainder_split: path shape mismatch");
    const std::size_t d = H.dimension();
    const StepPath H_tilde = corrected_integrand(H, w).first;
    std::vector<WindowRemainder> out;
    out.reserve(w.windows.size());
    for (const ExcursionWindow& win : w.windows) {
        IntegrandDecomposition intd = decompose_integrand(H, win, gamma);
        IntegratorDecomposition intg =
            decompose_integrator(X, win.floor_tau, win.rho, gamma);
        AdaptedIntegrandDecomposition adia =
            decompose_integrand_adapted(H_tilde, win, gamma, max_increments);

        StepPath Y = window_integral(intd.zeta, intg.xi, win.tau, win.rho);
        Vec prod(d);
        for (std::size_t i = 0; i < d; ++i) prod[i] = intd.dH_win[i] * intg.dX_win[i];
        StepPath term1 = Y.scaled(prod);

        const StepPath ones = StepPath::constant(d, H.horizon(), Vec(d, 1.0));
        Vec c2dx(d);
        for (std::size_t i = 0; i < d; ++i) c2dx[i] = intd.c2[i] * intg.dX_win[i];
        StepPath term2 = window_integral(ones, intg.xi, win.tau, win.rho).scaled(c2dx);

        StepPath term3 =
            window_integral(intd.psi, intg.xi, win.tau, win.rho).scaled(intg.dX_win);
        StepPath term4 = window_integral(adia.zeta_hat, intg.phi, win.tau, win.rho);
        StepPath term5 = window_integral(adia.psi_hat, intg.phi, win.tau, win.rho);

        StepPath total = term1 + term2 + term3 + term4 + term5;
        StepPath reference = window_integral(H_tilde, X, win.tau, win.rho);
        const double recon = sup_norm_distance(total, reference);

        out.push_back({win, std::move(intd.c2), std::move(intd.dH_win), std::move(intg.dX_win),
                       std::move(Y), std::move(term1), std::move(term2), std::move(term3),
                       std::move(term4), std::move(term5), std::move(reference), recon});
    }
    return out;
}

bool event_A(const StepPath& H, const StepPath& X, double gamma, double delta, double bound,
             double a_k) {
    if (m1_modulus(X, delta) > gamma / 2.0) return false;
    if (m1_modulus(H, delta) > gamma / 2.0) return false;
    if (static_cast<double>(increment_count(H, std::min(a_k, gamma))) > bound) return false;
    if (X.running_sup(X.horizon()) > bound) return false;
    if (H.running_sup(H.horizon()) > bound) return false;
    return true;
}

bool event_Gamma(const StepPath& H, const StepPath& X, const ExcursionWindows& w, double gamma) {
    for (const ExcursionWindow& win : w.windows)
        if (window_ordered_increment_sup(X, H, win.floor_tau, win.rho) > gamma / 4.0)
            return false;
    return true;
}

BandedJumpTimes limit_jump_times(const StepPath& H, const ThresholdLadder& ladder) {
    const std::size_t K = ladder.values.size();
    BandedJumpTimes out;
    out.above.assign(K, {});
    out.bands.assign(K, {});
    for (std::size_t j = 0; j < H.jump_count(); ++j) {
        const double t = H.jump_time(j);
        const double size = sup_norm(H.jump_at(t));
        for (std::size_t k = 0; k < K; ++k)
            if (size > ladder.values[k]) out.above[k].push_back(t);
        if (size > ladder.values[0]) {
            out.bands[0].push_back(t);
        } else {
            for (std::size_t k = 1; k < K; ++k) {
                if (size > ladder.values[k] && size <= ladder.values[k - 1]) {
                    out.bands[k].push_back(t);
                    break;
                }
            }
        }
    }
    return out;
}

} // namespace cadlag
