#include "cadlag/moduli.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cadlag {

double segment_distance(const Vec& c, const Vec& a, const Vec& b) {
    const std::size_t d = c.size();
    if (a.size() != d || b.size() != d)
        throw std::invalid_argument("segment_distance: dimension mismatch");
    if (d == 1) {
        double lo = std::min(a[0], b[0]), hi = std::max(a[0], b[0]);
        return std::max({0.0, c[0] - hi, lo - c[0]});
    }
    // g(lambda) = max_i |e_i - lambda f_i| with e = c - b, f = a - b is convex
    // piecewise linear; its minimum over [0,1] sits at an endpoint or at a
    // crossing of two of the 2d lines +-(e_i - lambda f_i).
    Vec e(d), f(d);
    for (std::size_t i = 0; i < d; ++i) {
        e[i] = c[i] - b[i];
        f[i] = a[i] - b[i];
    }
    auto g = [&](double lam) {
        double m = 0.0;
        for (std::size_t i = 0; i < d; ++i) m = std::max(m, std::abs(e[i] - lam * f[i]));
        return m;
    };
    double best = std::min(g(0.0), g(1.0));
    auto try_lambda = [&](double lam) {
        if (lam > 0.0 && lam < 1.0) best = std::min(best, g(lam));
    };
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i; j < d; ++j) {
            for (int s1 : {-1, 1}) {
                for (int s2 : {-1, 1}) {
                    if (i == j && s1 == s2) continue;
                    double denom = s2 * f[j] - s1 * f[i];
                    if (denom == 0.0) continue;
                    try_lambda((s2 * e[j] - s1 * e[i]) / denom);
                }
            }
        }
    }
    return best;
}

namespace {

// Generalized time position: either a single breakpoint or the open interval
// between two consecutive breakpoints. Together they cover [lo, hi] exactly
// and each carries constant path values, including under left-limit
// evaluation (a left limit differs from the value only at a breakpoint).
struct Pos {
    double lo, hi;
    bool lo_open, hi_open;
    double mid() const { return lo == hi ? lo : 0.5 * (lo + hi); }
};

struct Bnd {
    double v;
    bool strict;
};

bool bounds_ok(const std::vector<Bnd>& lowers, const std::vector<Bnd>& uppers) {
    for (const Bnd& l : lowers)
        for (const Bnd& u : uppers) {
            if (l.strict || u.strict) {
                if (!(l.v < u.v)) return false;
            } else {
                if (!(l.v <= u.v)) return false;
            }
        }
    return true;
}

std::vector<double> breakpoints_in(const std::vector<double>& all, double lo, double hi) {
    std::vector<double> b;
    b.push_back(lo);
    for (double t : all)
        if (t > lo && t < hi) b.push_back(t);
    b.push_back(hi);
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return b;
}

std::vector<Pos> make_positions(const std::vector<double>& bp) {
    std::vector<Pos> ps;
    ps.reserve(2 * bp.size());
    for (std::size_t i = 0; i < bp.size(); ++i) {
        ps.push_back(Pos{bp[i], bp[i], false, false});
        if (i + 1 < bp.size()) ps.push_back(Pos{bp[i], bp[i + 1], true, true});
    }
    return ps;
}

Vec pos_value(const StepPath& p, const Pos& pos, Eval ev) {
    if (pos.lo == pos.hi)
        return ev == Eval::cadlag ? p.eval(pos.lo) : p.left_limit(pos.lo);
    // no breakpoint strictly inside, so value and left limit agree there
    return p.eval(pos.mid());
}

// Feasibility of s < t < u <= s + delta with each variable in its position.
bool feasible_chain_delta(const Pos& rs, const Pos& rt, const Pos& ru, double delta) {
    if (!(rt.lo < ru.hi)) return false; // t < u forces sup u above inf t
    std::vector<Bnd> lowers = {
        {rs.lo, rs.lo_open},
        {ru.lo - delta, ru.lo_open},
        {rt.lo - delta, true},
    };
    std::vector<Bnd> uppers = {
        {rs.hi, rs.hi_open},
        {rt.hi, true},
        {ru.hi, true},
    };
    return bounds_ok(lowers, uppers);
}

// Feasibility of s <= t <= r with t - delta <= s and r <= t + delta.
bool feasible_bracket(const Pos& rs, const Pos& rt, const Pos& rr, double delta) {
    std::vector<Bnd> lowers = {
        {rt.lo, rt.lo_open},
        {rs.lo, rs.lo_open},
        {rr.lo - delta, rr.lo_open},
    };
    std::vector<Bnd> uppers = {
        {rt.hi, rt.hi_open},
        {rs.hi + delta, rs.hi_open},
        {rr.hi, rr.hi_open},
    };
    return bounds_ok(lowers, uppers);
}

// Feasibility of u < s < r.
bool feasible_strict_chain(const Pos& r1, const Pos& r2, const Pos& r3) {
    std::vector<Bnd> lowers = {
        {r2.lo, r2.lo_open},
        {r1.lo, true},
    };
    std::vector<Bnd> uppers = {
        {r2.hi, r2.hi_open},
        {r3.hi, true},
    };
    return bounds_ok(lowers, uppers);
}

// Per-coordinate min/max of path values over the closed window [a, b].
void value_range_closed(const StepPath& x, double a, double b, Vec& mn, Vec& mx) {
    const std::size_t d = x.dimension();
    Vec v = x.eval(a);
    mn = v;
    mx = v;
    auto fold = [&](const Vec& w) {
        for (std::size_t i = 0; i < d; ++i) {
            mn[i] = std::min(mn[i], w[i]);
            mx[i] = std::max(mx[i], w[i]);
        }
    };
    for (double t : x.jump_times()) {
        if (t <= a) continue;
        if (t > b) break;
        fold(x.eval(t));
    }
}

// Shared core of the M1 oscillation modulus:
//   sup { dist(x_t, [x_s, x_r]) : lo <= s <= t <= r <= hi, t-delta <= s, r <= t+delta }.
double m1_mod_impl(const StepPath& x, double lo, double hi, double delta) {
    if (!(delta > 0.0) || !(hi > lo)) return 0.0;
    if (lo < 0.0 || hi > x.horizon())
        throw std::domain_error("m1 modulus: window outside [0, T]");

    if (x.dimension() == 1) {
        // For each critical t the best (s, r) decouple: the objective is
        // monotone in x_s and x_r separately, so window value ranges suffice.
        std::vector<double> crit;
        crit.push_back(lo);
        crit.push_back(hi);
        for (double b : x.jump_times()) {
            for (double c : {b, b - delta, b + delta})
                if (c >= lo && c <= hi) crit.push_back(c);
        }
        std::sort(crit.begin(), crit.end());
        crit.erase(std::unique(crit.begin(), crit.end()), crit.end());

        double best = 0.0;
        auto eval_at = [&](double t) {
            double a = std::max(lo, t - delta), b = std::min(hi, t + delta);
            Vec mnS, mxS, mnR, mxR;
            value_range_closed(x, a, t, mnS, mxS);
            value_range_closed(x, t, b, mnR, mxR);
            double xt = x.eval(t)[0];
            double up = xt - std::max(mnS[0], mnR[0]);
            double dn = std::min(mxS[0], mxR[0]) - xt;
            best = std::max({best, up, dn});
        };
        for (double c : crit) eval_at(c);
        for (std::size_t i = 0; i + 1 < crit.size(); ++i) eval_at(0.5 * (crit[i] + crit[i + 1]));
        return best;
    }

    auto positions = make_positions(breakpoints_in(x.jump_times(), lo, hi));
    std::vector<Vec> vals(positions.size());
    for (std::size_t i = 0; i < positions.size(); ++i)
        vals[i] = pos_value(x, positions[i], Eval::cadlag);

    double best = 0.0;
    for (std::size_t it = 0; it < positions.size(); ++it) {
        for (std::size_t is = 0; is <= it; ++is) {
            if (positions[is].lo > positions[it].hi) continue;
            for (std::size_t ir = it; ir < positions.size(); ++ir) {
                if (!feasible_bracket(positions[is], positions[it], positions[ir], delta)) continue;
                best = std::max(best, segment_distance(vals[it], vals[is], vals[ir]));
            }
        }
    }
    return best;
}

} // namespace

double m1_modulus(const StepPath& x, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("m1_modulus: delta must be positive");
    return m1_mod_impl(x, 0.0, x.horizon(), delta);
}

double m1_modulus_window(const StepPath& x, double t1, double t2) {
    if (t1 < 0.0 || t2 > x.horizon())
        throw std::domain_error("m1_modulus_window: window outside [0, T]");
    if (!(t1 <= t2))
        throw std::invalid_argument("m1_modulus_window: window must satisfy t1 <= t2");
    return m1_mod_impl(x, t1, t2, std::numeric_limits<double>::infinity());
}

double local_oscillation(const StepPath& x, double t, double delta) {
    if (t < 0.0 || t > x.horizon()) throw std::domain_error("local_oscillation: t outside [0, T]");
    if (!(delta > 0.0)) return 0.0;
    double a = std::max(0.0, t - delta), b = std::min(x.horizon(), t + delta);
    Vec mn, mx;
    value_range_closed(x, a, b, mn, mx);
    double m = 0.0;
    for (std::size_t i = 0; i < mn.size(); ++i) m = std::max(m, mx[i] - mn[i]);
    return m;
}

double consecutive_increment_modulus(const StepPath& x, const StepPath& y, double delta,
                                     Eval ex, Eval ey) {
    if (x.horizon() != y.horizon())
        throw std::invalid_argument("consecutive_increment_modulus: horizon mismatch");
    if (x.dimension() != y.dimension())
        throw std::invalid_argument("consecutive_increment_modulus: dimension mismatch");
    if (!(delta > 0.0)) return 0.0;
    const std::size_t d = x.dimension();

    std::vector<double> all = merged_breakpoints(x, y);
    auto positions = make_positions(breakpoints_in(all, 0.0, x.horizon()));
    const std::size_t n = positions.size();
    std::vector<Vec> vx(n), vy(n);
    for (std::size_t i = 0; i < n; ++i) {
        vx[i] = pos_value(x, positions[i], ex);
        vy[i] = pos_value(y, positions[i], ey);
    }

    double best = 0.0;
    for (std::size_t is = 0; is < n; ++is) {
        for (std::size_t it = is; it < n; ++it) {
            double xin = 0.0;
            for (std::size_t i = 0; i < d; ++i)
                xin = std::max(xin, std::abs(vx[is][i] - vx[it][i]));
            if (xin <= best) continue;
            for (std::size_t iu = it; iu < n; ++iu) {
                if (!feasible_chain_delta(positions[is], positions[it], positions[iu], delta))
                    continue;
                double v = 0.0;
                for (std::size_t i = 0; i < d; ++i)
                    v = std::max(v, std::min(std::abs(vx[is][i] - vx[it][i]),
                                             std::abs(vy[it][i] - vy[iu][i])));
                best = std::max(best, v);
            }
        }
    }
    return best;
}

long increment_count(const StepPath& x, double a) {
    if (!(a > 0.0)) throw std::invalid_argument("increment_count: threshold must be positive");
    const std::size_t d = x.dimension();
    long count = 0;
    Vec mn = x.initial_value(), mx = x.initial_value();
    auto fold_and_test = [&](const Vec& v) {
        for (std::size_t i = 0; i < d; ++i) {
            mn[i] = std::min(mn[i], v[i]);
            mx[i] = std::max(mx[i], v[i]);
        }
        for (std::size_t i = 0; i < d; ++i) {
            if (mx[i] - mn[i] >= a) {
                ++count;
                mn = v;
                mx = v;
                return;
            }
        }
    };
    for (std::size_t k = 0; k < x.jump_count(); ++k) fold_and_test(x.value_after_jump(k));
    return count;
}

double first_large_increment_time(const StepPath& alpha, double a, double t, double mu) {
    if (t < 0.0) throw std::domain_error("first_large_increment_time: t must be >= 0");
    if (!(mu > 0.0)) throw std::invalid_argument("first_large_increment_time: mu must be positive");
    const double T = alpha.horizon();
    // Between jumps the trailing-window oscillation around alpha(s) can only
    // shrink, so the infimum is attained at a jump time.
    for (double s : alpha.jump_times()) {
        if (s <= t) continue;
        if (s > T) break;
        double w = std::max(t, s - mu);
        Vec mn, mx;
        value_range_closed(alpha, w, s, mn, mx);
        Vec vs = alpha.eval(s);
        double osc = 0.0;
        for (std::size_t i = 0; i < mn.size(); ++i)
            osc = std::max({osc, std::abs(mn[i] - vs[i]), std::abs(mx[i] - vs[i])});
        if (osc > a) return s;
    }
    return T + 1.0;
}

double window_ordered_increment_sup(const StepPath& x, const StepPath& y, double lo, double hi) {
    if (x.horizon() != y.horizon())
        throw std::invalid_argument("window_ordered_increment_sup: horizon mismatch");
    lo = std::max(lo, 0.0);
    hi = std::min(hi, x.horizon());
    if (!(hi > lo)) return 0.0;

    std::vector<double> all = merged_breakpoints(x, y);
    auto positions = make_positions(breakpoints_in(all, lo, hi));
    const std::size_t n = positions.size();
    std::vector<Vec> vx(n), vyl(n);
    for (std::size_t i = 0; i < n; ++i) {
        vx[i] = pos_value(x, positions[i], Eval::cadlag);
        vyl[i] = pos_value(y, positions[i], Eval::left_limit);
    }

    double best = 0.0;
    for (std::size_t iu = 0; iu < n; ++iu) {
        for (std::size_t is = iu; is < n; ++is) {
            double xin = 0.0;
            for (std::size_t i = 0; i < vx[iu].size(); ++i)
                xin = std::max(xin, std::abs(vx[iu][i] - vx[is][i]));
            if (xin <= best) continue;
            for (std::size_t ir = is; ir < n; ++ir) {
                if (!feasible_strict_chain(positions[iu], positions[is], positions[ir])) continue;
                double yin = 0.0;
                for (std::size_t i = 0; i < vyl[is].size(); ++i)
                    yin = std::max(yin, std::abs(vyl[is][i] - vyl[ir][i]));
                best = std::max(best, std::min(xin, yin));
            }
        }
    }
    return best;
}

} // namespace cadlag
