#include "cadlag/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cadlag {

namespace {

void check_compatible(const StepPath& x, const StepPath& y) {
    if (x.dimension() != y.dimension())
        throw std::invalid_argument("metric: dimension mismatch");
    if (x.horizon() != y.horizon()) throw std::invalid_argument("metric: horizon mismatch");
}

double dist_to_interval(double v, double lo, double hi) {
    if (v < lo) return lo - v;
    if (v > hi) return hi - v;
    return 0.0;
}

// Alignment data for the exact J1 computation. State (r, c) means x sits on
// plateau r and y on plateau c; matched jumps advance both, an unmatched jump
// advances one side and must map into the other side's current plateau
// interval.
struct J1Data {
    std::size_t m, k, d;
    double T;
    std::vector<double> s, u;       // jump times of x and y
    std::vector<Vec> px, py;        // plateau values

    explicit J1Data(const StepPath& x, const StepPath& y)
        : m(x.jump_count()), k(y.jump_count()), d(x.dimension()), T(x.horizon()),
          s(x.jump_times()), u(y.jump_times()) {
        px.reserve(m + 1);
        py.reserve(k + 1);
        for (std::size_t r = 0; r <= m; ++r) px.push_back(x.plateau(r));
        for (std::size_t c = 0; c <= k; ++c) py.push_back(y.plateau(c));
    }

    bool cell_ok(std::size_t r, std::size_t c, double D) const {
        for (std::size_t i = 0; i < d; ++i)
            if (std::abs(px[r][i] - py[c][i]) > D) return false;
        return true;
    }
    // Time interval of x's plateau r / y's plateau c.
    void x_interval(std::size_t r, double& lo, double& hi) const {
        lo = r >= 1 ? s[r - 1] : 0.0;
        hi = r < m ? s[r] : T;
    }
    void y_interval(std::size_t c, double& lo, double& hi) const {
        lo = c >= 1 ? u[c - 1] : 0.0;
        hi = c < k ? u[c] : T;
    }

    bool feasible(double D) const {
        std::vector<char> prev(k + 1, 0), cur(k + 1, 0);
        double lo, hi;
        prev[0] = cell_ok(0, 0, D) ? 1 : 0;
        for (std::size_t c = 1; c <= k; ++c) {
            if (!prev[c - 1] || !cell_ok(0, c, D)) continue;
            x_interval(0, lo, hi);
            if (dist_to_interval(u[c - 1], lo, hi) <= D) prev[c] = 1;
        }
        for (std::size_t r = 1; r <= m; ++r) {
            std::fill(cur.begin(), cur.end(), 0);
            for (std::size_t c = 0; c <= k; ++c) {
                if (!cell_ok(r, c, D)) continue;
                if (prev[c]) {
                    y_interval(c, lo, hi);
                    if (dist_to_interval(s[r - 1], lo, hi) <= D) cur[c] = 1;
                }
                if (!cur[c] && c >= 1 && prev[c - 1] && std::abs(s[r - 1] - u[c - 1]) <= D)
                    cur[c] = 1;
                if (!cur[c] && c >= 1 && cur[c - 1]) {
                    x_interval(r, lo, hi);
                    if (dist_to_interval(u[c - 1], lo, hi) <= D) cur[c] = 1;
                }
            }
            std::swap(prev, cur);
        }
        return prev[k] != 0;
    }
};

} // namespace

double j1_distance(const StepPath& x, const StepPath& y) {
    check_compatible(x, y);
    if (x == y) return 0.0;
    J1Data dp(x, y);

    // The optimum pins either a plateau-value mismatch or a time distortion
    // against a jump time or a horizon endpoint; collecting all of those gives
    // a finite candidate set containing the infimum.
    std::vector<double> cand;
    cand.push_back(0.0);
    for (std::size_t r = 0; r <= dp.m; ++r)
        for (std::size_t c = 0; c <= dp.k; ++c)
            for (std::size_t i = 0; i < dp.d; ++i)
                cand.push_back(std::abs(dp.px[r][i] - dp.py[c][i]));
    for (double t : dp.s) {
        cand.push_back(t);
        cand.push_back(dp.T - t);
        for (double v : dp.u) cand.push_back(std::abs(t - v));
    }
    for (double v : dp.u) {
        cand.push_back(v);
        cand.push_back(dp.T - v);
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

    std::size_t lo = 0, hi = cand.size() - 1;
    if (!dp.feasible(cand[hi]))
        throw std::logic_error("j1_distance: no feasible candidate");
    while (lo < hi) {
        std::size_t mid = lo + (hi - lo) / 2;
        if (dp.feasible(cand[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    return cand[lo];
}

std::vector<std::pair<double, double>> sample_completed_graph(const CompletedGraph& g,
                                                              double h) {
    std::vector<std::pair<double, double>> out;
    if (g.times.empty()) return out;
    out.emplace_back(g.times[0], g.points[0][0]);
    for (std::size_t s = 0; s + 1 < g.times.size(); ++s) {
        double t0 = g.times[s], t1 = g.times[s + 1];
        double v0 = g.points[s][0], v1 = g.points[s + 1][0];
        double len = std::max(std::abs(t1 - t0), std::abs(v1 - v0));
        std::size_t pieces = std::max<std::size_t>(1, (std::size_t)std::ceil(len / h));
        for (std::size_t p = 1; p <= pieces; ++p) {
            double a = (double)p / (double)pieces;
            out.emplace_back(t0 + a * (t1 - t0), v0 + a * (v1 - v0));
        }
    }
    return out;
}

double discrete_frechet(const std::vector<std::pair<double, double>>& p,
                        const std::vector<std::pair<double, double>>& q) {
    if (p.empty() || q.empty()) throw std::invalid_argument("discrete_frechet: empty polyline");
    auto rho = [&](std::size_t i, std::size_t j) {
        return std::max(std::abs(p[i].first - q[j].first),
                        std::abs(p[i].second - q[j].second));
    };
    const std::size_t n = p.size(), m = q.size();
    std::vector<double> row(m);
    row[0] = rho(0, 0);
    for (std::size_t j = 1; j < m; ++j) row[j] = std::max(row[j - 1], rho(0, j));
    for (std::size_t i = 1; i < n; ++i) {
        double diag = row[0];
        row[0] = std::max(row[0], rho(i, 0));
        for (std::size_t j = 1; j < m; ++j) {
            double reach = std::min({row[j], diag, row[j - 1]});
            diag = row[j];
            row[j] = std::max(reach, rho(i, j));
        }
    }
    return row[m - 1];
}

double m1_distance(const StepPath& x, const StepPath& y, const MetricConfig& cfg) {
    check_compatible(x, y);
    if (x == y) return 0.0;
    double eps = cfg.eps_dp > 0.0 ? cfg.eps_dp : 1e-3 * x.horizon();

    double best = 0.0;
    for (std::size_t i = 0; i < x.dimension(); ++i) {
        CompletedGraph gx = x.coordinate(i).completed_graph();
        CompletedGraph gy = y.coordinate(i).completed_graph();
        double h = eps;
        double val = discrete_frechet(sample_completed_graph(gx, h),
                                      sample_completed_graph(gy, h));
        for (int level = 1; level < cfg.max_refinement_levels; ++level) {
            h *= 0.5;
            double finer = discrete_frechet(sample_completed_graph(gx, h),
                                            sample_completed_graph(gy, h));
            bool stable = std::abs(finer - val) <= eps / 8.0;
            val = finer;
            if (stable) break;
        }
        best = std::max(best, val);
    }
    return best;
}

} // namespace cadlag
