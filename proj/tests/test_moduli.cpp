#include "doctest.h"

#include "cadlag/moduli.hpp"
#include "helpers.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

using namespace cadlag;

namespace {

// Enriched time grid: jump times, near-left-limit companions, delta-shifted
// copies, plateau midpoints and the interval ends. For step paths a sup over
// real times of any functional of path values at window-constrained tuples is
// attained on this grid (values are locally constant, eta is far below the
// smallest plateau width used in these tests).
std::vector<double> oracle_grid(const std::vector<const StepPath*>& paths, double delta,
                                double T) {
    const double eta = 1e-7 * T;
    std::vector<double> g{0.0, T};
    auto add = [&](double t) {
        if (t >= 0.0 && t <= T) g.push_back(t);
    };
    std::vector<double> base{0.0, T};
    for (const auto* p : paths)
        for (double b : p->jump_times()) base.push_back(b);
    for (double b : base) {
        for (double off : {0.0, -eta, eta}) {
            add(b + off);
            if (delta > 0.0) {
                add(b - delta + off);
                add(b + delta + off);
            }
        }
    }
    std::sort(base.begin(), base.end());
    for (std::size_t i = 1; i < base.size(); ++i) add(0.5 * (base[i - 1] + base[i]));
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

double scalar_segment_dist(double c, double a, double b) {
    const double lo = std::min(a, b), hi = std::max(a, b);
    return std::max(0.0, std::max(c - hi, lo - c));
}

double wprime_oracle(const StepPath& x, double delta) {
    const auto g = oracle_grid({&x}, delta, x.horizon());
    double best = 0.0;
    for (std::size_t it = 0; it < g.size(); ++it) {
        const double t = g[it];
        const double vt = x.eval(t)[0];
        for (std::size_t is = 0; is <= it; ++is) {
            if (g[is] < t - delta) continue;
            const double vs = x.eval(g[is])[0];
            for (std::size_t ir = it; ir < g.size(); ++ir) {
                if (g[ir] > t + delta) break;
                best = std::max(best, scalar_segment_dist(vt, vs, x.eval(g[ir])[0]));
            }
        }
    }
    return best;
}

double wprime_vector_oracle(const StepPath& x, double delta) {
    const auto g = oracle_grid({&x}, delta, x.horizon());
    double best = 0.0;
    for (std::size_t it = 0; it < g.size(); ++it) {
        const Vec vt = x.eval(g[it]);
        for (std::size_t is = 0; is <= it; ++is) {
            if (g[is] < g[it] - delta) continue;
            const Vec vs = x.eval(g[is]);
            for (std::size_t ir = it; ir < g.size(); ++ir) {
                if (g[ir] > g[it] + delta) break;
                best = std::max(best, segment_distance(vt, vs, x.eval(g[ir])));
            }
        }
    }
    return best;
}

double hatw_oracle(const StepPath& x, const StepPath& y, double delta, Eval ex, Eval ey) {
    const auto g = oracle_grid({&x, &y}, delta, x.horizon());
    auto xv = [&](double t) { return ex == Eval::cadlag ? x.eval(t) : x.left_limit(t); };
    auto yv = [&](double t) { return ey == Eval::cadlag ? y.eval(t) : y.left_limit(t); };
    double best = 0.0;
    for (std::size_t is = 0; is < g.size(); ++is) {
        const Vec xs = xv(g[is]);
        for (std::size_t it = is + 1; it < g.size(); ++it) {
            if (g[it] >= g[is] + delta) break;
            const Vec xt = xv(g[it]);
            const Vec yt = yv(g[it]);
            for (std::size_t iu = it + 1; iu < g.size(); ++iu) {
                if (g[iu] > g[is] + delta) break;
                const Vec yu = yv(g[iu]);
                for (std::size_t i = 0; i < xs.size(); ++i) {
                    const double inc =
                        std::min(std::abs(xs[i] - xt[i]), std::abs(yt[i] - yu[i]));
                    best = std::max(best, inc);
                }
            }
        }
    }
    return best;
}

// Max number of ordered value pairs with |v_j - v_i| >= a, dynamic program
// over the plateau value sequence (pairs may share endpoints in time order).
long pair_count_oracle(const StepPath& x, double a) {
    std::vector<double> v;
    v.push_back(x.initial_value()[0]);
    for (std::size_t k = 0; k < x.jump_count(); ++k) v.push_back(x.value_after_jump(k)[0]);
    const std::size_t m = v.size();
    std::vector<long> memo(m + 1, -1);
    std::function<long(std::size_t)> best = [&](std::size_t k) -> long {
        if (k >= m) return 0;
        if (memo[k] >= 0) return memo[k];
        long r = best(k + 1);
        for (std::size_t j = k + 1; j < m; ++j)
            if (std::abs(v[j] - v[k]) >= a) r = std::max(r, 1 + best(j));
        return memo[k] = r;
    };
    return best(0);
}

StepPath spike_path(long n) { // the two-sided excursion of height 1/2
    return StepPath::scalar(2.0, 0.0, {{1.0 - 3.0 / n, 0.5}, {1.0 - 1.0 / n, 0.0}});
}

} // namespace

TEST_SUITE("moduli") {

TEST_CASE("m1_modulus closed forms") {
    // monotone staircase: every value lies on the flanking segment
    std::vector<std::pair<double, double>> steps;
    for (int k = 1; k <= 10; ++k) steps.emplace_back(k * 0.09, k * 0.1);
    const StepPath stair = StepPath::scalar(1.0, 0.0, steps);
    CHECK(m1_modulus(stair, 0.05) == 0.0);
    CHECK(m1_modulus(stair, 0.5) == 0.0);

    CHECK(m1_modulus(StepPath::scalar(2.0, 0.0, {{1.0, 1.0}}), 0.3) == 0.0);
    CHECK(m1_modulus(StepPath::scalar(2.0, 0.0, {{1.0, 1.0}}), 1.7) == 0.0);

    // spike of height 0.5: apex vs the zero segment around it
    CHECK(m1_modulus(spike_path(10), 0.5) == 0.5);
    CHECK(m1_modulus(spike_path(10), 0.25) == 0.5);
}

TEST_CASE("m1_modulus is non-decreasing in delta and zero for monotone paths") {
    std::mt19937_64 rng(201);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int it = 0; it < 30; ++it) {
        const StepPath x = testutil::random_scalar_path(rng, 1.0, 8);
        double prev = 0.0;
        for (double delta : {0.02, 0.1, 0.3, 0.9}) {
            const double w = m1_modulus(x, delta);
            CHECK(w >= prev - 1e-15);
            prev = w;
        }
        // monotone rearrangement has modulus zero
        std::vector<std::pair<double, double>> ks;
        double lvl = 0.0;
        for (double t : x.jump_times()) {
            lvl += unif(rng);
            ks.emplace_back(t, lvl);
        }
        CHECK(m1_modulus(StepPath::scalar(1.0, 0.0, ks), 0.4) == 0.0);
    }
}

TEST_CASE("m1_modulus agrees with dense-grid oracle, scalar") {
    std::mt19937_64 rng(202);
    std::uniform_real_distribution<double> dd(0.05, 0.6);
    for (int it = 0; it < 40; ++it) {
        const StepPath x = testutil::random_scalar_path(rng, 1.0, 7);
        const double delta = dd(rng);
        CHECK(std::abs(m1_modulus(x, delta) - wprime_oracle(x, delta)) <= 1e-9);
    }
}

TEST_CASE("m1_modulus agrees with dense-grid oracle, vector") {
    std::mt19937_64 rng(203);
    std::uniform_real_distribution<double> dd(0.05, 0.6);
    for (int it = 0; it < 25; ++it) {
        const StepPath x = testutil::random_vector_path(rng, 2, 1.0, 5);
        const double delta = dd(rng);
        CHECK(std::abs(m1_modulus(x, delta) - wprime_vector_oracle(x, delta)) <= 1e-9);
    }
}

TEST_CASE("m1_modulus_window") {
    const StepPath z = spike_path(10); // spike on [0.7, 0.9)
    CHECK(m1_modulus_window(z, 0.5, 1.0) == 0.5);
    CHECK(m1_modulus_window(z, 0.0, 0.7) == 0.0);  // spike not inside
    CHECK(m1_modulus_window(z, 0.75, 0.85) == 0.0); // constant inside
    std::mt19937_64 rng(204);
    for (int it = 0; it < 20; ++it) {
        const StepPath x = testutil::random_scalar_path(rng, 1.0, 8);
        // window modulus with full window equals w' with delta >= T
        CHECK(m1_modulus_window(x, 0.0, 1.0) == doctest::Approx(m1_modulus(x, 2.0)).epsilon(1e-12));
    }
}

TEST_CASE("segment_distance") {
    CHECK(segment_distance(Vec{0.0}, Vec{-1.0}, Vec{2.0}) == 0.0);
    CHECK(segment_distance(Vec{3.0}, Vec{0.0}, Vec{1.0}) == 2.0);
    CHECK(segment_distance(Vec{0.0, 0.0}, Vec{-1.0, -1.0}, Vec{1.0, 1.0}) == 0.0);
    CHECK(segment_distance(Vec{1.0, 0.0}, Vec{0.0, 0.0}, Vec{0.0, 0.0}) == 1.0);
    CHECK(segment_distance(Vec{0.5, 0.3}, Vec{0.0, 0.0}, Vec{1.0, 1.0}) ==
          doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("local_oscillation") {
    CHECK(local_oscillation(StepPath::constant(1, 2.0, Vec{3.0}), 1.0, 0.5) == 0.0);
    const StepPath ind = StepPath::scalar(2.0, 0.0, {{1.0, 1.0}});
    CHECK(local_oscillation(ind, 1.0, 0.1) == 1.0);
    CHECK(local_oscillation(ind, 0.5, 0.1) == 0.0);
    CHECK(local_oscillation(ind, 0.95, 0.1) == 1.0); // window [0.85, 1.05] straddles
}

TEST_CASE("consecutive_increment_modulus closed forms") {
    // integrand jumps 1->3 at 0.8, integrator jumps 0->1 at 0.9
    const StepPath H = StepPath::scalar(2.0, 1.0, {{0.8, 3.0}});
    const StepPath X = StepPath::scalar(2.0, 0.0, {{0.9, 1.0}});
    CHECK(consecutive_increment_modulus(H, X, 0.2) == 1.0);
    CHECK(consecutive_increment_modulus(H, X, 0.05) == 0.0); // jumps 0.1 apart

    // reversed order: integrand jumps only after the integrator
    const StepPath Hlate = StepPath::scalar(2.0, 1.0, {{1.0 + 1.0 / 11, 3.0}});
    const StepPath X11 = StepPath::scalar(2.0, 0.0, {{1.0 - 1.0 / 11, 1.0}});
    CHECK(consecutive_increment_modulus(Hlate, X11, 0.05) == 0.0);
    CHECK(consecutive_increment_modulus(Hlate, X11, 1.0) == 0.0);

    CHECK(consecutive_increment_modulus(H, StepPath::constant(1, 2.0, Vec{5.0}), 0.5) == 0.0);
}

TEST_CASE("consecutive_increment_modulus agrees with dense-grid oracle") {
    std::mt19937_64 rng(205);
    std::uniform_real_distribution<double> dd(0.05, 0.5);
    for (int it = 0; it < 30; ++it) {
        const StepPath x = testutil::random_scalar_path(rng, 1.0, 6);
        const StepPath y = testutil::random_scalar_path(rng, 1.0, 6);
        const double delta = dd(rng);
        for (Eval ex : {Eval::cadlag, Eval::left_limit})
            for (Eval ey : {Eval::cadlag, Eval::left_limit}) {
                const double got = consecutive_increment_modulus(x, y, delta, ex, ey);
                const double want = hatw_oracle(x, y, delta, ex, ey);
                CHECK(std::abs(got - want) <= 1e-9);
            }
    }
    // vector case
    for (int it = 0; it < 12; ++it) {
        const StepPath x = testutil::random_vector_path(rng, 2, 1.0, 4);
        const StepPath y = testutil::random_vector_path(rng, 2, 1.0, 4);
        const double delta = dd(rng);
        const double got = consecutive_increment_modulus(x, y, delta);
        CHECK(std::abs(got - hatw_oracle(x, y, delta, Eval::cadlag, Eval::cadlag)) <= 1e-9);
    }
}

TEST_CASE("increment_count") {
    CHECK(increment_count(StepPath::constant(1, 2.0, Vec{1.0}), 0.5) == 0);
    CHECK(increment_count(StepPath::scalar(2.0, 0.0, {{1.0, 1.0}}), 0.5) == 1);
    CHECK(increment_count(spike_path(10), 0.4) == 2); // up 0.5, then down 0.5

    std::mt19937_64 rng(206);
    for (int it = 0; it < 60; ++it) {
        const StepPath x = testutil::random_integer_path(rng, 1.0, 8);
        for (double a : {0.5, 1.5, 2.5}) // thresholds between integer levels: no ties
            CHECK(increment_count(x, a) == pair_count_oracle(x, a));
    }
    for (int it = 0; it < 30; ++it) {
        const StepPath x = testutil::random_scalar_path(rng, 1.0, 10);
        std::uniform_real_distribution<double> aa(0.05, 1.5);
        const double a = aa(rng);
        CHECK(increment_count(x, a) == pair_count_oracle(x, a));
    }
}

TEST_CASE("first_large_increment_time") {
    const StepPath ind = StepPath::scalar(2.0, 0.0, {{1.0, 1.0}});
    CHECK(first_large_increment_time(ind, 0.5, 0.0, 0.25) == 1.0);
    CHECK(first_large_increment_time(ind, 1.5, 0.0, 0.25) == 3.0); // sentinel T + 1
    CHECK(first_large_increment_time(StepPath::constant(1, 2.0, Vec{4.0}), 0.1, 0.0, 0.5) == 3.0);
    // start strictly after the jump: nothing left
    CHECK(first_large_increment_time(ind, 0.5, 1.0, 0.25) == 3.0);
    // trailing window too short to see the pre-jump level
    const StepPath two = StepPath::scalar(2.0, 0.0, {{0.5, 0.4}, {1.0, 1.0}});
    CHECK(first_large_increment_time(two, 0.5, 0.0, 10.0) == 1.0); // vs level 0: 1.0 > 0.5
    CHECK(first_large_increment_time(two, 0.5, 0.0, 0.3) == 1.0);  // vs level 0.4: 0.6 > 0.5
}

TEST_CASE("first_large_increment_time monotone and right-continuous in the threshold") {
    std::mt19937_64 rng(207);
    for (int it = 0; it < 30; ++it) {
        const StepPath x = testutil::random_scalar_path(rng, 1.0, 8);
        std::vector<double> thresholds{0.05, 0.2, 0.5, 1.0, 2.0};
        for (std::size_t k = 0; k < x.jump_count(); ++k)
            thresholds.push_back(sup_norm(x.jump_at(x.jump_time(k))));
        std::sort(thresholds.begin(), thresholds.end());
        double prev = 0.0;
        for (double a : thresholds) {
            if (a <= 0.0) continue;
            const double tau = first_large_increment_time(x, a, 0.0, 0.3);
            CHECK(tau >= prev);
            // right continuity: the strict > a trigger makes a -> tau(a) flat
            // immediately to the right of every threshold
            CHECK(first_large_increment_time(x, a * (1.0 + 1e-12), 0.0, 0.3) == tau);
            prev = tau;
        }
    }
}

TEST_CASE("first_large_increment_time stable under small jump-time shifts") {
    const StepPath a = StepPath::scalar(2.0, 0.0, {{0.6, 1.0}, {1.4, 0.2}});
    const double base = first_large_increment_time(a, 0.5, 0.0, 0.3);
    CHECK(base == 0.6);
    for (double h : {1e-4, 1e-3, 1e-2}) {
        const StepPath shifted = StepPath::scalar(2.0, 0.0, {{0.6 + h, 1.0}, {1.4, 0.2}});
        CHECK(first_large_increment_time(shifted, 0.5, 0.0, 0.3) == 0.6 + h);
    }
}

TEST_CASE("window_ordered_increment_sup") {
    const StepPath xfirst = StepPath::scalar(1.0, 0.0, {{0.3, 1.0}});
    const StepPath ylater = StepPath::scalar(1.0, 0.0, {{0.6, 1.0}});
    // x moves at 0.3, then y moves at 0.6: ordered pair of size 1 exists
    CHECK(window_ordered_increment_sup(xfirst, ylater, 0.0, 1.0) == 1.0);
    // y moves first: no x-increment precedes a y-increment
    CHECK(window_ordered_increment_sup(ylater, xfirst, 0.0, 1.0) == 0.0);
    // window that excludes the second jump
    CHECK(window_ordered_increment_sup(xfirst, ylater, 0.0, 0.5) == 0.0);

    std::mt19937_64 rng(208);
    for (int it = 0; it < 25; ++it) {
        const StepPath x = testutil::random_scalar_path(rng, 1.0, 6);
        const StepPath y = testutil::random_scalar_path(rng, 1.0, 6);
        const auto g = oracle_grid({&x, &y}, 0.0, 1.0);
        double want = 0.0;
        for (std::size_t iu = 0; iu < g.size(); ++iu)
            for (std::size_t is = iu + 1; is < g.size(); ++is)
                for (std::size_t ir = is + 1; ir < g.size(); ++ir) {
                    if (g[ir] > 1.0) break;
                    const double xi = std::abs(x.eval(g[iu])[0] - x.eval(g[is])[0]);
                    const double yi =
                        std::abs(y.left_limit(g[is])[0] - y.left_limit(g[ir])[0]);
                    want = std::max(want, std::min(xi, yi));
                }
        CHECK(std::abs(window_ordered_increment_sup(x, y, 0.0, 1.0) - want) <= 1e-9);
    }
}

TEST_CASE("moduli reject bad parameters") {
    const StepPath x = StepPath::scalar(1.0, 0.0, {{0.5, 1.0}});
    CHECK_THROWS_AS(m1_modulus(x, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(m1_modulus(x, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(increment_count(x, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(m1_modulus_window(x, 0.6, 0.4), std::invalid_argument);
}

} // TEST_SUITE
