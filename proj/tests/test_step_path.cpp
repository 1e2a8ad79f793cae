#include "doctest.h"

#include "cadlag/path_io.hpp"
#include "cadlag/step_path.hpp"
#include "helpers.hpp"

#include <cmath>
#include <random>
#include <sstream>

using namespace cadlag;

namespace {

StepPath indicator(double jump_time, double horizon, double size = 1.0) {
    return StepPath::scalar(horizon, 0.0, {{jump_time, size}});
}

// Example family: integrand jumping from 1 to 3, either before or after the
// integrator's single jump at 1 - 1/n.
StepPath integrand_early(long n) {
    return StepPath::scalar(2.0, 1.0, {{1.0 - 2.0 / n, 3.0}});
}

StepPath two_half_jumps(long n) {
    return StepPath::scalar(2.0, 0.0, {{1.0 - 3.0 / n, 0.5}, {1.0 - 1.0 / n, 1.0}});
}

} // namespace

TEST_SUITE("step_path") {

TEST_CASE("construction normalizes zero-size jumps and validates times") {
    StepPath p(1, 2.0, Vec{1.0}, {{0.5, Vec{1.0}}, {1.0, Vec{2.0}}});
    CHECK(p.jump_count() == 1); // the 0.5 knot repeats the value and is merged
    CHECK(p.jump_time(0) == 1.0);

    CHECK_THROWS_AS(StepPath(1, 2.0, Vec{0.0}, {{1.0, Vec{1.0}}, {0.5, Vec{2.0}}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(StepPath(1, 2.0, Vec{0.0}, {{-0.1, Vec{1.0}}}), std::invalid_argument);
    CHECK_THROWS_AS(StepPath(1, 2.0, Vec{0.0}, {{2.5, Vec{1.0}}}), std::invalid_argument);
    CHECK_THROWS_AS(StepPath(1, 2.0, Vec{0.0}, {{1.0, Vec{1.0, 2.0}}}), std::invalid_argument);
}

TEST_CASE("eval is right-continuous") {
    const StepPath p = indicator(1.0, 2.0);
    CHECK(p.eval(1.0)[0] == 1.0);
    CHECK(p.eval(0.99)[0] == 0.0);
    CHECK(p.eval(2.0)[0] == 1.0);
    CHECK(integrand_early(10).eval(0.85)[0] == 3.0);
    CHECK_THROWS_AS(p.eval(-0.01), std::domain_error);
    CHECK_THROWS_AS(p.eval(2.01), std::domain_error);
}

TEST_CASE("left_limit") {
    const StepPath p = indicator(1.0, 2.0);
    CHECK(p.left_limit(1.0)[0] == 0.0);
    CHECK(p.left_limit(1.5)[0] == 1.0);
    CHECK(p.left_limit(0.0)[0] == 0.0); // convention: x(0-) = x(0)
    CHECK(two_half_jumps(10).left_limit(0.9)[0] == 0.5);
    CHECK_THROWS_AS(p.left_limit(-0.5), std::domain_error);
}

TEST_CASE("jump_at and jumps_up_to") {
    const StepPath p = indicator(1.0, 2.0);
    CHECK(p.jump_at(1.0)[0] == 1.0);
    CHECK(p.jump_at(0.5)[0] == 0.0);

    const auto js = two_half_jumps(10).jumps_up_to(2.0);
    REQUIRE(js.size() == 2);
    CHECK(js[0].time == 0.7);
    CHECK(js[0].delta[0] == 0.5);
    CHECK(js[1].time == 0.9);
    CHECK(js[1].delta[0] == doctest::Approx(0.5).epsilon(1e-14));

    CHECK(two_half_jumps(10).jumps_up_to(0.8).size() == 1);
}

TEST_CASE("total_variation") {
    CHECK(indicator(1.0, 2.0).total_variation(2.0) == 1.0);
    CHECK(two_half_jumps(10).total_variation(2.0) == doctest::Approx(1.0).epsilon(1e-14));
    // spike: up 0.5 then back down to 0
    const StepPath spike = StepPath::scalar(2.0, 0.0, {{0.7, 0.5}, {0.9, 0.0}});
    CHECK(spike.total_variation(2.0) == 1.0);
    CHECK(spike.total_variation(0.8) == 0.5);
}

TEST_CASE("total_variation is additive over disjoint windows") {
    std::mt19937_64 rng(101);
    for (int it = 0; it < 50; ++it) {
        const StepPath p = testutil::random_scalar_path(rng, 1.0, 12);
        const double t1 = 0.3, t2 = 0.8;
        double mid = 0.0;
        for (const auto& j : p.jumps_up_to(t2))
            if (j.time > t1) mid += std::abs(j.delta[0]);
        CHECK(p.total_variation(t2) ==
              doctest::Approx(p.total_variation(t1) + mid).epsilon(1e-12));
    }
}

TEST_CASE("running_sup") {
    const StepPath p = indicator(1.0, 2.0);
    CHECK(p.running_sup(0.5) == 0.0);
    CHECK(p.running_sup(2.0) == 1.0);
    const StepPath flip = StepPath::scalar(2.0, 1.0, {{1.0, -1.0}});
    CHECK(flip.running_sup(2.0) == 1.0);

    std::mt19937_64 rng(102);
    for (int it = 0; it < 20; ++it) {
        const StepPath q = testutil::random_scalar_path(rng, 1.0, 10);
        double prev = 0.0;
        for (double t = 0.0; t <= 1.0; t += 0.05) {
            const double cur = q.running_sup(t);
            CHECK(cur >= prev);
            prev = cur;
        }
    }
}

TEST_CASE("eval/left_limit disagree exactly at stored jumps") {
    std::mt19937_64 rng(103);
    for (int it = 0; it < 40; ++it) {
        const StepPath p = testutil::random_scalar_path(rng, 1.0, 8);
        for (std::size_t k = 0; k < p.jump_count(); ++k) {
            const double t = p.jump_time(k);
            CHECK(p.eval(t)[0] != p.left_limit(t)[0]);
            CHECK(sup_norm(p.jump_at(t)) > 0.0);
        }
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        for (int s = 0; s < 10; ++s) {
            double t = unif(rng);
            bool stored = false;
            for (double jt : p.jump_times())
                if (jt == t) stored = true;
            if (!stored && t > 0.0) CHECK(sup_norm(p.jump_at(t)) == 0.0);
        }
    }
}

TEST_CASE("completed graph shape and endpoints") {
    const StepPath c = StepPath::constant(1, 2.0, Vec{0.7});
    CHECK(c.completed_graph().segment_count() == 1);

    const auto g = indicator(1.0, 2.0).completed_graph();
    REQUIRE(g.segment_count() == 3);
    CHECK(g.times == std::vector<double>{0.0, 1.0, 1.0, 2.0});
    CHECK(g.points[0][0] == 0.0);
    CHECK(g.points[1][0] == 0.0);
    CHECK(g.points[2][0] == 1.0);
    CHECK(g.points[3][0] == 1.0);

    // integrand flipping from 1 to -1 at 0.8: three segments, vertical drop of 2
    const auto gd = StepPath::scalar(2.0, 1.0, {{0.8, -1.0}}).completed_graph();
    REQUIRE(gd.segment_count() == 3);
    CHECK(gd.points[1][0] - gd.points[2][0] == 2.0);
    CHECK(gd.times[1] == 0.8);
    CHECK(gd.times[2] == 0.8);

    std::mt19937_64 rng(104);
    for (int it = 0; it < 20; ++it) {
        const StepPath p = testutil::random_scalar_path(rng, 1.0, 10);
        const auto gr = p.completed_graph();
        CHECK(gr.times.front() == 0.0);
        CHECK(gr.times.back() == 1.0);
        CHECK(gr.points.front()[0] == p.eval(0.0)[0]);
        CHECK(gr.points.back()[0] == p.eval(1.0)[0]);
        for (std::size_t i = 1; i < gr.times.size(); ++i) CHECK(gr.times[i] >= gr.times[i - 1]);
    }
}

TEST_CASE("arithmetic and scaling") {
    std::mt19937_64 rng(105);
    for (int it = 0; it < 30; ++it) {
        const StepPath x = testutil::random_integer_path(rng, 1.0, 6);
        const StepPath y = testutil::random_integer_path(rng, 1.0, 6);
        const StepPath s = x + y;
        const StepPath back = s - y;
        CHECK(back == x);
        CHECK((x.scaled(2.0) - x - x).jump_count() == 0);
        CHECK(sup_norm((-x + x).eval(0.7)) == 0.0);
    }
}

TEST_CASE("truncate_after and coordinate") {
    const StepPath p = two_half_jumps(10);
    const StepPath t = p.truncate_after(0.8);
    CHECK(t.jump_count() == 1);
    CHECK(t.eval(1.5)[0] == 0.5);
    CHECK(t.horizon() == p.horizon());

    StepPath v(2, 1.0, Vec{0.0, 1.0}, {{0.5, Vec{1.0, 1.0}}});
    const StepPath c0 = v.coordinate(0);
    CHECK(c0.dimension() == 1);
    CHECK(c0.jump_count() == 1);
    const StepPath c1 = v.coordinate(1);
    CHECK(c1.jump_count() == 0); // second coordinate never moves
}

TEST_CASE("window_sup_norm and sup_norm_distance") {
    const StepPath p = indicator(1.0, 2.0);
    CHECK(window_sup_norm(p, 0.0, 0.5) == 0.0);
    CHECK(window_sup_norm(p, 0.5, 1.0, false) == 0.0);  // [0.5, 1.0): jump excluded
    CHECK(window_sup_norm(p, 0.5, 1.0, true) == 1.0);   // [0.5, 1.0]: jump included
    CHECK(sup_norm_distance(p, StepPath::zero(1, 2.0)) == 1.0);
}

TEST_CASE("csv round trip is exact") {
    std::mt19937_64 rng(106);
    for (int it = 0; it < 40; ++it) {
        const StepPath p = testutil::random_scalar_path(rng, 1.7, 9, 3.0);
        std::stringstream ss;
        write_path_csv(ss, p);
        const StepPath q = read_path_csv(ss);
        CHECK(q == p);
    }
    // vector path
    StepPath v(2, 1.0, Vec{0.25, -1.0}, {{0.5, Vec{1e-17, 3.0}}});
    std::stringstream ss;
    write_path_csv(ss, v);
    CHECK(read_path_csv(ss) == v);
}

TEST_CASE("csv reader rejects malformed input") {
    auto parse = [](const std::string& text) {
        std::stringstream ss(text);
        return read_path_csv(ss);
    };
    CHECK_THROWS_AS(parse("t,v1\n0,0\n1,1\n"), std::runtime_error);           // no horizon
    CHECK_THROWS_AS(parse("t,v1\n0.5,0\n# T=2\n"), std::runtime_error);       // first row not t=0
    CHECK_THROWS_AS(parse("t,v1\n0,0\n1,1\n0.5,2\n# T=2\n"), std::runtime_error);
    CHECK_THROWS_AS(parse("t,v1\n0,0\n1,1,9\n# T=2\n"), std::runtime_error);  // column count
    CHECK_THROWS_AS(parse("x,v1\n0,0\n# T=2\n"), std::runtime_error);         // header
}

TEST_CASE("format_double round trips") {
    std::mt19937_64 rng(107);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int it = 0; it < 200; ++it) {
        const double v = unif(rng) * std::pow(10.0, (it % 20) - 10);
        CHECK(std::stod(format_double(v)) == v);
    }
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(2.0) == "2");
}

} // TEST_SUITE
