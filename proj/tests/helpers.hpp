#pragma once

#include "cadlag/step_path.hpp"

#include <algorithm>
#include <random>
#include <utility>
#include <vector>

namespace testutil {

// Random step path with jump times drawn uniformly from (0, horizon] and
// levels following a random walk. Continuous-uniform times make exact
// collisions (between jump times, or with grid points) measure zero.
inline cadlag::StepPath random_scalar_path(std::mt19937_64& rng, double horizon, int max_jumps,
                                           double scale = 1.0) {
    std::uniform_int_distribution<int> count(0, max_jumps);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const int n = count(rng);
    std::vector<double> times;
    times.reserve(n);
    for (int i = 0; i < n; ++i) times.push_back(unif(rng) * horizon);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    double level = (unif(rng) - 0.5) * scale;
    std::vector<std::pair<double, cadlag::Vec>> knots;
    const double start = level;
    for (double t : times) {
        if (t <= 0.0) continue;
        level += (unif(rng) - 0.5) * 2.0 * scale;
        knots.emplace_back(t, cadlag::Vec{level});
    }
    return cadlag::StepPath(1, horizon, cadlag::Vec{start}, knots);
}

inline cadlag::StepPath random_vector_path(std::mt19937_64& rng, std::size_t dim, double horizon,
                                           int max_jumps, double scale = 1.0) {
    std::vector<cadlag::StepPath> comps;
    comps.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i)
        comps.push_back(random_scalar_path(rng, horizon, max_jumps, scale));
    // merge coordinatewise
    std::vector<double> times;
    for (const auto& c : comps)
        for (double t : c.jump_times()) times.push_back(t);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    cadlag::Vec init(dim);
    for (std::size_t i = 0; i < dim; ++i) init[i] = comps[i].initial_value()[0];
    std::vector<std::pair<double, cadlag::Vec>> knots;
    for (double t : times) {
        cadlag::Vec v(dim);
        for (std::size_t i = 0; i < dim; ++i) v[i] = comps[i].eval(t)[0];
        knots.emplace_back(t, v);
    }
    return cadlag::StepPath(dim, horizon, init, knots);
}

// Random path whose levels are small integers; float arithmetic on the
// values is then exact, which lets tests assert identities with == .
inline cadlag::StepPath random_integer_path(std::mt19937_64& rng, double horizon, int max_jumps) {
    std::uniform_int_distribution<int> count(0, max_jumps);
    std::uniform_int_distribution<int> step(-3, 3);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const int n = count(rng);
    std::vector<double> times;
    for (int i = 0; i < n; ++i) {
        double t = unif(rng) * horizon;
        if (t > 0.0) times.push_back(t);
    }
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    double level = step(rng);
    const double start = level;
    std::vector<std::pair<double, cadlag::Vec>> knots;
    for (double t : times) {
        level += step(rng);
        knots.emplace_back(t, cadlag::Vec{level});
    }
    return cadlag::StepPath(1, horizon, cadlag::Vec{start}, knots);
}

// All times where a collection of step paths can change value, plus the
// interval endpoints; handy for checking sup-norm style bounds exactly.
inline std::vector<double> critical_times(const std::vector<const cadlag::StepPath*>& paths,
                                          double lo, double hi) {
    std::vector<double> ts{lo, hi};
    for (const auto* p : paths)
        for (double t : p->jump_times())
            if (t > lo && t < hi) ts.push_back(t);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    return ts;
}

} // namespace testutil
