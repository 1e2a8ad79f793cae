#include "cadlag/scenarios.hpp"

#include "cadlag/moduli.hpp"
#include "cadlag/random.hpp"

#include <cmath>
#include <stdexcept>

namespace cadlag {

namespace {

void check_index(long n) {
    if (n < 4) throw std::invalid_argument("scenario index n must be at least 4");
}

const double kHorizon = 2.0;

StepPath limit_integrand() { return StepPath::scalar(kHorizon, 1.0, {{1.0, 3.0}}); }
StepPath limit_integrand_flip() { return StepPath::scalar(kHorizon, 1.0, {{1.0, -1.0}}); }
StepPath limit_integrator() { return StepPath::scalar(kHorizon, 0.0, {{1.0, 1.0}}); }

} // namespace

ScenarioSample example_1_1(long n, double p, std::uint64_t seed, std::uint64_t rep) {
    check_index(n);
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("mixture weight must lie in [0, 1]");
    const double nd = static_cast<double>(n);
    StepPath X = StepPath::scalar(kHorizon, 0.0, {{1.0 - 1.0 / nd, 1.0}});
    auto rng = make_rng(seed, rep);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const bool early = unif(rng) < p;
    const double jump_time = early ? 1.0 - 2.0 / nd : 1.0 + 1.0 / nd;
    StepPath H = StepPath::scalar(kHorizon, 1.0, {{jump_time, 3.0}});
    return {std::move(H), std::move(X)};
}

ScenarioSample example_2_1(long n) {
    check_index(n);
    const double nd = static_cast<double>(n);
    StepPath H = StepPath::scalar(kHorizon, 1.0, {{1.0 - 2.0 / nd, -1.0}});
    StepPath X =
        StepPath::scalar(kHorizon, 0.0, {{1.0 - 3.0 / nd, 0.5}, {1.0 - 1.0 / nd, 1.0}});
    return {std::move(H), std::move(X)};
}

ScenarioSample anti_avci_scenario(long n, std::uint64_t seed, std::uint64_t rep) {
    check_index(n);
    const double nd = static_cast<double>(n);
    auto rng = make_rng(seed, rep);
    std::uniform_real_distribution<double> unif01(0.0, 1.0);
    std::uniform_real_distribution<double> unif11(-1.0, 1.0);
    const double u = unif01(rng);
    const double w = unif11(rng);
    const double jump_time = 1.0 - 2.0 / nd + u / (nd * nd);
    const double jump_to = 3.0 + w / std::sqrt(nd);
    StepPath H = StepPath::scalar(kHorizon, 1.0, {{jump_time, jump_to}});
    StepPath X = StepPath::scalar(kHorizon, 0.0, {{1.0 - 1.0 / nd, 1.0}});
    return {std::move(H), std::move(X)};
}

ScenarioSample m1_j1_scenario(long n) {
    check_index(n);
    const double nd = static_cast<double>(n);
    StepPath H = StepPath::scalar(kHorizon, 1.0, {{1.0 - 2.0 / nd, -1.0}});
    StepPath X = StepPath::scalar(kHorizon, 0.0, {{1.0 - 1.0 / nd, 1.0}});
    return {std::move(H), std::move(X)};
}

Scenario scenario_by_name(const std::string& name, const ScenarioParams& params) {
    Scenario sc;
    sc.name = name;
    sc.limit_disc = {1.0};
    if (name == "example_1_1") {
        const double p = params.p;
        sc.sample = [p](long n, std::uint64_t seed, std::uint64_t rep) {
            return example_1_1(n, p, seed, rep);
        };
        sc.limit_H = limit_integrand();
        sc.limit_X = limit_integrator();
        if (p > 0.0)
            sc.limit_integrals.push_back({p, StepPath::scalar(kHorizon, 0.0, {{1.0, 3.0}})});
        if (p < 1.0)
            sc.limit_integrals.push_back({1.0 - p, StepPath::scalar(kHorizon, 0.0, {{1.0, 1.0}})});
        sc.correction_rule = "bernoulli";
    } else if (name == "example_2_1") {
        sc.sample = [](long n, std::uint64_t, std::uint64_t) { return example_2_1(n); };
        sc.limit_H = StepPath::scalar(kHorizon, 1.0, {{1.0, -1.0}});
        sc.limit_X = limit_integrator();
        sc.limit_integrals.push_back({1.0, StepPath::zero(1, kHorizon)});
        sc.correction_rule = "half";
    } else if (name == "anti_avci") {
        sc.sample = [](long n, std::uint64_t seed, std::uint64_t rep) {
            return anti_avci_scenario(n, seed, rep);
        };
        sc.limit_H = limit_integrand();
        sc.limit_X = limit_integrator();
        sc.limit_integrals.push_back({1.0, StepPath::scalar(kHorizon, 0.0, {{1.0, 3.0}})});
        sc.correction_rule = "all_ones";
    } else if (name == "m1_j1") {
        sc.sample = [](long n, std::uint64_t, std::uint64_t) { return m1_j1_scenario(n); };
        sc.limit_H = limit_integrand_flip();
        sc.limit_X = limit_integrator();
        sc.limit_integrals.push_back({1.0, StepPath::scalar(kHorizon, 0.0, {{1.0, -1.0}})});
        sc.correction_rule = "all_ones";
    } else {
        throw std::invalid_argument("unknown scenario: " + name);
    }
    return sc;
}

SemimartingaleDecomposition gd_family(long n, double lambda_rate, double drift,
                                      std::uint64_t seed, std::uint64_t rep) {
    if (n < 1) throw std::invalid_argument("gd_family: n must be positive");
    if (!(lambda_rate > 0.0)) throw std::invalid_argument("gd_family: rate must be positive");
    const double T = 1.0;
    const double nd = static_cast<double>(n);
    const double jump = 1.0 / std::sqrt(nd);
    auto rng = make_rng(seed, rep);
    std::exponential_distribution<double> gap(lambda_rate * nd);
    std::bernoulli_distribution sign(0.5);

    std::vector<std::pair<double, Vec>> mjumps;
    double t = 0.0;
    double level = 0.0;
    while (true) {
        t += gap(rng);
        if (t > T) break;
        level += sign(rng) ? jump : -jump;
        mjumps.emplace_back(t, Vec{level});
    }
    StepPath M(1, T, Vec{0.0}, std::move(mjumps));

    const int steps = 100;
    std::vector<std::pair<double, Vec>> ajumps;
    ajumps.reserve(steps);
    for (int k = 1; k <= steps; ++k)
        ajumps.emplace_back(static_cast<double>(k) / steps, Vec{drift * k / steps});
    StepPath A(1, T, Vec{0.0}, std::move(ajumps));

    return make_decomposition(std::move(M), std::move(A));
}

CorrectionTerm constant_correction(const StepPath& H0, const StepPath& X0, double weight) {
    if (H0.dimension() != X0.dimension() || H0.horizon() != X0.horizon())
        throw std::invalid_argument("constant_correction: path shape mismatch");
    const std::size_t d = H0.dimension();
    CorrectionTerm c;
    for (std::size_t j = 0; j < X0.jump_count(); ++j) {
        const double s = X0.jump_time(j);
        const Vec dH = H0.jump_at(s);
        const Vec dX = X0.jump_at(s);
        bool both = false;
        for (std::size_t i = 0; i < d; ++i)
            if (dH[i] != 0.0 && dX[i] != 0.0) both = true;
        if (both) c.entries.push_back({s, Vec(d, weight), dH, dX});
    }
    return c;
}

bool check_R1(const StepPath& H0, const StepPath& X0) {
    if (H0.horizon() != X0.horizon())
        throw std::invalid_argument("check_R1: horizon mismatch");
    if (H0.dimension() != X0.dimension())
        throw std::invalid_argument("check_R1: dimension mismatch");
    for (std::size_t j = 0; j < X0.jump_count(); ++j) {
        const double s = X0.jump_time(j);
        const Vec h = H0.left_limit(s);
        const Vec dH = H0.jump_at(s);
        const Vec dX = X0.jump_at(s);
        for (std::size_t i = 0; i < H0.dimension(); ++i)
            if (h[i] * dH[i] * std::fabs(dX[i]) < 0.0) return false;
    }
    return true;
}

double check_R2_tail(const StepPath& H0, const StepPath& X0, const ThresholdLadder& ladder,
                     std::size_t k) {
    if (k < 1 || k > ladder.values.size())
        throw std::invalid_argument("check_R2_tail: index out of range");
    const double a_k = ladder.values[k - 1];
    double best = 0.0;
    for (std::size_t l = k; l <= ladder.values.size(); ++l) {
        const double a_l = ladder.values[l - 1];
        double sum = 0.0;
        for (std::size_t j = 0; j < H0.jump_count(); ++j) {
            const double s = H0.jump_time(j);
            const Vec dH = H0.jump_at(s);
            const double size = sup_norm(dH);
            if (!(size > a_l && size <= a_k)) continue;
            const Vec dX = X0.jump_at(s);
            Vec prod(dH.size());
            for (std::size_t i = 0; i < dH.size(); ++i) prod[i] = dH[i] * dX[i];
            sum += sup_norm(prod);
        }
        best = std::max(best, sum);
    }
    return best;
}

double empirical_condition(const Scenario& sc, ConditionOrder order, double delta, double gamma,
                           long n, long reps, std::uint64_t seed) {
    if (reps < 1) throw std::invalid_argument("empirical_condition: reps must be positive");
    long hits = 0;
    for (long r = 0; r < reps; ++r) {
        const ScenarioSample s = sc.sample(n, seed, static_cast<std::uint64_t>(r));
        double w;
        if (order == ConditionOrder::integrand_then_integrator)
            w = consecutive_increment_modulus(s.H, s.X, delta, Eval::cadlag, Eval::cadlag);
        else
            w = consecutive_increment_modulus(s.X, s.H, delta, Eval::cadlag, Eval::left_limit);
        if (w > gamma) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(reps);
}

} // namespace cadlag
