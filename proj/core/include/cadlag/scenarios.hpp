#pragma once

#include "cadlag/constructions.hpp"
#include "cadlag/step_path.hpp"
#include "cadlag/stieltjes.hpp"

#include <cstdint>
#include <functional>
#include <string>

namespace cadlag {

struct ScenarioSample {
    StepPath H;
    StepPath X;
};

/// One atom of a finitely supported limiting law on path space.
struct LimitAtom {
    double weight;
    StepPath path;
};

/// A named generator of integrand/integrator pairs indexed by n, together
/// with the limiting objects the pairs converge to and the correction rule
/// that reconciles the limit of the integrals with the integral of the limits.
struct Scenario {
    std::string name;
    std::function<ScenarioSample(long, std::uint64_t, std::uint64_t)> sample; // (n, seed, rep)
    StepPath limit_H = StepPath::zero(1, 1.0);
    StepPath limit_X = StepPath::zero(1, 1.0);
    std::vector<LimitAtom> limit_integrals; // law of the limit of the integrals
    std::vector<double> limit_disc;         // jump times of the limit paths
    std::string correction_rule;            // all_ones | half | bernoulli
};

struct ScenarioParams {
    double p = 0.5; // mixture weight for the two-jump-order family
};

/// Registry lookup: example_1_1, example_2_1, anti_avci, m1_j1. Throws
/// std::invalid_argument on unknown names.
Scenario scenario_by_name(const std::string& name, const ScenarioParams& params = {});

/// Two-point mixture on T=2: X jumps 1 at 1-1/n; with probability p the
/// integrand jumps to 3 at 1-2/n (before X), otherwise at 1+1/n (after).
ScenarioSample example_1_1(long n, double p, std::uint64_t seed, std::uint64_t rep);

/// Deterministic sign-reversal pair on T=2 whose integral is a vanishing
/// spike 0.5 on [1-3/n, 1-1/n).
ScenarioSample example_2_1(long n);

/// Randomized family on T=2 where the integrand's large jump lands at
/// 1-2/n + U/n^2 with size 2 + W/sqrt(n), strictly before X's jump at 1-1/n;
/// U, W are drawn from the (seed, rep) stream only, so the same rep reuses
/// the same (U, W) across n.
ScenarioSample anti_avci_scenario(long n, std::uint64_t seed, std::uint64_t rep);

/// Deterministic pair converging in M1 (integrand) and J1 (integrator) whose
/// integral is -1 on [1-1/n, 2].
ScenarioSample m1_j1_scenario(long n);

/// Martingale-plus-drift family on T=1: M is a symmetric compound Poisson
/// path with jump sizes +-1/sqrt(n) at rate lambda_rate*n, A is a 100-step
/// staircase of total rise `drift`.
SemimartingaleDecomposition gd_family(long n, double lambda_rate, double drift,
                                      std::uint64_t seed, std::uint64_t rep);

/// Correction with the given constant weight at every common jump time of the
/// two paths.
CorrectionTerm constant_correction(const StepPath& H0, const StepPath& X0, double weight);

/// Sign condition: at every jump time s of X0 and every coordinate i,
/// H0(s-)_i * dH0(s)_i * |dX0(s)_i| >= 0.
bool check_R1(const StepPath& H0, const StepPath& X0);

/// Tail sum sup_{l >= k} of sum over jumps with |dH0|_inf in
/// (values[l-1], values[k-1]] of |dH0 * dX0|_inf; k is 1-based.
double check_R2_tail(const StepPath& H0, const StepPath& X0, const ThresholdLadder& ladder,
                     std::size_t k);

/// Which path must move first in the consecutive-increment modulus.
enum class ConditionOrder {
    integrand_then_integrator, // hat_w(H, X, delta), both right-continuous
    integrator_then_integrand  // hat_w(X, H_-, delta), second via left limits
};

/// Monte Carlo frequency of the event {consecutive-increment modulus > gamma}
/// over reps samples of the scenario at index n.
double empirical_condition(const Scenario& sc, ConditionOrder order, double delta, double gamma,
                           long n, long reps, std::uint64_t seed);

} // namespace cadlag
