#pragma once

#include "cadlag/step_path.hpp"

namespace cadlag {

// Settings for the sampled graph-matching computation behind m1_distance.
// eps_dp <= 0 selects the default resolution 1e-3 * horizon.
struct MetricConfig {
    double eps_dp = -1.0;
    int max_refinement_levels = 4;
};

// J1 distance: inf over increasing time bijections of
// max(sup |x(lambda(t)) - y(t)|, sup |lambda(t) - t|).
// Solved exactly for step paths by a monotone jump-matching reachability DP
// combined with a search over the finite set of critical candidate values.
double j1_distance(const StepPath& x, const StepPath& y);

// M1 distance (product form for d > 1: max over coordinates). Computed per
// coordinate as the Fréchet distance between completed graphs under
// rho((t,v),(t',v')) = max(|t-t'|, |v-v'|), discretized at the configured
// resolution and refined until stable. The result lies within eps_dp of the
// true distance from above.
double m1_distance(const StepPath& x, const StepPath& y, const MetricConfig& cfg = {});

// Vertices of a coordinate's completed graph resampled so that every segment
// has rho-length at most h. Exposed for the oracle tests.
std::vector<std::pair<double, double>> sample_completed_graph(const CompletedGraph& g,
                                                              double h);

// Discrete Fréchet distance between two polylines' vertex sequences under the
// max(|dt|, |dv|) ground metric.
double discrete_frechet(const std::vector<std::pair<double, double>>& p,
                        const std::vector<std::pair<double, double>>& q);

} // namespace cadlag
