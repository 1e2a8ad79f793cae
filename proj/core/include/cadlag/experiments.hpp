#pragma once

#include "cadlag/metrics.hpp"
#include "cadlag/scenarios.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cadlag {

/// Flat key=value experiment description. Keys: mode (convergence|decay|trace),
/// scenario, n (comma list), reps, seed, p, functionals (comma list of
/// eval@<t>, running_sup, total_variation), eps, a, level, offset, gamma, R.
struct ExperimentConfig {
    std::string mode = "convergence";
    std::string scenario;
    std::vector<long> ns;
    long reps = 1;
    std::uint64_t seed = 0;
    ScenarioParams params;
    std::vector<std::string> functionals;
    MetricConfig metric;
    // machinery-trace parameters
    double a = 0.5;
    int level = 6;
    double offset = 0.7;
    double gamma = 0.05;
    double R = 10.0;
};

/// Parses `key=value` lines; `#` starts a comment; blank lines are skipped.
/// Unknown keys are rejected.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& filename);

/// Mode-specific sanity checks against the scenario: every eval@t functional
/// must evaluate at a continuity point of the scenario's limit objects.
/// Throws std::invalid_argument on violation.
void validate_config(const ExperimentConfig& cfg, const Scenario& sc);

struct StudyRow {
    long n;
    std::string functional;
    double estimate;    // Monte Carlo mean of the functional of the integral
    double limit_value; // mixture mean of the functional over the limit law
    double gap;         // |estimate - limit_value|
    double ks_stat;     // KS distance between empirical law and limit law
    long reps;
    std::uint64_t seed;
};

std::vector<StudyRow> run_convergence_study(const ExperimentConfig& cfg);
void write_study_csv(std::ostream& out, const std::vector<StudyRow>& rows);

struct DecayRow {
    long n;
    std::string metric; // j1 | m1
    double value;       // distance from the sampled integral to the limit law
    bool decreasing;    // strictly smaller than the previous index's value
    long reps;
    std::uint64_t seed;
};

std::vector<DecayRow> run_metric_decay(const ExperimentConfig& cfg);
void write_decay_csv(std::ostream& out, const std::vector<DecayRow>& rows);

struct TraceRow {
    long rep;
    long window_index;
    double tau;
    double rho;
    bool event_a;
    double sup1, sup2, sup3, sup4, sup5; // running sups of the five terms
    double bound2, bound3, bound4, bound5;
    bool within_bounds;
    double y_rho;       // scaling term at the window close
    double recon_error; // five-term sum vs window integral
};

struct TraceReport {
    std::vector<TraceRow> rows;
    long reps = 0;
    long event_a_count = 0;
    long split_failures = 0; // replications whose decomposition was rejected
};

TraceReport run_machinery_trace(const ExperimentConfig& cfg);
void write_trace_csv(std::ostream& out, const TraceReport& report);

/// Applies a named functional (eval@<t>, running_sup, total_variation) to a
/// scalar path.
double apply_functional(const std::string& name, const StepPath& path);

} // namespace cadlag
