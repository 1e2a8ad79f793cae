#include "cadlag/experiments.hpp"

#include "cadlag/path_io.hpp"
#include "cadlag/stats.hpp"
#include "cadlag/stieltjes.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace cadlag {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

// Runs the per-replication job over [0, reps), in parallel for large counts.
// Results must be written into preallocated slots indexed by replication so
// the outcome is independent of the schedule.
template <typename Job>
void for_each_rep(long reps, Job&& job) {
    if (reps < 256) {
        for (long r = 0; r < reps; ++r) job(r);
        return;
    }
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers = std::min(hw, 8u);
    const long chunk = (reps + static_cast<long>(workers) - 1) / static_cast<long>(workers);
    std::vector<std::thread> threads;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (unsigned w = 0; w < workers; ++w) {
        const long lo = static_cast<long>(w) * chunk;
        const long hi = std::min(reps, lo + chunk);
        if (lo >= hi) break;
        threads.emplace_back([&, lo, hi] {
            try {
                for (long r = lo; r < hi; ++r) job(r);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace

double apply_functional(const std::string& name, const StepPath& path) {
    const double T = path.horizon();
    if (name == "running_sup") return path.running_sup(T);
    if (name == "total_variation") return path.total_variation(T);
    if (name.rfind("eval@", 0) == 0) {
        const double t = std::stod(name.substr(5));
        return path.at(t);
    }
    throw std::invalid_argument("unknown functional: " + name);
}

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig cfg;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line is not key=value: " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "mode") {
            cfg.mode = value;
        } else if (key == "scenario") {
            cfg.scenario = value;
        } else if (key == "n") {
            cfg.ns.clear();
            for (const std::string& item : split_list(value)) cfg.ns.push_back(std::stol(item));
        } else if (key == "reps") {
            cfg.reps = std::stol(value);
        } else if (key == "seed") {
            cfg.seed = std::stoull(value);
        } else if (key == "p") {
            cfg.params.p = std::stod(value);
        } else if (key == "functionals") {
            cfg.functionals = split_list(value);
        } else if (key == "eps") {
            cfg.metric.eps_dp = std::stod(value);
        } else if (key == "a") {
            cfg.a = std::stod(value);
        } else if (key == "level") {
            cfg.level = std::stoi(value);
        } else if (key == "offset") {
            cfg.offset = std::stod(value);
        } else if (key == "gamma") {
            cfg.gamma = std::stod(value);
        } else if (key == "R") {
            cfg.R = std::stod(value);
        } else {
            throw std::invalid_argument("unknown config key: " + key);
        }
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& filename) {
    std::ifstream in(filename);
    if (!in) throw std::runtime_error("cannot open config file: " + filename);
    return parse_config(in);
}

void validate_config(const ExperimentConfig& cfg, const Scenario& sc) {
    if (cfg.ns.empty()) throw std::invalid_argument("config needs at least one n");
    if (cfg.reps < 1) throw std::invalid_argument("reps must be positive");
    if (cfg.mode == "convergence" && cfg.functionals.empty())
        throw std::invalid_argument("convergence mode needs functionals");
    const double T = sc.limit_H.horizon();
    for (const std::string& f : cfg.functionals) {
        if (f.rfind("eval@", 0) == 0) {
            const double t = std::stod(f.substr(5));
            if (t < 0.0 || t > T)
                throw std::invalid_argument("functional time outside the horizon: " + f);
            for (double disc : sc.limit_disc)
                if (std::fabs(t - disc) <= 1e-9)
                    throw std::invalid_argument(
                        "functional evaluates at a limit discontinuity: " + f);
        } else if (f != "running_sup" && f != "total_variation") {
            throw std::invalid_argument("unknown functional: " + f);
        }
    }
    if (cfg.mode == "trace") {
        if (!(cfg.gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
        if (!(cfg.a > 0.0)) throw std::invalid_argument("a must be positive");
        if (!(cfg.R > 0.0)) throw std::invalid_argument("R must be positive");
        if (cfg.level < 0) throw std::invalid_argument("level must be nonnegative");
    }
}

std::vector<StudyRow> run_convergence_study(const ExperimentConfig& cfg) {
    const Scenario sc = scenario_by_name(cfg.scenario, cfg.params);
    validate_config(cfg, sc);
    const long reps = cfg.reps;
    std::vector<StudyRow> rows;
    for (long n : cfg.ns) {
        std::vector<std::vector<double>> values(cfg.functionals.size(),
                                                std::vector<double>(static_cast<std::size_t>(reps)));
        for_each_rep(reps, [&](long r) {
            const ScenarioSample s = sc.sample(n, cfg.seed, static_cast<std::uint64_t>(r));
            const StepPath integral = ito_integral(s.H, s.X);
            for (std::size_t fi = 0; fi < cfg.functionals.size(); ++fi)
                values[fi][static_cast<std::size_t>(r)] =
                    apply_functional(cfg.functionals[fi], integral);
        });
        for (std::size_t fi = 0; fi < cfg.functionals.size(); ++fi) {
            const std::string& f = cfg.functionals[fi];
            const double estimate = pairwise_sum(values[fi]) / static_cast<double>(reps);
            std::vector<Atom> atoms;
            double limit_value = 0.0;
            for (const LimitAtom& a : sc.limit_integrals) {
                const double fv = apply_functional(f, a.path);
                atoms.emplace_back(fv, a.weight);
                limit_value += a.weight * fv;
            }
            const double ks = ks_statistic(values[fi], atoms);
            rows.push_back({n, f, estimate, limit_value, std::fabs(estimate - limit_value), ks,
                            reps, cfg.seed});
        }
    }
    return rows;
}

void write_study_csv(std::ostream& out, const std::vector<StudyRow>& rows) {
    out << "# convergence study: Monte Carlo functionals of the integral vs the limit law\n";
    out << "# ks_stat compares the law of one path functional with the finite limit\n";
    out << "# mixture; it does not certify weak convergence on path space\n";
    out << "n,functional,estimate,limit_value,gap,ks_stat,reps,seed\n";
    for (const StudyRow& r : rows) {
        out << r.n << ',' << r.functional << ',' << format_double(r.estimate) << ','
            << format_double(r.limit_value) << ',' << format_double(r.gap) << ','
            << format_double(r.ks_stat) << ',' << r.reps << ',' << r.seed << '\n';
    }
}

std::vector<DecayRow> run_metric_decay(const ExperimentConfig& cfg) {
    const Scenario sc = scenario_by_name(cfg.scenario, cfg.params);
    validate_config(cfg, sc);
    std::vector<DecayRow> rows;
    double prev_j1 = 0.0, prev_m1 = 0.0;
    bool have_prev = false;
    for (long n : cfg.ns) {
        const ScenarioSample s = sc.sample(n, cfg.seed, 0);
        const StepPath integral = ito_integral(s.H, s.X);
        double dj1 = std::numeric_limits<double>::infinity();
        double dm1 = std::numeric_limits<double>::infinity();
        for (const LimitAtom& a : sc.limit_integrals) {
            dj1 = std::min(dj1, j1_distance(integral, a.path));
            dm1 = std::min(dm1, m1_distance(integral, a.path, cfg.metric));
        }
        rows.push_back({n, "j1", dj1, !have_prev || dj1 < prev_j1, 1, cfg.seed});
        rows.push_back({n, "m1", dm1, !have_prev || dm1 < prev_m1, 1, cfg.seed});
        prev_j1 = dj1;
        prev_m1 = dm1;
        have_prev = true;
    }
    return rows;
}

void write_decay_csv(std::ostream& out, const std::vector<DecayRow>& rows) {
    out << "# metric decay: distance from the sampled integral to the nearest limit atom\n";
    out << "n,metric,value,decreasing,reps,seed\n";
    for (const DecayRow& r : rows) {
        out << r.n << ',' << r.metric << ',' << format_double(r.value) << ','
            << (r.decreasing ? 1 : 0) << ',' << r.reps << ',' << r.seed << '\n';
    }
}

TraceReport run_machinery_trace(const ExperimentConfig& cfg) {
    const Scenario sc = scenario_by_name(cfg.scenario, cfg.params);
    validate_config(cfg, sc);
    const long n = cfg.ns.front();
    TraceReport report;
    report.reps = cfg.reps;
    for (long rep = 0; rep < cfg.reps; ++rep) {
        const ScenarioSample s = sc.sample(n, cfg.seed, static_cast<std::uint64_t>(rep));
        const double T = s.H.horizon();
        const std::size_t d = s.H.dimension();
        const PartitionGrid grid = PartitionGrid::shifted_dyadic(T, cfg.level, cfg.offset);
        std::vector<double> events = s.H.jump_times();
        const auto& xt = s.X.jump_times();
        events.insert(events.end(), xt.begin(), xt.end());
        events.insert(events.end(), sc.limit_disc.begin(), sc.limit_disc.end());
        validate_grid(grid, events);
        const ExcursionWindows windows = excursion_windows(s.H, cfg.a, grid);
        const bool ev = event_A(s.H, s.X, cfg.gamma, 2.0 * grid.mesh(), cfg.R, cfg.a);
        if (ev) ++report.event_a_count;
        std::vector<WindowRemainder> rem;
        try {
            rem = remainder_split(s.H, s.X, windows, cfg.gamma, static_cast<long>(cfg.R));
        } catch (const std::invalid_argument&) {
            ++report.split_failures;
            continue;
        }
        for (std::size_t wi = 0; wi < rem.size(); ++wi) {
            const WindowRemainder& wr = rem[wi];
            const double scale = std::max(1.0, sup_norm(wr.dX_win));
            const double dd = static_cast<double>(d);
            TraceRow row;
            row.rep = rep;
            row.window_index = static_cast<long>(wi);
            row.tau = wr.window.tau;
            row.rho = wr.window.rho;
            row.event_a = ev;
            row.sup1 = wr.term1.running_sup(T);
            row.sup2 = wr.term2.running_sup(T);
            row.sup3 = wr.term3.running_sup(T);
            row.sup4 = wr.term4.running_sup(T);
            row.sup5 = wr.term5.running_sup(T);
            row.bound2 = 2.0 * dd * cfg.a * scale;
            row.bound3 = dd * dd * cfg.gamma * scale;
            row.bound4 = 3.0 * cfg.R * dd * cfg.gamma * scale;
            double l1 = 0.0;
            for (double v : wr.dX_win) l1 += std::fabs(v);
            const double tv_win =
                s.X.total_variation(wr.window.rho) - s.X.total_variation(wr.window.tau);
            row.bound5 = dd * cfg.gamma * (tv_win + l1);
            const auto ok = [](double sup, double bound) {
                return sup <= bound + 1e-12 * (1.0 + bound);
            };
            row.within_bounds = ok(row.sup2, row.bound2) && ok(row.sup3, row.bound3) &&
                                ok(row.sup4, row.bound4) && ok(row.sup5, row.bound5);
            row.y_rho = sup_norm(wr.Y.eval(wr.window.rho));
            row.recon_error = wr.reconstruction_error;
            report.rows.push_back(row);
        }
    }
    return report;
}

void write_trace_csv(std::ostream& out, const TraceReport& report) {
    out << "# remainder machinery trace: per-window five-term split diagnostics\n";
    out << "# reps=" << report.reps << " event_a_count=" << report.event_a_count
        << " split_failures=" << report.split_failures << '\n';
    out << "rep,window,tau,rho,event_a,sup1,sup2,sup3,sup4,sup5,"
           "bound2,bound3,bound4,bound5,within_bounds,y_rho,recon_error\n";
    for (const TraceRow& r : report.rows) {
        out << r.rep << ',' << r.window_index << ',' << format_double(r.tau) << ','
            << format_double(r.rho) << ',' << (r.event_a ? 1 : 0) << ','
            << format_double(r.sup1) << ',' << format_double(r.sup2) << ','
            << format_double(r.sup3) << ',' << format_double(r.sup4) << ','
            << format_double(r.sup5) << ',' << format_double(r.bound2) << ','
            << format_double(r.bound3) << ',' << format_double(r.bound4) << ','
            << format_double(r.bound5) << ',' << (r.within_bounds ? 1 : 0) << ','
            << format_double(r.y_rho) << ',' << format_double(r.recon_error) << '\n';
    }
}

} // namespace cadlag
