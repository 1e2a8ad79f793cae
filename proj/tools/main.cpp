#include "CLI11.hpp"

#include "cadlag/constructions.hpp"
#include "cadlag/experiments.hpp"
#include "cadlag/metrics.hpp"
#include "cadlag/moduli.hpp"
#include "cadlag/path_io.hpp"
#include "cadlag/stieltjes.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <stdexcept>

namespace {

using namespace cadlag;

void with_output(const std::string& out, const std::function<void(std::ostream&)>& fn) {
    if (out.empty()) {
        fn(std::cout);
        return;
    }
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot open output file: " + out);
    fn(f);
}

BridgeTail tail_of(const std::string& name) {
    if (name == "cutoff") return BridgeTail::cutoff;
    if (name == "terminal") return BridgeTail::terminal;
    throw std::runtime_error("unknown variant (use cutoff or terminal): " + name);
}

void write_windows_csv(std::ostream& out, const ExcursionWindows& w) {
    out << "# threshold=" << format_double(w.threshold)
        << " mesh=" << format_double(w.grid.mesh()) << '\n';
    out << "window,tau,rho,floor_tau\n";
    for (std::size_t i = 0; i < w.windows.size(); ++i) {
        const ExcursionWindow& win = w.windows[i];
        out << i << ',' << format_double(win.tau) << ',' << format_double(win.rho) << ','
            << format_double(win.floor_tau) << '\n';
    }
}

void write_split_csv(std::ostream& out, const std::vector<WindowRemainder>& rem) {
    out << "window,tau,rho,sup1,sup2,sup3,sup4,sup5,y_rho,recon_error\n";
    for (std::size_t i = 0; i < rem.size(); ++i) {
        const WindowRemainder& wr = rem[i];
        const double T = wr.term1.horizon();
        out << i << ',' << format_double(wr.window.tau) << ',' << format_double(wr.window.rho)
            << ',' << format_double(wr.term1.running_sup(T)) << ','
            << format_double(wr.term2.running_sup(T)) << ','
            << format_double(wr.term3.running_sup(T)) << ','
            << format_double(wr.term4.running_sup(T)) << ','
            << format_double(wr.term5.running_sup(T)) << ','
            << format_double(sup_norm(wr.Y.eval(wr.window.rho))) << ','
            << format_double(wr.reconstruction_error) << '\n';
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact step-path toolkit: Skorokhod metrics, Stieltjes integrals, "
                 "excursion windows and remainder decompositions"};
    app.require_subcommand(1);

    // metric
    std::string metric_a, metric_b, metric_name = "j1";
    double metric_eps = -1.0;
    auto* metric = app.add_subcommand("metric", "Distance between two step paths");
    metric->add_option("a", metric_a, "first path CSV")->required();
    metric->add_option("b", metric_b, "second path CSV")->required();
    metric->add_option("--metric", metric_name, "j1 or m1")->check(CLI::IsMember({"j1", "m1"}));
    metric->add_option("--eps", metric_eps, "m1 discretization accuracy (default 1e-3*T)");
    metric->callback([&] {
        const StepPath x = read_path_csv_file(metric_a);
        const StepPath y = read_path_csv_file(metric_b);
        double d;
        if (metric_name == "j1") {
            d = j1_distance(x, y);
        } else {
            MetricConfig cfg;
            cfg.eps_dp = metric_eps;
            d = m1_distance(x, y, cfg);
        }
        std::cout << format_double(d) << '\n';
    });

    // integrate
    std::string int_h, int_x, int_out;
    auto* integrate = app.add_subcommand("integrate", "Stieltjes integral of H(s-) against dX");
    integrate->add_option("H", int_h, "integrand path CSV")->required();
    integrate->add_option("X", int_x, "integrator path CSV")->required();
    integrate->add_option("--out", int_out, "output CSV (default stdout)");
    integrate->callback([&] {
        const StepPath H = read_path_csv_file(int_h);
        const StepPath X = read_path_csv_file(int_x);
        const StepPath I = ito_integral(H, X);
        with_output(int_out, [&](std::ostream& os) { write_path_csv(os, I); });
    });

    // construct
    std::string con_op, con_path, con_second, con_out, con_variant = "terminal";
    double con_a = 0.5, con_offset = 0.7, con_gamma = 0.1, con_t1 = 0.0, con_t2 = 0.0;
    int con_level = 6;
    long con_r = 10;
    bool con_adapted = false;
    auto* construct = app.add_subcommand("construct", "Window machinery on step paths");
    construct->add_option("--op", con_op, "windows, corrected, bridge or split")
        ->required()
        ->check(CLI::IsMember({"windows", "corrected", "bridge", "split"}));
    construct->add_option("path", con_path, "primary path CSV")->required();
    construct->add_option("second", con_second, "integrator path CSV (split only)");
    construct->add_option("--a", con_a, "excursion threshold");
    construct->add_option("--level", con_level, "dyadic grid level");
    construct->add_option("--offset", con_offset, "grid offset fraction in [0,1)");
    construct->add_option("--gamma", con_gamma, "oscillation scale");
    construct->add_option("--r", con_r, "increment-count bound");
    construct->add_option("--t1", con_t1, "window start (bridge)");
    construct->add_option("--t2", con_t2, "window end (bridge)");
    construct->add_option("--variant", con_variant, "bridge tail: cutoff or terminal");
    construct->add_flag("--adapted", con_adapted, "use the causal step approximation");
    construct->add_option("--out", con_out, "output CSV (default stdout)");
    construct->callback([&] {
        const StepPath x = read_path_csv_file(con_path);
        if (con_op == "windows" || con_op == "corrected" || con_op == "split") {
            const PartitionGrid grid =
                PartitionGrid::shifted_dyadic(x.horizon(), con_level, con_offset);
            const ExcursionWindows w = excursion_windows(x, con_a, grid);
            if (con_op == "windows") {
                with_output(con_out, [&](std::ostream& os) { write_windows_csv(os, w); });
            } else if (con_op == "corrected") {
                const auto [tilde, rest] = corrected_integrand(x, w);
                (void)rest;
                with_output(con_out, [&](std::ostream& os) { write_path_csv(os, tilde); });
            } else {
                if (con_second.empty())
                    throw std::runtime_error("split needs the integrator CSV as second argument");
                const StepPath X = read_path_csv_file(con_second);
                const auto rem = remainder_split(x, X, w, con_gamma, con_r);
                with_output(con_out, [&](std::ostream& os) { write_split_csv(os, rem); });
            }
        } else { // bridge
            StepPath xi = con_adapted
                              ? adapted_monotone_step(x, con_t1, con_t2, con_gamma, con_r)
                              : monotone_bridge(x, con_t1, con_t2, con_gamma, tail_of(con_variant));
            with_output(con_out, [&](std::ostream& os) { write_path_csv(os, xi); });
        }
    });

    // study
    std::string study_config, study_out;
    std::uint64_t study_seed = 0;
    auto* study = app.add_subcommand("study", "Convergence or metric-decay study from a config");
    study->add_option("--config", study_config, "key=value config file")->required();
    study->add_option("--out", study_out, "output CSV (default stdout)");
    auto* study_seed_opt = study->add_option("--seed", study_seed, "override config seed");
    study->callback([&] {
        ExperimentConfig cfg = load_config(study_config);
        if (*study_seed_opt) cfg.seed = study_seed;
        if (cfg.mode == "convergence") {
            const auto rows = run_convergence_study(cfg);
            with_output(study_out, [&](std::ostream& os) { write_study_csv(os, rows); });
        } else if (cfg.mode == "decay") {
            const auto rows = run_metric_decay(cfg);
            with_output(study_out, [&](std::ostream& os) { write_decay_csv(os, rows); });
        } else {
            throw std::runtime_error("study handles mode=convergence or mode=decay; got " +
                                     cfg.mode);
        }
    });

    // trace
    std::string trace_config, trace_out;
    std::uint64_t trace_seed = 0;
    auto* trace = app.add_subcommand("trace", "Remainder machinery diagnostics from a config");
    trace->add_option("--config", trace_config, "key=value config file")->required();
    trace->add_option("--out", trace_out, "output CSV (default stdout)");
    auto* trace_seed_opt = trace->add_option("--seed", trace_seed, "override config seed");
    trace->callback([&] {
        ExperimentConfig cfg = load_config(trace_config);
        if (*trace_seed_opt) cfg.seed = trace_seed;
        cfg.mode = "trace";
        const TraceReport report = run_machinery_trace(cfg);
        with_output(trace_out, [&](std::ostream& os) { write_trace_csv(os, report); });
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
