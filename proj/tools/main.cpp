// todabench: command-line surface of the Toda lattice time-stepper benchmark.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "toda/bench.hpp"
#include "toda/integrators.hpp"
#include "toda/metrics.hpp"
#include "toda/spectral.hpp"

namespace {

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

void write_or_print(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open for writing: " + out_path);
    out << text;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Toda lattice time-stepper benchmark"};
    app.require_subcommand(1);

    // simulate
    auto* simulate = app.add_subcommand("simulate", "integrate one configuration and dump the profile");
    std::string sim_id = "double", sim_method = "rk4", sim_out;
    double sim_dt = 1e-2, sim_t = 10.0;
    int sim_window = 0;
    simulate->add_option("--id", sim_id, "initial data (NoS|PureS|double|quad|dirac)");
    simulate->add_option("--method", sim_method, "time stepper");
    simulate->add_option("--dt", sim_dt, "time step");
    simulate->add_option("--T", sim_t, "final time");
    simulate->add_option("--window", sim_window, "window half-width (0 = automatic)");
    simulate->add_option("--out", sim_out, "output CSV path")->required();

    // benchmark
    auto* benchmark = app.add_subcommand("benchmark", "run a (method x dt x T x ID x region) matrix");
    std::string b_methods = "midpoint,midpointqp,sv2symp,ab4,rk4,rk4qp,rkf45";
    std::string b_dts = "0.01,0.001";
    std::string b_ts = "100";
    std::string b_ids = "NoS,PureS,double,quad,dirac";
    std::string b_regions = "soliton,dispersive";
    std::string b_refdir, b_format = "markdown", b_out;
    int b_jobs = 1;
    benchmark->add_option("--methods", b_methods, "comma-separated methods");
    benchmark->add_option("--dts", b_dts, "comma-separated time steps");
    benchmark->add_option("--Ts", b_ts, "comma-separated final times");
    benchmark->add_option("--ids", b_ids, "comma-separated initial data families");
    benchmark->add_option("--regions", b_regions, "comma-separated regions (soliton|dispersive)");
    benchmark->add_option("--reference-dir", b_refdir, "directory with external reference CSVs");
    benchmark->add_option("--format", b_format, "csv|markdown|json");
    benchmark->add_option("--out", b_out, "output path (default stdout)");
    benchmark->add_option("--jobs", b_jobs, "worker threads");

    // spectrum
    auto* spectrum = app.add_subcommand("spectrum", "bound states of the Jacobi operator for an ID");
    std::string sp_id = "double";
    int sp_m = 60;
    spectrum->add_option("--id", sp_id, "initial data family");
    spectrum->add_option("--m", sp_m, "spectral sub-window half-width");

    // regions
    auto* regions = app.add_subcommand("regions", "print the soliton and dispersive index ranges");
    std::string rg_id = "double";
    double rg_t = 1000.0;
    regions->add_option("--T", rg_t, "final time");
    regions->add_option("--id", rg_id, "initial data family (sets the soliton speed)");

    // order
    auto* order = app.add_subcommand("order", "observed convergence order of a method");
    std::string or_method = "rk4", or_id = "double", or_dts = "0.04,0.02,0.01";
    double or_t = 10.0, or_dtref = 0.0;
    order->add_option("--method", or_method, "time stepper");
    order->add_option("--id", or_id, "initial data family");
    order->add_option("--T", or_t, "final time");
    order->add_option("--dts", or_dts, "comma-separated time steps (>= 3)");
    order->add_option("--dt-ref", or_dtref, "reference time step (default min(dts)/100)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*simulate) {
            toda::InitialData id = toda::InitialData::parse(sim_id);
            toda::MethodKind method = toda::parse_method(sim_method);
            toda::emit_profile(id, method, sim_dt, sim_t, sim_out, sim_window);
            std::cerr << "wrote " << sim_out << "\n";
        } else if (*benchmark) {
            toda::BenchmarkMatrix m;
            for (const auto& s : split_csv(b_methods)) m.methods.push_back(toda::parse_method(s));
            for (const auto& s : split_csv(b_dts)) m.dts.push_back(std::stod(s));
            for (const auto& s : split_csv(b_ts)) m.t_finals.push_back(std::stod(s));
            for (const auto& s : split_csv(b_ids)) m.ids.push_back(toda::InitialData::parse(s));
            for (const auto& s : split_csv(b_regions)) m.regions.push_back(toda::parse_region(s));
            if (!b_refdir.empty()) m.reference_policy.external_dir = b_refdir;
            m.jobs = b_jobs;
            const toda::BenchTable table = toda::run_benchmark(m);
            write_or_print(toda::emit_table(table, toda::parse_table_format(b_format)), b_out);
        } else if (*spectrum) {
            const toda::SpectralSummary s =
                toda::spectral_summary(toda::InitialData::parse(sp_id), sp_m);
            std::printf("bound states: %zu\n", s.bound_states.size());
            for (std::size_t i = 0; i < s.bound_states.size(); ++i)
                std::printf("  lambda = %+.12f   kappa = %.12f   speed = %.12f\n",
                            s.bound_states[i], s.kappas[i], s.speeds[i]);
            std::printf("s_max = %.12f\n", s.s_max);
        } else if (*regions) {
            const toda::SpectralSummary s =
                toda::spectral_summary(toda::InitialData::parse(rg_id), 60);
            const toda::RegionSpec sol = toda::soliton_region(rg_t, s.s_max);
            const toda::RegionSpec disp = toda::dispersive_region(rg_t);
            std::printf("soliton region:    [%d, %d]\n", sol.n_min, sol.n_max);
            std::printf("dispersive region: [%d, %d]\n", disp.n_min, disp.n_max);
        } else if (*order) {
            std::vector<double> dts;
            for (const auto& s : split_csv(or_dts)) dts.push_back(std::stod(s));
            const double slope = toda::observed_order(
                toda::parse_method(or_method), toda::InitialData::parse(or_id), or_t, dts,
                or_dtref);
            std::printf("observed order: %.3f\n", slope);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
