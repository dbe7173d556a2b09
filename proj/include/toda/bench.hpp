#ifndef TODA_BENCH_HPP
#define TODA_BENCH_HPP

#include <optional>
#include <string>
#include <vector>

#include "toda/integrators.hpp"
#include "toda/metrics.hpp"
#include "toda/reference.hpp"

namespace toda {

// Where benchmark references come from: exact soliton for PureS always;
// otherwise an external CSV directory when set, else fine integration.
struct ReferencePolicy {
    std::optional<std::string> external_dir;
};

struct BenchmarkMatrix {
    std::vector<MethodKind> methods;
    std::vector<double> dts;
    std::vector<double> t_finals;
    std::vector<InitialData> ids;
    std::vector<RegionKind> regions;
    ReferencePolicy reference_policy;
    int jobs = 1;

    void validate() const; // throws std::invalid_argument
};

enum class CellStatus { Ok, Diverged };
enum class MetricKind { Relative, Absolute };

struct ErrorReport {
    MethodKind method{};
    InitialData id{};
    double dt = 0.0;
    double t_final = 0.0;
    RegionSpec region;
    double err_a = 0.0;
    double err_b = 0.0;
    MetricKind metric_kind = MetricKind::Relative;
    CellStatus status = CellStatus::Ok;
    ReferenceSource reference_source = ReferenceSource::FineIntegration;
};

struct BenchTable {
    std::vector<ErrorReport> rows;
};

// One row per (id, region, method, T, dt) cell, in that nesting order.
// Per-cell failures are recorded as diverged rows; the matrix never aborts.
BenchTable run_benchmark(const BenchmarkMatrix& matrix);

enum class TableFormat { Csv, Markdown, Json };
TableFormat parse_table_format(const std::string& name);

// Deterministic serialization; errors in scientific notation with 4
// significant digits. Markdown groups per (id, region) with methods as rows
// and (T, dt) columns; diverged cells render as em-dash (csv/json: "inf").
std::string emit_table(const BenchTable& table, TableFormat format);

// Full-window (n, a_n, b_n) profile at t_final, written as CSV.
// window_half = 0 picks the default window from the ID's soliton speeds.
void emit_profile(const InitialData& id, MethodKind method, double dt, double t_final,
                  const std::string& out_path, int window_half = 0);

// Least-squares slope of log(error vs fine reference) against log(dt).
// dt_ref defaults to min(dts)/100.
double observed_order(MethodKind method, const InitialData& id, double t_final,
                      std::vector<double> dts, double dt_ref = 0.0);

// Same, for several methods sharing one reference run.
std::vector<double> observed_orders(const std::vector<MethodKind>& methods,
                                    const InitialData& id, double t_final,
                                    std::vector<double> dts, double dt_ref = 0.0);

// Name an external reference file for a benchmark cell:
// ref_<id>_T<T>_<region>.csv
std::string reference_file_name(const InitialData& id, double t_final, RegionKind region);

} // namespace toda

#endif
