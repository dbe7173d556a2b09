#include "toda/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "toda/errors.hpp"
#include "toda/spectral.hpp"

namespace toda {

namespace {

std::string fmt_real(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string fmt_err(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.4e", v);
    return buf;
}

// Run a list of tasks on up to `jobs` worker threads.
void run_tasks(const std::vector<std::function<void()>>& tasks, int jobs) {
    if (jobs <= 1) {
        for (const auto& t : tasks) t();
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            tasks[i]();
        }
    };
    std::vector<std::thread> pool;
    const int n = std::min<int>(jobs, static_cast<int>(tasks.size()));
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

struct GroupKey {
    std::string id;
    double t_final;
    bool operator<(const GroupKey& o) const {
        return id < o.id || (id == o.id && t_final < o.t_final);
    }
};

} // namespace

void BenchmarkMatrix::validate() const {
    if (methods.empty() || dts.empty() || t_finals.empty() || ids.empty() || regions.empty())
        throw std::invalid_argument("BenchmarkMatrix: all lists must be non-empty");
    for (double dt : dts)
        if (!(dt > 0.0)) throw std::invalid_argument("BenchmarkMatrix: dts must be positive");
}

std::string reference_file_name(const InitialData& id, double t_final, RegionKind region) {
    return "ref_" + id.name() + "_T" + fmt_real(t_final) + "_" + region_name(region) + ".csv";
}

BenchTable run_benchmark(const BenchmarkMatrix& matrix) {
    matrix.validate();

    // Shared per-(id, T) context: window, region specs, references.
    struct Group {
        InitialData id;
        double t_final;
        IndexWindow window;
        std::map<RegionKind, RegionSpec> region_specs;
        std::map<RegionKind, ReferenceSolution> references;
        std::string failure; // non-empty when reference construction failed
    };
    const double dt_ref = *std::min_element(matrix.dts.begin(), matrix.dts.end()) / 10.0;

    std::map<GroupKey, Group> groups;
    for (const InitialData& id : matrix.ids)
        for (double t_final : matrix.t_finals)
            groups[{id.name(), t_final}] = Group{id, t_final, {}, {}, {}, {}};

    std::vector<std::function<void()>> ref_tasks;
    for (auto& [key, g] : groups) {
        Group* gp = &g;
        const auto regions = matrix.regions;
        const auto policy = matrix.reference_policy;
        ref_tasks.push_back([gp, regions, policy, dt_ref] {
            try {
                const SpectralSummary spec = spectral_summary(gp->id, 60);
                gp->window = default_window(gp->t_final, spec.s_max);
                for (RegionKind rk : regions)
                    gp->region_specs[rk] = rk == RegionKind::Soliton
                                               ? soliton_region(gp->t_final, spec.s_max)
                                               : dispersive_region(gp->t_final);
                // The exact soliton covers PureS; external files are used when
                // present; everything else falls back to a fine rk4 run.
                LatticeStateAB fine;
                bool have_fine = false;
                for (RegionKind rk : regions) {
                    const RegionSpec& rs = gp->region_specs.at(rk);
                    if (gp->id.family == IdFamily::PureS) {
                        gp->references[rk] = pures_reference(gp->t_final, rs, gp->id.kappa);
                        continue;
                    }
                    if (policy.external_dir) {
                        const auto path = std::filesystem::path(*policy.external_dir) /
                                          reference_file_name(gp->id, gp->t_final, rk);
                        if (std::filesystem::exists(path)) {
                            gp->references[rk] = load_reference_csv(path.string());
                            continue;
                        }
                    }
                    if (!have_fine) {
                        fine = fine_reference_state(gp->id, gp->t_final, dt_ref, gp->window);
                        have_fine = true;
                    }
                    gp->references[rk] =
                        extract_region(fine, gp->id, rs, ReferenceSource::FineIntegration);
                }
            } catch (const std::exception& e) {
                gp->failure = e.what();
            }
        });
    }
    run_tasks(ref_tasks, matrix.jobs);

    // One integration per (id, T, method, dt), shared across regions.
    struct Cell {
        GroupKey key;
        MethodKind method;
        double dt;
        LatticeStateAB final_state;
        std::string failure;
    };
    std::vector<Cell> cells;
    for (const InitialData& id : matrix.ids)
        for (double t_final : matrix.t_finals)
            for (MethodKind m : matrix.methods)
                for (double dt : matrix.dts)
                    cells.push_back({{id.name(), t_final}, m, dt, {}, {}});

    std::vector<std::function<void()>> cell_tasks;
    for (Cell& c : cells) {
        Cell* cp = &c;
        const Group* gp = &groups.at(c.key);
        cell_tasks.push_back([cp, gp] {
            if (!gp->failure.empty()) {
                cp->failure = gp->failure;
                return;
            }
            try {
                cp->final_state = integrate(gp->id, StepperConfig{cp->method, cp->dt, gp->t_final},
                                            gp->window);
            } catch (const std::exception& e) {
                cp->failure = e.what();
            }
        });
    }
    run_tasks(cell_tasks, matrix.jobs);

    std::map<std::pair<std::string, double>, std::map<std::pair<int, double>, const Cell*>> index;
    for (const Cell& c : cells)
        index[{c.key.id, c.key.t_final}][{static_cast<int>(c.method), c.dt}] = &c;

    BenchTable table;
    const double inf = std::numeric_limits<double>::infinity();
    for (const InitialData& id : matrix.ids)
        for (RegionKind rk : matrix.regions)
            for (MethodKind m : matrix.methods)
                for (double t_final : matrix.t_finals)
                    for (double dt : matrix.dts) {
                        const Group& g = groups.at({id.name(), t_final});
                        ErrorReport row;
                        row.method = m;
                        row.id = id;
                        row.dt = dt;
                        row.t_final = t_final;
                        const bool pures_disp =
                            id.family == IdFamily::PureS && rk == RegionKind::Dispersive;
                        row.metric_kind = pures_disp ? MetricKind::Absolute : MetricKind::Relative;
                        const Cell* cell =
                            index.at({id.name(), t_final}).at({static_cast<int>(m), dt});
                        if (!g.failure.empty() || !cell->failure.empty()) {
                            row.region = g.region_specs.count(rk) ? g.region_specs.at(rk)
                                                                  : RegionSpec(rk, 0, 0);
                            row.err_a = row.err_b = inf;
                            row.status = CellStatus::Diverged;
                            table.rows.push_back(row);
                            continue;
                        }
                        const RegionSpec& rs = g.region_specs.at(rk);
                        const ReferenceSolution& ref = g.references.at(rk);
                        row.region = rs;
                        row.reference_source = ref.source;
                        const ReferenceSolution got = extract_region(
                            cell->final_state, id, rs, ReferenceSource::FineIntegration);
                        try {
                            if (row.metric_kind == MetricKind::Absolute) {
                                row.err_a = absolute_error(got.a_ref, ref.a_ref);
                                row.err_b = absolute_error(got.b_ref, ref.b_ref);
                            } else {
                                row.err_a = relative_error(got.a_ref, ref.a_ref, 0.5);
                                row.err_b = relative_error(got.b_ref, ref.b_ref, 0.0);
                            }
                        } catch (const DegenerateReference&) {
                            // Reference indistinguishable from background: fall
                            // back to the absolute metric for this cell.
                            row.metric_kind = MetricKind::Absolute;
                            row.err_a = absolute_error(got.a_ref, ref.a_ref);
                            row.err_b = absolute_error(got.b_ref, ref.b_ref);
                        }
                        row.status = CellStatus::Ok;
                        table.rows.push_back(row);
                    }
    return table;
}

TableFormat parse_table_format(const std::string& name) {
    if (name == "csv") return TableFormat::Csv;
    if (name == "markdown") return TableFormat::Markdown;
    if (name == "json") return TableFormat::Json;
    throw std::invalid_argument("unknown table format: " + name);
}

std::string emit_table(const BenchTable& table, TableFormat format) {
    if (table.rows.empty()) throw std::invalid_argument("emit_table: empty table");

    if (format == TableFormat::Csv) {
        std::ostringstream out;
        out << "method,id,region,T,dt,metric,err_a,err_b,status\n";
        for (const ErrorReport& r : table.rows) {
            const bool ok = r.status == CellStatus::Ok;
            out << method_name(r.method) << ',' << r.id.name() << ','
                << region_name(r.region.kind) << ',' << fmt_real(r.t_final) << ','
                << fmt_real(r.dt) << ','
                << (r.metric_kind == MetricKind::Relative ? "relative" : "absolute") << ','
                << (ok ? fmt_err(r.err_a) : "inf") << ',' << (ok ? fmt_err(r.err_b) : "inf")
                << ',' << (ok ? "ok" : "diverged") << '\n';
        }
        return out.str();
    }

    if (format == TableFormat::Json) {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const ErrorReport& r : table.rows) {
            const bool ok = r.status == CellStatus::Ok;
            nlohmann::ordered_json row;
            row["method"] = method_name(r.method);
            row["id"] = r.id.name();
            row["region"] = region_name(r.region.kind);
            row["T"] = r.t_final;
            row["dt"] = r.dt;
            row["metric"] = r.metric_kind == MetricKind::Relative ? "relative" : "absolute";
            if (ok) {
                row["err_a"] = fmt_err(r.err_a);
                row["err_b"] = fmt_err(r.err_b);
            } else {
                row["err_a"] = "inf";
                row["err_b"] = "inf";
            }
            row["status"] = ok ? "ok" : "diverged";
            rows.push_back(row);
        }
        return rows.dump(2) + "\n";
    }

    // Markdown: one block per (id, region) in row order, methods as rows,
    // (T, dt) as columns, cell = err_a / err_b.
    std::ostringstream out;
    std::vector<std::pair<std::string, RegionKind>> blocks;
    for (const ErrorReport& r : table.rows) {
        const std::pair<std::string, RegionKind> key{r.id.name(), r.region.kind};
        if (std::find(blocks.begin(), blocks.end(), key) == blocks.end()) blocks.push_back(key);
    }
    for (const auto& [id_name, rk] : blocks) {
        std::vector<std::string> methods;
        std::vector<std::pair<double, double>> columns; // (T, dt)
        for (const ErrorReport& r : table.rows) {
            if (r.id.name() != id_name || r.region.kind != rk) continue;
            if (std::find(methods.begin(), methods.end(), method_name(r.method)) == methods.end())
                methods.push_back(method_name(r.method));
            const std::pair<double, double> col{r.t_final, r.dt};
            if (std::find(columns.begin(), columns.end(), col) == columns.end())
                columns.push_back(col);
        }
        out << "## " << id_name << " / " << region_name(rk) << " region\n\n";
        out << "| method |";
        for (const auto& [t, dt] : columns) out << " T=" << fmt_real(t) << " dt=" << fmt_real(dt) << " |";
        out << "\n|---|";
        for (std::size_t i = 0; i < columns.size(); ++i) out << "---|";
        out << "\n";
        for (const std::string& mname : methods) {
            out << "| " << mname << " |";
            for (const auto& [t, dt] : columns) {
                const ErrorReport* found = nullptr;
                for (const ErrorReport& r : table.rows)
                    if (r.id.name() == id_name && r.region.kind == rk &&
                        method_name(r.method) == mname && r.t_final == t && r.dt == dt) {
                        found = &r;
                        break;
                    }
                if (!found || found->status != CellStatus::Ok)
                    out << " — |";
                else
                    out << ' ' << fmt_err(found->err_a) << " / " << fmt_err(found->err_b) << " |";
            }
            out << "\n";
        }
        out << "\n";
    }
    return out.str();
}

void emit_profile(const InitialData& id, MethodKind method, double dt, double t_final,
                  const std::string& out_path, int window_half) {
    IndexWindow w;
    if (window_half > 0) {
        w = IndexWindow::symmetric(window_half);
    } else {
        const SpectralSummary spec = spectral_summary(id, 60);
        w = default_window(t_final, spec.s_max);
    }
    const LatticeStateAB state =
        t_final > 0.0 ? integrate(id, StepperConfig{method, dt, t_final}, w) : make_id(id, w);
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open for writing: " + out_path);
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.17g", t_final);
    out << "# toda-profile id=" << id.name() << " T=" << buf << " method=" << method_name(method)
        << " dt=" << fmt_real(dt) << "\n";
    for (int n = w.k_min; n <= w.k_max; ++n) {
        const std::size_t i = w.offset(n);
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g", n, state.a[i], state.b[i]);
        out << buf << "\n";
    }
    if (!out) throw std::runtime_error("write failed: " + out_path);
}

std::vector<double> observed_orders(const std::vector<MethodKind>& methods,
                                    const InitialData& id, double t_final,
                                    std::vector<double> dts, double dt_ref) {
    if (dts.size() < 3)
        throw std::invalid_argument("observed_order: need at least 3 time steps");
    std::sort(dts.begin(), dts.end(), std::greater<double>());
    if (!(t_final > 0.0)) throw std::invalid_argument("observed_order: t_final must be positive");
    if (dt_ref <= 0.0) dt_ref = dts.back() / 100.0;

    const SpectralSummary spec = spectral_summary(id, 60);
    const IndexWindow w = default_window(t_final, spec.s_max);
    const LatticeStateAB ref = fine_reference_state(id, t_final, dt_ref, w);

    std::vector<double> slopes;
    for (MethodKind m : methods) {
        std::vector<double> log_dt, log_err;
        for (double dt : dts) {
            const LatticeStateAB got = integrate(id, StepperConfig{m, dt, t_final}, w);
            double err;
            try {
                err = std::max(relative_error(got.a, ref.a, 0.5),
                               relative_error(got.b, ref.b, 0.0));
            } catch (const DegenerateReference&) {
                err = std::max(absolute_error(got.a, ref.a), absolute_error(got.b, ref.b));
            }
            log_dt.push_back(std::log(dt));
            log_err.push_back(std::log(err));
        }
        // least-squares slope
        const double n = static_cast<double>(log_dt.size());
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < log_dt.size(); ++i) {
            sx += log_dt[i];
            sy += log_err[i];
            sxx += log_dt[i] * log_dt[i];
            sxy += log_dt[i] * log_err[i];
        }
        slopes.push_back((n * sxy - sx * sy) / (n * sxx - sx * sx));
    }
    return slopes;
}

double observed_order(MethodKind method, const InitialData& id, double t_final,
                      std::vector<double> dts, double dt_ref) {
    return observed_orders({method}, id, t_final, std::move(dts), dt_ref)[0];
}

} // namespace toda
