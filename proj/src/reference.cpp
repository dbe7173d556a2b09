#include "toda/reference.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "toda/errors.hpp"
#include "toda/integrators.hpp"
#include "toda/spectral.hpp"

namespace toda {

std::string reference_source_name(ReferenceSource s) {
    switch (s) {
        case ReferenceSource::ExactSoliton: return "exact-soliton";
        case ReferenceSource::ExternalFile: return "external-file";
        case ReferenceSource::FineIntegration: return "fine-integration";
    }
    return "?";
}

ReferenceSolution pures_reference(double t_final, const RegionSpec& region, double kappa) {
    ReferenceSolution ref;
    ref.id = {IdFamily::PureS, kappa};
    ref.t_final = t_final;
    ref.region = region;
    ref.source = ReferenceSource::ExactSoliton;
    for (int n = region.n_min; n <= region.n_max; ++n) {
        const SolitonPoint pt = exact_soliton(kappa, n, t_final);
        ref.a_ref.push_back(pt.a);
        ref.b_ref.push_back(pt.b);
    }
    return ref;
}

ReferenceSolution extract_region(const LatticeStateAB& state, const InitialData& id,
                                 const RegionSpec& region, ReferenceSource source) {
    if (!state.window.contains(region.n_min) || !state.window.contains(region.n_max))
        throw std::invalid_argument("extract_region: region outside the state window");
    ReferenceSolution ref;
    ref.id = id;
    ref.t_final = state.time;
    ref.region = region;
    ref.source = source;
    for (int n = region.n_min; n <= region.n_max; ++n) {
        ref.a_ref.push_back(state.a[state.window.offset(n)]);
        ref.b_ref.push_back(state.b[state.window.offset(n)]);
    }
    return ref;
}

LatticeStateAB fine_reference_state(const InitialData& id, double t_final, double dt_ref,
                                    double target_tol) {
    const SpectralSummary spec = spectral_summary(id, 60);
    return fine_reference_state(id, t_final, dt_ref, default_window(t_final, spec.s_max),
                                target_tol);
}

LatticeStateAB fine_reference_state(const InitialData& id, double t_final, double dt_ref,
                                    const IndexWindow& window, double target_tol) {
    const LatticeStateAB base =
        integrate(id, StepperConfig{MethodKind::RK4, dt_ref, t_final}, window);
    const LatticeStateAB halved =
        integrate(id, StepperConfig{MethodKind::RK4, dt_ref / 2.0, t_final}, window);
    double disagreement;
    try {
        disagreement = std::max(relative_error(base.a, halved.a, 0.5),
                                relative_error(base.b, halved.b, 0.0));
    } catch (const DegenerateReference&) {
        disagreement = std::max(absolute_error(base.a, halved.a),
                                absolute_error(base.b, halved.b));
    }
    if (!(disagreement <= 10.0 * target_tol))
        throw std::runtime_error(
            "fine_reference: step-halving check failed (disagreement " +
            std::to_string(disagreement) + " vs allowance " + std::to_string(10.0 * target_tol) +
            "); reference not trustworthy at the requested accuracy");
    return base;
}

ReferenceSolution fine_reference(const InitialData& id, double t_final, const RegionSpec& region,
                                 double dt_ref, double target_tol) {
    const LatticeStateAB state = fine_reference_state(id, t_final, dt_ref, target_tol);
    return extract_region(state, id, region, ReferenceSource::FineIntegration);
}

void write_reference_csv(const ReferenceSolution& ref, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.17g", ref.t_final);
    out << "# toda-reference id=" << ref.id.name() << " T=" << buf
        << " source=" << reference_source_name(ref.source) << "\n";
    for (std::size_t i = 0; i < ref.a_ref.size(); ++i) {
        const int n = ref.region.n_min + static_cast<int>(i);
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g", n, ref.a_ref[i], ref.b_ref[i]);
        out << buf << "\n";
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

namespace {
std::string header_field(const std::string& header, const std::string& key) {
    const std::string token = key + "=";
    const std::size_t pos = header.find(token);
    if (pos == std::string::npos)
        throw std::runtime_error("reference csv line 1: missing " + key + "=");
    const std::size_t start = pos + token.size();
    std::size_t end = header.find(' ', start);
    if (end == std::string::npos) end = header.size();
    return header.substr(start, end - start);
}
} // namespace

ReferenceSolution load_reference_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error(path + ": empty file");
    if (line.rfind("# toda-reference", 0) != 0)
        throw std::runtime_error(path + " line 1: expected '# toda-reference' header");

    ReferenceSolution ref;
    ref.id = InitialData::parse(header_field(line, "id"));
    ref.t_final = std::stod(header_field(line, "T"));
    ref.source = ReferenceSource::ExternalFile;

    std::vector<int> ns;
    long lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        int n;
        double a, b;
        char extra;
        if (std::sscanf(line.c_str(), "%d,%lf,%lf %c", &n, &a, &b, &extra) != 3)
            throw std::runtime_error(path + " line " + std::to_string(lineno) +
                                     ": expected 'n,a_ref,b_ref'");
        if (!std::isfinite(a) || !std::isfinite(b))
            throw std::runtime_error(path + " line " + std::to_string(lineno) +
                                     ": non-finite value");
        if (!ns.empty() && n != ns.back() + 1)
            throw std::runtime_error(path + " line " + std::to_string(lineno) +
                                     ": non-contiguous index (got " + std::to_string(n) +
                                     " after " + std::to_string(ns.back()) + ")");
        ns.push_back(n);
        ref.a_ref.push_back(a);
        ref.b_ref.push_back(b);
    }
    if (ns.empty()) throw std::runtime_error(path + ": no data rows");
    const RegionKind kind = ns.front() <= -static_cast<int>(ref.t_final)
                                ? RegionKind::Soliton
                                : RegionKind::Dispersive;
    ref.region = RegionSpec(kind, ns.front(), ns.back());
    return ref;
}

} // namespace toda
