#ifndef TODA_REFERENCE_HPP
#define TODA_REFERENCE_HPP

#include <string>
#include <vector>

#include "toda/initial_data.hpp"
#include "toda/lattice.hpp"
#include "toda/metrics.hpp"

namespace toda {

enum class ReferenceSource { ExactSoliton, ExternalFile, FineIntegration };

std::string reference_source_name(ReferenceSource s);

// Reference (a_n, b_n) values over a region at a fixed time, with provenance.
struct ReferenceSolution {
    InitialData id;
    double t_final = 0.0;
    RegionSpec region;
    std::vector<double> a_ref;
    std::vector<double> b_ref;
    ReferenceSource source = ReferenceSource::FineIntegration;
};

// Exact one-soliton values over the region at t_final.
ReferenceSolution pures_reference(double t_final, const RegionSpec& region, double kappa = 0.4);

// Full-lattice fine rk4 run, cross-checked against a step-halved companion;
// throws std::runtime_error when the two disagree beyond 10x target_tol.
// Window defaults to default_window(t_final, s_max-from-spectrum).
LatticeStateAB fine_reference_state(const InitialData& id, double t_final, double dt_ref,
                                    double target_tol = 1e-8);
LatticeStateAB fine_reference_state(const InitialData& id, double t_final, double dt_ref,
                                    const IndexWindow& window, double target_tol = 1e-8);

// Restrict a full state to a region.
ReferenceSolution extract_region(const LatticeStateAB& state, const InitialData& id,
                                 const RegionSpec& region, ReferenceSource source);

ReferenceSolution fine_reference(const InitialData& id, double t_final, const RegionSpec& region,
                                 double dt_ref, double target_tol = 1e-8);

// CSV format: header "# toda-reference id=<name> T=<real> source=<tag>",
// then "n,a_ref,b_ref" per site with n strictly increasing and contiguous.
ReferenceSolution load_reference_csv(const std::string& path);
void write_reference_csv(const ReferenceSolution& ref, const std::string& path);

} // namespace toda

#endif
