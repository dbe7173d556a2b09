#ifndef TODA_INTEGRATORS_HPP
#define TODA_INTEGRATORS_HPP

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "toda/initial_data.hpp"
#include "toda/lattice.hpp"

namespace toda {

enum class MethodKind { Midpoint, MidpointQP, SV2Symp, AB4, RK4, RK4QP, RKF45 };

MethodKind parse_method(const std::string& name);
std::string method_name(MethodKind m);
// True for the methods that integrate the physical (p, q) equations.
bool is_pq_method(MethodKind m);
int method_order(MethodKind m);

// Stage coefficients b_ij (rows for stages 2..6) and output weights c_j of
// the Fehlberg tableau. Stored as exact rational quotients.
struct RKF45Tableau {
    std::array<std::array<double, 5>, 5> b; // b[i-2][j-1] for stage i = 2..6
    std::array<double, 6> c;

    static RKF45Tableau standard();
};

struct StepperConfig {
    MethodKind method = MethodKind::RK4;
    double dt = 0.0;
    double t_final = 0.0;

    // Step count; throws std::invalid_argument unless dt > 0, t_final >= 0
    // and dt divides t_final to within one part in 1e12.
    long step_count() const;
};

using RhsFn = std::function<void(const std::vector<double>&, std::vector<double>&)>;

// Single steps of the generic one-step methods (y and the result are flat
// state vectors; f writes dy/dt into its second argument).
std::vector<double> step_midpoint(const std::vector<double>& y, double h, const RhsFn& f);
std::vector<double> step_rk4(const std::vector<double>& y, double h, const RhsFn& f);
std::vector<double> step_rkf45(const std::vector<double>& y, double h, const RhsFn& f,
                               const RKF45Tableau& tableau = RKF45Tableau::standard());

// One leapfrog step of the separable Stoermer-Verlet scheme on (p, q).
LatticeStatePQ step_sv2symp(const LatticeStatePQ& state, double h);

// Adams-Bashforth 4. The lower-order startup cascade (Euler, AB2, AB3) is run
// on a sub-grid with step ~ 4 h^2 so the method is globally fourth order; for
// h >= 0.25 the cascade runs directly at step h.
std::vector<double> ab4_run(const std::vector<double>& y0, double h, long n_steps, const RhsFn& f);

// Per-step hooks into a full trajectory. Exactly one of the two callbacks
// fires, depending on the method's native variable set; the callback is
// invoked at step 0, then every observe_every steps, then at the last step.
struct IntegrateOptions {
    std::function<void(long step, const LatticeStateAB&)> observe_ab;
    std::function<void(long step, const LatticeStatePQ&)> observe_pq;
    long observe_every = 1;
};

// Build the initial data, integrate it in the method's native variables and
// return the final state in (a, b). Throws BlowUpError (with the step index)
// if a non-finite value appears.
LatticeStateAB integrate(const InitialData& id, const StepperConfig& config,
                         const IndexWindow& window);
LatticeStateAB integrate(const InitialData& id, const StepperConfig& config,
                         const IndexWindow& window, const IntegrateOptions& options);

// Same driver starting from an explicit (a, b) state.
LatticeStateAB integrate_state(const LatticeStateAB& initial, const StepperConfig& config,
                               const IntegrateOptions& options = {});

} // namespace toda

#endif
