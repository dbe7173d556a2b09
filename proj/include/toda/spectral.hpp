#ifndef TODA_SPECTRAL_HPP
#define TODA_SPECTRAL_HPP

#include <vector>

#include "toda/initial_data.hpp"
#include "toda/lattice.hpp"

namespace toda {

// Symmetric tridiagonal restriction of the Jacobi operator to [-m, m].
struct JacobiMatrix {
    std::vector<double> diag;    // b_n
    std::vector<double> offdiag; // a_n, one shorter
    IndexWindow window;

    std::size_t size() const { return diag.size(); }
};

struct SpectralSummary {
    std::vector<double> bound_states; // eigenvalues with |lambda| > 1, ascending
    std::vector<double> kappas;       // arccosh|lambda|
    std::vector<double> speeds;       // sinh(kappa)/kappa
    double s_max = 1.0;               // 1 when there are no bound states
};

// Throws std::invalid_argument if [-m, m] is not inside the state window or
// some a_n <= 0 in range.
JacobiMatrix build_jacobi(const LatticeStateAB& state, int m);

// Tolerance separating genuine bound states from the discretized band.
inline constexpr double kBandTolerance = 1e-8;

// Eigenvalues with |lambda| > 1 + kBandTolerance, ascending. Sturm-count
// bisection over the out-of-band intervals only.
std::vector<double> eigenvalues_outside_band(const JacobiMatrix& matrix);

// kappa = arccosh|lambda|, speed = sinh(kappa)/kappa per bound state.
// Throws std::invalid_argument if some |lambda| <= 1.
SpectralSummary soliton_speeds(const std::vector<double>& eigs);

// Convenience: bound states of the initial data on a window of half-width m.
SpectralSummary spectral_summary(const InitialData& id, int m = 60);
SpectralSummary spectral_summary(const LatticeStateAB& state, int m = 60);

// Max-norm of dL/dt - (PL - LP) over the interior rows of the [-m, m]
// truncation; requires the state half-width to exceed m by at least 5.
double lax_residual(const LatticeStateAB& state, int m);

// Empirical soliton speed: integrate with rk4 (dt = 1e-3), track the argmax
// of |a_n - 1/2| ahead of the dispersive cone (n < -t) at t1 and t2.
// Throws std::runtime_error if no peak rises above background there.
double measure_soliton_speed(const InitialData& id, double t1, double t2);

} // namespace toda

#endif
