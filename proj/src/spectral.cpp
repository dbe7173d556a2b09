#include "toda/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "toda/integrators.hpp"

namespace toda {

namespace {

// Number of eigenvalues of the tridiagonal matrix strictly below x,
// via the signs of the LDL^T pivots.
int count_below(const std::vector<double>& d, const std::vector<double>& e, double x) {
    const std::size_t n = d.size();
    int cnt = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        q = d[i] - x - (i > 0 ? e[i - 1] * e[i - 1] / q : 0.0);
        if (q == 0.0) q = -std::numeric_limits<double>::min();
        if (q < 0.0) ++cnt;
    }
    return cnt;
}

// k-th smallest eigenvalue (1-based), bracketed in [lo, hi].
double bisect_eigenvalue(const std::vector<double>& d, const std::vector<double>& e,
                         int k, double lo, double hi) {
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max({1.0, std::fabs(lo), std::fabs(hi)});
         ++it) {
        const double mid = 0.5 * (lo + hi);
        if (count_below(d, e, mid) >= k)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

JacobiMatrix build_jacobi(const LatticeStateAB& state, int m) {
    if (m < 1) throw std::invalid_argument("build_jacobi: m must be >= 1");
    if (!state.window.contains(-m) || !state.window.contains(m))
        throw std::invalid_argument("build_jacobi: [-m, m] not inside the state window");
    JacobiMatrix j;
    j.window = IndexWindow(-m, m);
    j.diag.reserve(2 * m + 1);
    j.offdiag.reserve(2 * m);
    for (int n = -m; n <= m; ++n) {
        const std::size_t i = state.window.offset(n);
        j.diag.push_back(state.b[i]);
        if (n < m) {
            if (!(state.a[i] > 0.0))
                throw std::invalid_argument("build_jacobi: a_n <= 0 in range");
            j.offdiag.push_back(state.a[i]);
        }
    }
    return j;
}

std::vector<double> eigenvalues_outside_band(const JacobiMatrix& matrix) {
    const std::vector<double>& d = matrix.diag;
    const std::vector<double>& e = matrix.offdiag;
    const int n = static_cast<int>(d.size());

    // Gershgorin bounds.
    double glo = std::numeric_limits<double>::max();
    double ghi = std::numeric_limits<double>::lowest();
    for (int i = 0; i < n; ++i) {
        const double r = (i > 0 ? std::fabs(e[i - 1]) : 0.0) +
                         (i < n - 1 ? std::fabs(e[i]) : 0.0);
        glo = std::min(glo, d[i] - r);
        ghi = std::max(ghi, d[i] + r);
    }
    glo -= 1.0;
    ghi += 1.0;

    std::vector<double> out;
    const double upper_edge = 1.0 + kBandTolerance;
    const double lower_edge = -1.0 - kBandTolerance;

    const int below_lower = count_below(d, e, lower_edge);
    for (int k = 1; k <= below_lower; ++k)
        out.push_back(bisect_eigenvalue(d, e, k, glo, lower_edge));

    const int below_upper = count_below(d, e, upper_edge);
    for (int k = below_upper + 1; k <= n; ++k)
        out.push_back(bisect_eigenvalue(d, e, k, upper_edge, ghi));

    return out;
}

SpectralSummary soliton_speeds(const std::vector<double>& eigs) {
    SpectralSummary s;
    s.bound_states = eigs;
    std::sort(s.bound_states.begin(), s.bound_states.end());
    for (double lam : s.bound_states) {
        if (!(std::fabs(lam) > 1.0))
            throw std::invalid_argument("soliton_speeds: |lambda| <= 1 is not a bound state");
        const double kappa = std::acosh(std::fabs(lam));
        s.kappas.push_back(kappa);
        s.speeds.push_back(std::sinh(kappa) / kappa);
    }
    s.s_max = 1.0;
    for (double sp : s.speeds) s.s_max = std::max(s.s_max, sp);
    return s;
}

SpectralSummary spectral_summary(const LatticeStateAB& state, int m) {
    return soliton_speeds(eigenvalues_outside_band(build_jacobi(state, m)));
}

SpectralSummary spectral_summary(const InitialData& id, int m) {
    return spectral_summary(make_id(id, IndexWindow::symmetric(m + 10)), m);
}

double lax_residual(const LatticeStateAB& state, int m) {
    const int half = std::min(-state.window.k_min, state.window.k_max);
    if (m + 5 > half)
        throw std::invalid_argument("lax_residual: state half-width must exceed m by 5");

    const int big = m + 2;              // matrix sub-window [-big, big]
    const int sz = 2 * big + 1;
    std::vector<double> L(sz * sz, 0.0), P(sz * sz, 0.0);
    auto at = [sz](std::vector<double>& mat, int i, int j) -> double& {
        return mat[static_cast<std::size_t>(i) * sz + j];
    };

    std::vector<double> da, db;
    rhs_ab(state, da, db);

    for (int i = 0; i < sz; ++i) {
        const int n = i - big;
        const std::size_t s = state.window.offset(n);
        at(L, i, i) = state.b[s];
        if (i < sz - 1) {
            at(L, i, i + 1) = state.a[s];
            at(L, i + 1, i) = state.a[s];
            at(P, i, i + 1) = state.a[s];
            at(P, i + 1, i) = -state.a[s];
        }
    }

    // C = PL - LP
    std::vector<double> C(sz * sz, 0.0);
    for (int i = 0; i < sz; ++i)
        for (int k = 0; k < sz; ++k) {
            const double p_ik = P[static_cast<std::size_t>(i) * sz + k];
            const double l_ik = L[static_cast<std::size_t>(i) * sz + k];
            if (p_ik == 0.0 && l_ik == 0.0) continue;
            for (int j = std::max(0, k - 1); j <= std::min(sz - 1, k + 1); ++j) {
                C[static_cast<std::size_t>(i) * sz + j] +=
                    p_ik * L[static_cast<std::size_t>(k) * sz + j] -
                    l_ik * P[static_cast<std::size_t>(k) * sz + j];
            }
        }

    double res = 0.0;
    for (int i = 2; i < sz - 2; ++i) { // rows n in [-m, m]
        const int n = i - big;
        const std::size_t s = state.window.offset(n);
        for (int j = 0; j < sz; ++j) {
            double dl = 0.0;
            if (j == i) dl = db[s];
            else if (j == i + 1) dl = da[s];
            else if (j == i - 1) dl = da[state.window.offset(n - 1)];
            res = std::max(res, std::fabs(dl - C[static_cast<std::size_t>(i) * sz + j]));
        }
    }
    return res;
}

double measure_soliton_speed(const InitialData& id, double t1, double t2) {
    if (!(t2 > t1 && t1 > 0.0))
        throw std::invalid_argument("measure_soliton_speed: need t2 > t1 > 0");
    const double dt = 1e-3;
    const SpectralSummary spec = spectral_summary(id, 60);
    const IndexWindow w = default_window(t2, spec.s_max);

    auto peak_site = [&w](const LatticeStateAB& s, double t) -> int {
        int best = 0;
        double best_dev = 0.0;
        const int cone = -static_cast<int>(std::ceil(t));
        for (int n = w.k_min; n < cone; ++n) {
            const double dev = std::fabs(s.a[w.offset(n)] - 0.5);
            if (dev > best_dev) {
                best_dev = dev;
                best = n;
            }
        }
        // The leading lobe of the dispersive front just ahead of the cone can
        // reach ~1e-2; a genuine soliton peak (kappa >= 0.4) stays above 0.03.
        if (best_dev < 0.02)
            throw std::runtime_error("measure_soliton_speed: no soliton peak beyond the cone");
        return best;
    };

    const long step1 = std::lround(t1 / dt);
    int n1 = 0;
    bool have_n1 = false;
    IntegrateOptions opts;
    opts.observe_every = step1;
    opts.observe_ab = [&](long step, const LatticeStateAB& s) {
        if (step == step1) {
            n1 = peak_site(s, t1);
            have_n1 = true;
        }
    };
    StepperConfig cfg{MethodKind::RK4, dt, t2};
    const LatticeStateAB end = integrate(id, cfg, w, opts);
    if (!have_n1) throw std::runtime_error("measure_soliton_speed: t1 not hit by the step grid");
    const int n2 = peak_site(end, t2);
    return static_cast<double>(n1 - n2) / (t2 - t1);
}

} // namespace toda
