#ifndef TODA_LATTICE_HPP
#define TODA_LATTICE_HPP

#include <cstddef>
#include <vector>

namespace toda {

// Inclusive range of lattice indices [k_min, k_max].
struct IndexWindow {
    int k_min = 0;
    int k_max = 0;

    IndexWindow() = default;
    IndexWindow(int lo, int hi);

    std::size_t length() const { return static_cast<std::size_t>(k_max - k_min + 1); }
    bool contains(int n) const { return n >= k_min && n <= k_max; }
    // Position of lattice index n in the stored arrays.
    std::size_t offset(int n) const { return static_cast<std::size_t>(n - k_min); }

    static IndexWindow symmetric(int half_width);
    bool operator==(const IndexWindow&) const = default;
};

// Window half-width large enough that the fastest signal (speed s_max,
// at least 1 for the dispersive front) stays away from the boundary
// until t_final.
IndexWindow default_window(double t_final, double s_max);

// Physical variables (p_n, q_n); background (0, 0) outside the window.
struct LatticeStatePQ {
    IndexWindow window;
    std::vector<double> p;
    std::vector<double> q;
    double time = 0.0;

    LatticeStatePQ() = default;
    explicit LatticeStatePQ(const IndexWindow& w);
};

// Flaschka variables (a_n, b_n); background (1/2, 0) outside the window.
// a_n > 0 always (off-diagonal of a Jacobi matrix).
struct LatticeStateAB {
    IndexWindow window;
    std::vector<double> a;
    std::vector<double> b;
    double time = 0.0;

    LatticeStateAB() = default;
    explicit LatticeStateAB(const IndexWindow& w);
};

// Interaction potential V(r) = e^{-r} + r - 1; V >= 0 with equality only at r = 0.
double toda_potential(double r);

// (p, q) -> (a, b): a_n = (1/2) e^{-(q_{n+1}-q_n)/2}, b_n = -p_n/2.
// The difference past the right edge is taken as 0 (background continuation).
LatticeStateAB flaschka(const LatticeStatePQ& state);

// Inverse of the bijection; q is rebuilt left to right from q_{k_min} = q_anchor.
// Throws std::invalid_argument if any a_n <= 0.
LatticeStatePQ inverse_flaschka(const LatticeStateAB& state, double q_anchor = 0.0);

// Equations of motion in the two variable sets. Output buffers are resized
// to the window length. Outside the window the background is frozen.
void rhs_pq(const LatticeStatePQ& state, std::vector<double>& dp, std::vector<double>& dq);
void rhs_ab(const LatticeStateAB& state, std::vector<double>& da, std::vector<double>& db);

// Flat-vector forms used by the generic steppers: y = [a..., b...] or [p..., q...].
void rhs_ab_flat(const std::vector<double>& y, std::vector<double>& dy);
void rhs_pq_flat(const std::vector<double>& y, std::vector<double>& dy);

// Total energy sum over the window, boundary springs continued by background.
double hamiltonian(const LatticeStatePQ& state);

// Background-subtracted trace functionals of the Jacobi operator:
// c1 = sum b_n, c2 = sum (b_n^2 + 2 a_n^2 - 1/2). Conserved by the flow.
struct ConservedTraces {
    double c1 = 0.0;
    double c2 = 0.0;
};
ConservedTraces conserved_traces(const LatticeStateAB& state);

// Flat layout helpers.
LatticeStateAB ab_from_flat(const IndexWindow& w, const std::vector<double>& y, double t);
LatticeStatePQ pq_from_flat(const IndexWindow& w, const std::vector<double>& y, double t);
std::vector<double> flat_from_ab(const LatticeStateAB& s);
std::vector<double> flat_from_pq(const LatticeStatePQ& s);

} // namespace toda

#endif
