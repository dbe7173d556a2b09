#include "toda/lattice.hpp"

#include <cmath>
#include <stdexcept>

namespace toda {

IndexWindow::IndexWindow(int lo, int hi) : k_min(lo), k_max(hi) {
    if (lo > hi) throw std::invalid_argument("IndexWindow: k_min > k_max");
}

IndexWindow IndexWindow::symmetric(int half_width) {
    if (half_width < 0) throw std::invalid_argument("IndexWindow: negative half-width");
    return IndexWindow(-half_width, half_width);
}

IndexWindow default_window(double t_final, double s_max) {
    if (s_max < 1.0) s_max = 1.0;
    int k = static_cast<int>(std::ceil(s_max * t_final)) + 200;
    return IndexWindow::symmetric(k);
}

LatticeStatePQ::LatticeStatePQ(const IndexWindow& w)
    : window(w), p(w.length(), 0.0), q(w.length(), 0.0) {}

LatticeStateAB::LatticeStateAB(const IndexWindow& w)
    : window(w), a(w.length(), 0.5), b(w.length(), 0.0) {}

double toda_potential(double r) {
    // expm1 keeps V accurate near the minimum at r = 0.
    return std::expm1(-r) + r;
}

LatticeStateAB flaschka(const LatticeStatePQ& state) {
    const std::size_t n = state.window.length();
    LatticeStateAB out(state.window);
    out.time = state.time;
    for (std::size_t i = 0; i < n; ++i) {
        const double dq = (i + 1 < n) ? state.q[i + 1] - state.q[i] : 0.0;
        out.a[i] = 0.5 * std::exp(-0.5 * dq);
        out.b[i] = -0.5 * state.p[i];
    }
    return out;
}

LatticeStatePQ inverse_flaschka(const LatticeStateAB& state, double q_anchor) {
    const std::size_t n = state.window.length();
    LatticeStatePQ out(state.window);
    out.time = state.time;
    double q = q_anchor;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(state.a[i] > 0.0))
            throw std::invalid_argument("inverse_flaschka: a_n <= 0 is not valid Jacobi data");
        out.p[i] = -2.0 * state.b[i];
        out.q[i] = q;
        q -= 2.0 * std::log(2.0 * state.a[i]);
    }
    return out;
}

void rhs_pq(const LatticeStatePQ& state, std::vector<double>& dp, std::vector<double>& dq) {
    const std::size_t n = state.window.length();
    dp.resize(n);
    dq.resize(n);
    // w_i = e^{-(q_{i+1}-q_i)}, with the boundary differences 0 so w = 1 there.
    double w_left = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w_right = (i + 1 < n) ? std::exp(-(state.q[i + 1] - state.q[i])) : 1.0;
        dp[i] = w_left - w_right;
        dq[i] = state.p[i];
        w_left = w_right;
    }
}

void rhs_ab(const LatticeStateAB& state, std::vector<double>& da, std::vector<double>& db) {
    const std::size_t n = state.window.length();
    da.resize(n);
    db.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double b_next = (i + 1 < n) ? state.b[i + 1] : 0.0;
        const double a_prev = (i > 0) ? state.a[i - 1] : 0.5;
        da[i] = state.a[i] * (b_next - state.b[i]);
        db[i] = 2.0 * (state.a[i] * state.a[i] - a_prev * a_prev);
    }
}

void rhs_ab_flat(const std::vector<double>& y, std::vector<double>& dy) {
    const std::size_t n = y.size() / 2;
    dy.resize(2 * n);
    const double* a = y.data();
    const double* b = y.data() + n;
    double* da = dy.data();
    double* db = dy.data() + n;
    for (std::size_t i = 0; i < n; ++i) {
        const double b_next = (i + 1 < n) ? b[i + 1] : 0.0;
        const double a_prev = (i > 0) ? a[i - 1] : 0.5;
        da[i] = a[i] * (b_next - b[i]);
        db[i] = 2.0 * (a[i] * a[i] - a_prev * a_prev);
    }
}

void rhs_pq_flat(const std::vector<double>& y, std::vector<double>& dy) {
    const std::size_t n = y.size() / 2;
    dy.resize(2 * n);
    const double* p = y.data();
    const double* q = y.data() + n;
    double* dp = dy.data();
    double* dq = dy.data() + n;
    double w_left = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w_right = (i + 1 < n) ? std::exp(-(q[i + 1] - q[i])) : 1.0;
        dp[i] = w_left - w_right;
        dq[i] = p[i];
        w_left = w_right;
    }
}

double hamiltonian(const LatticeStatePQ& state) {
    const std::size_t n = state.window.length();
    double h = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dq = (i + 1 < n) ? state.q[i + 1] - state.q[i] : 0.0;
        h += 0.5 * state.p[i] * state.p[i] + toda_potential(dq);
    }
    return h;
}

ConservedTraces conserved_traces(const LatticeStateAB& state) {
    ConservedTraces c;
    const std::size_t n = state.window.length();
    for (std::size_t i = 0; i < n; ++i) {
        c.c1 += state.b[i];
        c.c2 += state.b[i] * state.b[i] + 2.0 * state.a[i] * state.a[i] - 0.5;
    }
    return c;
}

LatticeStateAB ab_from_flat(const IndexWindow& w, const std::vector<double>& y, double t) {
    const std::size_t n = w.length();
    LatticeStateAB s(w);
    s.time = t;
    s.a.assign(y.begin(), y.begin() + n);
    s.b.assign(y.begin() + n, y.end());
    return s;
}

LatticeStatePQ pq_from_flat(const IndexWindow& w, const std::vector<double>& y, double t) {
    const std::size_t n = w.length();
    LatticeStatePQ s(w);
    s.time = t;
    s.p.assign(y.begin(), y.begin() + n);
    s.q.assign(y.begin() + n, y.end());
    return s;
}

std::vector<double> flat_from_ab(const LatticeStateAB& s) {
    std::vector<double> y(s.a);
    y.insert(y.end(), s.b.begin(), s.b.end());
    return y;
}

std::vector<double> flat_from_pq(const LatticeStatePQ& s) {
    std::vector<double> y(s.p);
    y.insert(y.end(), s.q.begin(), s.q.end());
    return y;
}

} // namespace toda
