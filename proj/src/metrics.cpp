#include "toda/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "toda/errors.hpp"

namespace toda {

std::string region_name(RegionKind k) {
    return k == RegionKind::Soliton ? "soliton" : "dispersive";
}

RegionKind parse_region(const std::string& name) {
    if (name == "soliton") return RegionKind::Soliton;
    if (name == "dispersive") return RegionKind::Dispersive;
    throw std::invalid_argument("unknown region kind: " + name);
}

RegionSpec::RegionSpec(RegionKind k, int lo, int hi) : kind(k), n_min(lo), n_max(hi) {
    if (lo > hi) throw std::invalid_argument("RegionSpec: empty range");
}

double sorted_norm(const std::vector<double>& x, double d) {
    if (x.empty()) throw std::invalid_argument("sorted_norm: empty input");
    if (!(d > 0.0 && d < 1.0)) throw std::invalid_argument("sorted_norm: d must be in (0,1)");
    const std::size_t keep =
        static_cast<std::size_t>(std::ceil(d * static_cast<double>(x.size())));
    std::vector<double> mag(x.size());
    std::transform(x.begin(), x.end(), mag.begin(), [](double v) { return std::fabs(v); });
    std::partial_sort(mag.begin(), mag.begin() + keep, mag.end(), std::greater<double>());
    double s = 0.0;
    for (std::size_t i = 0; i < keep; ++i) s += mag[i] * mag[i];
    return std::sqrt(s);
}

namespace {
std::vector<double> diff(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size())
        throw std::invalid_argument("error metric: length mismatch");
    std::vector<double> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
    return r;
}
} // namespace

double relative_error(const std::vector<double>& x, const std::vector<double>& y,
                      double background, double d) {
    const double num = sorted_norm(diff(x, y), d);
    std::vector<double> base(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) base[i] = background - y[i];
    const double den = sorted_norm(base, d);
    if (den == 0.0)
        throw DegenerateReference("relative_error: reference equals the background");
    return num / den;
}

double absolute_error(const std::vector<double>& x, const std::vector<double>& y, double d) {
    return sorted_norm(diff(x, y), d);
}

RegionSpec soliton_region(double t_final, double s_max, int margin) {
    if (!(t_final > 0.0)) throw std::invalid_argument("soliton_region: t_final must be positive");
    if (s_max < 1.0) throw std::invalid_argument("soliton_region: s_max must be >= 1");
    const int lo = -static_cast<int>(std::ceil(s_max * t_final)) - margin;
    const int hi = -static_cast<int>(std::ceil(t_final));
    return RegionSpec(RegionKind::Soliton, lo, hi);
}

RegionSpec dispersive_region(double t_final) {
    if (!(t_final > 0.0))
        throw std::invalid_argument("dispersive_region: t_final must be positive");
    const int center = -static_cast<int>(std::llround(t_final / 2.0));
    return RegionSpec(RegionKind::Dispersive, center - 50, center + 50);
}

} // namespace toda
