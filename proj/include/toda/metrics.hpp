#ifndef TODA_METRICS_HPP
#define TODA_METRICS_HPP

#include <string>
#include <vector>

namespace toda {

enum class RegionKind { Soliton, Dispersive };

std::string region_name(RegionKind k);
RegionKind parse_region(const std::string& name);

// Contiguous index range [n_min, n_max], entirely at n <= 0.
struct RegionSpec {
    RegionKind kind = RegionKind::Dispersive;
    int n_min = 0;
    int n_max = 0;

    RegionSpec() = default;
    RegionSpec(RegionKind k, int lo, int hi);
    std::size_t length() const { return static_cast<std::size_t>(n_max - n_min + 1); }
};

// l2 norm of the ceil(d*n) largest magnitudes of x.
double sorted_norm(const std::vector<double>& x, double d = 0.1);

// ||x - y|| / ||c - y|| in the sorted norm; throws DegenerateReference when
// the denominator vanishes (caller falls back to absolute_error).
double relative_error(const std::vector<double>& x, const std::vector<double>& y,
                      double background, double d = 0.1);

double absolute_error(const std::vector<double>& x, const std::vector<double>& y,
                      double d = 0.1);

// [-ceil(s_max*T) - margin, -ceil(T)]; the outgoing solitons sit near
// n = -s*T. margin = 100*T recovers the wide literal reading.
RegionSpec soliton_region(double t_final, double s_max, int margin = 100);

// 101-site window centered at -T/2.
RegionSpec dispersive_region(double t_final);

} // namespace toda

#endif
