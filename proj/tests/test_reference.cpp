#include <stdexcept>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "toda/initial_data.hpp"
#include "toda/metrics.hpp"
#include "toda/reference.hpp"

using namespace toda;

namespace {

std::string temp_path(const std::string& name) {
    return std::string("/tmp/toda_test_") + name;
}

} // namespace

TEST_CASE("pures_reference at t = 0 matches the initial data") {
    const RegionSpec region(RegionKind::Soliton, -5, 5);
    const ReferenceSolution ref = pures_reference(0.0, region);
    const LatticeStateAB id = make_id({IdFamily::PureS}, IndexWindow::symmetric(5));
    REQUIRE(ref.a_ref.size() == 11);
    for (int n = -5; n <= 5; ++n) {
        CHECK(ref.a_ref[static_cast<std::size_t>(n + 5)] == id.a[id.window.offset(n)]);
        CHECK(ref.b_ref[static_cast<std::size_t>(n + 5)] == id.b[id.window.offset(n)]);
    }
    CHECK(ref.source == ReferenceSource::ExactSoliton);
}

TEST_CASE("pures_reference peak sits at the traveling-wave position") {
    const double s = std::sinh(0.4) / 0.4;
    const RegionSpec region = soliton_region(1000.0, s);
    const ReferenceSolution ref = pures_reference(1000.0, region);
    std::size_t argmax = 0;
    for (std::size_t i = 0; i < ref.a_ref.size(); ++i) {
        if (ref.a_ref[i] > ref.a_ref[argmax]) argmax = i;
    }
    const int peak_site = region.n_min + static_cast<int>(argmax);
    CHECK(std::abs(peak_site - (-static_cast<int>(std::ceil(s * 1000.0)))) <= 1);
}

TEST_CASE("pures_reference dispersive region is pure background") {
    const ReferenceSolution ref = pures_reference(1000.0, dispersive_region(1000.0));
    for (double v : ref.a_ref) CHECK(std::fabs(v - 0.5) <= 1e-13);
    for (double v : ref.b_ref) CHECK(std::fabs(v) <= 1e-13);
}

TEST_CASE("fine reference at T = 0 is the initial data") {
    const RegionSpec region(RegionKind::Dispersive, -10, 0);
    const ReferenceSolution ref = fine_reference({IdFamily::Quad}, 0.0, region, 1e-3);
    const LatticeStateAB id = make_id({IdFamily::Quad}, IndexWindow::symmetric(10));
    for (int n = -10; n <= 0; ++n) {
        CHECK(ref.a_ref[static_cast<std::size_t>(n + 10)] ==
              doctest::Approx(id.a[id.window.offset(n)]).epsilon(1e-14));
    }
    CHECK(ref.source == ReferenceSource::FineIntegration);
}

TEST_CASE("fine reference agrees with the exact soliton") {
    const RegionSpec region = soliton_region(10.0, std::sinh(0.4) / 0.4);
    const ReferenceSolution fine = fine_reference({IdFamily::PureS}, 10.0, region, 1e-4);
    const ReferenceSolution exact = pures_reference(10.0, region);
    CHECK(relative_error(fine.a_ref, exact.a_ref, 0.5) <= 1e-8);
    CHECK(relative_error(fine.b_ref, exact.b_ref, 0.0) <= 1e-8);
}

TEST_CASE("fine reference is window independent") {
    const InitialData id{IdFamily::Double};
    const double t_final = 5.0;
    const LatticeStateAB base =
        fine_reference_state(id, t_final, 1e-3, default_window(t_final, 2.0));
    const IndexWindow wide(default_window(t_final, 2.0).k_min - 100,
                           default_window(t_final, 2.0).k_max + 100);
    const LatticeStateAB big = fine_reference_state(id, t_final, 1e-3, wide);
    for (int n = base.window.k_min; n <= base.window.k_max; ++n) {
        CHECK(std::fabs(base.a[base.window.offset(n)] - big.a[big.window.offset(n)]) <= 1e-13);
        CHECK(std::fabs(base.b[base.window.offset(n)] - big.b[big.window.offset(n)]) <= 1e-13);
    }
}

TEST_CASE("csv round trip") {
    const RegionSpec region(RegionKind::Soliton, -15, -5);
    ReferenceSolution ref = pures_reference(3.0, region);
    const std::string path = temp_path("roundtrip.csv");
    write_reference_csv(ref, path);
    const ReferenceSolution back = load_reference_csv(path);
    REQUIRE(back.a_ref.size() == ref.a_ref.size());
    for (std::size_t i = 0; i < ref.a_ref.size(); ++i) {
        CHECK(back.a_ref[i] == ref.a_ref[i]); // %.17g is round-trip exact
        CHECK(back.b_ref[i] == ref.b_ref[i]);
    }
    CHECK(back.source == ReferenceSource::ExternalFile);
    CHECK(back.t_final == 3.0);
    CHECK(back.region.n_min == -15);
    CHECK(back.region.n_max == -5);
    std::remove(path.c_str());
}

TEST_CASE("csv loader rejects malformed input") {
    const std::string gap = temp_path("gap.csv");
    {
        std::ofstream out(gap);
        out << "# toda-reference id=PureS T=1 source=external-file\n";
        out << "-3,0.5,0.0\n-2,0.5,0.0\n0,0.5,0.0\n"; // hole at n = -1
    }
    CHECK_THROWS_WITH_AS(load_reference_csv(gap), doctest::Contains("line 4"),
                         std::runtime_error);
    std::remove(gap.c_str());

    const std::string hdr = temp_path("hdr.csv");
    {
        std::ofstream out(hdr);
        out << "n,a,b\n-1,0.5,0.0\n";
    }
    CHECK_THROWS_AS(load_reference_csv(hdr), std::runtime_error);
    std::remove(hdr.c_str());

    const std::string nan_file = temp_path("nan.csv");
    {
        std::ofstream out(nan_file);
        out << "# toda-reference id=PureS T=1 source=external-file\n";
        out << "-1,nan,0.0\n";
    }
    CHECK_THROWS_AS(load_reference_csv(nan_file), std::runtime_error);
    std::remove(nan_file.c_str());

    CHECK_THROWS_AS(load_reference_csv(temp_path("missing.csv")), std::runtime_error);
}

TEST_CASE("source names") {
    CHECK(reference_source_name(ReferenceSource::ExactSoliton) == "exact-soliton");
    CHECK(reference_source_name(ReferenceSource::ExternalFile) == "external-file");
    CHECK(reference_source_name(ReferenceSource::FineIntegration) == "fine-integration");
}
