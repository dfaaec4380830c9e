#include "doctest.h"

#include <sstream>

#include "delhier/bench.hpp"

using namespace delhier;

TEST_CASE("preset mapping") {
    const HierarchyConfig walk = preset_config(MethodPreset::kWalk, 30, 1, 1);
    CHECK(walk.max_levels == 1);
    CHECK_FALSE(walk.msz_enabled);
    const HierarchyConfig msz = preset_config(MethodPreset::kMsz, 30, 1, 1);
    CHECK(msz.max_levels == 1);
    CHECK(msz.msz_enabled);
    const HierarchyConfig hier = preset_config(MethodPreset::kHierarchy, 30, 1, 1);
    CHECK(hier.max_levels > 1);
    CHECK_FALSE(hier.msz_enabled);
    const HierarchyConfig both = preset_config(MethodPreset::kHierarchyMsz, 30, 1, 1);
    CHECK(both.max_levels > 1);
    CHECK(both.msz_enabled);
    for (const char* name : {"walk", "msz", "hierarchy", "hierarchy-msz"}) {
        MethodPreset m;
        CHECK(parse_method(name, m));
        CHECK(method_name(m) == std::string(name));
    }
}

TEST_CASE("csv: header only for an empty report, one line per row otherwise") {
    BenchReport empty;
    const std::string header_only = emit_csv(empty);
    CHECK(header_only.find("distribution,") == 0);
    CHECK(std::count(header_only.begin(), header_only.end(), '\n') == 1);

    BenchReport two;
    two.rows.resize(2);
    two.rows[0].distribution = "random";
    two.rows[1].distribution = "circle";
    const std::string csv = emit_csv(two);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

namespace {

std::string strip_time_column(const std::string& csv) {
    // build_ms is the last column by schema
    std::string out;
    std::istringstream is(csv);
    std::string line;
    while (std::getline(is, line)) {
        const auto pos = line.rfind(',');
        out += line.substr(0, pos);
        out += '\n';
    }
    return out;
}

}  // namespace

TEST_CASE("counters are deterministic across repeated runs") {
    const DatasetSpec data{Distribution::kRandom, 2000, 17};
    BenchOptions opt;
    opt.repeats = 1;
    const BenchReport a = run_bench(data, MethodPreset::kHierarchyMsz, opt);
    const BenchReport b = run_bench(data, MethodPreset::kHierarchyMsz, opt);
    CHECK(strip_time_column(emit_csv(a)) == strip_time_column(emit_csv(b)));
    CHECK(a.rows[0].validated);
    CHECK(a.rows[0].build_ms >= 0.0);
    CHECK(a.rows[0].build_ms < 60000.0);  // sanity threshold only
}

TEST_CASE("shuffle changes the order deterministically") {
    const DatasetSpec data{Distribution::kEllipse, 1500, 19};
    BenchOptions opt;
    opt.shuffle = true;
    opt.shuffle_seed = 5;
    const BenchReport a = run_bench(data, MethodPreset::kHierarchy, opt);
    const BenchReport b = run_bench(data, MethodPreset::kHierarchy, opt);
    CHECK(strip_time_column(emit_csv(a)) == strip_time_column(emit_csv(b)));
    opt.shuffle_seed = 6;
    const BenchReport c = run_bench(data, MethodPreset::kHierarchy, opt);
    CHECK(a.rows[0].orientation_tests != c.rows[0].orientation_tests);
    CHECK(a.rows[0].validated);
    CHECK(c.rows[0].validated);
}

TEST_CASE("hierarchy beats the plain walk on mid-size random input") {
    const DatasetSpec data{Distribution::kRandom, 4000, 23};
    BenchOptions opt;
    const BenchRow walk = run_bench(data, MethodPreset::kWalk, opt).rows[0];
    const BenchRow both = run_bench(data, MethodPreset::kHierarchyMsz, opt).rows[0];
    CHECK(walk.validated);
    CHECK(both.validated);
    CHECK(both.orientation_tests * 3 <= walk.orientation_tests);
    CHECK(both.levels > 1);
    CHECK(walk.levels == 1);
}

TEST_CASE("timeout marks the row instead of spinning") {
    const DatasetSpec data{Distribution::kRandom, 60000, 29};
    BenchOptions opt;
    opt.timeout_sec = 1e-9;
    opt.validate = false;
    const BenchRow row = run_bench(data, MethodPreset::kWalk, opt).rows[0];
    CHECK(row.timed_out);
}
