#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "delhier/datasets.hpp"
#include "delhier/hierarchy.hpp"

namespace delhier {

/// The four same-code configurations compared by the harness: the plain
/// walk, jump-and-walk, the level hierarchy, and the hierarchy with a
/// jump-and-walk sample on its top level.
enum class MethodPreset : std::uint8_t { kWalk, kMsz, kHierarchy, kHierarchyMsz };

const char* method_name(MethodPreset m);
bool parse_method(const std::string& name, MethodPreset& out);

/// Maps a preset onto the hierarchy configuration: walk = one level and no
/// sample, msz = one level with a sample, hierarchy = levels without a
/// sample, hierarchy-msz = the defaults.
HierarchyConfig preset_config(MethodPreset m, double alpha, double beta, std::uint64_t seed);

struct BenchOptions {
    double alpha = 30.0;
    double beta = 1.0;
    std::uint64_t build_seed = 1;    // hierarchy rng
    bool shuffle = false;            // seeded permutation of the input order
    std::uint64_t shuffle_seed = 7;
    int repeats = 1;
    double timeout_sec = 0.0;        // 0 = unlimited; cells that exceed it are marked
    bool validate = true;            // check level 0 after the build
};

struct BenchRow {
    std::string distribution;
    std::size_t n_requested = 0;
    std::size_t n_actual = 0;
    std::string method;
    double alpha = 0, beta = 0;
    std::uint64_t seed = 0;
    bool shuffled = false;
    int repeat = 0;
    std::size_t levels = 0;
    std::uint64_t peak_triangles = 0;
    std::uint64_t final_triangles = 0;
    std::uint64_t orientation_tests = 0;  // locate phases 1+2
    std::uint64_t incircle_tests = 0;
    std::uint64_t distance_computations = 0;
    std::uint64_t phase2_crossings = 0;
    std::uint64_t phase3_visits = 0;
    std::uint64_t angle_tests = 0;
    double per_insert_orientation = 0;
    double build_ms = 0;  // wall time; the only nondeterministic column
    bool validated = false;
    bool timed_out = false;
};

struct BenchReport {
    std::vector<BenchRow> rows;
};

/// Builds the structure by sequential insertion of `points`, accumulating
/// the per-insert traces, and fills one row.
BenchRow run_build(const std::vector<Point>& points, MethodPreset method,
                   const BenchOptions& opt, const std::string& distribution_label,
                   std::size_t n_requested, std::uint64_t dataset_seed, int repeat);

/// Generates the dataset and runs `opt.repeats` builds.
BenchReport run_bench(const DatasetSpec& dataset, MethodPreset method, const BenchOptions& opt);

/// Stable-schema CSV: header plus one line per row; build_ms is the only
/// column that varies across identical runs.
std::string emit_csv(const BenchReport& report);

}  // namespace delhier
