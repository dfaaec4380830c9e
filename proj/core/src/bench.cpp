#include "delhier/bench.hpp"

#include <chrono>
#include <limits>
#include <sstream>

namespace delhier {

const char* method_name(MethodPreset m) {
    switch (m) {
        case MethodPreset::kWalk: return "walk";
        case MethodPreset::kMsz: return "msz";
        case MethodPreset::kHierarchy: return "hierarchy";
        case MethodPreset::kHierarchyMsz: return "hierarchy-msz";
    }
    return "?";
}

bool parse_method(const std::string& name, MethodPreset& out) {
    for (MethodPreset m : {MethodPreset::kWalk, MethodPreset::kMsz, MethodPreset::kHierarchy,
                           MethodPreset::kHierarchyMsz}) {
        if (name == method_name(m)) {
            out = m;
            return true;
        }
    }
    return false;
}

HierarchyConfig preset_config(MethodPreset m, double alpha, double beta, std::uint64_t seed) {
    HierarchyConfig cfg;
    cfg.alpha = alpha;
    cfg.beta = beta;
    cfg.rng_seed = seed;
    switch (m) {
        case MethodPreset::kWalk:
            cfg.max_levels = 1;
            cfg.msz_enabled = false;
            break;
        case MethodPreset::kMsz:
            cfg.max_levels = 1;
            cfg.msz_enabled = true;
            break;
        case MethodPreset::kHierarchy:
            cfg.msz_enabled = false;
            break;
        case MethodPreset::kHierarchyMsz:
            break;
    }
    return cfg;
}

BenchRow run_build(const std::vector<Point>& points, MethodPreset method, const BenchOptions& opt,
                   const std::string& distribution_label, std::size_t n_requested,
                   std::uint64_t dataset_seed, int repeat) {
    BenchRow row;
    row.distribution = distribution_label;
    row.n_requested = n_requested;
    row.method = method_name(method);
    row.alpha = opt.alpha;
    row.beta = opt.beta;
    row.seed = dataset_seed;
    row.shuffled = opt.shuffle;
    row.repeat = repeat;

    std::vector<Point> pts = points;
    if (opt.shuffle) {
        Rng sh(opt.shuffle_seed);
        sh.shuffle(pts);
    }
    row.n_actual = pts.size();

    Hierarchy h(preset_config(method, opt.alpha, opt.beta, opt.build_seed));
    PhaseCounters totals;
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t done = 0;
    for (const Point& p : pts) {
        LocateTrace tr;
        h.insert(p, &tr);
        totals += tr.totals();
        row.peak_triangles = std::max<std::uint64_t>(row.peak_triangles, h.total_finite_triangles());
        ++done;
        if (opt.timeout_sec > 0 && (done & 0x3ff) == 0) {
            const std::chrono::duration<double> el = std::chrono::steady_clock::now() - t0;
            if (el.count() > opt.timeout_sec) {
                row.timed_out = true;
                break;
            }
        }
    }
    const std::chrono::duration<double, std::milli> elapsed =
        std::chrono::steady_clock::now() - t0;
    row.build_ms = elapsed.count();
    row.levels = h.level_count();
    row.final_triangles = h.total_finite_triangles();
    row.orientation_tests = totals.orientation_tests();
    row.incircle_tests = totals.incircle_tests;
    row.distance_computations = totals.distance_computations;
    row.phase2_crossings = totals.phase2_crossings;
    row.phase3_visits = totals.phase3_visits;
    row.angle_tests = totals.angle_tests;
    row.per_insert_orientation =
        done ? static_cast<double>(row.orientation_tests) / static_cast<double>(done) : 0.0;
    row.validated = opt.validate ? h.level(0).validate(false).empty() : true;
    return row;
}

BenchReport run_bench(const DatasetSpec& dataset, MethodPreset method, const BenchOptions& opt) {
    BenchReport report;
    const std::vector<Point> pts = generate(dataset);
    for (int r = 0; r < opt.repeats; ++r)
        report.rows.push_back(run_build(pts, method, opt, distribution_name(dataset.kind),
                                        dataset.n, dataset.seed, r));
    return report;
}

std::string emit_csv(const BenchReport& report) {
    std::ostringstream os;
    os << "distribution,n_requested,n_actual,method,alpha,beta,seed,shuffled,repeat,levels,"
          "peak_triangles,final_triangles,orientation_tests,incircle_tests,"
          "distance_computations,phase2_crossings,phase3_visits,angle_tests,"
          "per_insert_orientation,validated,timed_out,build_ms\n";
    os.precision(3);
    os << std::fixed;
    for (const BenchRow& r : report.rows) {
        os << r.distribution << ',' << r.n_requested << ',' << r.n_actual << ',' << r.method << ','
           << r.alpha << ',' << r.beta << ',' << r.seed << ',' << (r.shuffled ? 1 : 0) << ','
           << r.repeat << ',' << r.levels << ',' << r.peak_triangles << ',' << r.final_triangles
           << ',' << r.orientation_tests << ',' << r.incircle_tests << ','
           << r.distance_computations << ',' << r.phase2_crossings << ',' << r.phase3_visits << ','
           << r.angle_tests << ',' << r.per_insert_orientation << ',' << (r.validated ? 1 : 0)
           << ',' << (r.timed_out ? 1 : 0) << ',' << r.build_ms << '\n';
    }
    return os.str();
}

}  // namespace delhier
