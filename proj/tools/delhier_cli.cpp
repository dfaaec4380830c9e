// Command-line front end: dataset generation, benchmark runs over the four
// method presets, the analytic cost model, and structure validation.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "delhier/bench.hpp"
#include "delhier/costmodel.hpp"
#include "delhier/datasets.hpp"
#include "delhier/hierarchy.hpp"

namespace {

using namespace delhier;

int cmd_generate(const std::string& dist, std::size_t n, std::uint64_t seed,
                 const std::string& out_path) {
    Distribution d;
    if (!parse_distribution(dist, d)) {
        std::cerr << "unknown distribution: " << dist << "\n";
        return 2;
    }
    const std::vector<Point> pts = generate({d, n, seed});
    if (pts.size() != n)
        std::cerr << "note: " << n - pts.size() << " duplicate grid points dropped, kept "
                  << pts.size() << "\n";
    if (out_path.empty()) {
        write_points(std::cout, pts);
    } else {
        std::ofstream os(out_path);
        if (!os) {
            std::cerr << "cannot open " << out_path << "\n";
            return 2;
        }
        write_points(os, pts);
    }
    return 0;
}

std::vector<Point> load_points(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path);
    return read_points(is);
}

int cmd_bench(const std::string& dist, std::size_t n, const std::string& method_name_,
              BenchOptions opt, std::uint64_t dataset_seed, const std::string& csv_path,
              const std::string& points_path) {
    MethodPreset m;
    if (!parse_method(method_name_, m)) {
        std::cerr << "unknown method: " << method_name_ << "\n";
        return 2;
    }
    BenchReport report;
    if (!points_path.empty()) {
        const std::vector<Point> pts = load_points(points_path);
        for (int r = 0; r < opt.repeats; ++r)
            report.rows.push_back(
                run_build(pts, m, opt, points_path, pts.size(), dataset_seed, r));
    } else {
        Distribution d;
        if (!parse_distribution(dist, d)) {
            std::cerr << "unknown distribution: " << dist << "\n";
            return 2;
        }
        report = run_bench({d, n, dataset_seed}, m, opt);
    }
    const std::string csv = emit_csv(report);
    if (csv_path.empty()) {
        std::cout << csv;
    } else {
        std::ofstream os(csv_path);
        os << csv;
    }
    for (const BenchRow& r : report.rows)
        if (!r.validated) {
            std::cerr << "validation failed for " << r.distribution << " n=" << r.n_actual << "\n";
            return 1;
        }
    return 0;
}

int cmd_costmodel(double alpha, double beta, long n_min, long n_max, int steps,
                  const std::string& csv_path, bool crossovers) {
    std::vector<long> sizes;
    if (steps < 2) steps = 2;
    const double lo = std::log(static_cast<double>(n_min));
    const double hi = std::log(static_cast<double>(n_max));
    long prev = 0;
    for (int i = 0; i < steps; ++i) {
        const long n = std::lround(std::exp(lo + (hi - lo) * i / (steps - 1)));
        if (n != prev) sizes.push_back(n);
        prev = n;
    }
    const std::string csv = costmodel::emit_csv(sizes, alpha, beta);
    if (csv_path.empty()) {
        std::cout << csv;
    } else {
        std::ofstream os(csv_path);
        os << csv;
    }
    if (crossovers) {
        std::cerr << "crossover msz<walk at n=" << costmodel::crossover_msz_vs_walk(beta, n_max)
                  << "\ncrossover one-level<walk at n="
                  << costmodel::crossover_one_level_vs_walk(alpha, n_max)
                  << "\ncrossover one-level<msz at n="
                  << costmodel::crossover_one_level_vs_msz(alpha, beta, n_max)
                  << "\ntuned alpha argmin at n=2^20: "
                  << costmodel::tuned_alpha_argmin(1 << 20) << "\n";
    }
    return 0;
}

int cmd_validate(const std::string& points_path, double alpha, double beta, std::uint64_t seed,
                 bool deep) {
    const std::vector<Point> pts = load_points(points_path);
    HierarchyConfig cfg;
    cfg.alpha = alpha;
    cfg.beta = beta;
    cfg.rng_seed = seed;
    Hierarchy h(cfg);
    for (const Point& p : pts) h.insert(p);
    const std::vector<std::string> issues = h.validate(deep);
    for (const std::string& s : issues) std::cerr << s << "\n";
    std::cout << "sites=" << h.site_count() << " levels=" << h.level_count()
              << " triangles=" << h.total_finite_triangles()
              << (issues.empty() ? " OK" : " INVALID") << "\n";
    return issues.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dynamic Delaunay triangulation with hierarchical point location"};
    app.require_subcommand(1);

    std::string dist = "random", method = "hierarchy-msz", csv_path, points_path, out_path;
    std::size_t n = 5000;
    std::uint64_t seed = 1;
    BenchOptions opt;
    bool deep = false, crossovers = false;
    long n_min = 2, n_max = 1000000;
    int steps = 60;

    CLI::App* gen = app.add_subcommand("generate", "write a benchmark dataset as a point file");
    gen->add_option("--dist", dist, "random|ellipse|ellipse2|circle|parabola");
    gen->add_option("--n", n, "number of points")->required();
    gen->add_option("--seed", seed, "dataset seed");
    gen->add_option("--out", out_path, "output path (default stdout)");

    CLI::App* bench = app.add_subcommand("bench", "build structures and report counters");
    bench->add_option("--dist", dist, "random|ellipse|ellipse2|circle|parabola");
    bench->add_option("--n", n, "number of points");
    bench->add_option("--method", method, "walk|msz|hierarchy|hierarchy-msz");
    bench->add_option("--alpha", opt.alpha, "level ratio");
    bench->add_option("--beta", opt.beta, "MSZ sample constant");
    bench->add_option("--seed", seed, "dataset seed");
    bench->add_option("--build-seed", opt.build_seed, "hierarchy rng seed");
    bench->add_flag("--shuffle", opt.shuffle, "shuffle the insertion order");
    bench->add_option("--shuffle-seed", opt.shuffle_seed, "shuffle seed");
    bench->add_option("--repeats", opt.repeats, "repeat count");
    bench->add_option("--timeout-sec", opt.timeout_sec, "per-cell build timeout (0 = none)");
    bench->add_option("--csv", csv_path, "CSV output path (default stdout)");
    bench->add_option("--points", points_path, "insert points from file instead of generating");

    CLI::App* cm = app.add_subcommand("costmodel", "emit the analytic cost curves as CSV");
    cm->add_option("--alpha", opt.alpha, "level ratio");
    cm->add_option("--beta", opt.beta, "MSZ sample constant");
    cm->add_option("--n-min", n_min, "smallest n");
    cm->add_option("--n-max", n_max, "largest n");
    cm->add_option("--steps", steps, "geometric steps");
    cm->add_option("--csv", csv_path, "CSV output path (default stdout)");
    cm->add_flag("--crossovers", crossovers, "also print crossover scan results");

    CLI::App* val = app.add_subcommand("validate", "build from a point file and validate");
    val->add_option("--points", points_path, "point file")->required();
    val->add_option("--alpha", opt.alpha, "level ratio");
    val->add_option("--beta", opt.beta, "MSZ sample constant");
    val->add_option("--build-seed", opt.build_seed, "hierarchy rng seed");
    val->add_flag("--deep", deep, "check every triangle against every site");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_generate(dist, n, seed, out_path);
        if (bench->parsed()) return cmd_bench(dist, n, method, opt, seed, csv_path, points_path);
        if (cm->parsed()) return cmd_costmodel(opt.alpha, opt.beta, n_min, n_max, steps, csv_path, crossovers);
        if (val->parsed()) return cmd_validate(points_path, opt.alpha, opt.beta, opt.build_seed, deep);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
