#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "delhier/predicates.hpp"
#include "delhier/rng.hpp"
#include "delhier/trace.hpp"
#include "delhier/triangulation.hpp"

namespace delhier {

using SiteId = std::uint32_t;
inline constexpr SiteId kInvalidSite = 0xFFFFFFFFu;

struct EmptyStructureError : std::runtime_error {
    EmptyStructureError() : std::runtime_error("hierarchy is empty") {}
};
struct CoordinateRangeError : std::invalid_argument {
    CoordinateRangeError() : std::invalid_argument("point outside the 24-bit coordinate bound") {}
};
struct UnknownHandleError : std::invalid_argument {
    UnknownHandleError() : std::invalid_argument("unknown or dead site handle") {}
};

/// Tuning parameters. Defaults: alpha=30, unlimited levels, both size
/// thresholds 20, beta=1, modified phase 3.
struct HierarchyConfig {
    double alpha = 30.0;                 // promotion is Bernoulli(1/alpha)
    double beta = 1.0;                   // MSZ sample holds ceil(beta * m^(1/3))
    std::uint32_t max_levels = 64;       // cap on the level count
    std::uint32_t min_hierarchy_size = 20;  // smallest level used for descent
    std::uint32_t min_msz_size = 20;        // smallest level given an MSZ sample
    bool msz_enabled = true;
    Phase3Mode phase3_mode = Phase3Mode::kModified;
    std::uint64_t rng_seed = 1;
};

/// Geometric level draw: returns l with probability (1-1/alpha)(1/alpha)^l,
/// capped at max_levels-1.
std::uint32_t draw_top_level(Rng& rng, double alpha, std::uint32_t max_levels);

struct LocateResult {
    TriangleRef tri0 = kNullRef;  // level-0 triangle containing the query
    SiteId nearest = kInvalidSite;
    std::int64_t nearest_sqdist = -1;
    /// v_i and t_i per descended level (index = level). Entries above the
    /// entry level, and triangles of degenerate levels, are kNullRef.
    std::vector<VertexRef> level_vertex;
    std::vector<TriangleRef> level_triangle;
    LocateTrace trace;
};

/// The multi-level location structure: level 0 holds the Delaunay
/// triangulation of every site, each level above it the triangulation of a
/// Bernoulli sample of the level below. Point location descends from the
/// top, finding the level's nearest vertex in three phases and restarting
/// from it one level down.
///
/// Single writer; read-only locates may run concurrently between mutations.
class Hierarchy {
public:
    explicit Hierarchy(HierarchyConfig cfg = {});

    const HierarchyConfig& config() const { return cfg_; }

    // ---- updates ---------------------------------------------------------

    /// Locates q, draws its level and inserts it into levels 0..level.
    /// Inserting a coordinate-equal duplicate returns the existing handle
    /// and leaves the structure untouched.
    SiteId insert(Point q, LocateTrace* trace = nullptr);

    /// insert with the level draw fixed by the caller; used for snapshot
    /// restore and for tests that pin the sampling.
    SiteId insert_with_level(Point q, std::uint32_t level, LocateTrace* trace = nullptr);

    /// Deletes the site from every level it appears in and prunes empty
    /// top levels.
    void remove(SiteId h, LocateTrace* trace = nullptr);

    // ---- queries ----------------------------------------------------------

    LocateResult locate(Point q) const;

    /// Nearest site to q, ties broken by least insertion stamp. Exact when
    /// phase3_mode is kExact; with kModified the result is within the
    /// distance of the nearest corner of the containing triangle.
    SiteId nearest_neighbor(Point q) const;

    /// Brute-force nearest member of the MSZ sample of `level_index`; the
    /// walk start at that level.
    VertexRef msz_start(Point q, std::size_t level_index, PhaseCounters& c) const;

    // ---- introspection -----------------------------------------------------

    bool site_alive(SiteId s) const { return s < sites_.size() && sites_[s].alive; }
    Point site_point(SiteId s) const { return sites_[s].p; }
    std::uint32_t site_top_level(SiteId s) const { return sites_[s].top_level; }
    std::uint64_t site_stamp(SiteId s) const { return sites_[s].stamp; }
    VertexRef site_vertex(SiteId s, std::size_t level) const { return sites_[s].refs[level]; }

    std::size_t site_count() const { return site_count_; }
    std::size_t level_count() const { return levels_.size(); }
    const Triangulation& level(std::size_t i) const { return levels_[i].tri; }
    std::uint32_t level_size(std::size_t i) const { return levels_[i].tri.finite_vertex_count(); }
    std::size_t msz_sample_size(std::size_t i) const { return levels_[i].sample.size(); }

    std::uint64_t total_finite_triangles() const;

    /// Per-level triangulation checks plus cross-level ref consistency.
    std::vector<std::string> validate(bool deep_delaunay = false) const;

    /// Per-level debug dump followed by the site directory
    /// (`site_id x y top_level` lines).
    void snapshot(std::ostream& os) const;

private:
    struct Level {
        Triangulation tri;
        VertexRef recent = kNullRef;  // most recently promoted vertex
        std::vector<VertexRef> sample;
        std::uint32_t sample_built_size = 0;
    };
    struct SiteRecord {
        Point p;
        std::uint32_t top_level = 0;
        std::uint64_t stamp = 0;
        bool alive = false;
        std::vector<VertexRef> refs;
    };

    SiteId insert_located_levels(Point q, std::uint32_t level, const LocateResult& res,
                                 LocateTrace* trace);
    void locate_impl(Point q, LocateResult& out) const;
    /// Highest level eligible for descent, or 0.
    std::size_t effective_top() const;
    void maintain_sample(std::size_t level_index, VertexRef dead);
    void rebuild_sample(std::size_t level_index);
    void repair_recent(std::size_t level_index);

    HierarchyConfig cfg_;
    mutable Rng level_rng_;  // consumed only by level draws
    mutable Rng msz_rng_;
    std::vector<Level> levels_;
    std::vector<SiteRecord> sites_;
    std::vector<SiteId> free_sites_;
    std::size_t site_count_ = 0;
    std::uint64_t next_stamp_ = 0;
};

}  // namespace delhier
