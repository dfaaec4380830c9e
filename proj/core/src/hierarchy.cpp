#include "delhier/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace delhier {

std::uint32_t draw_top_level(Rng& rng, double alpha, std::uint32_t max_levels) {
    std::uint32_t l = 0;
    const double p = 1.0 / alpha;
    while (l + 1 < max_levels && rng.next_unit() < p) ++l;
    return l;
}

namespace {

std::size_t msz_sample_target(double beta, std::size_t m) {
    const double x = beta * std::cbrt(static_cast<double>(m));
    const double r = std::round(x);
    if (std::abs(x - r) < 1e-9) return static_cast<std::size_t>(r);
    return static_cast<std::size_t>(std::ceil(x));
}

}  // namespace

Hierarchy::Hierarchy(HierarchyConfig cfg)
    : cfg_(cfg), level_rng_(cfg.rng_seed), msz_rng_(cfg.rng_seed ^ 0x9e3779b97f4a7c15ull) {
    if (cfg_.alpha <= 1.0) throw std::invalid_argument("alpha must exceed 1");
    if (cfg_.beta <= 0.0) throw std::invalid_argument("beta must be positive");
    if (cfg_.max_levels == 0) cfg_.max_levels = 1;
    levels_.resize(1);
}

std::size_t Hierarchy::effective_top() const {
    for (std::size_t i = levels_.size(); i-- > 1;)
        if (level_size(i) >= cfg_.min_hierarchy_size) return i;
    return 0;
}

VertexRef Hierarchy::msz_start(Point q, std::size_t level_index, PhaseCounters& c) const {
    const Level& L = levels_[level_index];
    VertexRef best = kNullRef;
    std::int64_t best_d = 0;
    for (VertexRef v : L.sample) {
        ++c.distance_computations;
        const std::int64_t d = squared_distance(L.tri.point(v), q);
        if (best == kNullRef || d < best_d ||
            (d == best_d && L.tri.stamp(v) < L.tri.stamp(best))) {
            best = v;
            best_d = d;
        }
    }
    return best;
}

void Hierarchy::locate_impl(Point q, LocateResult& out) const {
    if (site_count_ == 0) throw EmptyStructureError();
    out.level_vertex.assign(levels_.size(), kNullRef);
    out.level_triangle.assign(levels_.size(), kNullRef);

    // Bootstrap: with a sub-threshold base level, locate by plain scans.
    if (level_size(0) < cfg_.min_hierarchy_size) {
        PhaseCounters& c = out.trace.level(0);
        out.trace.levels_descended = 1;
        out.level_vertex[0] = levels_[0].tri.nearest_by_scan(q, c);
        out.level_triangle[0] = levels_[0].tri.locate_by_scan(q);
        out.tri0 = out.level_triangle[0];
        out.nearest = levels_[0].tri.user_data(out.level_vertex[0]);
        out.nearest_sqdist = squared_distance(levels_[0].tri.point(out.level_vertex[0]), q);
        return;
    }

    const std::size_t top = effective_top();
    out.trace.levels_descended = static_cast<std::uint32_t>(top + 1);

    VertexRef v;
    if (cfg_.msz_enabled && level_size(top) >= cfg_.min_msz_size && !levels_[top].sample.empty()) {
        v = msz_start(q, top, out.trace.level(top));
    } else {
        v = levels_[top].recent;
    }

    bool settled = false;  // true once the query hit a site exactly
    for (std::size_t i = top + 1; i-- > 0;) {
        const Triangulation& tri = levels_[i].tri;
        PhaseCounters& c = out.trace.level(i);
        VertexRef vi;
        TriangleRef ti = kNullRef;
        if (settled || tri.point(v) == q) {
            vi = v;
            ti = tri.vertex_link(v);
            settled = true;
        } else if (!tri.has_triangles()) {
            vi = tri.nearest_by_scan(q, c);
        } else {
            const TriangleRef start = tri.turn_around(v, q, c);
            ti = tri.straight_walk(start, tri.point(v), q, c);
            vi = tri.nearest_from_triangle(ti, q, cfg_.phase3_mode, c);
        }
        out.level_vertex[i] = vi;
        out.level_triangle[i] = ti;
        if (i > 0) {
            const SiteId s = tri.user_data(vi);
            v = sites_[s].refs[i - 1];
        } else {
            out.tri0 = ti;
            out.nearest = tri.user_data(vi);
            out.nearest_sqdist = squared_distance(tri.point(vi), q);
        }
    }
}

LocateResult Hierarchy::locate(Point q) const {
    LocateResult out;
    locate_impl(q, out);
    return out;
}

SiteId Hierarchy::nearest_neighbor(Point q) const {
    LocateResult res = locate(q);
    return res.nearest;
}

SiteId Hierarchy::insert(Point q, LocateTrace* trace) {
    if (!in_coordinate_range(q)) throw CoordinateRangeError();
    // Duplicates return the existing handle without consuming a level draw.
    if (site_count_ > 0) {
        LocateResult res;
        locate_impl(q, res);
        if (trace) *trace = res.trace;
        if (res.nearest_sqdist == 0) return res.nearest;
        const std::uint32_t lvl = draw_top_level(level_rng_, cfg_.alpha, cfg_.max_levels);
        return insert_located_levels(q, lvl, res, trace);
    }
    const std::uint32_t lvl = draw_top_level(level_rng_, cfg_.alpha, cfg_.max_levels);
    LocateResult res;
    return insert_located_levels(q, lvl, res, trace);
}

SiteId Hierarchy::insert_with_level(Point q, std::uint32_t level, LocateTrace* trace) {
    if (!in_coordinate_range(q)) throw CoordinateRangeError();
    level = std::min(level, cfg_.max_levels - 1);
    LocateResult res;
    if (site_count_ > 0) {
        locate_impl(q, res);
        if (trace) *trace = res.trace;
        if (res.nearest_sqdist == 0) return res.nearest;
    }
    return insert_located_levels(q, level, res, trace);
}

SiteId Hierarchy::insert_located_levels(Point q, std::uint32_t lvl, const LocateResult& res,
                                        LocateTrace* trace) {
    while (levels_.size() <= lvl) levels_.emplace_back();
    SiteId id;
    if (!free_sites_.empty()) {
        id = free_sites_.back();
        free_sites_.pop_back();
    } else {
        id = static_cast<SiteId>(sites_.size());
        sites_.emplace_back();
    }
    SiteRecord& rec = sites_[id];
    rec = SiteRecord{};
    rec.p = q;
    rec.top_level = lvl;
    rec.stamp = next_stamp_++;
    rec.alive = true;
    rec.refs.assign(lvl + 1, kNullRef);
    for (std::uint32_t j = 0; j <= lvl; ++j) {
        Level& L = levels_[j];
        TriangleRef hint = j < res.level_triangle.size() ? res.level_triangle[j] : kNullRef;
        // Levels skipped by the descent (too small) are located by scan.
        if (hint == kNullRef && L.tri.has_triangles()) hint = L.tri.locate_by_scan(q);
        PhaseCounters* upd = trace ? &trace->level(j) : nullptr;
        const InsertResult ins = L.tri.insert_located(q, hint, rec.stamp, upd);
        if (!ins.inserted)
            throw std::logic_error("duplicate surfaced above level 0");
        L.tri.set_user_data(ins.vertex, id);
        rec.refs[j] = ins.vertex;
        L.recent = ins.vertex;
        maintain_sample(j, kNullRef);
    }
    ++site_count_;
    return id;
}

void Hierarchy::remove(SiteId h, LocateTrace* trace) {
    if (!site_alive(h)) throw UnknownHandleError();
    SiteRecord& rec = sites_[h];
    for (std::uint32_t j = 0; j <= rec.top_level; ++j) {
        Level& L = levels_[j];
        const VertexRef v = rec.refs[j];
        PhaseCounters* upd = trace ? &trace->level(j) : nullptr;
        L.tri.delete_vertex(v, upd);
        if (L.recent == v) repair_recent(j);
        maintain_sample(j, v);
    }
    rec.alive = false;
    rec.refs.clear();
    free_sites_.push_back(h);
    --site_count_;
    while (levels_.size() > 1 && levels_.back().tri.finite_vertex_count() == 0)
        levels_.pop_back();
}

std::uint64_t Hierarchy::total_finite_triangles() const {
    std::uint64_t total = 0;
    for (const Level& l : levels_) total += l.tri.finite_triangle_count();
    return total;
}

void Hierarchy::repair_recent(std::size_t level_index) {
    Level& L = levels_[level_index];
    L.recent = kNullRef;
    for (VertexRef v : L.tri.live_vertices()) L.recent = v;
}

void Hierarchy::maintain_sample(std::size_t level_index, VertexRef dead) {
    Level& L = levels_[level_index];
    const std::uint32_t m = L.tri.finite_vertex_count();
    if (!cfg_.msz_enabled || m < cfg_.min_msz_size) {
        L.sample.clear();
        L.sample_built_size = 0;
        return;
    }
    // Track the cube-root target exactly (rebuild points are the cube
    // boundaries, so this stays cheap) and rebuild when a sampled vertex
    // dies.
    bool rebuild = L.sample.size() != std::min<std::size_t>(m, msz_sample_target(cfg_.beta, m));
    if (!rebuild && dead != kNullRef)
        rebuild = std::find(L.sample.begin(), L.sample.end(), dead) != L.sample.end();
    if (rebuild) rebuild_sample(level_index);
}

void Hierarchy::rebuild_sample(std::size_t level_index) {
    Level& L = levels_[level_index];
    std::vector<VertexRef> live = L.tri.live_vertices();
    const std::size_t k = std::min(live.size(), msz_sample_target(cfg_.beta, live.size()));
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(msz_rng_.next_below(live.size() - i));
        std::swap(live[i], live[j]);
    }
    live.resize(k);
    L.sample = std::move(live);
    L.sample_built_size = L.tri.finite_vertex_count();
}

std::vector<std::string> Hierarchy::validate(bool deep_delaunay) const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < levels_.size(); ++i) {
        for (std::string& s : levels_[i].tri.validate(deep_delaunay))
            out.push_back("level " + std::to_string(i) + ": " + s);
    }
    for (SiteId s = 0; s < sites_.size(); ++s) {
        const SiteRecord& rec = sites_[s];
        if (!rec.alive) continue;
        if (rec.top_level >= levels_.size()) {
            out.push_back("site " + std::to_string(s) + " above the level stack");
            continue;
        }
        for (std::uint32_t j = 0; j <= rec.top_level; ++j) {
            const Triangulation& tri = levels_[j].tri;
            if (!tri.vertex_alive(rec.refs[j]) || tri.point(rec.refs[j]) != rec.p ||
                tri.user_data(rec.refs[j]) != s)
                out.push_back("site " + std::to_string(s) + " broken at level " + std::to_string(j));
        }
    }
    for (std::size_t i = 0; i + 1 < levels_.size(); ++i)
        if (level_size(i) < level_size(i + 1))
            out.push_back("level sizes not decreasing at level " + std::to_string(i));
    return out;
}

void Hierarchy::snapshot(std::ostream& os) const {
    for (std::size_t i = 0; i < levels_.size(); ++i) {
        os << "# level " << i << " sites=" << level_size(i) << '\n';
        levels_[i].tri.dump(os);
    }
    os << "# sites\n";
    for (SiteId s = 0; s < sites_.size(); ++s)
        if (sites_[s].alive)
            os << s << ' ' << sites_[s].p.x << ' ' << sites_[s].p.y << ' ' << sites_[s].top_level
               << '\n';
}

}  // namespace delhier
