#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "delhier/predicates.hpp"
#include "delhier/trace.hpp"

namespace delhier {

/// Stable indices into the per-triangulation stores. Slots are tombstoned
/// on deletion and recycled through a free list, so a live ref stays valid
/// across unrelated updates.
using VertexRef = std::uint32_t;
using TriangleRef = std::uint32_t;

inline constexpr std::uint32_t kNullRef = 0xFFFFFFFFu;

/// Every triangulation owns a single infinite vertex at slot 0. Convex hull
/// edges are paired with infinite triangles through it, which makes walks,
/// insertions outside the hull and hull deletions uniform with the interior
/// cases.
inline constexpr VertexRef kInfiniteVertex = 0;

/// Phase-3 nearest search flavor. kExact runs the pruned traversal and
/// returns the true nearest site; kModified returns the nearest corner of
/// the containing triangle (three distance computations, two comparisons).
enum class Phase3Mode : std::uint8_t { kExact, kModified };

struct InsertResult {
    VertexRef vertex = kNullRef;
    bool inserted = false;  // false: point coincided with an existing site
};

/// One level of the structure: a dynamic Delaunay triangulation with
/// triangle-based connectivity.
///
/// Triangles store their three vertices in CCW order and the neighbor
/// opposite each vertex. The infinite triangle of hull edge a->b (interior
/// strictly left of a->b) has vertex cycle (b, a, INF).
///
/// Fewer than three sites, or an all-collinear site set, is kept as a
/// degenerate structure with no triangles; queries fall back to linear
/// scans until a third independent point arrives.
///
/// Cocircular degeneracies follow the insertion-order rule: during an
/// insertion, flips treat COCIRCULAR as inside for the point being
/// inserted; validation accepts COCIRCULAR as non-violating.
///
/// A triangulation is single-writer. Read-only walks and queries may run
/// concurrently between mutations.
class Triangulation {
public:
    Triangulation();

    // ---- store access -------------------------------------------------

    bool vertex_alive(VertexRef v) const { return v < vertices_.size() && vertices_[v].alive; }
    bool triangle_alive(TriangleRef t) const { return t < triangles_.size() && triangles_[t].alive; }
    bool is_infinite_vertex(VertexRef v) const { return v == kInfiniteVertex; }
    bool is_infinite_triangle(TriangleRef t) const;

    Point point(VertexRef v) const { return vertices_[v].p; }
    std::uint64_t stamp(VertexRef v) const { return vertices_[v].stamp; }
    std::uint32_t user_data(VertexRef v) const { return vertices_[v].user_data; }
    void set_user_data(VertexRef v, std::uint32_t d) { vertices_[v].user_data = d; }
    TriangleRef vertex_link(VertexRef v) const { return vertices_[v].link; }

    const std::array<VertexRef, 3>& triangle_vertices(TriangleRef t) const { return triangles_[t].v; }
    const std::array<TriangleRef, 3>& triangle_neighbors(TriangleRef t) const { return triangles_[t].nbr; }

    std::uint32_t finite_vertex_count() const { return finite_vertices_; }
    std::uint32_t finite_triangle_count() const { return finite_triangles_; }
    std::uint32_t infinite_triangle_count() const { return infinite_triangles_; }
    /// False while the site set is degenerate (fewer than 3 sites or all
    /// collinear): no triangles exist and walks are not available.
    bool has_triangles() const { return finite_triangles_ > 0; }

    std::size_t vertex_capacity() const { return vertices_.size(); }
    std::size_t triangle_capacity() const { return triangles_.size(); }

    // ---- queries -------------------------------------------------------

    /// Rotates around live finite vertex v and returns an incident triangle
    /// whose wedge at v contains the ray v->q. For a hull vertex with an
    /// exterior ray this is one of the two incident infinite triangles.
    /// Requires q != point(v). Counts into c.phase1_orientation_tests.
    TriangleRef turn_around(VertexRef v, Point q, PhaseCounters& c) const;

    /// Walks from `start` (which must contain seg_from or have it as a
    /// vertex) along segment seg_from->q and returns the triangle containing
    /// q, or the infinite triangle whose hull edge strictly sees an exterior
    /// q. Ties (the segment passing exactly through a vertex) resolve by
    /// treating the on-line vertex as lying left of the segment, which fixes
    /// one perturbation direction and guarantees termination.
    TriangleRef straight_walk(TriangleRef start, Point seg_from, Point q, PhaseCounters& c) const;

    /// Phase 3. `t` must contain q (per straight_walk's contract). kExact
    /// explores triangles from t, expanding only through edges incident to
    /// each triangle's closest corner when the angle at that corner is
    /// acute, with a visited set for termination, and returns the true
    /// nearest site (least insertion stamp among equidistant sites).
    /// kModified returns the nearest corner of t.
    VertexRef nearest_from_triangle(TriangleRef t, Point q, Phase3Mode mode, PhaseCounters& c) const;

    /// Linear-scan location; used on small or degenerate structures and in
    /// tests. Returns a triangle containing q, an infinite triangle whose
    /// hull edge strictly sees q, or kNullRef when no triangles exist.
    TriangleRef locate_by_scan(Point q) const;

    /// Linear-scan nearest site ((distance, stamp) minimal). kNullRef when
    /// empty. Counts distance computations.
    VertexRef nearest_by_scan(Point q, PhaseCounters& c) const;

    /// Exact-match lookup by coordinates, linear scan. kNullRef if absent.
    VertexRef find_vertex(Point p) const;

    // ---- updates -------------------------------------------------------

    /// Inserts p given the triangle from location (interior, on an edge, or
    /// an infinite triangle whose hull edge strictly sees p). On a degenerate
    /// structure `t` is ignored and may be kNullRef. If p coincides with an
    /// existing site the insertion is not done and the existing ref is
    /// returned with inserted=false. In-circle tests performed by the
    /// restoring flips are counted into *upd when provided.
    InsertResult insert_located(Point p, TriangleRef t, std::uint64_t stamp, PhaseCounters* upd = nullptr);

    /// Removes live finite vertex v and restores the Delaunay property.
    /// Interior vertices are reduced to degree 3 by flips and merged;
    /// hull vertices are removed by retriangulating the pockets between
    /// the link chain and the re-exposed hull. O(d^2) in the degree d.
    void delete_vertex(VertexRef v, PhaseCounters* upd = nullptr);

    // ---- diagnostics ---------------------------------------------------

    /// Structural and geometric checks: ref liveness, mutual adjacency,
    /// CCW finite triangles, hull convexity and the infinite-triangle
    /// cycle, Euler counts, vertex links, and the empty-circumcircle
    /// property (local edge flips by default; every triangle against every
    /// site when deep_delaunay). Returns human-readable violations, empty
    /// when healthy.
    std::vector<std::string> validate(bool deep_delaunay = false) const;

    /// Text dump, one triangle per line: `tid: v0 v1 v2 | n0 n1 n2`,
    /// infinite vertex printed as INF. Vertex coordinates appear first as
    /// `#` comment lines.
    void dump(std::ostream& os) const;

    /// All finite-finite edges as vertex ref pairs (lo, hi), each once.
    std::vector<std::pair<VertexRef, VertexRef>> finite_edges() const;

    /// Live finite vertex refs in slot order.
    std::vector<VertexRef> live_vertices() const;
    /// Live triangle refs (finite and infinite) in slot order.
    std::vector<TriangleRef> live_triangles() const;

private:
    friend struct TriangulationTestAccess;  // fault injection in tests

    struct VertexData {
        Point p;
        TriangleRef link = kNullRef;
        std::uint64_t stamp = 0;
        std::uint32_t user_data = kNullRef;
        bool alive = false;
    };
    struct TriangleData {
        std::array<VertexRef, 3> v{kNullRef, kNullRef, kNullRef};
        std::array<TriangleRef, 3> nbr{kNullRef, kNullRef, kNullRef};
        bool alive = false;
    };

    static int ccw(int i) { return (i + 1) % 3; }
    static int cw(int i) { return (i + 2) % 3; }

    int index_of_vertex(TriangleRef t, VertexRef v) const;
    int infinite_index(TriangleRef t) const;
    /// Hull edge a->b of an infinite triangle (interior left of a->b).
    std::pair<VertexRef, VertexRef> hull_edge(TriangleRef t) const;

    TriangleRef next_around(TriangleRef t, VertexRef v) const;  // CCW
    TriangleRef prev_around(TriangleRef t, VertexRef v) const;  // CW

    VertexRef new_vertex(Point p, std::uint64_t stamp);
    TriangleRef new_triangle(VertexRef a, VertexRef b, VertexRef c);
    void kill_triangle(TriangleRef t);
    void kill_vertex(VertexRef v);
    void set_adjacent(TriangleRef t, int i, TriangleRef u);
    void refresh_links(TriangleRef t);

    InsertResult insert_degenerate(Point p, std::uint64_t stamp);
    void materialize_from_collinear(VertexRef fresh);
    void rebuild_small();

    void split_1_to_3(TriangleRef t, VertexRef w);
    void split_2_to_4(TriangleRef t, int edge_slot, VertexRef w);
    void flip_edge(TriangleRef t, int i);
    void legalize_after_insert(VertexRef w, std::vector<TriangleRef>& stack, PhaseCounters* upd);
    void legalize_edges(std::vector<std::pair<TriangleRef, int>>& stack, PhaseCounters* upd);

    std::vector<TriangleRef> star_of(VertexRef v) const;  // CCW order
    bool is_hull_vertex(VertexRef v) const;
    void delete_interior(VertexRef v, PhaseCounters* upd);
    void delete_hull(VertexRef v, PhaseCounters* upd);
    /// Ear-clips a CCW simple polygon into triangles appended to `out`.
    void triangulate_polygon(std::vector<VertexRef> poly, std::vector<TriangleRef>& out);

    TriangleRef exterior_locate(TriangleRef inf_tri, Point q, PhaseCounters& c) const;

    std::vector<VertexData> vertices_;
    std::vector<TriangleData> triangles_;
    std::vector<VertexRef> free_vertices_;
    std::vector<TriangleRef> free_triangles_;
    std::uint32_t finite_vertices_ = 0;
    std::uint32_t finite_triangles_ = 0;
    std::uint32_t infinite_triangles_ = 0;
};

}  // namespace delhier
