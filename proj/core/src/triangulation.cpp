#include "delhier/triangulation.hpp"

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace delhier {

namespace {

constexpr Orientation kCCW = Orientation::kCounterClockwise;
constexpr Orientation kCW = Orientation::kClockwise;
constexpr Orientation kCol = Orientation::kCollinear;

inline std::uint64_t edge_key(VertexRef a, VertexRef b) {
    return (std::uint64_t{a} << 32) | b;
}

inline std::int64_t dot_from(Point origin, Point u, Point v) {
    const std::int64_t ux = std::int64_t{u.x} - origin.x;
    const std::int64_t uy = std::int64_t{u.y} - origin.y;
    const std::int64_t vx = std::int64_t{v.x} - origin.x;
    const std::int64_t vy = std::int64_t{v.y} - origin.y;
    return ux * vx + uy * vy;
}

/// Side of x relative to the directed line p->q under the walk's fixed
/// perturbation (q rotated infinitesimally clockwise around p): points
/// exactly on the line count as left when ahead of p, right when behind.
inline bool walk_left_of(Point p, Point q, Point x) {
    const Orientation o = orientation(p, q, x);
    if (o != kCol) return o == kCCW;
    return dot_from(p, q, x) > 0;
}

}  // namespace

Triangulation::Triangulation() {
    VertexData inf;
    inf.alive = true;
    vertices_.push_back(inf);  // slot 0 = the infinite vertex
}

// ---- small helpers -----------------------------------------------------

bool Triangulation::is_infinite_triangle(TriangleRef t) const {
    const auto& v = triangles_[t].v;
    return v[0] == kInfiniteVertex || v[1] == kInfiniteVertex || v[2] == kInfiniteVertex;
}

int Triangulation::index_of_vertex(TriangleRef t, VertexRef v) const {
    const auto& tv = triangles_[t].v;
    for (int i = 0; i < 3; ++i)
        if (tv[i] == v) return i;
    throw std::logic_error("vertex not in triangle");
}

int Triangulation::infinite_index(TriangleRef t) const {
    return index_of_vertex(t, kInfiniteVertex);
}

std::pair<VertexRef, VertexRef> Triangulation::hull_edge(TriangleRef t) const {
    const int k = infinite_index(t);
    const auto& v = triangles_[t].v;
    return {v[cw(k)], v[ccw(k)]};  // source, target; interior left
}

TriangleRef Triangulation::next_around(TriangleRef t, VertexRef v) const {
    const int i = index_of_vertex(t, v);
    return triangles_[t].nbr[ccw(i)];
}

TriangleRef Triangulation::prev_around(TriangleRef t, VertexRef v) const {
    const int i = index_of_vertex(t, v);
    return triangles_[t].nbr[cw(i)];
}

VertexRef Triangulation::new_vertex(Point p, std::uint64_t stamp) {
    VertexRef r;
    if (!free_vertices_.empty()) {
        r = free_vertices_.back();
        free_vertices_.pop_back();
    } else {
        r = static_cast<VertexRef>(vertices_.size());
        vertices_.emplace_back();
    }
    VertexData& d = vertices_[r];
    d = VertexData{};
    d.p = p;
    d.stamp = stamp;
    d.alive = true;
    ++finite_vertices_;
    return r;
}

TriangleRef Triangulation::new_triangle(VertexRef a, VertexRef b, VertexRef c) {
    TriangleRef r;
    if (!free_triangles_.empty()) {
        r = free_triangles_.back();
        free_triangles_.pop_back();
    } else {
        r = static_cast<TriangleRef>(triangles_.size());
        triangles_.emplace_back();
    }
    TriangleData& t = triangles_[r];
    t = TriangleData{};
    t.v = {a, b, c};
    t.alive = true;
    if (a == kInfiniteVertex || b == kInfiniteVertex || c == kInfiniteVertex)
        ++infinite_triangles_;
    else
        ++finite_triangles_;
    return r;
}

void Triangulation::kill_triangle(TriangleRef t) {
    TriangleData& d = triangles_[t];
    if (!d.alive) return;
    if (is_infinite_triangle(t))
        --infinite_triangles_;
    else
        --finite_triangles_;
    d.alive = false;
    free_triangles_.push_back(t);
}

void Triangulation::kill_vertex(VertexRef v) {
    VertexData& d = vertices_[v];
    if (!d.alive) return;
    d.alive = false;
    d.link = kNullRef;
    --finite_vertices_;
    free_vertices_.push_back(v);
}

void Triangulation::set_adjacent(TriangleRef t, int i, TriangleRef u) {
    triangles_[t].nbr[i] = u;
    if (u == kNullRef) return;
    const VertexRef e1 = triangles_[t].v[ccw(i)];
    const VertexRef e2 = triangles_[t].v[cw(i)];
    auto& ud = triangles_[u];
    for (int j = 0; j < 3; ++j) {
        if (ud.v[ccw(j)] == e2 && ud.v[cw(j)] == e1) {
            ud.nbr[j] = t;
            return;
        }
    }
    throw std::logic_error("set_adjacent: edge mismatch");
}

void Triangulation::refresh_links(TriangleRef t) {
    for (VertexRef v : triangles_[t].v)
        if (v != kInfiniteVertex) vertices_[v].link = t;
}

// ---- degenerate structure (fewer than 3 independent sites) --------------

InsertResult Triangulation::insert_degenerate(Point p, std::uint64_t stamp) {
    if (VertexRef dup = find_vertex(p); dup != kNullRef) return {dup, false};
    const VertexRef w = new_vertex(p, stamp);
    if (finite_vertices_ < 3) return {w, true};
    // Still degenerate if p is on the common line of the existing sites.
    Point a{}, b{};
    bool have_a = false, have_b = false;
    for (VertexRef v = 1; v < vertices_.size(); ++v) {
        if (!vertices_[v].alive || v == w) continue;
        if (!have_a) {
            a = vertices_[v].p;
            have_a = true;
        } else if (!have_b) {
            b = vertices_[v].p;
            have_b = true;
            break;
        }
    }
    if (orientation(a, b, p) == kCol) return {w, true};
    materialize_from_collinear(w);
    return {w, true};
}

void Triangulation::materialize_from_collinear(VertexRef fresh) {
    // All live vertices except `fresh` are collinear. Sort them along their
    // line and fan out from `fresh`, then close the hull with infinite
    // triangles. The fan is already Delaunay: a circle through two adjacent
    // chain points meets the chain line in exactly those two points.
    std::vector<VertexRef> chain;
    for (VertexRef v = 1; v < vertices_.size(); ++v)
        if (vertices_[v].alive && v != fresh) chain.push_back(v);
    std::sort(chain.begin(), chain.end(), [&](VertexRef x, VertexRef y) {
        const Point px = vertices_[x].p, py = vertices_[y].p;
        return px.x != py.x ? px.x < py.x : px.y < py.y;
    });
    const Point w = vertices_[fresh].p;
    if (orientation(vertices_[chain.front()].p, vertices_[chain.back()].p, w) == kCW)
        std::reverse(chain.begin(), chain.end());

    const std::size_t m = chain.size();
    std::vector<TriangleRef> fan(m - 1), inf(m - 1);
    for (std::size_t i = 0; i + 1 < m; ++i) {
        fan[i] = new_triangle(chain[i], chain[i + 1], fresh);
        inf[i] = new_triangle(chain[i + 1], chain[i], kInfiniteVertex);
    }
    const TriangleRef inf_end = new_triangle(fresh, chain[m - 1], kInfiniteVertex);
    const TriangleRef inf_start = new_triangle(chain[0], fresh, kInfiniteVertex);

    for (std::size_t i = 0; i + 1 < m; ++i) {
        set_adjacent(fan[i], 0, i + 2 < m ? fan[i + 1] : inf_end);
        set_adjacent(fan[i], 1, i > 0 ? fan[i - 1] : inf_start);
        set_adjacent(fan[i], 2, inf[i]);
        set_adjacent(inf[i], 0, i > 0 ? inf[i - 1] : inf_start);
        set_adjacent(inf[i], 1, i + 2 < m ? inf[i + 1] : inf_end);
    }
    set_adjacent(inf_end, 0, inf[m - 2]);
    set_adjacent(inf_end, 1, inf_start);
    set_adjacent(inf_start, 1, inf[0]);

    for (std::size_t i = 0; i + 1 < m; ++i) refresh_links(fan[i]);
}

void Triangulation::rebuild_small() {
    for (TriangleRef t = 0; t < triangles_.size(); ++t)
        if (triangles_[t].alive) kill_triangle(t);
    std::vector<VertexRef> live;
    for (VertexRef v = 1; v < vertices_.size(); ++v) {
        if (vertices_[v].alive) {
            vertices_[v].link = kNullRef;
            live.push_back(v);
        }
    }
    if (live.size() < 3) return;
    VertexRef off = kNullRef;
    const Point a = vertices_[live[0]].p, b = vertices_[live[1]].p;
    for (std::size_t i = 2; i < live.size(); ++i) {
        if (orientation(a, b, vertices_[live[i]].p) != kCol) {
            off = live[i];
            break;
        }
    }
    if (off == kNullRef) return;  // all collinear: stays degenerate
    materialize_from_collinear(off);
}

// ---- structural surgery --------------------------------------------------

void Triangulation::split_1_to_3(TriangleRef t, VertexRef w) {
    const auto v = triangles_[t].v;
    const auto n = triangles_[t].nbr;
    kill_triangle(t);
    const TriangleRef t0 = new_triangle(v[0], v[1], w);
    const TriangleRef t1 = new_triangle(v[1], v[2], w);
    const TriangleRef t2 = new_triangle(v[2], v[0], w);
    triangles_[t0].nbr = {t1, t2, kNullRef};
    triangles_[t1].nbr = {t2, t0, kNullRef};
    triangles_[t2].nbr = {t0, t1, kNullRef};
    set_adjacent(t0, 2, n[2]);
    set_adjacent(t1, 2, n[0]);
    set_adjacent(t2, 2, n[1]);
    refresh_links(t0);
    refresh_links(t1);
    refresh_links(t2);
}

void Triangulation::split_2_to_4(TriangleRef t, int i, VertexRef w) {
    // w lies on the edge opposite slot i of t.
    const VertexRef a = triangles_[t].v[ccw(i)];
    const VertexRef b = triangles_[t].v[cw(i)];
    const VertexRef c = triangles_[t].v[i];
    const TriangleRef u = triangles_[t].nbr[i];
    int j = -1;
    for (int k = 0; k < 3; ++k)
        if (triangles_[u].v[ccw(k)] == b && triangles_[u].v[cw(k)] == a) j = k;
    if (j < 0) throw std::logic_error("split_2_to_4: adjacency mismatch");
    const VertexRef d = triangles_[u].v[j];
    const TriangleRef n_bc = triangles_[t].nbr[ccw(i)];
    const TriangleRef n_ca = triangles_[t].nbr[cw(i)];
    const TriangleRef n_ad = triangles_[u].nbr[ccw(j)];
    const TriangleRef n_db = triangles_[u].nbr[cw(j)];
    kill_triangle(t);
    kill_triangle(u);
    const TriangleRef t0 = new_triangle(a, w, c);
    const TriangleRef t1 = new_triangle(w, b, c);
    const TriangleRef u0 = new_triangle(b, w, d);
    const TriangleRef u1 = new_triangle(w, a, d);
    triangles_[t0].nbr = {t1, kNullRef, u1};
    triangles_[t1].nbr = {kNullRef, t0, u0};
    triangles_[u0].nbr = {u1, kNullRef, t1};
    triangles_[u1].nbr = {kNullRef, u0, t0};
    set_adjacent(t0, 1, n_ca);
    set_adjacent(t1, 0, n_bc);
    set_adjacent(u0, 1, n_db);
    set_adjacent(u1, 0, n_ad);
    refresh_links(t0);
    refresh_links(t1);
    refresh_links(u0);
    refresh_links(u1);
}

void Triangulation::flip_edge(TriangleRef t, int i) {
    // Flips the edge opposite slot i of t. Rewrites t and its neighbor in
    // place; both keep containing t.v[i].
    const VertexRef x = triangles_[t].v[ccw(i)];
    const VertexRef y = triangles_[t].v[cw(i)];
    const VertexRef c1 = triangles_[t].v[i];
    const TriangleRef u = triangles_[t].nbr[i];
    int j = -1;
    for (int k = 0; k < 3; ++k)
        if (triangles_[u].v[ccw(k)] == y && triangles_[u].v[cw(k)] == x) j = k;
    if (j < 0) throw std::logic_error("flip_edge: adjacency mismatch");
    const VertexRef d = triangles_[u].v[j];
    const TriangleRef n_t_x = triangles_[t].nbr[ccw(i)];
    const TriangleRef n_t_y = triangles_[t].nbr[cw(i)];
    const TriangleRef n_u_y = triangles_[u].nbr[ccw(j)];
    const TriangleRef n_u_x = triangles_[u].nbr[cw(j)];

    const bool t_was_inf = is_infinite_triangle(t);
    const bool u_was_inf = is_infinite_triangle(u);

    triangles_[t].v = {c1, d, y};
    triangles_[u].v = {d, c1, x};
    triangles_[t].nbr = {kNullRef, kNullRef, u};
    triangles_[u].nbr = {kNullRef, kNullRef, t};
    set_adjacent(t, 0, n_u_x);
    set_adjacent(t, 1, n_t_x);
    set_adjacent(u, 0, n_t_y);
    set_adjacent(u, 1, n_u_y);

    const bool t_is_inf = is_infinite_triangle(t);
    const bool u_is_inf = is_infinite_triangle(u);
    if (t_was_inf != t_is_inf) {
        if (t_is_inf) { --finite_triangles_; ++infinite_triangles_; }
        else          { ++finite_triangles_; --infinite_triangles_; }
    }
    if (u_was_inf != u_is_inf) {
        if (u_is_inf) { --finite_triangles_; ++infinite_triangles_; }
        else          { ++finite_triangles_; --infinite_triangles_; }
    }
    refresh_links(t);
    refresh_links(u);
}

void Triangulation::legalize_after_insert(VertexRef w, std::vector<TriangleRef>& stack,
                                          PhaseCounters* upd) {
    const Point pw = vertices_[w].p;
    while (!stack.empty()) {
        const TriangleRef t = stack.back();
        stack.pop_back();
        if (!triangle_alive(t)) continue;
        const auto& tv = triangles_[t].v;
        int i = -1;
        for (int k = 0; k < 3; ++k)
            if (tv[k] == w) i = k;
        if (i < 0) continue;
        const TriangleRef u = triangles_[t].nbr[i];
        if (u == kNullRef) continue;
        const bool t_inf = is_infinite_triangle(t);
        const bool u_inf = is_infinite_triangle(u);
        bool illegal = false;
        if (!t_inf && !u_inf) {
            // The new point rule: COCIRCULAR counts as inside for w.
            const auto& uv = triangles_[u].v;
            if (upd) ++upd->incircle_tests;
            illegal = in_circle(vertices_[uv[0]].p, vertices_[uv[1]].p, vertices_[uv[2]].p, pw) !=
                      CirclePosition::kOutside;
        } else if (t_inf && u_inf) {
            // Shared edge (x, INF): flip when the hull is reflex at x.
            const auto [ta, tb] = hull_edge(t);
            const auto [ua, ub] = hull_edge(u);
            VertexRef prev, x, next;
            if (tb == ua) { prev = ta; x = tb; next = ub; }
            else if (ub == ta) { prev = ua; x = ub; next = tb; }
            else continue;
            illegal = orientation(vertices_[prev].p, vertices_[x].p, vertices_[next].p) == kCW;
        }
        // finite|infinite: a hull edge, always legal.
        if (illegal) {
            flip_edge(t, i);
            stack.push_back(t);
            stack.push_back(u);
        }
    }
}

void Triangulation::legalize_edges(std::vector<std::pair<TriangleRef, int>>& stack,
                                   PhaseCounters* upd) {
    // Lawson pass used after deletions: no point is "the last inserted",
    // so COCIRCULAR keeps the current diagonal.
    std::size_t budget = 64 + 16 * (triangles_.size() + 4);
    while (!stack.empty()) {
        if (budget-- == 0) throw std::logic_error("legalize_edges: flip budget exceeded");
        auto [t, i] = stack.back();
        stack.pop_back();
        if (!triangle_alive(t)) continue;
        const TriangleRef u = triangles_[t].nbr[i];
        if (u == kNullRef || !triangle_alive(u)) continue;
        if (is_infinite_triangle(t) || is_infinite_triangle(u)) continue;
        const VertexRef e1 = triangles_[t].v[ccw(i)];
        const VertexRef e2 = triangles_[t].v[cw(i)];
        int j = -1;
        for (int k = 0; k < 3; ++k)
            if (triangles_[u].v[ccw(k)] == e2 && triangles_[u].v[cw(k)] == e1) j = k;
        if (j < 0) continue;  // stale entry, edge no longer shared
        const VertexRef d = triangles_[u].v[j];
        const auto& tv = triangles_[t].v;
        if (upd) ++upd->incircle_tests;
        if (in_circle(vertices_[tv[0]].p, vertices_[tv[1]].p, vertices_[tv[2]].p,
                      vertices_[d].p) == CirclePosition::kInside) {
            flip_edge(t, i);
            for (int k = 0; k < 3; ++k) {
                if (triangles_[t].nbr[k] != u) stack.emplace_back(t, k);
                if (triangles_[u].nbr[k] != t) stack.emplace_back(u, k);
            }
        }
    }
}

// ---- insertion -----------------------------------------------------------

InsertResult Triangulation::insert_located(Point p, TriangleRef t, std::uint64_t stamp,
                                           PhaseCounters* upd) {
    if (!in_coordinate_range(p)) throw std::invalid_argument("point outside coordinate bound");
    if (!has_triangles()) return insert_degenerate(p, stamp);
    if (t == kNullRef || !triangle_alive(t)) throw std::invalid_argument("insert_located: bad triangle");

    auto split_outside = [&](TriangleRef inf_tri) {
        const VertexRef w = new_vertex(p, stamp);
        split_1_to_3(inf_tri, w);
        const TriangleRef l = vertices_[w].link;
        std::vector<TriangleRef> stack{l, next_around(l, w), prev_around(l, w)};
        legalize_after_insert(w, stack, upd);
        return InsertResult{w, true};
    };

    if (is_infinite_triangle(t)) {
        auto [a, b] = hull_edge(t);
        const Orientation o = orientation(vertices_[a].p, vertices_[b].p, p);
        if (o == kCW) return split_outside(t);
        if (o == kCCW) throw std::invalid_argument("insert_located: triangle does not contain point");
        const std::int64_t len2 = squared_distance(vertices_[a].p, vertices_[b].p);
        const std::int64_t proj = dot_from(vertices_[a].p, vertices_[b].p, p);
        if (proj == 0) return {a, false};
        if (proj == len2) return {b, false};
        if (proj > 0 && proj < len2) {
            // On the hull edge itself: split from the finite side.
            t = triangles_[t].nbr[infinite_index(t)];
        } else {
            // On the line but outside the segment: some other hull edge sees
            // p strictly, or p sits on the hull boundary elsewhere.
            PhaseCounters scratch;
            t = exterior_locate(t, p, scratch);
            if (t == kNullRef) throw std::logic_error("insert_located: exterior rotation failed");
            if (is_infinite_triangle(t)) return split_outside(t);
        }
    }

    // Finite triangle: classify p against its three edges.
    const auto& tv = triangles_[t].v;
    Orientation o[3];
    int zero_count = 0;
    for (int k = 0; k < 3; ++k) {
        o[k] = orientation(vertices_[tv[k]].p, vertices_[tv[ccw(k)]].p, p);
        if (o[k] == kCW) throw std::invalid_argument("insert_located: triangle does not contain point");
        if (o[k] == kCol) ++zero_count;
    }
    if (zero_count >= 2) {
        for (int k = 0; k < 3; ++k)
            if (vertices_[tv[k]].p == p) return {tv[k], false};
        throw std::logic_error("insert_located: degenerate classification");
    }

    const VertexRef w = new_vertex(p, stamp);
    std::vector<TriangleRef> stack;
    if (zero_count == 0) {
        split_1_to_3(t, w);
    } else {
        int k = 0;
        while (o[k] != kCol) ++k;
        // p lies on edge (tv[k], tv[k+1]), the edge opposite slot cw(k).
        split_2_to_4(t, cw(k), w);
    }
    // Seed the flip pass with every triangle incident to w.
    const TriangleRef l = vertices_[w].link;
    TriangleRef it = l;
    do {
        stack.push_back(it);
        it = next_around(it, w);
    } while (it != l);
    legalize_after_insert(w, stack, upd);
    return {w, true};
}

// ---- walking -------------------------------------------------------------

TriangleRef Triangulation::turn_around(VertexRef v, Point q, PhaseCounters& c) const {
    if (!vertex_alive(v) || v == kInfiniteVertex)
        throw std::invalid_argument("turn_around: bad vertex");
    if (!has_triangles()) throw std::logic_error("turn_around: degenerate structure");
    const Point pv = vertices_[v].p;
    if (pv == q) throw std::invalid_argument("turn_around: q equals the vertex");

    TriangleRef t = vertices_[v].link;
    // Start from a finite incident triangle; every vertex has one.
    for (int guard = 0; is_infinite_triangle(t); ++guard) {
        if (guard > 4) throw std::logic_error("turn_around: no finite incident triangle");
        t = next_around(t, v);
    }

    // perturbed_left: side of the ray v->r for the query direction v->q,
    // with exact ties broken as if q were rotated infinitesimally clockwise.
    auto perturbed_left = [&](VertexRef r) {
        ++c.phase1_orientation_tests;
        const Orientation o = orientation(pv, vertices_[r].p, q);
        if (o != kCol) return o == kCCW;
        return dot_from(pv, vertices_[r].p, q) < 0;  // behind counts left, ahead right
    };

    int i = index_of_vertex(t, v);
    VertexRef a = triangles_[t].v[ccw(i)];
    VertexRef b = triangles_[t].v[cw(i)];
    bool pl_a = perturbed_left(a);
    bool pl_b = perturbed_left(b);
    if (pl_a && !pl_b) return t;

    const std::size_t max_steps = vertices_.size() + 8;
    if (!pl_a) {
        for (std::size_t s = 0; s < max_steps; ++s) {
            const TriangleRef nt = prev_around(t, v);
            if (is_infinite_triangle(nt)) return nt;
            t = nt;
            i = index_of_vertex(t, v);
            a = triangles_[t].v[ccw(i)];
            if (perturbed_left(a)) return t;  // new wedge end is old a: known not-left
        }
    } else {
        for (std::size_t s = 0; s < max_steps; ++s) {
            const TriangleRef nt = next_around(t, v);
            if (is_infinite_triangle(nt)) return nt;
            t = nt;
            i = index_of_vertex(t, v);
            b = triangles_[t].v[cw(i)];
            if (!perturbed_left(b)) return t;  // new wedge start is old b: known left
        }
    }
    throw std::logic_error("turn_around: rotation did not terminate");
}

TriangleRef Triangulation::exterior_locate(TriangleRef t, Point q, PhaseCounters& c) const {
    // Rotate along the hull until some hull edge strictly sees q, or q is
    // found on the hull boundary itself (return the finite side then).
    auto [a, b] = hull_edge(t);
    const std::size_t limit = infinite_triangles_ + 2;
    bool forward = dot_from(vertices_[b].p, vertices_[a].p, q) < 0;
    for (std::size_t s = 0; s < limit; ++s) {
        ++c.phase2_orientation_tests;
        const Orientation o = orientation(vertices_[a].p, vertices_[b].p, q);
        if (o == kCW) return t;
        if (o == kCol) {
            const std::int64_t len2 = squared_distance(vertices_[a].p, vertices_[b].p);
            const std::int64_t proj = dot_from(vertices_[a].p, vertices_[b].p, q);
            if (proj >= 0 && proj <= len2) return triangles_[t].nbr[infinite_index(t)];
        }
        // Rotation between outer regions crosses no triangulation edge, so
        // it does not count toward phase2_crossings.
        t = forward ? triangles_[t].nbr[index_of_vertex(t, a)]
                    : triangles_[t].nbr[index_of_vertex(t, b)];
        std::tie(a, b) = hull_edge(t);
    }
    return kNullRef;  // q not strictly outside; caller falls back
}

TriangleRef Triangulation::straight_walk(TriangleRef start, Point seg_from, Point q,
                                         PhaseCounters& c) const {
    if (!has_triangles()) throw std::logic_error("straight_walk: degenerate structure");
    if (start == kNullRef || !triangle_alive(start))
        throw std::invalid_argument("straight_walk: bad start");
    if (seg_from == q) return start;

    TriangleRef t = start;
    if (is_infinite_triangle(t)) {
        auto [a, b] = hull_edge(t);
        ++c.phase2_orientation_tests;
        if (orientation(vertices_[a].p, vertices_[b].p, q) == kCW) {
            const TriangleRef r = exterior_locate(t, q, c);
            if (r != kNullRef) return r;
        }
        // The segment heads inside: restart from a hull vertex of t.
        const VertexRef v = vertices_[a].p == seg_from ? a : b;
        if (vertices_[v].p != seg_from)
            throw std::invalid_argument("straight_walk: infinite start without seg_from vertex");
        PhaseCounters rot;
        t = turn_around(v, q, rot);
        c.phase2_orientation_tests += rot.phase1_orientation_tests;
        if (is_infinite_triangle(t)) {
            const TriangleRef r = exterior_locate(t, q, c);
            return r == kNullRef ? t : r;
        }
    }

    VertexRef r = kNullRef, l = kNullRef;
    int from_slot = -1;
    for (int k = 0; k < 3; ++k)
        if (triangles_[t].v[k] != kInfiniteVertex && vertices_[triangles_[t].v[k]].p == seg_from)
            from_slot = k;

    if (from_slot >= 0) {
        r = triangles_[t].v[ccw(from_slot)];
        l = triangles_[t].v[cw(from_slot)];
        // Trust the caller's wedge but verify; rotate if it does not hold.
        c.phase2_orientation_tests += 2;
        const bool ok_r = !walk_left_of(seg_from, q, vertices_[r].p);
        const bool ok_l = walk_left_of(seg_from, q, vertices_[l].p);
        if (!ok_r || !ok_l) {
            const VertexRef from_v = triangles_[t].v[from_slot];
            PhaseCounters rot;
            t = turn_around(from_v, q, rot);
            c.phase2_orientation_tests += rot.phase1_orientation_tests;
            if (is_infinite_triangle(t)) {
                const TriangleRef res = exterior_locate(t, q, c);
                return res == kNullRef ? t : res;
            }
            const int fs = index_of_vertex(t, from_v);
            r = triangles_[t].v[ccw(fs)];
            l = triangles_[t].v[cw(fs)];
        }
    } else {
        // seg_from interior to start: return if q is already here, else pick
        // the exit edge (right endpoint right of the segment, left one left).
        bool inside = true;
        const auto& tv = triangles_[t].v;
        for (int k = 0; k < 3 && inside; ++k) {
            ++c.phase2_orientation_tests;
            if (orientation(vertices_[tv[k]].p, vertices_[tv[ccw(k)]].p, q) == kCW) inside = false;
        }
        if (inside) return t;
        for (int k = 0; k < 3; ++k) {
            const VertexRef u = tv[k], w = tv[ccw(k)];
            c.phase2_orientation_tests += 2;
            if (!walk_left_of(seg_from, q, vertices_[u].p) &&
                walk_left_of(seg_from, q, vertices_[w].p)) {
                r = u;
                l = w;
                break;
            }
        }
        if (r == kNullRef) throw std::logic_error("straight_walk: no exit edge");
    }

    const std::size_t max_steps = 4 * (triangles_.size() + 8);
    for (std::size_t s = 0; s < max_steps; ++s) {
        ++c.phase2_orientation_tests;
        if (orientation(vertices_[r].p, vertices_[l].p, q) != kCW) return t;
        int k = -1;
        for (int m = 0; m < 3; ++m)
            if (triangles_[t].v[ccw(m)] == r && triangles_[t].v[cw(m)] == l) k = m;
        if (k < 0) throw std::logic_error("straight_walk: lost far edge");
        ++c.phase2_crossings;
        t = triangles_[t].nbr[k];
        if (is_infinite_triangle(t)) return t;
        int m2 = -1;
        for (int m = 0; m < 3; ++m)
            if (triangles_[t].v[ccw(m)] == l && triangles_[t].v[cw(m)] == r) m2 = m;
        if (m2 < 0) throw std::logic_error("straight_walk: adjacency mismatch");
        const VertexRef sv = triangles_[t].v[m2];
        ++c.phase2_orientation_tests;
        if (walk_left_of(seg_from, q, vertices_[sv].p))
            l = sv;
        else
            r = sv;
    }
    throw std::logic_error("straight_walk: did not terminate");
}

// ---- nearest -------------------------------------------------------------

VertexRef Triangulation::nearest_by_scan(Point q, PhaseCounters& c) const {
    VertexRef best = kNullRef;
    std::int64_t best_d = 0;
    for (VertexRef v = 1; v < vertices_.size(); ++v) {
        if (!vertices_[v].alive) continue;
        ++c.distance_computations;
        const std::int64_t d = squared_distance(vertices_[v].p, q);
        if (best == kNullRef || d < best_d ||
            (d == best_d && vertices_[v].stamp < vertices_[best].stamp)) {
            best = v;
            best_d = d;
        }
    }
    return best;
}

VertexRef Triangulation::find_vertex(Point p) const {
    for (VertexRef v = 1; v < vertices_.size(); ++v)
        if (vertices_[v].alive && vertices_[v].p == p) return v;
    return kNullRef;
}

VertexRef Triangulation::nearest_from_triangle(TriangleRef t, Point q, Phase3Mode mode,
                                               PhaseCounters& c) const {
    if (!has_triangles() || t == kNullRef) return nearest_by_scan(q, c);
    if (!triangle_alive(t)) throw std::invalid_argument("nearest_from_triangle: bad triangle");

    auto better = [&](VertexRef v, std::int64_t dv, VertexRef cur, std::int64_t dcur) {
        return dv < dcur || (dv == dcur && vertices_[v].stamp < vertices_[cur].stamp);
    };

    if (mode == Phase3Mode::kModified) {
        VertexRef best = kNullRef;
        std::int64_t best_d = 0;
        for (VertexRef v : triangles_[t].v) {
            if (v == kInfiniteVertex) continue;
            ++c.distance_computations;
            const std::int64_t d = squared_distance(vertices_[v].p, q);
            if (best == kNullRef || better(v, d, best, best_d)) {
                best = v;
                best_d = d;
            }
        }
        return best;
    }

    std::unordered_map<VertexRef, std::int64_t> dist;
    auto d_of = [&](VertexRef v) {
        auto it = dist.find(v);
        if (it != dist.end()) return it->second;
        ++c.distance_computations;
        const std::int64_t d = squared_distance(vertices_[v].p, q);
        dist.emplace(v, d);
        return d;
    };

    // Exact: pruned traversal from t. A triangle is expanded only across
    // edges incident to its own nearest corner w, and only when the angle
    // q-w-other is acute; the visited set provides termination.
    std::unordered_set<TriangleRef> visited;
    std::vector<TriangleRef> queue;
    queue.push_back(t);
    visited.insert(t);
    VertexRef best = kNullRef;
    std::int64_t best_d = 0;

    for (std::size_t head = 0; head < queue.size(); ++head) {
        const TriangleRef tri = queue[head];
        ++c.phase3_visits;
        const auto& tv = triangles_[tri].v;
        VertexRef w = kNullRef;
        std::int64_t wd = 0;
        for (VertexRef v : tv) {
            if (v == kInfiniteVertex) continue;
            const std::int64_t d = d_of(v);
            if (w == kNullRef || better(v, d, w, wd)) {
                w = v;
                wd = d;
            }
            if (best == kNullRef || better(v, d, best, best_d)) {
                best = v;
                best_d = d;
            }
        }
        if (best_d == 0) break;
        for (int k = 0; k < 3; ++k) {
            const VertexRef e1 = tv[ccw(k)], e2 = tv[cw(k)];
            if (e1 != w && e2 != w) continue;  // edge opposite the closest corner: pruned
            VertexRef other = e1 == w ? e2 : e1;
            const TriangleRef nb = triangles_[tri].nbr[k];
            if (nb == kNullRef || visited.count(nb)) continue;
            if (other == kInfiniteVertex) {
                // Hull-adjacent expansion: gate on the next hull vertex.
                const auto [ha, hb] = hull_edge(nb);
                other = ha == w ? hb : ha;
                if (other == kInfiniteVertex) continue;
            }
            ++c.angle_tests;
            if (!angle_acute_at(vertices_[w].p, q, vertices_[other].p)) continue;
            visited.insert(nb);
            queue.push_back(nb);
        }
    }

    // Greedy polish: in a Delaunay triangulation, any vertex that is not the
    // nearest has a strictly closer neighbor, so descending to the closest
    // neighbor until none improves lands on the true nearest. Then sweep
    // equidistant neighbors for the least insertion stamp.
    bool moved = true;
    while (moved) {
        moved = false;
        VertexRef cand = best;
        std::int64_t cand_d = best_d;
        const TriangleRef l0 = vertices_[best].link;
        TriangleRef it = l0;
        do {
            ++c.phase3_visits;
            const int i = index_of_vertex(it, best);
            const VertexRef nb = triangles_[it].v[ccw(i)];
            if (nb != kInfiniteVertex) {
                const std::int64_t d = d_of(nb);
                if (better(nb, d, cand, cand_d)) {
                    cand = nb;
                    cand_d = d;
                }
            }
            it = next_around(it, best);
        } while (it != l0);
        if (cand != best) {
            best = cand;
            best_d = cand_d;
            moved = true;
        }
    }
    return best;
}

// ---- scan location ---------------------------------------------------------

TriangleRef Triangulation::locate_by_scan(Point q) const {
    if (!has_triangles()) return kNullRef;
    TriangleRef inf_hit = kNullRef;
    for (TriangleRef t = 0; t < triangles_.size(); ++t) {
        if (!triangles_[t].alive) continue;
        if (is_infinite_triangle(t)) {
            if (inf_hit == kNullRef) {
                auto [a, b] = hull_edge(t);
                if (orientation(vertices_[a].p, vertices_[b].p, q) == kCW) inf_hit = t;
            }
            continue;
        }
        const auto& tv = triangles_[t].v;
        bool inside = true;
        for (int k = 0; k < 3 && inside; ++k)
            if (orientation(vertices_[tv[k]].p, vertices_[tv[ccw(k)]].p, q) == kCW) inside = false;
        if (inside) return t;
    }
    return inf_hit;
}

// ---- deletion --------------------------------------------------------------

std::vector<TriangleRef> Triangulation::star_of(VertexRef v) const {
    std::vector<TriangleRef> star;
    const TriangleRef l0 = vertices_[v].link;
    TriangleRef t = l0;
    do {
        star.push_back(t);
        t = next_around(t, v);
        if (star.size() > triangles_.size() + 4)
            throw std::logic_error("star_of: rotation did not close");
    } while (t != l0);
    return star;
}

bool Triangulation::is_hull_vertex(VertexRef v) const {
    for (TriangleRef t : star_of(v))
        if (is_infinite_triangle(t)) return true;
    return false;
}

void Triangulation::triangulate_polygon(std::vector<VertexRef> poly,
                                        std::vector<TriangleRef>& out) {
    // Ear clipping on a CCW simple polygon; Delaunay quality is restored by
    // the caller's flip pass.
    auto is_ear = [&](std::size_t j, bool strict_containment_only) {
        const std::size_t n = poly.size();
        const VertexRef a = poly[(j + n - 1) % n], b = poly[j], c2 = poly[(j + 1) % n];
        const Point pa = vertices_[a].p, pb = vertices_[b].p, pc = vertices_[c2].p;
        if (orientation(pa, pb, pc) != kCCW) return false;
        for (std::size_t k = 0; k < n; ++k) {
            const VertexRef o = poly[k];
            if (o == a || o == b || o == c2) continue;
            const Point po = vertices_[o].p;
            const Orientation o1 = orientation(pa, pb, po);
            const Orientation o2 = orientation(pb, pc, po);
            const Orientation o3 = orientation(pc, pa, po);
            const bool strictly_inside = o1 == kCCW && o2 == kCCW && o3 == kCCW;
            const bool inside_or_on = o1 != kCW && o2 != kCW && o3 != kCW;
            if (strict_containment_only ? strictly_inside : inside_or_on) return false;
        }
        return true;
    };
    while (poly.size() > 3) {
        std::size_t ear = poly.size();
        for (std::size_t pass = 0; pass < 2 && ear == poly.size(); ++pass)
            for (std::size_t j = 0; j < poly.size(); ++j)
                if (is_ear(j, pass == 1)) {
                    ear = j;
                    break;
                }
        if (ear == poly.size()) throw std::logic_error("triangulate_polygon: no ear found");
        const std::size_t n = poly.size();
        out.push_back(new_triangle(poly[(ear + n - 1) % n], poly[ear], poly[(ear + 1) % n]));
        poly.erase(poly.begin() + static_cast<std::ptrdiff_t>(ear));
    }
    if (orientation(vertices_[poly[0]].p, vertices_[poly[1]].p, vertices_[poly[2]].p) != kCCW)
        throw std::logic_error("triangulate_polygon: final triangle not CCW");
    out.push_back(new_triangle(poly[0], poly[1], poly[2]));
}

void Triangulation::delete_vertex(VertexRef v, PhaseCounters* upd) {
    if (!vertex_alive(v) || v == kInfiniteVertex)
        throw std::invalid_argument("delete_vertex: bad vertex");
    if (!has_triangles()) {
        kill_vertex(v);
        return;
    }
    const auto star = star_of(v);
    std::uint32_t finite_deg = 0;
    bool hull = false;
    for (TriangleRef t : star) {
        if (is_infinite_triangle(t)) hull = true;
        else ++finite_deg;
    }
    if (finite_vertices_ <= 4) {
        kill_vertex(v);
        rebuild_small();
        return;
    }
    if (finite_deg == finite_triangles_) {
        // Every finite triangle touches v, so the survivors are exactly its
        // link ring. If that ring is collinear the structure degenerates.
        std::vector<Point> ring;
        for (TriangleRef t : star) {
            const VertexRef u = triangles_[t].v[ccw(index_of_vertex(t, v))];
            if (u != kInfiniteVertex) ring.push_back(vertices_[u].p);
        }
        bool collinear = true;
        for (std::size_t i = 2; i < ring.size() && collinear; ++i)
            if (orientation(ring[0], ring[1], ring[i]) != kCol) collinear = false;
        if (collinear) {
            kill_vertex(v);
            rebuild_small();
            return;
        }
    }
    if (hull)
        delete_hull(v, upd);
    else
        delete_interior(v, upd);
}

void Triangulation::delete_interior(VertexRef v, PhaseCounters* upd) {
    const Point pv = vertices_[v].p;
    std::vector<TriangleRef> hole_tris;

    while (true) {
        const auto star = star_of(v);
        const std::size_t d = star.size();
        if (d == 3) break;
        std::vector<VertexRef> ring(d);
        for (std::size_t j = 0; j < d; ++j)
            ring[j] = triangles_[star[j]].v[ccw(index_of_vertex(star[j], v))];
        bool flipped = false;
        for (std::size_t j = 0; j < d && !flipped; ++j) {
            const VertexRef up = ring[(j + d - 1) % d];
            const VertexRef uj = ring[j];
            const VertexRef un = ring[(j + 1) % d];
            if (orientation(vertices_[up].p, vertices_[uj].p, vertices_[un].p) != kCCW) continue;
            if (orientation(vertices_[up].p, vertices_[un].p, pv) != kCCW) continue;
            const TriangleRef tj = star[j];
            flip_edge(tj, index_of_vertex(tj, un));
            hole_tris.push_back(tj);  // rewritten in place to (un, up, uj)
            flipped = true;
        }
        if (!flipped) {
            // No strictly valid flip (v collinear with opposite ring
            // vertices). Remove the star and ear-clip the ring directly.
            std::unordered_map<std::uint64_t, TriangleRef> border;
            for (std::size_t j = 0; j < d; ++j) {
                const TriangleRef outer = triangles_[star[j]].nbr[index_of_vertex(star[j], v)];
                border.emplace(edge_key(ring[(j + 1) % d], ring[j]), outer);
            }
            for (TriangleRef t : star) kill_triangle(t);
            kill_vertex(v);
            std::vector<TriangleRef> fill;
            triangulate_polygon(ring, fill);
            for (TriangleRef t : fill)
                for (int k = 0; k < 3; ++k)
                    border.emplace(edge_key(triangles_[t].v[ccw(k)], triangles_[t].v[cw(k)]), t);
            std::vector<std::pair<TriangleRef, int>> stack;
            for (TriangleRef t : fill) {
                for (int k = 0; k < 3; ++k) {
                    const auto it = border.find(
                        edge_key(triangles_[t].v[cw(k)], triangles_[t].v[ccw(k)]));
                    if (it == border.end()) throw std::logic_error("delete_interior: open edge");
                    set_adjacent(t, k, it->second);
                    stack.emplace_back(t, k);
                }
                refresh_links(t);
            }
            // Diagonals produced by the flips that ran before the fallback
            // still need the Delaunay pass.
            for (TriangleRef t : hole_tris)
                if (triangle_alive(t))
                    for (int k = 0; k < 3; ++k) stack.emplace_back(t, k);
            legalize_edges(stack, upd);
            return;
        }
    }

    // Degree 3: merge the three star triangles into one.
    const auto star = star_of(v);
    std::array<VertexRef, 3> ring;
    std::array<TriangleRef, 3> outer;
    for (int j = 0; j < 3; ++j) {
        const int i = index_of_vertex(star[j], v);
        ring[j] = triangles_[star[j]].v[ccw(i)];
        outer[j] = triangles_[star[j]].nbr[i];
    }
    for (TriangleRef t : star) kill_triangle(t);
    kill_vertex(v);
    const TriangleRef merged = new_triangle(ring[0], ring[1], ring[2]);
    set_adjacent(merged, 2, outer[0]);
    set_adjacent(merged, 0, outer[1]);
    set_adjacent(merged, 1, outer[2]);
    refresh_links(merged);
    hole_tris.push_back(merged);

    std::vector<std::pair<TriangleRef, int>> stack;
    for (TriangleRef t : hole_tris)
        if (triangle_alive(t))
            for (int k = 0; k < 3; ++k) stack.emplace_back(t, k);
    legalize_edges(stack, upd);
}

void Triangulation::delete_hull(VertexRef v, PhaseCounters* upd) {
    const auto star = star_of(v);
    const std::size_t d = star.size();
    std::vector<VertexRef> ring(d);
    for (std::size_t j = 0; j < d; ++j)
        ring[j] = triangles_[star[j]].v[ccw(index_of_vertex(star[j], v))];
    std::size_t inf_at = d;
    for (std::size_t j = 0; j < d; ++j)
        if (ring[j] == kInfiniteVertex) inf_at = j;
    if (inf_at == d) throw std::logic_error("delete_hull: not a hull vertex");

    // Finite link chain in CCW star order: hull successor s first, hull
    // predecessor p last.
    std::vector<VertexRef> chain;
    for (std::size_t j = 1; j < d; ++j) chain.push_back(ring[(inf_at + j) % d]);
    const std::size_t m = chain.size();

    // Register the surviving side of every boundary edge, keyed by the
    // directed edge as the survivor contains it.
    std::unordered_map<std::uint64_t, TriangleRef> border;
    for (std::size_t j = 0; j < d; ++j) {
        const VertexRef u1 = ring[j], u2 = ring[(j + 1) % d];
        const TriangleRef outer = triangles_[star[j]].nbr[index_of_vertex(star[j], v)];
        if (u1 == kInfiniteVertex || u2 == kInfiniteVertex) continue;  // handled below
        border.emplace(edge_key(u2, u1), outer);
    }
    // The two infinite neighbors that survive: across the (p, INF) and
    // (s, INF) edges of v's infinite star triangles.
    {
        const TriangleRef i_next = star[inf_at];            // covers hull edge v->s
        const TriangleRef i_prev = star[(inf_at + d - 1) % d];  // covers hull edge p->v
        const TriangleRef after = triangles_[i_next].nbr[index_of_vertex(i_next, v)];
        const TriangleRef before = triangles_[i_prev].nbr[index_of_vertex(i_prev, v)];
        border.emplace(edge_key(chain[0], kInfiniteVertex), after);   // (s, INF) in I_after
        border.emplace(edge_key(kInfiniteVertex, chain[m - 1]), before);  // (INF, p) in I_before
    }

    for (TriangleRef t : star) kill_triangle(t);
    kill_vertex(v);

    // Re-exposed hull chain from p to s (left turns kept, so collinear
    // boundary sites stay on the hull).
    std::vector<VertexRef> rev(chain.rbegin(), chain.rend());
    std::vector<VertexRef> hullc;
    std::vector<std::size_t> hull_pos;
    for (std::size_t i = 0; i < rev.size(); ++i) {
        while (hullc.size() >= 2 &&
               orientation(vertices_[hullc[hullc.size() - 2]].p,
                           vertices_[hullc.back()].p, vertices_[rev[i]].p) == kCW) {
            hullc.pop_back();
            hull_pos.pop_back();
        }
        hullc.push_back(rev[i]);
        hull_pos.push_back(i);
    }

    std::vector<TriangleRef> fresh;
    for (std::size_t k = 0; k + 1 < hullc.size(); ++k) {
        fresh.push_back(new_triangle(hullc[k + 1], hullc[k], kInfiniteVertex));
        if (hull_pos[k + 1] > hull_pos[k] + 1) {
            // Pocket between consecutive hull vertices: base edge plus the
            // sagging sub-chain, CCW.
            std::vector<VertexRef> poly;
            poly.push_back(hullc[k]);
            poly.push_back(hullc[k + 1]);
            for (std::size_t i = hull_pos[k + 1] - 1; i > hull_pos[k]; --i) poly.push_back(rev[i]);
            triangulate_polygon(poly, fresh);
        }
    }

    for (TriangleRef t : fresh)
        for (int k = 0; k < 3; ++k)
            border.emplace(edge_key(triangles_[t].v[ccw(k)], triangles_[t].v[cw(k)]), t);
    std::vector<std::pair<TriangleRef, int>> stack;
    for (TriangleRef t : fresh) {
        for (int k = 0; k < 3; ++k) {
            const auto it = border.find(edge_key(triangles_[t].v[cw(k)], triangles_[t].v[ccw(k)]));
            if (it == border.end()) throw std::logic_error("delete_hull: open edge");
            set_adjacent(t, k, it->second);
            if (!is_infinite_triangle(t)) stack.emplace_back(t, k);
        }
        refresh_links(t);
    }
    // Chain vertices may have linked to a removed star triangle; every one
    // of them appears in some surviving border triangle.
    for (VertexRef u : chain) {
        if (triangle_alive(vertices_[u].link)) continue;
        for (auto& [key, t] : border) {
            if (!triangle_alive(t)) continue;
            for (VertexRef tv : triangles_[t].v)
                if (tv == u) vertices_[u].link = t;
        }
        if (!triangle_alive(vertices_[u].link))
            throw std::logic_error("delete_hull: orphaned chain vertex");
    }
    legalize_edges(stack, upd);
}

// ---- diagnostics -----------------------------------------------------------

std::vector<std::string> Triangulation::validate(bool deep_delaunay) const {
    std::vector<std::string> out;
    auto fail = [&](std::string msg) { out.push_back(std::move(msg)); };

    std::vector<TriangleRef> live_t = live_triangles();
    std::vector<VertexRef> live_v = live_vertices();

    if (!has_triangles()) {
        if (infinite_triangles_ != 0) fail("degenerate structure has infinite triangles");
        if (live_v.size() >= 3) {
            const Point a = vertices_[live_v[0]].p, b = vertices_[live_v[1]].p;
            for (std::size_t i = 2; i < live_v.size(); ++i)
                if (orientation(a, b, vertices_[live_v[i]].p) != kCol) {
                    fail("degenerate structure with non-collinear sites");
                    break;
                }
        }
        return out;
    }

    for (TriangleRef t : live_t) {
        const auto& td = triangles_[t];
        for (int i = 0; i < 3; ++i) {
            if (td.v[i] != kInfiniteVertex && !vertex_alive(td.v[i]))
                fail("triangle " + std::to_string(t) + " references dead vertex");
            const TriangleRef u = td.nbr[i];
            if (u == kNullRef || !triangle_alive(u)) {
                fail("triangle " + std::to_string(t) + " has missing/dead neighbor");
                continue;
            }
            bool matched = false;
            for (int j = 0; j < 3; ++j)
                if (triangles_[u].nbr[j] == t && triangles_[u].v[ccw(j)] == td.v[cw(i)] &&
                    triangles_[u].v[cw(j)] == td.v[ccw(i)])
                    matched = true;
            if (!matched)
                fail("adjacency violation between triangles " + std::to_string(t) + " and " +
                     std::to_string(u));
        }
        if (!is_infinite_triangle(t)) {
            if (orientation(vertices_[td.v[0]].p, vertices_[td.v[1]].p, vertices_[td.v[2]].p) !=
                kCCW)
                fail("finite triangle " + std::to_string(t) + " is not CCW");
        }
    }
    if (!out.empty()) return out;  // geometry checks assume sane connectivity

    // Infinite triangles form one cycle; the hull is convex (collinear
    // hull vertices allowed).
    {
        TriangleRef start = kNullRef;
        for (TriangleRef t : live_t)
            if (is_infinite_triangle(t)) {
                start = t;
                break;
            }
        std::size_t seen = 0;
        TriangleRef t = start;
        do {
            ++seen;
            auto [a, b] = hull_edge(t);
            const TriangleRef nxt = triangles_[t].nbr[index_of_vertex(t, a)];
            if (!is_infinite_triangle(nxt)) {
                fail("infinite cycle broken");
                break;
            }
            auto [na, nb] = hull_edge(nxt);
            if (na != b) fail("hull edges not chained");
            if (orientation(vertices_[a].p, vertices_[b].p, vertices_[nb].p) == kCW)
                fail("hull is reflex at vertex " + std::to_string(b));
            t = nxt;
            if (seen > live_t.size() + 2) {
                fail("infinite cycle does not close");
                break;
            }
        } while (t != start);
        if (out.empty() && seen != infinite_triangles_)
            fail("infinite triangles form more than one cycle");
    }

    // Euler counts.
    {
        const std::uint64_t n = finite_vertices_;
        const std::uint64_t h = infinite_triangles_;
        const std::uint64_t f = finite_triangles_;
        const std::uint64_t e = (3 * f + h) / 2;
        if ((3 * f + h) % 2 != 0) fail("odd finite half-edge count");
        if (n >= 3) {
            if (f != 2 * n - 2 - h) fail("Euler face count violated");
            if (e != 3 * n - 3 - h) fail("Euler edge count violated");
        }
    }

    for (VertexRef v : live_v) {
        const TriangleRef l = vertices_[v].link;
        if (l == kNullRef || !triangle_alive(l)) {
            fail("vertex " + std::to_string(v) + " has dead link");
            continue;
        }
        bool inc = false;
        for (VertexRef tv : triangles_[l].v)
            if (tv == v) inc = true;
        if (!inc) fail("vertex " + std::to_string(v) + " link not incident");
    }
    if (!out.empty()) return out;

    // Empty circumcircle, COCIRCULAR accepted under the insertion-order rule.
    if (deep_delaunay) {
        for (TriangleRef t : live_t) {
            if (is_infinite_triangle(t)) continue;
            const auto& tv = triangles_[t].v;
            for (VertexRef v : live_v) {
                if (v == tv[0] || v == tv[1] || v == tv[2]) continue;
                if (in_circle(vertices_[tv[0]].p, vertices_[tv[1]].p, vertices_[tv[2]].p,
                              vertices_[v].p) == CirclePosition::kInside) {
                    fail("site " + std::to_string(v) + " inside circumcircle of triangle " +
                         std::to_string(t));
                }
            }
        }
    } else {
        for (TriangleRef t : live_t) {
            if (is_infinite_triangle(t)) continue;
            const auto& tv = triangles_[t].v;
            for (int i = 0; i < 3; ++i) {
                const TriangleRef u = triangles_[t].nbr[i];
                if (is_infinite_triangle(u)) continue;
                int j = -1;
                for (int k = 0; k < 3; ++k)
                    if (triangles_[u].nbr[k] == t) j = k;
                const VertexRef d = triangles_[u].v[j];
                if (in_circle(vertices_[tv[0]].p, vertices_[tv[1]].p, vertices_[tv[2]].p,
                              vertices_[d].p) == CirclePosition::kInside)
                    fail("edge opposite slot " + std::to_string(i) + " of triangle " +
                         std::to_string(t) + " is not locally Delaunay");
            }
        }
    }
    return out;
}

void Triangulation::dump(std::ostream& os) const {
    for (VertexRef v = 1; v < vertices_.size(); ++v)
        if (vertices_[v].alive)
            os << "# vertex " << v << ": " << vertices_[v].p.x << ' ' << vertices_[v].p.y << '\n';
    auto name = [](VertexRef v) {
        return v == kInfiniteVertex ? std::string("INF") : std::to_string(v);
    };
    for (TriangleRef t = 0; t < triangles_.size(); ++t) {
        if (!triangles_[t].alive) continue;
        const auto& td = triangles_[t];
        os << t << ": " << name(td.v[0]) << ' ' << name(td.v[1]) << ' ' << name(td.v[2]) << " | "
           << td.nbr[0] << ' ' << td.nbr[1] << ' ' << td.nbr[2] << '\n';
    }
}

std::vector<std::pair<VertexRef, VertexRef>> Triangulation::finite_edges() const {
    std::vector<std::pair<VertexRef, VertexRef>> out;
    for (TriangleRef t = 0; t < triangles_.size(); ++t) {
        if (!triangles_[t].alive || is_infinite_triangle(t)) continue;
        const auto& td = triangles_[t];
        for (int i = 0; i < 3; ++i) {
            const VertexRef a = td.v[ccw(i)], b = td.v[cw(i)];
            if (a < b || is_infinite_triangle(td.nbr[i]))
                out.emplace_back(std::min(a, b), std::max(a, b));
        }
    }
    return out;
}

std::vector<VertexRef> Triangulation::live_vertices() const {
    std::vector<VertexRef> out;
    for (VertexRef v = 1; v < vertices_.size(); ++v)
        if (vertices_[v].alive) out.push_back(v);
    return out;
}

std::vector<TriangleRef> Triangulation::live_triangles() const {
    std::vector<TriangleRef> out;
    for (TriangleRef t = 0; t < triangles_.size(); ++t)
        if (triangles_[t].alive) out.push_back(t);
    return out;
}

}  // namespace delhier
