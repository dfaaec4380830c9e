#pragma once

#include <cassert>
#include <cstdint>

namespace delhier {

/// Planar site with integer coordinates. Coordinates must satisfy
/// |x|, |y| <= kCoordinateBound (24-bit magnitude); under that bound every
/// predicate in this kernel evaluates exactly in fixed-width integers:
/// orientation and distances fit in int64, in-circle fits in int128.
struct Point {
    std::int32_t x = 0;
    std::int32_t y = 0;

    friend bool operator==(Point, Point) = default;
};

inline constexpr std::int32_t kCoordinateBound = 1 << 24;  // 16777216

/// True iff p satisfies the coordinate bound. Checked once at ingestion;
/// the predicates assume it.
constexpr bool in_coordinate_range(Point p) {
    return p.x >= -kCoordinateBound && p.x <= kCoordinateBound &&
           p.y >= -kCoordinateBound && p.y <= kCoordinateBound;
}

enum class Orientation : std::int8_t {
    kClockwise = -1,
    kCollinear = 0,
    kCounterClockwise = 1,
};

enum class CirclePosition : std::int8_t {
    kOutside = -1,
    kCocircular = 0,
    kInside = 1,
};

/// Sign of the cross product (b-a) x (c-a). Exact.
Orientation orientation(Point a, Point b, Point c);

/// Position of d relative to the circumcircle of the CCW triangle abc.
/// Exact; requires orientation(a,b,c) == kCounterClockwise.
CirclePosition in_circle(Point a, Point b, Point c, Point d);

/// (ax-bx)^2 + (ay-by)^2, exact. At the coordinate extremes the value
/// reaches 2^51, well inside int64.
std::int64_t squared_distance(Point a, Point b);

/// True iff the angle q-w-w2 at apex w is strictly smaller than pi/2,
/// i.e. (q-w).(w2-w) > 0. Exact degree-2 replacement for the angle
/// comparison. Requires w != q and w != w2.
bool angle_acute_at(Point w, Point q, Point w2);

}  // namespace delhier
