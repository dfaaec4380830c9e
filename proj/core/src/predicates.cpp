#include "delhier/predicates.hpp"

namespace delhier {

namespace {

inline std::int8_t sign64(std::int64_t v) {
    return static_cast<std::int8_t>((v > 0) - (v < 0));
}

inline std::int8_t sign128(__int128 v) {
    return static_cast<std::int8_t>((v > 0) - (v < 0));
}

}  // namespace

Orientation orientation(Point a, Point b, Point c) {
    // Differences are bounded by 2^25, each product by 2^50.
    const std::int64_t acx = std::int64_t{b.x} - a.x;
    const std::int64_t acy = std::int64_t{b.y} - a.y;
    const std::int64_t bcx = std::int64_t{c.x} - a.x;
    const std::int64_t bcy = std::int64_t{c.y} - a.y;
    return static_cast<Orientation>(sign64(acx * bcy - acy * bcx));
}

CirclePosition in_circle(Point a, Point b, Point c, Point d) {
    assert(orientation(a, b, c) == Orientation::kCounterClockwise);
    // Classic lifted determinant, translated so d is the origin.
    // Entries: |adx| <= 2^25, lift <= 2^51; the 3x3 determinant stays
    // below 2^104 and is evaluated exactly in int128.
    const std::int64_t adx = std::int64_t{a.x} - d.x;
    const std::int64_t ady = std::int64_t{a.y} - d.y;
    const std::int64_t bdx = std::int64_t{b.x} - d.x;
    const std::int64_t bdy = std::int64_t{b.y} - d.y;
    const std::int64_t cdx = std::int64_t{c.x} - d.x;
    const std::int64_t cdy = std::int64_t{c.y} - d.y;

    const std::int64_t alift = adx * adx + ady * ady;
    const std::int64_t blift = bdx * bdx + bdy * bdy;
    const std::int64_t clift = cdx * cdx + cdy * cdy;

    const std::int64_t bcdet = bdx * cdy - bdy * cdx;
    const std::int64_t cadet = cdx * ady - cdy * adx;
    const std::int64_t abdet = adx * bdy - ady * bdx;

    const __int128 det = static_cast<__int128>(alift) * bcdet +
                         static_cast<__int128>(blift) * cadet +
                         static_cast<__int128>(clift) * abdet;
    return static_cast<CirclePosition>(sign128(det));
}

std::int64_t squared_distance(Point a, Point b) {
    const std::int64_t dx = std::int64_t{a.x} - b.x;
    const std::int64_t dy = std::int64_t{a.y} - b.y;
    return dx * dx + dy * dy;
}

bool angle_acute_at(Point w, Point q, Point w2) {
    const std::int64_t ux = std::int64_t{q.x} - w.x;
    const std::int64_t uy = std::int64_t{q.y} - w.y;
    const std::int64_t vx = std::int64_t{w2.x} - w.x;
    const std::int64_t vy = std::int64_t{w2.y} - w.y;
    return ux * vx + uy * vy > 0;
}

}  // namespace delhier
