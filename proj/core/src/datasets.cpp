#include "delhier/datasets.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "delhier/rng.hpp"

namespace delhier {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr std::int32_t kB = kCoordinateBound;

std::int32_t clamp_coord(double v) {
    const double r = std::nearbyint(v);
    if (r < -kB) return -kB;
    if (r > kB) return kB;
    return static_cast<std::int32_t>(r);
}

Point random_square(Rng& rng) {
    return {static_cast<std::int32_t>(rng.next_in(-kB, kB)),
            static_cast<std::int32_t>(rng.next_in(-kB, kB))};
}

Point on_ellipse(Rng& rng, double a, double b) {
    const double t = kTwoPi * rng.next_unit();
    return {clamp_coord(a * std::cos(t)), clamp_coord(b * std::sin(t))};
}

Point on_parabola(Rng& rng) {
    const std::int64_t x = rng.next_in(-kB, kB);
    // y = x^2 / 2^24, shifted to centre the arc vertically in the box.
    const double y = static_cast<double>(x) * static_cast<double>(x) / 16777216.0;
    return {static_cast<std::int32_t>(x), clamp_coord(y - 8388608.0)};
}

}  // namespace

std::vector<Point> generate(const DatasetSpec& spec) {
    if (spec.n == 0) throw std::invalid_argument("dataset size must be at least 1");
    Rng rng(spec.seed);
    std::vector<Point> out;
    out.reserve(spec.n);
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(spec.n * 2);
    auto push_unique = [&](Point p) {
        const std::uint64_t key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(p.x)) << 32) |
                                  static_cast<std::uint32_t>(p.y);
        if (seen.insert(key).second) out.push_back(p);
    };
    for (std::size_t i = 0; i < spec.n; ++i) {
        switch (spec.kind) {
            case Distribution::kRandom:
                push_unique(random_square(rng));
                break;
            case Distribution::kEllipse:
                push_unique(on_ellipse(rng, kB, kB / 2.0));
                break;
            case Distribution::kEllipse2:
                if (rng.next_unit() < 0.95)
                    push_unique(on_ellipse(rng, kB, kB / 2.0));
                else
                    push_unique(random_square(rng));
                break;
            case Distribution::kCircle:
                push_unique(on_ellipse(rng, kB, kB));
                break;
            case Distribution::kParabola:
                push_unique(on_parabola(rng));
                break;
        }
    }
    return out;
}

const char* distribution_name(Distribution d) {
    switch (d) {
        case Distribution::kRandom: return "random";
        case Distribution::kEllipse: return "ellipse";
        case Distribution::kEllipse2: return "ellipse2";
        case Distribution::kCircle: return "circle";
        case Distribution::kParabola: return "parabola";
    }
    return "?";
}

bool parse_distribution(const std::string& name, Distribution& out) {
    for (Distribution d : {Distribution::kRandom, Distribution::kEllipse, Distribution::kEllipse2,
                           Distribution::kCircle, Distribution::kParabola}) {
        if (name == distribution_name(d)) {
            out = d;
            return true;
        }
    }
    return false;
}

void write_points(std::ostream& os, const std::vector<Point>& pts) {
    os << "# " << pts.size() << " points\n";
    for (const Point& p : pts) os << p.x << ' ' << p.y << '\n';
}

std::vector<Point> read_points(std::istream& is) {
    std::vector<Point> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        long long x, y;
        if (!(ss >> x)) continue;  // blank or comment-only line
        if (!(ss >> y)) throw std::runtime_error("point file: missing y on line " + std::to_string(lineno));
        Point p{static_cast<std::int32_t>(x), static_cast<std::int32_t>(y)};
        if (x != p.x || y != p.y || !in_coordinate_range(p))
            throw std::runtime_error("point file: coordinate out of range on line " +
                                     std::to_string(lineno));
        out.push_back(p);
    }
    return out;
}

}  // namespace delhier
