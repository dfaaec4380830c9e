#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "delhier/predicates.hpp"

namespace delhier {

/// The five benchmark distributions, all on 24-bit integer coordinates.
enum class Distribution : std::uint8_t {
    kRandom,    // uniform in the square
    kEllipse,   // uniform by angle on a 2:1 axis-aligned ellipse
    kEllipse2,  // 95% ellipse + 5% uniform square
    kCircle,    // uniform by angle on the inscribed circle
    kParabola,  // x uniform, y = x^2 scaled back into the box
};

struct DatasetSpec {
    Distribution kind = Distribution::kRandom;
    std::size_t n = 0;
    std::uint64_t seed = 1;
};

/// Generates spec.n points, rounds curve points to the integer grid and
/// drops coordinate-equal duplicates (so the result may be slightly short
/// for dense curves; callers read the actual size). Deterministic:
/// identical spec, identical output.
std::vector<Point> generate(const DatasetSpec& spec);

const char* distribution_name(Distribution d);
bool parse_distribution(const std::string& name, Distribution& out);

/// Point file format: one `x y` pair per line; `#` starts a comment.
void write_points(std::ostream& os, const std::vector<Point>& pts);
std::vector<Point> read_points(std::istream& is);

}  // namespace delhier
