#pragma once

#include <cstdint>
#include <vector>

namespace delhier {

/// Per-level predicate and traversal counters for one location descent.
struct PhaseCounters {
    std::uint64_t phase1_orientation_tests = 0;
    std::uint64_t phase2_crossings = 0;  // triangulation edges crossed by the walk
    std::uint64_t phase2_orientation_tests = 0;
    std::uint64_t phase3_visits = 0;  // triangles examined by the nearest search
    std::uint64_t distance_computations = 0;
    std::uint64_t angle_tests = 0;
    std::uint64_t incircle_tests = 0;  // flips during the update that followed

    PhaseCounters& operator+=(const PhaseCounters& o) {
        phase1_orientation_tests += o.phase1_orientation_tests;
        phase2_crossings += o.phase2_crossings;
        phase2_orientation_tests += o.phase2_orientation_tests;
        phase3_visits += o.phase3_visits;
        distance_computations += o.distance_computations;
        angle_tests += o.angle_tests;
        incircle_tests += o.incircle_tests;
        return *this;
    }

    std::uint64_t orientation_tests() const {
        return phase1_orientation_tests + phase2_orientation_tests;
    }
};

/// Trace of one locate (or locate+update) through the hierarchy.
/// per_level[i] holds the counters accumulated at level i.
struct LocateTrace {
    std::vector<PhaseCounters> per_level;
    std::uint32_t levels_descended = 0;

    PhaseCounters& level(std::size_t i) {
        if (per_level.size() <= i) per_level.resize(i + 1);
        return per_level[i];
    }

    PhaseCounters totals() const {
        PhaseCounters t;
        for (const auto& c : per_level) t += c;
        return t;
    }
};

}  // namespace delhier
