#ifndef SNS_SAMPLING_HPP
#define SNS_SAMPLING_HPP

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "sns/network.hpp"

namespace sns {

// First position constrains the control group, second the sensor group;
// "in" means inside the affected area.
enum class GeoCombo { any, in_in, in_out, out_in, out_out };

GeoCombo parse_geo_combo(std::string_view s);
const char* to_string(GeoCombo);

enum class GeoConstraint { any, inside, outside };

GeoConstraint control_constraint(GeoCombo c);
GeoConstraint sensor_constraint(GeoCombo c);

struct SampleGroup {
    enum class Kind { control, sensor };
    Kind kind = Kind::control;
    std::vector<int> members;  // graph node indices, no duplicates
    uint64_t seed = 0;
    GeoCombo combo = GeoCombo::any;
};

// Node-indexed context shared by sampling and lead-time computation.
// entry/activity are NaN/0 for users without relevant messages.
struct SamplingContext {
    const SocialGraph* graph = nullptr;
    std::vector<char> eligible;    // has an entry time
    std::vector<int8_t> side;      // -1 unknown location, 0 outside, 1 inside
    std::vector<double> entry_h;   // first relevant message offset
    std::vector<double> activity;  // relevant messages per user

    bool satisfies(int node, GeoConstraint c) const {
        switch (c) {
            case GeoConstraint::any: return true;
            case GeoConstraint::inside: return side[static_cast<size_t>(node)] == 1;
            case GeoConstraint::outside: return side[static_cast<size_t>(node)] == 0;
        }
        return false;
    }

    // Control candidates need a known location regardless of the combo.
    bool control_admissible(int node, GeoConstraint c) const {
        return eligible[static_cast<size_t>(node)] && side[static_cast<size_t>(node)] >= 0 &&
               satisfies(node, c);
    }

    // Sensor candidates need a location only when the combo constrains it.
    bool sensor_admissible(int node, GeoConstraint c) const {
        return eligible[static_cast<size_t>(node)] && satisfies(node, c);
    }
};

// All control-admissible nodes under no geographic constraint, sorted.
std::vector<int> build_pool(const SamplingContext& ctx);

// Uniform sample of n pool members without replacement; deterministic for a
// fixed seed. Throws CapacityError naming the shortfall.
SampleGroup sample_control(std::span<const int> pool, int n, GeoConstraint constraint,
                           uint64_t seed, const SamplingContext& ctx);

// One uniformly random admissible friend per control member. A member whose
// friend list is exhausted is replaced by a fresh control draw. The control
// group is edited in place; sensor and control end up disjoint and equal in
// size.
SampleGroup derive_sensor(SampleGroup& control, std::span<const int> pool,
                          GeoConstraint constraint, uint64_t seed, const SamplingContext& ctx);

struct GroupPair {
    SampleGroup control;
    SampleGroup sensor;
};

GroupPair sample_pair(std::span<const int> pool, int n, GeoCombo combo, uint64_t seed,
                      const SamplingContext& ctx);

}  // namespace sns

#endif
