#include "sns/sampling.hpp"

#include <algorithm>
#include <sstream>

#include "sns/errors.hpp"
#include "sns/rng.hpp"

namespace sns {

GeoCombo parse_geo_combo(std::string_view s) {
    if (s == "any") return GeoCombo::any;
    if (s == "in-in" || s == "in_in") return GeoCombo::in_in;
    if (s == "in-out" || s == "in_out") return GeoCombo::in_out;
    if (s == "out-in" || s == "out_in") return GeoCombo::out_in;
    if (s == "out-out" || s == "out_out") return GeoCombo::out_out;
    throw std::invalid_argument("unknown geo combo: " + std::string(s));
}

const char* to_string(GeoCombo c) {
    switch (c) {
        case GeoCombo::any: return "any";
        case GeoCombo::in_in: return "in-in";
        case GeoCombo::in_out: return "in-out";
        case GeoCombo::out_in: return "out-in";
        case GeoCombo::out_out: return "out-out";
    }
    return "?";
}

GeoConstraint control_constraint(GeoCombo c) {
    switch (c) {
        case GeoCombo::any: return GeoConstraint::any;
        case GeoCombo::in_in:
        case GeoCombo::in_out: return GeoConstraint::inside;
        case GeoCombo::out_in:
        case GeoCombo::out_out: return GeoConstraint::outside;
    }
    return GeoConstraint::any;
}

GeoConstraint sensor_constraint(GeoCombo c) {
    switch (c) {
        case GeoCombo::any: return GeoConstraint::any;
        case GeoCombo::in_in:
        case GeoCombo::out_in: return GeoConstraint::inside;
        case GeoCombo::in_out:
        case GeoCombo::out_out: return GeoConstraint::outside;
    }
    return GeoConstraint::any;
}

std::vector<int> build_pool(const SamplingContext& ctx) {
    std::vector<int> pool;
    for (int u = 0; u < ctx.graph->size(); ++u)
        if (ctx.control_admissible(u, GeoConstraint::any)) pool.push_back(u);
    return pool;
}

SampleGroup sample_control(std::span<const int> pool, int n, GeoConstraint constraint,
                           uint64_t seed, const SamplingContext& ctx) {
    if (n <= 0) throw std::invalid_argument("sample size must be positive");
    std::vector<int> candidates;
    candidates.reserve(pool.size());
    for (int u : pool)
        if (ctx.control_admissible(u, constraint)) candidates.push_back(u);

    if (static_cast<int>(candidates.size()) < n) {
        std::ostringstream msg;
        msg << "control pool too small: need " << n << ", have " << candidates.size()
            << " (short by " << n - static_cast<int>(candidates.size()) << ")";
        throw CapacityError(msg.str());
    }

    Rng rng(seed);
    SampleGroup group;
    group.kind = SampleGroup::Kind::control;
    group.seed = seed;
    group.members.reserve(static_cast<size_t>(n));
    // Partial Fisher-Yates: the first n slots become the sample.
    for (int i = 0; i < n; ++i) {
        size_t j = static_cast<size_t>(i) +
                   static_cast<size_t>(rng.bounded(candidates.size() - static_cast<size_t>(i)));
        std::swap(candidates[static_cast<size_t>(i)], candidates[j]);
        group.members.push_back(candidates[static_cast<size_t>(i)]);
    }
    return group;
}

SampleGroup derive_sensor(SampleGroup& control, std::span<const int> pool,
                          GeoConstraint constraint, uint64_t seed, const SamplingContext& ctx) {
    if (control.members.empty()) throw std::invalid_argument("control group is empty");
    const SocialGraph& g = *ctx.graph;
    Rng rng(seed);

    // Marks control, sensor and retired (replaced) members; a retired member
    // is never drawn again, which keeps the procedure finite.
    std::vector<char> in_use(static_cast<size_t>(g.size()), 0);
    for (int u : control.members) in_use[static_cast<size_t>(u)] = 1;

    const GeoConstraint control_c = control_constraint(control.combo);
    std::vector<int> redraw_candidates;
    bool redraw_built = false;

    SampleGroup sensor;
    sensor.kind = SampleGroup::Kind::sensor;
    sensor.seed = seed;
    sensor.combo = control.combo;
    sensor.members.reserve(control.members.size());

    std::vector<int> admissible;
    for (size_t i = 0; i < control.members.size(); ++i) {
        for (;;) {
            const int u = control.members[i];
            admissible.clear();
            for (int v : g.friends(u))
                if (!in_use[static_cast<size_t>(v)] && ctx.sensor_admissible(v, constraint))
                    admissible.push_back(v);
            if (!admissible.empty()) {
                int v = admissible[static_cast<size_t>(rng.bounded(admissible.size()))];
                in_use[static_cast<size_t>(v)] = 1;
                sensor.members.push_back(v);
                break;
            }

            // Dead end: this member offers no unused admissible friend, so it
            // is swapped for a fresh control draw.
            if (!redraw_built) {
                redraw_built = true;
                for (int c : pool)
                    if (ctx.control_admissible(c, control_c)) redraw_candidates.push_back(c);
            }
            int fresh = -1;
            for (int attempt = 0; attempt < 64 && !redraw_candidates.empty(); ++attempt) {
                int c = redraw_candidates[static_cast<size_t>(
                    rng.bounded(redraw_candidates.size()))];
                if (!in_use[static_cast<size_t>(c)]) {
                    fresh = c;
                    break;
                }
            }
            if (fresh < 0) {
                std::vector<int> avail;
                for (int c : redraw_candidates)
                    if (!in_use[static_cast<size_t>(c)]) avail.push_back(c);
                if (avail.empty())
                    throw CapacityError(
                        "sensor derivation exhausted the pool: cannot complete both groups");
                fresh = avail[static_cast<size_t>(rng.bounded(avail.size()))];
            }
            in_use[static_cast<size_t>(fresh)] = 1;
            control.members[i] = fresh;
        }
    }
    return sensor;
}

GroupPair sample_pair(std::span<const int> pool, int n, GeoCombo combo, uint64_t seed,
                      const SamplingContext& ctx) {
    GroupPair pair;
    pair.control = sample_control(pool, n, control_constraint(combo), seed, ctx);
    pair.control.combo = combo;
    pair.sensor = derive_sensor(pair.control, pool, sensor_constraint(combo),
                                mix_seed(seed, 0x73656e736f72ULL), ctx);
    return pair;
}

}  // namespace sns
