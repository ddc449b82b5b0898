#include "sns/analysis.hpp"

#include <cmath>
#include <limits>
#include <memory>

namespace sns {

std::unordered_map<std::string, LatLon> device_geopoints(const std::vector<Message>& messages) {
    std::unordered_map<std::string, LatLon> coords;
    // Messages arrive in canonical order from parse_stream; first wins. For
    // unordered inputs the earliest (timestamp, id) record still wins.
    std::unordered_map<std::string, std::pair<int64_t, const std::string*>> best;
    for (const auto& m : messages) {
        if (!m.geo) continue;
        auto it = best.find(m.user_id);
        if (it == best.end() || m.timestamp < it->second.first ||
            (m.timestamp == it->second.first && m.message_id < *it->second.second)) {
            best[m.user_id] = {m.timestamp, &m.message_id};
            coords[m.user_id] = *m.geo;
        }
    }
    return coords;
}

SideLookup side_from_area(const std::unordered_map<std::string, LatLon>& coords,
                          const AffectedArea& area) {
    // Membership evaluated once per user, then served from a cache.
    auto cache = std::make_shared<std::unordered_map<std::string, int8_t>>();
    cache->reserve(coords.size());
    for (const auto& [user, p] : coords)
        (*cache)[user] = is_affected(p, area) ? 1 : 0;
    return [cache](const std::string& user) -> std::optional<bool> {
        auto it = cache->find(user);
        if (it == cache->end()) return std::nullopt;
        return it->second == 1;
    };
}

PipelineData build_pipeline_data(const SocialGraph& graph,
                                 const std::vector<Message>& filtered,
                                 const SideLookup& side_of) {
    PipelineData data;
    data.entries = entry_times(filtered);
    data.activity = activity_counts(filtered);

    const auto n = static_cast<size_t>(graph.size());
    data.ctx.graph = &graph;
    data.ctx.eligible.assign(n, 0);
    data.ctx.side.assign(n, -1);
    data.ctx.entry_h.assign(n, std::numeric_limits<double>::quiet_NaN());
    data.ctx.activity.assign(n, 0);

    for (const auto& [user, t] : data.entries) {
        auto idx = graph.index_of(user);
        if (!idx) continue;  // author outside the follow graph: not samplable
        data.ctx.eligible[static_cast<size_t>(*idx)] = 1;
        data.ctx.entry_h[static_cast<size_t>(*idx)] = t;
        auto a = data.activity.find(user);
        if (a != data.activity.end())
            data.ctx.activity[static_cast<size_t>(*idx)] = static_cast<double>(a->second);
    }
    for (int u = 0; u < graph.size(); ++u) {
        auto side = side_of(graph.user_id(u));
        if (side) data.ctx.side[static_cast<size_t>(u)] = *side ? 1 : 0;
    }
    data.pool = build_pool(data.ctx);
    return data;
}

PipelineData pipeline_from_sim(const SimOutput& sim) {
    auto filtered = filter_relevance(sim.messages, FilterLevel::strict);
    const auto& side = sim.side;
    const SocialGraph& g = sim.graph;
    return build_pipeline_data(g, filtered, [&g, &side](const std::string& user) {
        auto idx = g.index_of(user);
        if (!idx) return std::optional<bool>{};
        return std::optional<bool>(side[static_cast<size_t>(*idx)] == 1);
    });
}

std::vector<PairedLead> null_model_comparison(const SocialGraph& graph,
                                              const std::vector<Message>& filtered,
                                              const SideLookup& side_of, int sample_size,
                                              GeoCombo combo, int trials, uint64_t base_seed) {
    PipelineData actual = build_pipeline_data(graph, filtered, side_of);

    std::vector<PairedLead> out;
    out.reserve(static_cast<size_t>(trials));
    for (int k = 0; k < trials; ++k) {
        const uint64_t seed = base_seed + static_cast<uint64_t>(k);
        auto shuffled = null_model_shuffle(filtered, seed);
        PipelineData null_data = build_pipeline_data(graph, shuffled, side_of);

        // Timestamp shuffling preserves per-user counts, so the same groups
        // are valid in both tables; the pairing isolates the entry-time
        // permutation.
        GroupPair pair = sample_pair(actual.pool, sample_size, combo, seed, actual.ctx);
        PairedLead p;
        p.dt_actual = lead_time(pair.control, pair.sensor, actual.ctx).dt;
        p.dt_null = lead_time(pair.control, pair.sensor, null_data.ctx).dt;
        out.push_back(p);
    }
    return out;
}

std::vector<GridSample> sentiment_grid_samples(const std::vector<Message>& messages) {
    std::vector<GridSample> samples;
    samples.reserve(messages.size());
    for (const auto& m : messages) {
        if (!m.geo || !m.sentiment) continue;
        samples.push_back({m.offset_h, *m.geo, *m.sentiment});
    }
    return samples;
}

}  // namespace sns
