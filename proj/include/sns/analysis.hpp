#ifndef SNS_ANALYSIS_HPP
#define SNS_ANALYSIS_HPP

#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sns/geo.hpp"
#include "sns/leadtime.hpp"
#include "sns/network.hpp"
#include "sns/sampling.hpp"
#include "sns/sensing.hpp"
#include "sns/simulator.hpp"

namespace sns {

// Each user's device coordinates: the first geotagged message in canonical
// (timestamp, id) order wins.
std::unordered_map<std::string, LatLon> device_geopoints(const std::vector<Message>& messages);

// user -> inside/outside/unknown
using SideLookup = std::function<std::optional<bool>(const std::string&)>;

SideLookup side_from_area(const std::unordered_map<std::string, LatLon>& coords,
                          const AffectedArea& area);

struct PipelineData {
    EntryTimeTable entries;
    std::unordered_map<std::string, int64_t> activity;
    SamplingContext ctx;
    std::vector<int> pool;  // geocoded users with >= 1 relevant message
};

// Builds the node-indexed sampling context from relevance-filtered messages.
PipelineData build_pipeline_data(const SocialGraph& graph,
                                 const std::vector<Message>& filtered,
                                 const SideLookup& side_of);

// Convenience for simulator outputs: strict-filters the messages and uses the
// polygon-membership side of each geocoded user.
PipelineData pipeline_from_sim(const SimOutput& sim);

struct PairedLead {
    double dt_actual = 0;
    double dt_null = 0;
};

// Per trial k: sample one (control, sensor) pair with seed base_seed + k and
// evaluate it on the actual entry table and on a table built from messages
// with shuffled timestamps (shuffle seed base_seed + k as well).
std::vector<PairedLead> null_model_comparison(const SocialGraph& graph,
                                              const std::vector<Message>& filtered,
                                              const SideLookup& side_of, int sample_size,
                                              GeoCombo combo, int trials, uint64_t base_seed);

// Grid samples for sensing: geotagged messages with a sentiment score.
std::vector<GridSample> sentiment_grid_samples(const std::vector<Message>& messages);

}  // namespace sns

#endif
