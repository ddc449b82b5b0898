#ifndef SNS_SIMULATOR_HPP
#define SNS_SIMULATOR_HPP

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "sns/geo.hpp"
#include "sns/ingest.hpp"
#include "sns/network.hpp"

namespace sns {

// Synthetic directed social graph plus mixed exogenous/endogenous awareness
// dynamics emitting a message stream in the ingest format. Message offsets
// are hours relative to landfall (landfall = 0), quantized to one second.
struct SimConfig {
    int n_nodes = 20000;
    int attach_m = 5;          // preferential-attachment edges per new node
    double reciprocity = 0.3;  // probability a follow edge is mirrored

    double affected_fraction = 0.3;  // probability a node lives inside the area
    double geocode_fraction = 1.0;   // fraction of users whose posts carry coords
    // Probability an attachment is restricted to same-side targets. Nodes are
    // assigned sides by a seed-keyed hash so the generator and the spread
    // process agree without sharing state.
    double geo_assortativity = 0.0;

    double beta = 0.05;        // endogenous rate per aware followee, per hour
    double lambda_in = 0.02;   // peak exogenous rate inside the area
    double lambda_out = 0.002; // exogenous rate outside
    // Broadcast-news bump added to lambda_out from landfall onward.
    double lambda_out_post = 0.0;
    double landfall_h = 120;   // sim-clock hour of landfall
    double ramp_lead_h = 96;   // lambda_in ramps linearly from landfall - lead
    double horizon_h = 240;

    double post_rate_coeff = 0.012;  // messages/h per unit (1+out-degree)^gamma
    double degree_exponent = 0.5;    // gamma
    double first_post_jitter_h = 0.05;
    double retweet_fraction = 0.15;
    // Posting surge for inside users during the disturbance window (the
    // activity peak around landfall).
    double disturb_post_multiplier = 1.0;

    bool emit_sentiment = true;
    double mu_outside = 0.2;
    double mu_inside_calm = 0.2;
    double mu_inside_disturbed = -0.45;
    double sentiment_sigma = 0.15;
    double disturb_start_h = -24;  // offset hours (relative to landfall)
    double disturb_end_h = 48;

    int64_t reference_epoch = default_reference_epoch();
    uint64_t seed = 1;

    // Mostly-viral spread: tiny uniform exogenous seeding, strong transmission.
    static SimConfig endogenous_dominant(uint64_t seed);
    // Broadcast-only: uniform constant exogenous rate, no transmission.
    static SimConfig exogenous_dominant(uint64_t seed);
    // Geography-driven scenario: ramping exogenous rate inside the affected
    // area before landfall, weak outside rate, moderate transmission, and a
    // negative sentiment disturbance inside the area around landfall.
    static SimConfig sandy_like(uint64_t seed);
};

struct SimOutput {
    SocialGraph graph;
    std::vector<UserProfile> profiles;  // geopoint set for geocoded users
    std::vector<Message> messages;      // sorted by (timestamp, message_id)
    std::unordered_map<std::string, double> awareness;  // user -> offset hours
    std::vector<StormTrackPoint> track;
    AffectedArea area;
    GridSpec world;          // bbox all homes fall into (cell_deg = 1)
    std::vector<int8_t> side;  // per node: 1 inside the area, 0 outside
    bool empty_warning = false;  // nothing ever became aware
};

// Preferential-attachment growth; each attachment edge runs new -> old
// (follow) and is mirrored with probability reciprocity.
SocialGraph generate_network(const SimConfig& cfg);

// Hash-derived side assignment (true = inside the affected area).
bool node_inside(const SimConfig& cfg, int node);

SimOutput simulate_spread(const SimConfig& cfg, const SocialGraph& g);

inline SimOutput simulate(const SimConfig& cfg) {
    return simulate_spread(cfg, generate_network(cfg));
}

}  // namespace sns

#endif
