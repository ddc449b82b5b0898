#ifndef SNS_LEADTIME_HPP
#define SNS_LEADTIME_HPP

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "sns/ingest.hpp"
#include "sns/sampling.hpp"

namespace sns {

// user id -> offset hours of the first relevance-filtered message.
using EntryTimeTable = std::unordered_map<std::string, double>;

EntryTimeTable entry_times(const std::vector<Message>& filtered);

// Relevant messages per user (the N_C / N_S activity basis).
std::unordered_map<std::string, int64_t> activity_counts(const std::vector<Message>& filtered);

struct LeadTimeResult {
    int sample_size = 0;
    GeoCombo combo = GeoCombo::any;
    int trials = 1;
    double dt = 0;        // <t_s> - <t_c>; negative means sensor leads
    double dt_sigma = 0;  // std dev of dt across trials (0 for one trial)
    double mean_tc = 0;
    double mean_ts = 0;
    double n_c = 0;  // messages per control user
    double n_s = 0;  // messages per sensor user
};

// One trial on already-sampled groups. Throws DataError when a member lacks
// an entry time (the sampling pool is supposed to rule that out).
LeadTimeResult lead_time(const SampleGroup& control, const SampleGroup& sensor,
                         const SamplingContext& ctx);

// Spec-surface overload on string-keyed tables, for direct use on exports.
LeadTimeResult lead_time(const std::vector<std::string>& control,
                         const std::vector<std::string>& sensor, const EntryTimeTable& entries,
                         const std::unordered_map<std::string, int64_t>& activity);

struct SweepOptions {
    std::vector<int> sizes;
    int trials = 20;
    GeoCombo combo = GeoCombo::any;
    uint64_t base_seed = 1;
    // Trial k uses seed base_seed + seed_stride * k; stride 0 repeats one
    // trial exactly (useful to pin the sigma-zero contract).
    uint64_t seed_stride = 1;
};

// One row per size: dt averaged over trials, dt_sigma the sample standard
// deviation across trials. Capacity errors are annotated with (size, combo).
std::vector<LeadTimeResult> lead_time_sweep(std::span<const int> pool,
                                            const SamplingContext& ctx,
                                            const SweepOptions& opts);

// Uniform random permutation of the timestamp multiset across messages; all
// other fields (author, text, geo, sentiment) stay put, so per-user message
// counts are preserved.
std::vector<Message> null_model_shuffle(std::vector<Message> messages, uint64_t seed);

struct CdfCurve {
    std::vector<double> grid;   // ascending offset hours
    std::vector<double> value;  // monotone, ends at 1
};

// Gaussian-kernel smoothed CDF of entry times on a regular grid padded four
// bandwidths beyond the data range. The curve is normalized by its terminal
// mass so it ends at exactly 1.
CdfCurve entry_cdf(std::span<const double> entries, double bandwidth_h = 8.0,
                   double grid_step_h = 1.0);

CdfCurve entry_cdf(const SampleGroup& group, const SamplingContext& ctx,
                   double bandwidth_h = 8.0, double grid_step_h = 1.0);

struct ActivityProfile {
    double bin_h = 1;
    std::vector<int64_t> bin_index;  // entry-time bin = floor(entry / bin_h)
    std::vector<double> mean_activity;
    std::vector<double> mean_in_degree;
    std::vector<double> mean_out_degree;
    std::vector<int64_t> count;
};

// Binned means of activity and degree by entry time; empty bins are simply
// absent from the rows.
ActivityProfile activity_vs_entry(std::span<const int> users, const SamplingContext& ctx,
                                  double bin_h);

}  // namespace sns

#endif
