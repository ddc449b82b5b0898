#include "sns/leadtime.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "sns/errors.hpp"
#include "sns/rng.hpp"

namespace sns {

EntryTimeTable entry_times(const std::vector<Message>& filtered) {
    EntryTimeTable table;
    table.reserve(filtered.size() / 2 + 1);
    for (const auto& m : filtered) {
        auto [it, inserted] = table.try_emplace(m.user_id, m.offset_h);
        if (!inserted && m.offset_h < it->second) it->second = m.offset_h;
    }
    return table;
}

std::unordered_map<std::string, int64_t> activity_counts(const std::vector<Message>& filtered) {
    std::unordered_map<std::string, int64_t> counts;
    counts.reserve(filtered.size() / 2 + 1);
    for (const auto& m : filtered) ++counts[m.user_id];
    return counts;
}

namespace {

struct GroupStats {
    double mean_entry = 0;
    double mean_activity = 0;
};

GroupStats group_stats(const SampleGroup& group, const SamplingContext& ctx) {
    double entry_sum = 0;
    double activity_sum = 0;
    for (int u : group.members) {
        const auto idx = static_cast<size_t>(u);
        if (!ctx.eligible[idx])
            throw DataError("group member without entry time: " + ctx.graph->user_id(u));
        entry_sum += ctx.entry_h[idx];
        activity_sum += ctx.activity[idx];
    }
    const auto n = static_cast<double>(group.members.size());
    return {entry_sum / n, activity_sum / n};
}

}  // namespace

LeadTimeResult lead_time(const SampleGroup& control, const SampleGroup& sensor,
                         const SamplingContext& ctx) {
    const GroupStats c = group_stats(control, ctx);
    const GroupStats s = group_stats(sensor, ctx);
    LeadTimeResult r;
    r.sample_size = static_cast<int>(control.members.size());
    r.combo = control.combo;
    r.trials = 1;
    r.mean_tc = c.mean_entry;
    r.mean_ts = s.mean_entry;
    r.dt = r.mean_ts - r.mean_tc;
    r.dt_sigma = 0;
    r.n_c = c.mean_activity;
    r.n_s = s.mean_activity;
    return r;
}

LeadTimeResult lead_time(const std::vector<std::string>& control,
                         const std::vector<std::string>& sensor, const EntryTimeTable& entries,
                         const std::unordered_map<std::string, int64_t>& activity) {
    auto stats = [&](const std::vector<std::string>& group) {
        double entry_sum = 0, activity_sum = 0;
        for (const auto& u : group) {
            auto it = entries.find(u);
            if (it == entries.end()) throw DataError("group member without entry time: " + u);
            entry_sum += it->second;
            auto a = activity.find(u);
            activity_sum += a == activity.end() ? 0 : static_cast<double>(a->second);
        }
        auto n = static_cast<double>(group.size());
        return GroupStats{entry_sum / n, activity_sum / n};
    };
    const GroupStats c = stats(control);
    const GroupStats s = stats(sensor);
    LeadTimeResult r;
    r.sample_size = static_cast<int>(control.size());
    r.mean_tc = c.mean_entry;
    r.mean_ts = s.mean_entry;
    r.dt = r.mean_ts - r.mean_tc;
    r.n_c = c.mean_activity;
    r.n_s = s.mean_activity;
    return r;
}

std::vector<LeadTimeResult> lead_time_sweep(std::span<const int> pool,
                                            const SamplingContext& ctx,
                                            const SweepOptions& opts) {
    if (opts.trials < 2)
        throw std::invalid_argument("sweep needs >= 2 trials to estimate sigma");
    std::vector<LeadTimeResult> rows;
    rows.reserve(opts.sizes.size());
    for (int size : opts.sizes) {
        std::vector<LeadTimeResult> trials;
        trials.reserve(static_cast<size_t>(opts.trials));
        for (int k = 0; k < opts.trials; ++k) {
            const uint64_t seed = opts.base_seed + opts.seed_stride * static_cast<uint64_t>(k);
            try {
                GroupPair pair = sample_pair(pool, size, opts.combo, seed, ctx);
                trials.push_back(lead_time(pair.control, pair.sensor, ctx));
            } catch (const CapacityError& e) {
                std::ostringstream msg;
                msg << e.what() << " [size=" << size << ", combo=" << to_string(opts.combo)
                    << "]";
                throw CapacityError(msg.str());
            }
        }
        LeadTimeResult row;
        row.sample_size = size;
        row.combo = opts.combo;
        row.trials = opts.trials;
        double dt_sum = 0;
        for (const auto& t : trials) {
            dt_sum += t.dt;
            row.mean_tc += t.mean_tc;
            row.mean_ts += t.mean_ts;
            row.n_c += t.n_c;
            row.n_s += t.n_s;
        }
        const auto n = static_cast<double>(trials.size());
        row.dt = dt_sum / n;
        row.mean_tc /= n;
        row.mean_ts /= n;
        row.n_c /= n;
        row.n_s /= n;
        double ss = 0;
        for (const auto& t : trials) ss += (t.dt - row.dt) * (t.dt - row.dt);
        row.dt_sigma = std::sqrt(ss / (n - 1));
        rows.push_back(row);
    }
    return rows;
}

std::vector<Message> null_model_shuffle(std::vector<Message> messages, uint64_t seed) {
    if (messages.size() < 2) return messages;
    Rng rng(seed);
    // Fisher-Yates over (timestamp, offset) pairs; everything else stays put.
    for (size_t i = messages.size(); i > 1; --i) {
        size_t j = static_cast<size_t>(rng.bounded(i));
        std::swap(messages[i - 1].timestamp, messages[j].timestamp);
        std::swap(messages[i - 1].offset_h, messages[j].offset_h);
    }
    return messages;
}

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z * 0.7071067811865475244); }

}  // namespace

CdfCurve entry_cdf(std::span<const double> entries, double bandwidth_h, double grid_step_h) {
    if (!(bandwidth_h > 0)) throw std::invalid_argument("bandwidth must be positive");
    if (!(grid_step_h > 0)) throw std::invalid_argument("grid step must be positive");
    if (entries.empty()) throw std::invalid_argument("entry_cdf needs a nonempty group");

    const auto [mn, mx] = std::minmax_element(entries.begin(), entries.end());
    // Grid aligned to step multiples so equal shifts of the data translate
    // the curve exactly.
    const auto lo = static_cast<int64_t>(std::floor((*mn - 4 * bandwidth_h) / grid_step_h));
    const auto hi = static_cast<int64_t>(std::ceil((*mx + 4 * bandwidth_h) / grid_step_h));

    CdfCurve curve;
    curve.grid.reserve(static_cast<size_t>(hi - lo + 1));
    curve.value.reserve(static_cast<size_t>(hi - lo + 1));
    const double inv_n = 1.0 / static_cast<double>(entries.size());
    for (int64_t k = lo; k <= hi; ++k) {
        const double x = static_cast<double>(k) * grid_step_h;
        double mass = 0;
        for (double t : entries) mass += normal_cdf((x - t) / bandwidth_h);
        curve.grid.push_back(x);
        curve.value.push_back(mass * inv_n);
    }
    // Kernel mass beyond the padded grid end is ~Phi(-4); renormalizing by the
    // terminal value keeps the curve monotone and pins the endpoint at 1.
    const double terminal = curve.value.back();
    for (auto& v : curve.value) v /= terminal;
    return curve;
}

CdfCurve entry_cdf(const SampleGroup& group, const SamplingContext& ctx, double bandwidth_h,
                   double grid_step_h) {
    std::vector<double> entries;
    entries.reserve(group.members.size());
    for (int u : group.members) {
        if (!ctx.eligible[static_cast<size_t>(u)])
            throw DataError("group member without entry time: " + ctx.graph->user_id(u));
        entries.push_back(ctx.entry_h[static_cast<size_t>(u)]);
    }
    return entry_cdf(entries, bandwidth_h, grid_step_h);
}

ActivityProfile activity_vs_entry(std::span<const int> users, const SamplingContext& ctx,
                                  double bin_h) {
    if (!(bin_h > 0)) throw std::invalid_argument("bin_h must be positive");
    struct Acc {
        double activity = 0, in_deg = 0, out_deg = 0;
        int64_t n = 0;
    };
    std::map<int64_t, Acc> bins;
    for (int u : users) {
        const auto idx = static_cast<size_t>(u);
        if (!ctx.eligible[idx]) continue;
        auto bin = static_cast<int64_t>(std::floor(ctx.entry_h[idx] / bin_h));
        Acc& a = bins[bin];
        a.activity += ctx.activity[idx];
        a.in_deg += ctx.graph->in_degree(u);
        a.out_deg += ctx.graph->out_degree(u);
        ++a.n;
    }
    ActivityProfile prof;
    prof.bin_h = bin_h;
    for (const auto& [bin, acc] : bins) {
        const auto n = static_cast<double>(acc.n);
        prof.bin_index.push_back(bin);
        prof.mean_activity.push_back(acc.activity / n);
        prof.mean_in_degree.push_back(acc.in_deg / n);
        prof.mean_out_degree.push_back(acc.out_deg / n);
        prof.count.push_back(acc.n);
    }
    return prof;
}

}  // namespace sns
