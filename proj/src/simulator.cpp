#include "sns/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>

#include "sns/errors.hpp"
#include "sns/rng.hpp"

namespace sns {

SimConfig SimConfig::endogenous_dominant(uint64_t seed) {
    SimConfig cfg;
    cfg.seed = seed;
    cfg.beta = 0.004;  // slow cascade: awareness spreads over ~200 hours
    cfg.lambda_in = 0.00002;
    cfg.lambda_out = 0.00002;
    cfg.landfall_h = 180;
    cfg.ramp_lead_h = 0;  // flat trickle of exogenous seeds
    cfg.horizon_h = 360;
    cfg.post_rate_coeff = 0.01;
    return cfg;
}

SimConfig SimConfig::exogenous_dominant(uint64_t seed) {
    SimConfig cfg;
    cfg.seed = seed;
    cfg.beta = 0.0;
    cfg.lambda_in = 0.04;
    cfg.lambda_out = 0.04;
    cfg.landfall_h = 0;  // ramp saturated from t = 0: constant rate
    cfg.horizon_h = 240;
    cfg.post_rate_coeff = 0.01;
    cfg.degree_exponent = 1.0;  // strong activity-centrality coupling
    return cfg;
}

SimConfig SimConfig::sandy_like(uint64_t seed) {
    SimConfig cfg;
    cfg.seed = seed;
    cfg.affected_fraction = 0.35;
    cfg.beta = 0.015;
    cfg.lambda_in = 0.3;  // steep pre-landfall ramp inside the area
    cfg.lambda_out = 0.0008;
    cfg.landfall_h = 120;
    cfg.ramp_lead_h = 96;
    cfg.horizon_h = 240;
    cfg.post_rate_coeff = 0.01;
    cfg.disturb_post_multiplier = 4.0;
    return cfg;
}

bool node_inside(const SimConfig& cfg, int node) {
    const uint64_t h = mix_seed(mix_seed(cfg.seed, 0x67656fULL), static_cast<uint64_t>(node));
    return static_cast<double>(h >> 11) * 0x1.0p-53 < cfg.affected_fraction;
}

SocialGraph generate_network(const SimConfig& cfg) {
    if (cfg.attach_m < 1) throw std::invalid_argument("attach_m must be >= 1");
    if (cfg.n_nodes <= cfg.attach_m)
        throw std::invalid_argument("n_nodes must exceed attach_m");
    if (cfg.reciprocity < 0 || cfg.reciprocity > 1)
        throw std::invalid_argument("reciprocity must be a probability");
    if (cfg.geo_assortativity < 0 || cfg.geo_assortativity > 1)
        throw std::invalid_argument("geo_assortativity must be a probability");

    Rng rng(mix_seed(cfg.seed, 0x6e6574ULL));
    SocialGraph g;
    std::vector<char> inside(static_cast<size_t>(cfg.n_nodes));
    for (int i = 0; i < cfg.n_nodes; ++i) {
        g.add_node("u" + std::to_string(i));
        inside[static_cast<size_t>(i)] = node_inside(cfg, i) ? 1 : 0;
    }

    // One slot per directed-edge endpoint: attachment odds follow total
    // degree. Side-restricted slot lists implement geographic homophily.
    std::vector<int> slots;
    std::vector<int> side_slots[2];
    std::vector<int> side_nodes[2];
    slots.reserve(static_cast<size_t>(cfg.n_nodes) * cfg.attach_m * 3);
    for (int i = 0; i < cfg.attach_m; ++i)
        side_nodes[inside[static_cast<size_t>(i)]].push_back(i);

    auto push_slot = [&](int v) {
        slots.push_back(v);
        side_slots[inside[static_cast<size_t>(v)]].push_back(v);
    };

    std::vector<int> targets;
    for (int u = cfg.attach_m; u < cfg.n_nodes; ++u) {
        const int my_side = inside[static_cast<size_t>(u)];
        targets.clear();
        int misses = 0;
        while (static_cast<int>(targets.size()) < cfg.attach_m) {
            const bool same_side =
                cfg.geo_assortativity > 0 && rng.bernoulli(cfg.geo_assortativity);
            const auto& pool = same_side ? side_slots[my_side] : slots;
            int v;
            if (!pool.empty()) {
                v = pool[static_cast<size_t>(rng.bounded(pool.size()))];
            } else if (same_side && !side_nodes[my_side].empty()) {
                v = side_nodes[my_side][static_cast<size_t>(
                    rng.bounded(side_nodes[my_side].size()))];
            } else {
                v = static_cast<int>(rng.bounded(static_cast<uint64_t>(u)));
            }
            if (v == u || std::find(targets.begin(), targets.end(), v) != targets.end()) {
                // A tiny same-side pool can stall distinct draws; fall back to
                // anyone after a bounded number of misses.
                if (++misses > 64) {
                    v = static_cast<int>(rng.bounded(static_cast<uint64_t>(u)));
                    if (v == u || std::find(targets.begin(), targets.end(), v) != targets.end())
                        continue;
                } else {
                    continue;
                }
            }
            targets.push_back(v);
        }
        for (int v : targets) {
            g.add_edge(u, v);
            push_slot(u);
            push_slot(v);
            if (rng.bernoulli(cfg.reciprocity)) {
                g.add_edge(v, u);
                push_slot(v);
                push_slot(u);
            }
        }
        side_nodes[my_side].push_back(u);
    }
    g.finalize();
    return g;
}

namespace {

std::vector<StormTrackPoint> synthetic_track() {
    std::vector<StormTrackPoint> track;
    for (int k = 0; k < 6; ++k) {
        StormTrackPoint p;
        p.time = k * 21600;
        p.center = {33.0 + 2.0 * k, -75.5 + 0.3 * k};
        p.r34 = {150, 150, 150, 150};
        p.r50 = {100, 100, 100, 100};
        p.r64 = {60, 60, 60, 60};
        track.push_back(p);
    }
    return track;
}

constexpr double kDegToRad = std::numbers::pi / 180.0;

struct Event {
    double time;
    uint64_t seq;
    enum Kind { exo_in, exo_out, transmit } kind;
    int node;
};

struct EventLater {
    bool operator()(const Event& a, const Event& b) const {
        if (a.time != b.time) return a.time > b.time;
        return a.seq > b.seq;
    }
};

}  // namespace

SimOutput simulate_spread(const SimConfig& cfg, const SocialGraph& g) {
    if (cfg.beta < 0 || cfg.lambda_in < 0 || cfg.lambda_out < 0 || cfg.post_rate_coeff < 0)
        throw std::invalid_argument("rates must be nonnegative");
    if (cfg.affected_fraction < 0 || cfg.affected_fraction > 1 || cfg.geocode_fraction < 0 ||
        cfg.geocode_fraction > 1)
        throw std::invalid_argument("fractions must be probabilities");
    if (!(cfg.horizon_h > 0)) throw std::invalid_argument("horizon must be positive");

    const int n = g.size();
    SimOutput out;
    out.track = synthetic_track();
    out.area = build_affected_area(out.track, 34, 32);
    out.world = GridSpec{28.0, 48.0, -86.0, -62.0, 1.0};

    Rng rng(mix_seed(cfg.seed, 0x737072ULL));

    // Geography. Inside points sample a track disk slightly shrunk so they
    // stay within the inscribed polygon; outside points reject into the bbox
    // complement.
    out.side.assign(static_cast<size_t>(n), 0);
    std::vector<LatLon> home(static_cast<size_t>(n));
    std::vector<char> geocoded(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        const bool inside = node_inside(cfg, i);
        out.side[static_cast<size_t>(i)] = inside ? 1 : 0;
        if (inside) {
            for (;;) {
                const auto& tp = out.track[static_cast<size_t>(rng.bounded(out.track.size()))];
                const double r_nm = tp.max_radius_nm(34) * 0.97 * std::sqrt(rng.unit());
                const double ang = rng.uniform(0, 2 * std::numbers::pi);
                const double r_deg = r_nm / kNmPerDegLat;
                LatLon p{tp.center.lat + r_deg * std::sin(ang),
                         tp.center.lon + r_deg * std::cos(ang) /
                                             std::max(0.05, std::cos(tp.center.lat * kDegToRad))};
                if (is_affected(p, out.area)) {
                    home[static_cast<size_t>(i)] = p;
                    break;
                }
            }
        } else {
            for (int attempt = 0;; ++attempt) {
                LatLon p{rng.uniform(out.world.lat_min, out.world.lat_max),
                         rng.uniform(out.world.lon_min, out.world.lon_max)};
                if (!is_affected(p, out.area)) {
                    home[static_cast<size_t>(i)] = p;
                    break;
                }
                if (attempt > 100000) throw DataError("cannot place a node outside the area");
            }
        }
        geocoded[static_cast<size_t>(i)] = rng.bernoulli(cfg.geocode_fraction) ? 1 : 0;
    }

    // lambda_in(t) = lambda_in * min(1, max(0, (t - t0) / (landfall - t0))),
    // t0 = landfall - ramp_lead.
    const double t0 = cfg.landfall_h - cfg.ramp_lead_h;
    auto ramp = [&](double t) {
        if (cfg.ramp_lead_h <= 0) return t >= cfg.landfall_h ? 1.0 : 0.0;
        return std::min(1.0, std::max(0.0, (t - t0) / cfg.ramp_lead_h));
    };

    std::priority_queue<Event, std::vector<Event>, EventLater> queue;
    uint64_t seq = 0;
    auto push = [&](double time, Event::Kind kind, int node) {
        if (time <= cfg.horizon_h) queue.push(Event{time, seq++, kind, node});
    };

    for (int i = 0; i < n; ++i) {
        if (out.side[static_cast<size_t>(i)]) {
            if (cfg.lambda_in > 0) push(rng.exponential(cfg.lambda_in), Event::exo_in, i);
        } else {
            if (cfg.lambda_out > 0) push(rng.exponential(cfg.lambda_out), Event::exo_out, i);
        }
    }

    std::vector<double> aware_at(static_cast<size_t>(n), -1);
    std::vector<int> aware_order;
    aware_order.reserve(static_cast<size_t>(n));

    auto become_aware = [&](int u, double t) {
        aware_at[static_cast<size_t>(u)] = t;
        aware_order.push_back(u);
        for (int follower : g.followers(u)) {
            if (aware_at[static_cast<size_t>(follower)] < 0 && cfg.beta > 0)
                push(t + rng.exponential(cfg.beta), Event::transmit, follower);
        }
    };

    while (!queue.empty()) {
        const Event ev = queue.top();
        queue.pop();
        if (aware_at[static_cast<size_t>(ev.node)] >= 0) continue;
        switch (ev.kind) {
            case Event::exo_out:
            case Event::transmit:
                become_aware(ev.node, ev.time);
                break;
            case Event::exo_in:
                if (rng.bernoulli(ramp(ev.time)))
                    become_aware(ev.node, ev.time);
                else
                    push(ev.time + rng.exponential(cfg.lambda_in), Event::exo_in, ev.node);
                break;
        }
    }

    if (aware_order.empty()) {
        out.empty_warning = true;
    }

    // Posting: a Poisson stream per aware user, rate tied to out-degree. The
    // first post trails awareness by a short jitter (>= 2 s so second-level
    // quantization cannot reorder it ahead of the awareness time).
    const double min_jitter = 2.0 / 3600.0;
    auto quantize = [&](double sim_t) {
        return static_cast<int64_t>(std::llround((sim_t - cfg.landfall_h) * 3600.0));
    };

    uint64_t msg_seq = 0;
    for (int u : aware_order) {
        const double a = aware_at[static_cast<size_t>(u)];
        const double rate =
            cfg.post_rate_coeff * std::pow(1.0 + g.out_degree(u), cfg.degree_exponent);
        if (rate <= 0) continue;
        const bool inside = out.side[static_cast<size_t>(u)] == 1;
        // Inside users surge during the disturbance window; the stream is a
        // thinned Poisson process at the peak rate.
        const double mult = inside ? std::max(1.0, cfg.disturb_post_multiplier) : 1.0;
        const double peak_rate = rate * mult;
        auto rate_factor = [&](double sim_t) {
            if (!inside || cfg.disturb_post_multiplier <= 1.0) return 1.0;
            const double offset = sim_t - cfg.landfall_h;
            const bool disturbed =
                offset >= cfg.disturb_start_h && offset < cfg.disturb_end_h;
            return (disturbed ? cfg.disturb_post_multiplier : 1.0) / mult;
        };
        double t = a + min_jitter +
                   rng.unit() * std::max(0.0, cfg.first_post_jitter_h - min_jitter);
        bool first = true;
        while (t <= cfg.horizon_h) {
            if (!first && !rng.bernoulli(rate_factor(t))) {
                t += rng.exponential(peak_rate);
                continue;
            }
            first = false;
            Message m;
            m.message_id = "m" + std::to_string(msg_seq++);
            m.user_id = g.user_id(u);
            const int64_t secs = quantize(t);
            m.timestamp = cfg.reference_epoch + secs;
            m.offset_h = static_cast<double>(secs) / 3600.0;
            m.is_retweet = rng.bernoulli(cfg.retweet_fraction);
            if (msg_seq % 3 == 0) {
                m.text = "tracking #sandy from here";
                m.hashtags = {"sandy"};
            } else if (msg_seq % 3 == 1) {
                m.text = "sandy update, stay safe";
            } else {
                m.text = "storm watch: sandy approaching";
            }
            if (geocoded[static_cast<size_t>(u)]) m.geo = home[static_cast<size_t>(u)];
            if (cfg.emit_sentiment) {
                const double offset = m.offset_h;
                double mu = cfg.mu_outside;
                if (inside)
                    mu = (offset >= cfg.disturb_start_h && offset < cfg.disturb_end_h)
                             ? cfg.mu_inside_disturbed
                             : cfg.mu_inside_calm;
                m.sentiment = std::clamp(rng.normal(mu, cfg.sentiment_sigma), -1.0, 1.0);
            }
            out.messages.push_back(std::move(m));
            t += rng.exponential(peak_rate);
        }
        const int64_t aware_secs = quantize(a);
        out.awareness[g.user_id(u)] = static_cast<double>(aware_secs) / 3600.0;
    }

    std::sort(out.messages.begin(), out.messages.end(), [](const Message& a, const Message& b) {
        if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
        return a.message_id < b.message_id;
    });

    out.profiles.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        UserProfile p;
        p.user_id = g.user_id(i);
        p.friends_count = g.out_degree(i);
        p.followers_count = g.in_degree(i);
        if (geocoded[static_cast<size_t>(i)])
            p.geopoint = home[static_cast<size_t>(i)];
        out.profiles.push_back(std::move(p));
    }

    // The graph is an input; carry a copy so SimOutput is self-contained.
    out.graph = g;
    return out;
}

}  // namespace sns
