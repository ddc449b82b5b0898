#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "sns/analysis.hpp"
#include "sns/simulator.hpp"

using namespace sns;
using namespace sns::testing;

TEST_SUITE_BEGIN("simulator");

TEST_CASE("degenerate growth: the single added node follows everyone") {
    SimConfig cfg;
    cfg.n_nodes = 6;
    cfg.attach_m = 5;
    cfg.reciprocity = 0;
    cfg.seed = 1;
    auto g = generate_network(cfg);
    CHECK(g.size() == 6);
    auto friends = g.friends_of("u5");
    CHECK(friends.size() == 5);
    CHECK(g.out_degree(*g.index_of("u5")) == 5);

    CHECK_THROWS_AS(generate_network([] {
                        SimConfig c;
                        c.n_nodes = 5;
                        c.attach_m = 5;
                        return c;
                    }()),
                    std::invalid_argument);
    CHECK_THROWS_AS(generate_network([] {
                        SimConfig c;
                        c.attach_m = 0;
                        return c;
                    }()),
                    std::invalid_argument);
}

TEST_CASE("seed-fixed double run gives identical graphs and streams") {
    SimConfig cfg = SimConfig::sandy_like(99);
    cfg.n_nodes = 1500;
    auto a = simulate(cfg);
    auto b = simulate(cfg);

    REQUIRE(a.graph.size() == b.graph.size());
    CHECK(a.graph.edge_count() == b.graph.edge_count());
    for (int u = 0; u < a.graph.size(); ++u) {
        auto fa = a.graph.friends(u);
        auto fb = b.graph.friends(u);
        CHECK(std::vector<int>(fa.begin(), fa.end()) == std::vector<int>(fb.begin(), fb.end()));
    }
    REQUIRE(a.messages.size() == b.messages.size());
    for (size_t i = 0; i < a.messages.size(); ++i)
        CHECK(same_message(a.messages[i], b.messages[i]));
    CHECK(a.awareness == b.awareness);

    auto c = simulate(SimConfig::sandy_like(100));
    CHECK(a.messages.size() != c.messages.size());
}

TEST_CASE("preferential attachment produces a strong paradox") {
    SimConfig cfg;
    cfg.n_nodes = 10000;
    cfg.attach_m = 5;
    cfg.seed = 11;
    auto g = generate_network(cfg);
    auto stats = paradox_stats(g.bidirected());
    CHECK(stats.ratio > 1.5);
}

TEST_CASE("pure exogenous awareness times are exponential") {
    SimConfig cfg;
    cfg.n_nodes = 10000;
    cfg.seed = 5;
    cfg.beta = 0;
    cfg.lambda_in = 0.05;
    cfg.lambda_out = 0.05;
    cfg.landfall_h = 0;  // constant rate from t = 0
    cfg.horizon_h = 400;
    cfg.post_rate_coeff = 0.002;
    auto sim = simulate(cfg);

    std::vector<double> times;
    for (const auto& [_, t] : sim.awareness) times.push_back(t);
    REQUIRE(times.size() > 9900);  // truncation loss is ~e^-20
    std::sort(times.begin(), times.end());

    double ks = 0;
    const auto n = static_cast<double>(times.size());
    for (size_t i = 0; i < times.size(); ++i) {
        const double f = 1.0 - std::exp(-0.05 * times[i]);
        const double lo = static_cast<double>(i) / n;
        const double hi = static_cast<double>(i + 1) / n;
        ks = std::max({ks, std::abs(f - lo), std::abs(f - hi)});
    }
    CHECK(ks <= 0.05);
}

TEST_CASE("with lambda_out and beta zero, only affected nodes ever post") {
    SimConfig cfg;
    cfg.n_nodes = 3000;
    cfg.seed = 7;
    cfg.beta = 0;
    cfg.lambda_in = 0.05;
    cfg.lambda_out = 0;
    cfg.landfall_h = 0;
    cfg.horizon_h = 200;
    auto sim = simulate(cfg);
    CHECK_FALSE(sim.messages.empty());
    for (const auto& [user, _] : sim.awareness) {
        auto idx = sim.graph.index_of(user);
        REQUIRE(idx.has_value());
        CHECK(sim.side[static_cast<size_t>(*idx)] == 1);
    }
    for (const auto& m : sim.messages) {
        auto idx = sim.graph.index_of(m.user_id);
        CHECK(sim.side[static_cast<size_t>(*idx)] == 1);
    }
}

TEST_CASE("no message precedes its author's awareness") {
    auto sim = simulate([] {
        auto c = SimConfig::sandy_like(13);
        c.n_nodes = 3000;
        return c;
    }());
    REQUIRE_FALSE(sim.messages.empty());
    for (const auto& m : sim.messages) {
        auto it = sim.awareness.find(m.user_id);
        REQUIRE(it != sim.awareness.end());
        CHECK(m.offset_h >= it->second);
    }
    // All posts survive the strict relevance filter.
    auto filtered = filter_relevance(sim.messages, FilterLevel::strict);
    CHECK(filtered.size() == sim.messages.size());
}

TEST_CASE("geometry truth: homes agree with polygon membership") {
    auto sim = simulate([] {
        auto c = SimConfig::sandy_like(17);
        c.n_nodes = 2000;
        return c;
    }());
    int checked = 0;
    for (const auto& p : sim.profiles) {
        if (!p.geopoint) continue;
        auto idx = sim.graph.index_of(p.user_id);
        CHECK(is_affected(*p.geopoint, sim.area) ==
              (sim.side[static_cast<size_t>(*idx)] == 1));
        ++checked;
    }
    CHECK(checked > 0);
}

TEST_CASE("activity couples positively with out-degree") {
    auto sim = simulate([] {
        auto c = SimConfig::exogenous_dominant(19);
        c.n_nodes = 5000;
        c.post_rate_coeff = 0.03;
        return c;
    }());
    auto counts = activity_counts(sim.messages);
    std::vector<double> deg, act;
    for (const auto& [user, c] : counts) {
        auto idx = sim.graph.index_of(user);
        deg.push_back(sim.graph.out_degree(*idx));
        act.push_back(static_cast<double>(c));
    }
    REQUIRE(deg.size() > 1000);
    CHECK(pearson(deg, act) > 0.2);
}

TEST_CASE("earlier entrants are more active in the endogenous regime") {
    auto sim = simulate([] {
        auto c = SimConfig::endogenous_dominant(23);
        c.n_nodes = 5000;
        c.beta = 0.08;  // slower cascade widens the entry spread
        c.horizon_h = 200;
        c.landfall_h = 100;
        return c;
    }());
    auto entries = entry_times(sim.messages);
    auto counts = activity_counts(sim.messages);
    std::vector<double> entry, act;
    for (const auto& [user, t] : entries) {
        entry.push_back(t);
        act.push_back(static_cast<double>(counts.at(user)));
    }
    REQUIRE(entry.size() > 1000);
    CHECK(pearson(entry, act) < -0.05);
}

TEST_CASE("all-zero rates warn and emit nothing") {
    SimConfig cfg;
    cfg.n_nodes = 200;
    cfg.beta = 0;
    cfg.lambda_in = 0;
    cfg.lambda_out = 0;
    auto sim = simulate(cfg);
    CHECK(sim.empty_warning);
    CHECK(sim.messages.empty());
    CHECK(sim.awareness.empty());
}

TEST_SUITE_END();
