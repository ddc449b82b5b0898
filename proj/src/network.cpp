#include "sns/network.hpp"

#include <algorithm>
#include <cassert>

#include "sns/errors.hpp"

namespace sns {

int SocialGraph::add_node(std::string_view user_id) {
    auto it = index_.find(std::string(user_id));
    if (it != index_.end()) return it->second;
    int idx = static_cast<int>(ids_.size());
    ids_.emplace_back(user_id);
    index_.emplace(ids_.back(), idx);
    return idx;
}

void SocialGraph::add_edge(std::string_view follower, std::string_view followee) {
    add_edge(add_node(follower), add_node(followee));
}

void SocialGraph::add_edge(int follower, int followee) {
    assert(!finalized_);
    pending_.emplace_back(follower, followee);
}

void SocialGraph::finalize() {
    out_.assign(ids_.size(), {});
    in_.assign(ids_.size(), {});
    for (auto [u, v] : pending_) {
        if (u == v) continue;  // no self-loops
        out_[static_cast<size_t>(u)].push_back(v);
    }
    pending_.clear();
    pending_.shrink_to_fit();
    edge_count_ = 0;
    for (size_t u = 0; u < out_.size(); ++u) {
        auto& adj = out_[u];
        std::sort(adj.begin(), adj.end());
        adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
        edge_count_ += static_cast<int64_t>(adj.size());
        for (int v : adj) in_[static_cast<size_t>(v)].push_back(static_cast<int>(u));
    }
    for (auto& adj : in_) std::sort(adj.begin(), adj.end());
    finalized_ = true;
}

std::optional<int> SocialGraph::index_of(std::string_view user_id) const {
    auto it = index_.find(std::string(user_id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::span<const int> SocialGraph::friends(int node) const {
    assert(finalized_);
    return out_[static_cast<size_t>(node)];
}

std::span<const int> SocialGraph::followers(int node) const {
    assert(finalized_);
    return in_[static_cast<size_t>(node)];
}

std::vector<std::string> SocialGraph::friends_of(std::string_view user_id) const {
    auto idx = index_of(user_id);
    if (!idx) throw LookupError("unknown user: " + std::string(user_id));
    std::vector<std::string> out;
    for (int v : friends(*idx)) out.push_back(ids_[static_cast<size_t>(v)]);
    return out;
}

SocialGraph SocialGraph::bidirected() const {
    SocialGraph g;
    for (const auto& id : ids_) g.add_node(id);
    for (int u = 0; u < size(); ++u) {
        for (int v : friends(u)) {
            g.add_edge(u, v);
            g.add_edge(v, u);
        }
    }
    g.finalize();
    return g;
}

ParadoxStats paradox_stats(const SocialGraph& g, DegreeSide side) {
    if (g.edge_count() == 0) throw DataError("paradox statistics undefined on an edgeless graph");

    auto degree = [&](int v) {
        return side == DegreeSide::out ? g.out_degree(v) : g.in_degree(v);
    };

    double degree_sum = 0;
    double friend_degree_sum = 0;
    int64_t edges = 0;
    for (int u = 0; u < g.size(); ++u) {
        degree_sum += degree(u);
        for (int v : g.friends(u)) {
            friend_degree_sum += degree(v);
            ++edges;
        }
    }

    ParadoxStats s;
    s.mean_degree = degree_sum / static_cast<double>(g.size());
    s.mean_friend_degree = friend_degree_sum / static_cast<double>(edges);
    s.ratio = s.mean_friend_degree / s.mean_degree;
    return s;
}

}  // namespace sns
