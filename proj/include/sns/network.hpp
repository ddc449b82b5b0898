#ifndef SNS_NETWORK_HPP
#define SNS_NETWORK_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sns {

// Directed follow graph (edge u -> v means u follows v; v is a friend of u).
// Both adjacency directions are materialized for O(1) neighbor access during
// sampling sweeps. Immutable once finalized; concurrent readers are safe.
class SocialGraph {
public:
    int add_node(std::string_view user_id);
    void add_edge(std::string_view follower, std::string_view followee);
    void add_edge(int follower, int followee);

    // Sorts and dedups adjacency, dropping self-loops. Must be called before
    // any query; add_* calls after finalize are invalid.
    void finalize();

    int size() const { return static_cast<int>(ids_.size()); }
    int64_t edge_count() const { return edge_count_; }
    bool finalized() const { return finalized_; }

    std::optional<int> index_of(std::string_view user_id) const;
    const std::string& user_id(int node) const { return ids_[static_cast<size_t>(node)]; }

    std::span<const int> friends(int node) const;    // out-neighbors (followees)
    std::span<const int> followers(int node) const;  // in-neighbors
    int out_degree(int node) const { return static_cast<int>(friends(node).size()); }
    int in_degree(int node) const { return static_cast<int>(followers(node).size()); }

    // Throws LookupError for unknown users.
    std::vector<std::string> friends_of(std::string_view user_id) const;

    // Symmetric closure: every edge mirrored.
    SocialGraph bidirected() const;

private:
    std::vector<std::string> ids_;
    std::unordered_map<std::string, int> index_;
    std::vector<std::pair<int, int>> pending_;
    std::vector<std::vector<int>> out_;
    std::vector<std::vector<int>> in_;
    int64_t edge_count_ = 0;
    bool finalized_ = false;
};

struct ParadoxStats {
    double mean_degree = 0;         // average over nodes
    double mean_friend_degree = 0;  // average over edges (u->v) of degree(v)
    double ratio = 0;               // mean_friend_degree / mean_degree
};

enum class DegreeSide { out, in };

// Feld's friendship-paradox statistic. Throws DataError on edgeless graphs.
ParadoxStats paradox_stats(const SocialGraph& g, DegreeSide side = DegreeSide::out);

}  // namespace sns

#endif
