#ifndef SNS_TESTS_HELPERS_HPP
#define SNS_TESTS_HELPERS_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "sns/chrono.hpp"
#include "sns/ingest.hpp"
#include "sns/rng.hpp"
#include "sns/text.hpp"

namespace sns::testing {

inline constexpr uint64_t versioned_range() { return 1000ull * 3600ull; }

// Random message generator for round-trip and oracle tests. Hashtags are kept
// consistent with the text so serialize/parse is a fixed point.
inline std::vector<Message> random_messages(size_t n, uint64_t seed,
                                            int64_t epoch = default_reference_epoch()) {
    static const std::vector<std::string> vocab = {
        "sandy",  "storm",   "hurricane", "huracán", "beach", "sand",
        "power",  "weather", "flooding",  "coffee",       "music", "game",
        "crazy",  "wind",    "#sandy",    "#nyc",         "good",  "bad"};
    Rng rng(seed);
    std::vector<Message> out;
    out.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        Message m;
        m.message_id = "m" + std::to_string(i);
        m.user_id = "u" + std::to_string(rng.bounded(n / 4 + 1));
        const auto secs = static_cast<int64_t>(rng.bounded(versioned_range()));
        m.timestamp = epoch - 500 * 3600 + secs;
        m.offset_h = offset_hours(m.timestamp, epoch);
        const size_t words = 1 + rng.bounded(8);
        for (size_t w = 0; w < words; ++w) {
            if (w) m.text += ' ';
            m.text += vocab[static_cast<size_t>(rng.bounded(vocab.size()))];
        }
        m.hashtags = extract_hashtags(m.text);
        if (rng.bernoulli(0.3)) m.geo = LatLon{rng.uniform(-60, 60), rng.uniform(-150, 150)};
        if (rng.bernoulli(0.4)) m.sentiment = rng.uniform(-1, 1);
        m.is_retweet = rng.bernoulli(0.2);
        out.push_back(std::move(m));
    }
    return out;
}

inline std::string to_jsonl(const std::vector<Message>& messages) {
    std::string data;
    for (const auto& m : messages) {
        data += message_to_json_line(m);
        data += '\n';
    }
    return data;
}

inline bool same_message(const Message& a, const Message& b) {
    return a.message_id == b.message_id && a.user_id == b.user_id &&
           a.timestamp == b.timestamp && a.offset_h == b.offset_h && a.text == b.text &&
           a.hashtags == b.hashtags && a.is_retweet == b.is_retweet &&
           a.geo.has_value() == b.geo.has_value() &&
           (!a.geo || (a.geo->lat == b.geo->lat && a.geo->lon == b.geo->lon)) &&
           a.sentiment.has_value() == b.sentiment.has_value() &&
           (!a.sentiment || *a.sentiment == *b.sentiment);
}

// Multiset equality by message id (ids unique after dedup).
inline bool same_message_multiset(std::vector<Message> a, std::vector<Message> b) {
    if (a.size() != b.size()) return false;
    auto by_id = [](const Message& x, const Message& y) { return x.message_id < y.message_id; };
    std::sort(a.begin(), a.end(), by_id);
    std::sort(b.begin(), b.end(), by_id);
    for (size_t i = 0; i < a.size(); ++i)
        if (!same_message(a[i], b[i])) return false;
    return true;
}

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (size_t i = 0; i < x.size(); ++i) { mx += x[i]; my += y[i]; }
    mx /= n;
    my /= n;
    double sxx = 0, syy = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace sns::testing

#endif
