#ifndef SNS_INGEST_HPP
#define SNS_INGEST_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sns/chrono.hpp"
#include "sns/latlon.hpp"

namespace sns {

struct Message {
    std::string message_id;
    std::string user_id;
    int64_t timestamp = 0;  // UTC epoch seconds
    double offset_h = 0;    // hours relative to the reference epoch
    std::string text;
    std::vector<std::string> hashtags;  // lowercase, '#' stripped
    std::optional<LatLon> geo;
    bool is_retweet = false;
    std::optional<double> sentiment;  // precomputed relative score
};

struct UserProfile {
    std::string user_id;
    std::string self_location;  // empty when unknown
    int64_t friends_count = 0;    // out-degree (followees)
    int64_t followers_count = 0;  // in-degree
    std::optional<LatLon> geopoint;  // filled by the geo stage
};

struct ParseReport {
    size_t lines = 0;      // non-blank lines seen
    size_t parsed = 0;     // records accepted (before dedup)
    size_t malformed = 0;  // skipped lines
    size_t duplicates = 0; // message ids dropped (first occurrence kept)
    std::vector<std::string> malformed_samples;  // up to 5, in line order
};

enum class FilterLevel { none, moderate, strict };

FilterLevel parse_filter_level(std::string_view s);
const char* to_string(FilterLevel);

// strict: {"sandy"}; moderate adds "storm", "hurricane", "huracán",
// "superstorm", "frankenstorm"; none matches everything.
const std::vector<std::string>& filter_keywords(FilterLevel level);

// The extended-dataset keyword list bundled as a default for histogram
// exploration (multi-word entries included verbatim).
const std::vector<std::string>& default_extended_keywords();

// Maps canonical field names onto the names used by an input file.
struct FieldMap {
    std::string id = "id";
    std::string user = "user";
    std::string ts = "ts";
    std::string text = "text";
    std::string hashtags = "hashtags";
    std::string lat = "lat";
    std::string lon = "lon";
    std::string retweet = "retweet";
    std::string sentiment = "sentiment";
    std::string location = "location";
    std::string friends = "friends";
    std::string followers = "followers";
};

struct ParseOptions {
    int64_t reference_epoch = default_reference_epoch();
    int shards = 1;  // parallel parse shards; output is shard-invariant
    double suspicious_fraction = 0.5;
    bool extract_hashtags_from_text = true;  // when the field is absent
};

struct ParseResult {
    std::vector<Message> messages;       // sorted by (timestamp, message_id)
    std::vector<UserProfile> profiles;   // sorted by user_id
    ParseReport report;
};

// Parses line-delimited JSON records. A record with the id field is a
// message (embedded profile fields are merged as well); a record with only
// user-level fields is a profile. Malformed lines are skipped and counted;
// more than suspicious_fraction of malformed lines raises DataError.
ParseResult parse_stream(std::string_view data, const FieldMap& fields = {},
                         const ParseOptions& opts = {});

ParseResult parse_message_file(const std::string& path, const FieldMap& fields = {},
                               const ParseOptions& opts = {});

std::string message_to_json_line(const Message& m, const FieldMap& fields = {});

// Keeps messages containing at least one keyword as a whole text token or as
// a hashtag. Order preserved; level none passes through.
std::vector<Message> filter_relevance(const std::vector<Message>& messages, FilterLevel level);
std::vector<Message> filter_relevance(const std::vector<Message>& messages,
                                      const std::vector<std::string>& keywords);

bool message_matches(const Message& m, const std::vector<std::string>& folded_keywords);

struct KeywordHistogram {
    double bin_h = 1;
    // bin index -> count; bin start offset = index * bin_h, so offset 0 is a
    // bin boundary. `solo` counts all messages with the keyword, `with_sandy`
    // those that also contain "sandy".
    std::map<int64_t, size_t> solo;
    std::map<int64_t, size_t> with_sandy;
};

KeywordHistogram keyword_histogram(const std::vector<Message>& messages,
                                   const std::string& keyword, double bin_h);

}  // namespace sns

#endif
