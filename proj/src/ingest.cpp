#include "sns/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "sns/errors.hpp"
#include "sns/text.hpp"

namespace sns {

using nlohmann::json;

FilterLevel parse_filter_level(std::string_view s) {
    if (s == "none") return FilterLevel::none;
    if (s == "moderate") return FilterLevel::moderate;
    if (s == "strict") return FilterLevel::strict;
    throw std::invalid_argument("unknown filter level: " + std::string(s));
}

const char* to_string(FilterLevel level) {
    switch (level) {
        case FilterLevel::none: return "none";
        case FilterLevel::moderate: return "moderate";
        case FilterLevel::strict: return "strict";
    }
    return "?";
}

const std::vector<std::string>& filter_keywords(FilterLevel level) {
    static const std::vector<std::string> kNone;
    static const std::vector<std::string> kStrict = {"sandy"};
    static const std::vector<std::string> kModerate = {
        "sandy", "storm", "hurricane", "huracán", "superstorm", "frankenstorm"};
    switch (level) {
        case FilterLevel::none: return kNone;
        case FilterLevel::moderate: return kModerate;
        case FilterLevel::strict: return kStrict;
    }
    return kNone;
}

const std::vector<std::string>& default_extended_keywords() {
    static const std::vector<std::string> kList = {
        "sand", "power", "sandy", "hurricane", "weather", "storm", "new york",
        "gas", "hurricanesandy", "governor", "stay safe", "recovery", "climate",
        "huracán", "fema", "flooding", "no power", "climate change", "wall st",
        "blackout", "franken", "mta", "frankenstorm", "newyork", "nyc marathon",
        "cuomo", "prayforusa", "superstorm", "nyse", "huracan", "wtc",
        "climatechange", "staysafe", "coned", "conedison", "sandypets",
        "nycmarathon", "sandyaid", "gás", "wallst", "nopower", "stock exchange",
        "con edison", "comfortablysmug", "911buff", "wallstreet", "new-york",
        "opsafe", "governor cuomo", "sandy aid", "pray for usa", "operation safe",
        "trading floor", "sandy pets", "stockexchange", "op safe",
        "governorcuomo", "tradingfloor"};
    return kList;
}

namespace {

struct RawRecord {
    size_t line_no = 0;
    bool is_message = false;
    Message msg;
    bool has_profile = false;
    std::string profile_user;
    std::optional<std::string> location;
    std::optional<int64_t> friends;
    std::optional<int64_t> followers;
};

struct ShardResult {
    std::vector<RawRecord> records;
    size_t lines = 0;
    size_t parsed = 0;
    size_t malformed = 0;
    std::vector<std::pair<size_t, std::string>> malformed_samples;
};

bool json_to_string(const json& v, std::string& out) {
    if (v.is_string()) {
        out = v.get<std::string>();
        return !out.empty();
    }
    if (v.is_number_integer()) {
        out = std::to_string(v.get<int64_t>());
        return true;
    }
    if (v.is_number_unsigned()) {
        out = std::to_string(v.get<uint64_t>());
        return true;
    }
    return false;
}

bool json_to_int(const json& v, int64_t& out) {
    if (v.is_number_integer()) { out = v.get<int64_t>(); return true; }
    if (v.is_number_unsigned()) { out = static_cast<int64_t>(v.get<uint64_t>()); return true; }
    if (v.is_number_float()) { out = static_cast<int64_t>(v.get<double>()); return true; }
    if (v.is_string()) {
        try {
            size_t pos = 0;
            out = std::stoll(v.get<std::string>(), &pos);
            return pos == v.get<std::string>().size();
        } catch (...) {
            return false;
        }
    }
    return false;
}

bool json_to_double(const json& v, double& out) {
    if (v.is_number()) { out = v.get<double>(); return true; }
    return false;
}

// Parses one line into a record; returns false when the line is malformed.
bool parse_record(std::string_view line, const FieldMap& f, const ParseOptions& opts,
                  RawRecord& rec) {
    json obj = json::parse(line, nullptr, false);
    if (obj.is_discarded() || !obj.is_object()) return false;

    const auto id_it = obj.find(f.id);
    const auto user_it = obj.find(f.user);
    if (user_it == obj.end() || user_it->is_null()) return false;
    std::string user;
    if (!json_to_string(*user_it, user)) return false;

    if (id_it != obj.end() && !id_it->is_null()) {
        Message m;
        if (!json_to_string(*id_it, m.message_id)) return false;
        m.user_id = user;

        const auto ts_it = obj.find(f.ts);
        if (ts_it == obj.end()) return false;
        std::optional<int64_t> ts;
        if (ts_it->is_string()) {
            ts = parse_instant(ts_it->get<std::string>());
        } else if (ts_it->is_number()) {
            ts = static_cast<int64_t>(ts_it->get<double>());
        }
        if (!ts) return false;
        m.timestamp = *ts;
        m.offset_h = offset_hours(*ts, opts.reference_epoch);

        if (auto it = obj.find(f.text); it != obj.end() && !it->is_null()) {
            if (!it->is_string()) return false;
            m.text = it->get<std::string>();
        }

        if (auto it = obj.find(f.hashtags); it != obj.end() && !it->is_null()) {
            if (!it->is_array()) return false;
            for (const auto& h : *it) {
                if (!h.is_string()) return false;
                std::string tag = fold_case(h.get<std::string>());
                while (!tag.empty() && tag.front() == '#') tag.erase(tag.begin());
                if (!tag.empty()) m.hashtags.push_back(std::move(tag));
            }
        } else if (opts.extract_hashtags_from_text) {
            m.hashtags = extract_hashtags(m.text);
        }

        const auto lat_it = obj.find(f.lat);
        const auto lon_it = obj.find(f.lon);
        const bool has_lat = lat_it != obj.end() && !lat_it->is_null();
        const bool has_lon = lon_it != obj.end() && !lon_it->is_null();
        if (has_lat != has_lon) return false;
        if (has_lat) {
            LatLon p;
            if (!json_to_double(*lat_it, p.lat) || !json_to_double(*lon_it, p.lon)) return false;
            if (p.lat < -90 || p.lat > 90 || p.lon < -180 || p.lon > 180) return false;
            m.geo = p;
        }

        if (auto it = obj.find(f.retweet); it != obj.end() && !it->is_null()) {
            if (it->is_boolean()) m.is_retweet = it->get<bool>();
            else if (it->is_number()) m.is_retweet = it->get<double>() != 0;
            else if (it->is_string()) m.is_retweet = it->get<std::string>() == "true";
            else return false;
        }

        if (auto it = obj.find(f.sentiment); it != obj.end() && !it->is_null()) {
            double s;
            if (!json_to_double(*it, s) || !std::isfinite(s)) return false;
            m.sentiment = s;
        }

        rec.is_message = true;
        rec.msg = std::move(m);
    }

    // Profile-level fields may ride along on message records (the raw dumps
    // repeat followee counts per message) or form standalone profile records.
    rec.profile_user = user;
    if (auto it = obj.find(f.location); it != obj.end() && !it->is_null()) {
        if (!it->is_string()) return false;
        rec.location = it->get<std::string>();
        rec.has_profile = true;
    }
    if (auto it = obj.find(f.friends); it != obj.end() && !it->is_null()) {
        int64_t v;
        if (!json_to_int(*it, v) || v < 0) return false;
        rec.friends = v;
        rec.has_profile = true;
    }
    if (auto it = obj.find(f.followers); it != obj.end() && !it->is_null()) {
        int64_t v;
        if (!json_to_int(*it, v) || v < 0) return false;
        rec.followers = v;
        rec.has_profile = true;
    }
    if (!rec.is_message) rec.has_profile = true;  // bare user record
    return true;
}

void parse_shard(const std::vector<std::string_view>& lines, size_t begin, size_t end,
                 size_t line_base, const FieldMap& fields, const ParseOptions& opts,
                 ShardResult& out) {
    out.records.reserve(end - begin);
    for (size_t i = begin; i < end; ++i) {
        std::string_view line = lines[i];
        ++out.lines;
        RawRecord rec;
        rec.line_no = line_base + i;
        if (parse_record(line, fields, opts, rec)) {
            ++out.parsed;
            out.records.push_back(std::move(rec));
        } else {
            ++out.malformed;
            if (out.malformed_samples.size() < 5)
                out.malformed_samples.emplace_back(line_base + i,
                                                   std::string(line.substr(0, 200)));
        }
    }
}

std::vector<std::string_view> split_lines(std::string_view data) {
    std::vector<std::string_view> lines;
    size_t pos = 0;
    while (pos < data.size()) {
        size_t nl = data.find('\n', pos);
        size_t end = nl == std::string_view::npos ? data.size() : nl;
        std::string_view line = data.substr(pos, end - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!line.empty()) lines.push_back(line);
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    return lines;
}

}  // namespace

ParseResult parse_stream(std::string_view data, const FieldMap& fields,
                         const ParseOptions& opts) {
    const auto lines = split_lines(data);
    const int shards = std::clamp(opts.shards, 1, 64);

    std::vector<ShardResult> parts(static_cast<size_t>(shards));
    if (shards == 1 || lines.size() < 2048) {
        parse_shard(lines, 0, lines.size(), 0, fields, opts, parts[0]);
    } else {
        std::vector<std::thread> workers;
        const size_t chunk = (lines.size() + shards - 1) / shards;
        for (int s = 0; s < shards; ++s) {
            size_t begin = std::min(lines.size(), static_cast<size_t>(s) * chunk);
            size_t end = std::min(lines.size(), begin + chunk);
            workers.emplace_back([&, s, begin, end] {
                parse_shard(lines, begin, end, 0, fields, opts, parts[s]);
            });
        }
        for (auto& w : workers) w.join();
    }

    ParseResult result;
    size_t total_records = 0;
    for (const auto& p : parts) {
        result.report.lines += p.lines;
        result.report.parsed += p.parsed;
        result.report.malformed += p.malformed;
        total_records += p.records.size();
    }
    for (const auto& p : parts)
        for (const auto& [line_no, sample] : p.malformed_samples)
            if (result.report.malformed_samples.size() < 5)
                result.report.malformed_samples.push_back(sample);

    if (result.report.lines > 0 &&
        static_cast<double>(result.report.malformed) >
            opts.suspicious_fraction * static_cast<double>(result.report.lines)) {
        std::ostringstream msg;
        msg << "suspicious input: " << result.report.malformed << " of "
            << result.report.lines << " lines malformed; sample:";
        for (const auto& s : result.report.malformed_samples) msg << "\n  " << s;
        throw DataError(msg.str());
    }

    // Shard results concatenate in global line order, so first-occurrence
    // dedup and last-write-wins profile merges are shard-count invariant.
    result.messages.reserve(total_records);
    std::unordered_set<std::string_view> seen_ids;
    seen_ids.reserve(total_records * 2);
    std::unordered_map<std::string, UserProfile> profile_map;
    for (auto& p : parts) {
        for (auto& rec : p.records) {
            if (rec.is_message) {
                // The vector is pre-reserved, so views into its elements stay
                // valid for the whole merge.
                result.messages.push_back(std::move(rec.msg));
                if (!seen_ids.insert(result.messages.back().message_id).second) {
                    result.messages.pop_back();
                    ++result.report.duplicates;
                }
            }
            if (rec.has_profile) {
                UserProfile& prof = profile_map[rec.profile_user];
                prof.user_id = rec.profile_user;
                if (rec.location && !rec.location->empty()) prof.self_location = *rec.location;
                if (rec.friends) prof.friends_count = *rec.friends;
                if (rec.followers) prof.followers_count = *rec.followers;
            }
        }
        p.records.clear();
        p.records.shrink_to_fit();
    }

    std::sort(result.messages.begin(), result.messages.end(),
              [](const Message& a, const Message& b) {
                  if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
                  return a.message_id < b.message_id;
              });

    result.profiles.reserve(profile_map.size());
    for (auto& [_, prof] : profile_map) result.profiles.push_back(std::move(prof));
    std::sort(result.profiles.begin(), result.profiles.end(),
              [](const UserProfile& a, const UserProfile& b) { return a.user_id < b.user_id; });

    return result;
}

ParseResult parse_message_file(const std::string& path, const FieldMap& fields,
                               const ParseOptions& opts) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("read failure on " + path);
    std::string data = std::move(buf).str();
    return parse_stream(data, fields, opts);
}

std::string message_to_json_line(const Message& m, const FieldMap& f) {
    json obj;
    obj[f.id] = m.message_id;
    obj[f.user] = m.user_id;
    obj[f.ts] = format_iso(m.timestamp);
    obj[f.text] = m.text;
    if (!m.hashtags.empty()) obj[f.hashtags] = m.hashtags;
    if (m.geo) {
        obj[f.lat] = m.geo->lat;
        obj[f.lon] = m.geo->lon;
    }
    if (m.is_retweet) obj[f.retweet] = true;
    if (m.sentiment) obj[f.sentiment] = *m.sentiment;
    return obj.dump();
}

namespace {

// Multi-word keywords match as a consecutive token sequence.
struct KeywordMatcher {
    std::unordered_set<std::string> single;
    std::vector<std::vector<std::string>> phrases;

    explicit KeywordMatcher(const std::vector<std::string>& keywords) {
        for (const auto& k : keywords) {
            auto toks = tokenize(k);
            if (toks.size() == 1) single.insert(std::move(toks[0]));
            else if (!toks.empty()) phrases.push_back(std::move(toks));
        }
    }

    bool matches(const Message& m) const {
        bool hit = false;
        if (!single.empty()) {
            for_each_token(m.text, [&](std::string_view t) {
                if (!hit && single.count(std::string(t))) hit = true;
            });
            if (hit) return true;
            for (const auto& h : m.hashtags)
                if (single.count(h)) return true;
        }
        if (!phrases.empty()) {
            auto toks = tokenize(m.text);
            for (const auto& ph : phrases) {
                if (ph.size() > toks.size()) continue;
                for (size_t i = 0; i + ph.size() <= toks.size(); ++i) {
                    if (std::equal(ph.begin(), ph.end(), toks.begin() + i)) return true;
                }
            }
        }
        return false;
    }
};

}  // namespace

bool message_matches(const Message& m, const std::vector<std::string>& folded_keywords) {
    return KeywordMatcher(folded_keywords).matches(m);
}

std::vector<Message> filter_relevance(const std::vector<Message>& messages, FilterLevel level) {
    if (level == FilterLevel::none) return messages;
    return filter_relevance(messages, filter_keywords(level));
}

std::vector<Message> filter_relevance(const std::vector<Message>& messages,
                                      const std::vector<std::string>& keywords) {
    KeywordMatcher matcher(keywords);
    std::vector<Message> out;
    for (const auto& m : messages)
        if (matcher.matches(m)) out.push_back(m);
    return out;
}

KeywordHistogram keyword_histogram(const std::vector<Message>& messages,
                                   const std::string& keyword, double bin_h) {
    if (!(bin_h > 0)) throw std::invalid_argument("bin_h must be positive");
    KeywordHistogram hist;
    hist.bin_h = bin_h;
    KeywordMatcher matcher({keyword});
    KeywordMatcher sandy_matcher({"sandy"});
    for (const auto& m : messages) {
        if (!matcher.matches(m)) continue;
        auto idx = static_cast<int64_t>(std::floor(m.offset_h / bin_h));
        ++hist.solo[idx];
        if (sandy_matcher.matches(m)) ++hist.with_sandy[idx];
    }
    return hist;
}

}  // namespace sns
