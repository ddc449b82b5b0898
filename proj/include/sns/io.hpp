#ifndef SNS_IO_HPP
#define SNS_IO_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "sns/geo.hpp"
#include "sns/ingest.hpp"
#include "sns/leadtime.hpp"
#include "sns/network.hpp"
#include "sns/sensing.hpp"
#include "sns/sentiment.hpp"

namespace sns {

// Every artifact gets a provenance comment line carrying the config hash and
// seed, so runs can be traced back to their exact parameters.
struct Provenance {
    std::string tool;
    uint64_t config_hash = 0;
    uint64_t seed = 0;

    std::string comment_line() const;
};

uint64_t fnv1a(std::string_view s);

// Message / profile files: UTF-8 JSON lines (see FieldMap for field names).
void write_messages_jsonl(const std::string& path, std::span<const Message> messages,
                          const FieldMap& fields = {});
void write_profiles_jsonl(const std::string& path, std::span<const UserProfile> profiles,
                          const FieldMap& fields = {});

// Edge file: "follower followee" per line, whitespace-delimited.
SocialGraph load_edges(const std::string& path);
void write_edges(const std::string& path, const SocialGraph& g);

// Gazetteer file: TSV {name, alt_names ('|' separated, may be empty),
// admin_level, country, lat, lon, population}, '#' comments allowed.
Gazetteer load_gazetteer(const std::string& path);

// Track file: delimited {timestamp, lat, lon, r34_ne..r34_nw, r50_.., r64_..}
// in nautical miles, comma or whitespace separated, '#' comments allowed.
std::vector<StormTrackPoint> load_track(const std::string& path);
void write_track(const std::string& path, std::span<const StormTrackPoint> track);

// Lexicon file: "token weight" per line.
Lexicon load_lexicon(const std::string& path, const std::string& name = "lexicon");

// Truth file: TSV {user, awareness_h}.
void write_truth(const std::string& path,
                 const std::unordered_map<std::string, double>& awareness);
std::unordered_map<std::string, double> load_truth(const std::string& path);

// Delimited tables (TSV with a header row and a leading provenance comment).
void write_sweep_table(const std::string& path, std::span<const LeadTimeResult> rows,
                       const Provenance& prov);
std::vector<LeadTimeResult> load_sweep_table(const std::string& path);

void write_cdf(const std::string& path, const CdfCurve& curve, const Provenance& prov);
void write_trend(const std::string& path, const TrendSeries& s, const Provenance& prov);
TrendSeries load_trend(const std::string& path);
void write_composition(const std::string& path, const CompositionSeries& s,
                       const Provenance& prov);
void write_groups(const std::string& path, const SampleGroup& control,
                  const SampleGroup& sensor, const SocialGraph& g, const Provenance& prov);
struct LoadedGroups {
    std::vector<std::string> control;
    std::vector<std::string> sensor;
};
LoadedGroups load_groups(const std::string& path);
void write_alerts(const std::string& path, std::span<const Alert> alerts,
                  const GridSpec& grid, const Provenance& prov);
void write_activity_profile(const std::string& path, const ActivityProfile& prof,
                            const Provenance& prov);
void write_histogram(const std::string& path, const KeywordHistogram& hist,
                     const Provenance& prov);

// GeoJSON exports.
nlohmann::json area_to_geojson(const AffectedArea& area, const Provenance& prov);
AffectedArea area_from_geojson(const nlohmann::json& j);
void write_area_geojson(const std::string& path, const AffectedArea& area,
                        const Provenance& prov);
AffectedArea load_area_geojson(const std::string& path);
nlohmann::json snapshot_to_geojson(const GridSnapshot& snap, const GridSpec& g,
                                   const Provenance& prov);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace sns

#endif
