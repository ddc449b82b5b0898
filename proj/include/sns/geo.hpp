#ifndef SNS_GEO_HPP
#define SNS_GEO_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sns/ingest.hpp"
#include "sns/latlon.hpp"

namespace sns {

enum class GeoPrecision { exact, centroid };

struct GeoPoint {
    double lat = 0;
    double lon = 0;
    GeoPrecision precision = GeoPrecision::exact;

    LatLon position() const { return {lat, lon}; }
};

enum class AdminLevel { country, state_province, city };

AdminLevel parse_admin_level(std::string_view s);
const char* to_string(AdminLevel);

struct GazetteerEntry {
    std::string normalized_name;  // lowercase, punctuation stripped
    std::vector<std::string> alt_names;
    AdminLevel admin_level = AdminLevel::city;
    std::string country_code;  // 2-letter
    GeoPoint centroid;
    int64_t population = 0;
};

class Gazetteer {
public:
    // Names are normalized on insertion; alt names index to the same entry.
    void add(GazetteerEntry entry);
    size_t size() const { return entries_.size(); }
    const GazetteerEntry& entry(size_t i) const { return entries_[i]; }

    // Indices of entries matching an already-normalized name.
    std::span<const uint32_t> lookup(const std::string& normalized) const;

    // Best entry for a free-text location: the full normalized string first,
    // then comma-split components left to right (self-reports lead with the
    // most specific part). Ties break on admin specificity, then population,
    // then name.
    const GazetteerEntry* match(std::string_view free_text) const;

private:
    const GazetteerEntry* best_of(std::span<const uint32_t> candidates) const;

    std::vector<GazetteerEntry> entries_;
    std::unordered_map<std::string, std::vector<uint32_t>> by_name_;
};

// Device coordinates win; otherwise the best gazetteer centroid; otherwise
// nothing. Only profile data is consulted, never message text.
struct GeocodeResult {
    GeoPoint point;
    const GazetteerEntry* entry = nullptr;  // null for device coordinates
};

std::optional<GeocodeResult> geocode(const UserProfile& profile, const Gazetteer& gaz);

// Pipeline-level country filter. Device-coordinate results pass (no country
// attached); gazetteer results must resolve to the US or Canada.
bool passes_us_canada_filter(const GeocodeResult& r);

struct StormTrackPoint {
    int64_t time = 0;  // epoch seconds
    LatLon center;
    // Quadrant radii (NE, SE, SW, NW) in nautical miles per wind threshold.
    std::array<double, 4> r34{};
    std::array<double, 4> r50{};
    std::array<double, 4> r64{};

    double max_radius_nm(int threshold_kt) const;
};

struct AffectedArea {
    int threshold_kt = 34;
    // Closed rings (first vertex repeated last); the area is their union,
    // with per-ring membership by even-odd ray casting.
    std::vector<std::vector<LatLon>> rings;
};

// Sweeps a disk (max quadrant radius, approximated by an arc_segments-gon in
// a local equirectangular projection) along the track; each segment
// contributes the convex hull of its endpoint polygons.
AffectedArea build_affected_area(std::span<const StormTrackPoint> track, int threshold_kt,
                                 int arc_segments = 32);

// Boundary points count as inside.
bool is_affected(LatLon p, const AffectedArea& area);

struct GridSpec {
    double lat_min = 0, lat_max = 0, lon_min = 0, lon_max = 0;
    double cell_deg = 1;

    int rows() const;
    int cols() const;
    bool valid() const { return lat_min < lat_max && lon_min < lon_max && cell_deg > 0; }
};

// Floor indexing from the bbox origin; the bbox is half-open on its upper
// edges so each in-bbox point lands in exactly one cell, and interior edges
// belong to the higher-index cell.
std::optional<std::pair<int, int>> assign_cell(LatLon p, const GridSpec& g);

// Inverse corner of a cell, for exports.
std::array<LatLon, 4> cell_corners(int row, int col, const GridSpec& g);

constexpr double kNmPerDegLat = 60.0;  // 1 nm = 1/60 degree of latitude

}  // namespace sns

#endif
