#include "sns/geo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sns/errors.hpp"
#include "sns/text.hpp"

namespace sns {

AdminLevel parse_admin_level(std::string_view s) {
    if (s == "country") return AdminLevel::country;
    if (s == "state" || s == "province" || s == "state_province")
        return AdminLevel::state_province;
    if (s == "city" || s == "town") return AdminLevel::city;
    throw std::invalid_argument("unknown admin level: " + std::string(s));
}

const char* to_string(AdminLevel l) {
    switch (l) {
        case AdminLevel::country: return "country";
        case AdminLevel::state_province: return "state_province";
        case AdminLevel::city: return "city";
    }
    return "?";
}

void Gazetteer::add(GazetteerEntry entry) {
    entry.normalized_name = normalize_place_name(entry.normalized_name);
    for (auto& alt : entry.alt_names) alt = normalize_place_name(alt);
    const auto idx = static_cast<uint32_t>(entries_.size());
    by_name_[entry.normalized_name].push_back(idx);
    for (const auto& alt : entry.alt_names)
        if (alt != entry.normalized_name) by_name_[alt].push_back(idx);
    entries_.push_back(std::move(entry));
}

std::span<const uint32_t> Gazetteer::lookup(const std::string& normalized) const {
    auto it = by_name_.find(normalized);
    if (it == by_name_.end()) return {};
    return it->second;
}

const GazetteerEntry* Gazetteer::best_of(std::span<const uint32_t> candidates) const {
    const GazetteerEntry* best = nullptr;
    for (uint32_t idx : candidates) {
        const GazetteerEntry& e = entries_[idx];
        if (!best) {
            best = &e;
            continue;
        }
        // city > state_province > country, then population, then name.
        auto spec = [](AdminLevel l) {
            return l == AdminLevel::city ? 2 : l == AdminLevel::state_province ? 1 : 0;
        };
        if (spec(e.admin_level) != spec(best->admin_level)) {
            if (spec(e.admin_level) > spec(best->admin_level)) best = &e;
        } else if (e.population != best->population) {
            if (e.population > best->population) best = &e;
        } else if (e.normalized_name < best->normalized_name) {
            best = &e;
        }
    }
    return best;
}

const GazetteerEntry* Gazetteer::match(std::string_view free_text) const {
    std::string whole = normalize_place_name(free_text);
    if (whole.empty()) return nullptr;
    if (const auto* e = best_of(lookup(whole))) return e;

    size_t start = 0;
    while (start <= free_text.size()) {
        size_t comma = free_text.find(',', start);
        std::string_view part = free_text.substr(
            start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        std::string norm = normalize_place_name(part);
        if (!norm.empty() && norm != whole)
            if (const auto* e = best_of(lookup(norm))) return e;
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return nullptr;
}

std::optional<GeocodeResult> geocode(const UserProfile& profile, const Gazetteer& gaz) {
    if (profile.geopoint) {
        GeoPoint p{profile.geopoint->lat, profile.geopoint->lon, GeoPrecision::exact};
        return GeocodeResult{p, nullptr};
    }
    if (profile.self_location.empty()) return std::nullopt;
    const GazetteerEntry* e = gaz.match(profile.self_location);
    if (!e) return std::nullopt;
    GeoPoint p = e->centroid;
    p.precision = GeoPrecision::centroid;
    return GeocodeResult{p, e};
}

bool passes_us_canada_filter(const GeocodeResult& r) {
    if (!r.entry) return true;
    return r.entry->country_code == "US" || r.entry->country_code == "CA";
}

double StormTrackPoint::max_radius_nm(int threshold_kt) const {
    const std::array<double, 4>* radii = nullptr;
    switch (threshold_kt) {
        case 34: radii = &r34; break;
        case 50: radii = &r50; break;
        case 64: radii = &r64; break;
        default: throw std::invalid_argument("wind threshold must be 34, 50 or 64 kt");
    }
    return *std::max_element(radii->begin(), radii->end());
}

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

struct XY {
    double x, y;
};

// Local equirectangular plane: y = lat, x = lon * cos(ref_lat).
XY project(LatLon p, double ref_lat_deg) {
    return {p.lon * std::cos(ref_lat_deg * kDegToRad), p.lat};
}

double cross(XY o, XY a, XY b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Andrew monotone chain; returns indices into pts in hull order (CCW).
std::vector<size_t> convex_hull(const std::vector<XY>& pts) {
    std::vector<size_t> order(pts.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (pts[a].x != pts[b].x) return pts[a].x < pts[b].x;
        return pts[a].y < pts[b].y;
    });
    order.erase(std::unique(order.begin(), order.end(),
                            [&](size_t a, size_t b) {
                                return pts[a].x == pts[b].x && pts[a].y == pts[b].y;
                            }),
                order.end());
    if (order.size() < 3) return order;

    std::vector<size_t> hull(2 * order.size());
    size_t k = 0;
    for (size_t idx : order) {
        while (k >= 2 && cross(pts[hull[k - 2]], pts[hull[k - 1]], pts[idx]) <= 0) --k;
        hull[k++] = idx;
    }
    const size_t lower = k + 1;
    for (auto it = order.rbegin() + 1; it != order.rend(); ++it) {
        while (k >= lower && cross(pts[hull[k - 2]], pts[hull[k - 1]], pts[*it]) <= 0) --k;
        hull[k++] = *it;
    }
    hull.resize(k - 1);
    return hull;
}

// arc_segments-gon circumscribing the disk of the given geodesic radius, so
// every point within radius_nm of the center is inside the polygon (the
// discretization error is all on the outside).
std::vector<LatLon> disk_polygon(LatLon c, double radius_nm, int arc_segments) {
    std::vector<LatLon> out;
    if (radius_nm <= 0) {
        out.push_back(c);
        return out;
    }
    out.reserve(static_cast<size_t>(arc_segments));
    const double r_deg =
        radius_nm / kNmPerDegLat / std::cos(std::numbers::pi / arc_segments);
    const double lon_scale = 1.0 / std::max(0.05, std::cos(c.lat * kDegToRad));
    for (int k = 0; k < arc_segments; ++k) {
        double a = 2.0 * std::numbers::pi * k / arc_segments;
        out.push_back({c.lat + r_deg * std::sin(a), c.lon + r_deg * std::cos(a) * lon_scale});
    }
    return out;
}

std::vector<LatLon> hull_ring(const std::vector<LatLon>& points) {
    double ref_lat = 0;
    for (const auto& p : points) ref_lat += p.lat;
    ref_lat /= static_cast<double>(points.size());

    std::vector<XY> proj;
    proj.reserve(points.size());
    for (const auto& p : points) proj.push_back(project(p, ref_lat));

    auto hull = convex_hull(proj);
    std::vector<LatLon> ring;
    ring.reserve(hull.size() + 1);
    for (size_t idx : hull) ring.push_back(points[idx]);
    if (!ring.empty()) ring.push_back(ring.front());  // close
    return ring;
}

}  // namespace

AffectedArea build_affected_area(std::span<const StormTrackPoint> track, int threshold_kt,
                                 int arc_segments) {
    if (threshold_kt != 34 && threshold_kt != 50 && threshold_kt != 64)
        throw std::invalid_argument("wind threshold must be 34, 50 or 64 kt");
    if (arc_segments < 8) throw std::invalid_argument("arc_segments must be >= 8");
    if (track.empty()) throw std::invalid_argument("empty storm track");

    std::vector<double> radius(track.size());
    bool any_positive = false;
    for (size_t i = 0; i < track.size(); ++i) {
        radius[i] = track[i].max_radius_nm(threshold_kt);
        any_positive = any_positive || radius[i] > 0;
    }
    if (!any_positive)
        throw DataError("empty area: all wind radii are zero at the requested threshold");

    AffectedArea area;
    area.threshold_kt = threshold_kt;

    if (track.size() == 1) {
        auto ring = disk_polygon(track[0].center, radius[0], arc_segments);
        ring.push_back(ring.front());
        area.rings.push_back(std::move(ring));
        return area;
    }

    for (size_t i = 0; i + 1 < track.size(); ++i) {
        if (radius[i] <= 0 && radius[i + 1] <= 0) continue;
        auto pts = disk_polygon(track[i].center, radius[i], arc_segments);
        auto pts2 = disk_polygon(track[i + 1].center, radius[i + 1], arc_segments);
        pts.insert(pts.end(), pts2.begin(), pts2.end());
        auto ring = hull_ring(pts);
        if (ring.size() >= 4) area.rings.push_back(std::move(ring));
    }
    if (area.rings.empty())
        throw DataError("empty area: track produced no usable polygon");
    return area;
}

namespace {

bool ring_contains(LatLon p, const std::vector<LatLon>& ring) {
    const size_t n = ring.size();
    if (n < 2) return false;
    // Boundary test first so edge points count as inside regardless of the
    // crossing parity on them.
    constexpr double kEps = 1e-12;
    for (size_t i = 0; i + 1 < n; ++i) {
        const LatLon a = ring[i], b = ring[i + 1];
        double crossv = (b.lon - a.lon) * (p.lat - a.lat) - (b.lat - a.lat) * (p.lon - a.lon);
        double scale = std::abs(b.lon - a.lon) + std::abs(b.lat - a.lat) + 1.0;
        if (std::abs(crossv) <= kEps * scale &&
            p.lon >= std::min(a.lon, b.lon) - kEps && p.lon <= std::max(a.lon, b.lon) + kEps &&
            p.lat >= std::min(a.lat, b.lat) - kEps && p.lat <= std::max(a.lat, b.lat) + kEps)
            return true;
    }
    bool inside = false;
    for (size_t i = 0; i + 1 < n; ++i) {
        const LatLon a = ring[i], b = ring[i + 1];
        if ((a.lat > p.lat) != (b.lat > p.lat)) {
            double x = a.lon + (b.lon - a.lon) * (p.lat - a.lat) / (b.lat - a.lat);
            if (p.lon < x) inside = !inside;
        }
    }
    return inside;
}

}  // namespace

bool is_affected(LatLon p, const AffectedArea& area) {
    for (const auto& ring : area.rings)
        if (ring_contains(p, ring)) return true;
    return false;
}

int GridSpec::rows() const {
    return static_cast<int>(std::ceil((lat_max - lat_min) / cell_deg - 1e-9));
}

int GridSpec::cols() const {
    return static_cast<int>(std::ceil((lon_max - lon_min) / cell_deg - 1e-9));
}

std::optional<std::pair<int, int>> assign_cell(LatLon p, const GridSpec& g) {
    if (!g.valid()) throw std::invalid_argument("invalid grid spec");
    if (p.lat < g.lat_min || p.lat >= g.lat_max || p.lon < g.lon_min || p.lon >= g.lon_max)
        return std::nullopt;
    int row = static_cast<int>(std::floor((p.lat - g.lat_min) / g.cell_deg));
    int col = static_cast<int>(std::floor((p.lon - g.lon_min) / g.cell_deg));
    row = std::min(row, g.rows() - 1);
    col = std::min(col, g.cols() - 1);
    return std::make_pair(row, col);
}

std::array<LatLon, 4> cell_corners(int row, int col, const GridSpec& g) {
    double lat0 = g.lat_min + row * g.cell_deg;
    double lon0 = g.lon_min + col * g.cell_deg;
    double lat1 = std::min(lat0 + g.cell_deg, g.lat_max);
    double lon1 = std::min(lon0 + g.cell_deg, g.lon_max);
    return {LatLon{lat0, lon0}, LatLon{lat0, lon1}, LatLon{lat1, lon1}, LatLon{lat1, lon0}};
}

}  // namespace sns
