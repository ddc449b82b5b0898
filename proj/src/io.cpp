#include "sns/io.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "sns/chrono.hpp"
#include "sns/errors.hpp"

namespace sns {

using nlohmann::json;

namespace {

std::string fmt(double v) {
    if (std::isnan(v)) return "";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    return in;
}

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    size_t pos = 0;
    while (true) {
        size_t tab = line.find('\t', pos);
        if (tab == std::string::npos) {
            fields.push_back(line.substr(pos));
            break;
        }
        fields.push_back(line.substr(pos, tab - pos));
        pos = tab + 1;
    }
    return fields;
}

bool skip_line(const std::string& line) {
    return line.empty() || line[0] == '#';
}

double parse_double_field(const std::string& s) {
    if (s.empty()) return std::numeric_limits<double>::quiet_NaN();
    return std::stod(s);
}

}  // namespace

std::string Provenance::comment_line() const {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "# sns-%s\tconfig_hash=%016" PRIx64 "\tseed=%" PRIu64,
                  tool.c_str(), config_hash, seed);
    return buf;
}

uint64_t fnv1a(std::string_view s) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

void write_messages_jsonl(const std::string& path, std::span<const Message> messages,
                          const FieldMap& fields) {
    auto out = open_out(path);
    for (const auto& m : messages) out << message_to_json_line(m, fields) << '\n';
    if (!out) throw IoError("write failure on " + path);
}

void write_profiles_jsonl(const std::string& path, std::span<const UserProfile> profiles,
                          const FieldMap& fields) {
    auto out = open_out(path);
    for (const auto& p : profiles) {
        json obj;
        obj[fields.user] = p.user_id;
        if (!p.self_location.empty()) obj[fields.location] = p.self_location;
        obj[fields.friends] = p.friends_count;
        obj[fields.followers] = p.followers_count;
        out << obj.dump() << '\n';
    }
    if (!out) throw IoError("write failure on " + path);
}

SocialGraph load_edges(const std::string& path) {
    auto in = open_in(path);
    SocialGraph g;
    std::string line;
    while (std::getline(in, line)) {
        if (skip_line(line)) continue;
        std::istringstream ss(line);
        std::string follower, followee;
        if (!(ss >> follower >> followee))
            throw DataError("bad edge line in " + path + ": " + line);
        g.add_edge(follower, followee);
    }
    g.finalize();
    return g;
}

void write_edges(const std::string& path, const SocialGraph& g) {
    auto out = open_out(path);
    for (int u = 0; u < g.size(); ++u)
        for (int v : g.friends(u)) out << g.user_id(u) << ' ' << g.user_id(v) << '\n';
    if (!out) throw IoError("write failure on " + path);
}

Gazetteer load_gazetteer(const std::string& path) {
    auto in = open_in(path);
    Gazetteer gaz;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (skip_line(line)) continue;
        auto f = split_tabs(line);
        if (f.size() < 7) throw DataError("bad gazetteer line: " + line);
        GazetteerEntry e;
        e.normalized_name = f[0];
        if (!f[1].empty()) {
            size_t pos = 0;
            while (pos <= f[1].size()) {
                size_t bar = f[1].find('|', pos);
                std::string alt =
                    f[1].substr(pos, bar == std::string::npos ? std::string::npos : bar - pos);
                if (!alt.empty()) e.alt_names.push_back(alt);
                if (bar == std::string::npos) break;
                pos = bar + 1;
            }
        }
        e.admin_level = parse_admin_level(f[2]);
        e.country_code = f[3];
        e.centroid = {std::stod(f[4]), std::stod(f[5]), GeoPrecision::centroid};
        e.population = std::stoll(f[6]);
        gaz.add(std::move(e));
    }
    return gaz;
}

namespace {

std::vector<std::string> split_loose(const std::string& line) {
    std::string cleaned = line;
    for (auto& c : cleaned)
        if (c == ',') c = ' ';
    std::istringstream ss(cleaned);
    std::vector<std::string> fields;
    std::string tok;
    while (ss >> tok) fields.push_back(tok);
    return fields;
}

}  // namespace

std::vector<StormTrackPoint> load_track(const std::string& path) {
    auto in = open_in(path);
    std::vector<StormTrackPoint> track;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (skip_line(line)) continue;
        auto f = split_loose(line);
        if (f.size() < 15) throw DataError("bad track line (need 15 fields): " + line);
        StormTrackPoint p;
        auto ts = parse_instant(f[0]);
        if (!ts) throw DataError("bad track timestamp: " + f[0]);
        p.time = *ts;
        p.center = {std::stod(f[1]), std::stod(f[2])};
        for (int q = 0; q < 4; ++q) p.r34[static_cast<size_t>(q)] = std::stod(f[3 + static_cast<size_t>(q)]);
        for (int q = 0; q < 4; ++q) p.r50[static_cast<size_t>(q)] = std::stod(f[7 + static_cast<size_t>(q)]);
        for (int q = 0; q < 4; ++q) p.r64[static_cast<size_t>(q)] = std::stod(f[11 + static_cast<size_t>(q)]);
        for (double r : p.r34) if (r < 0) throw DataError("negative wind radius: " + line);
        for (double r : p.r50) if (r < 0) throw DataError("negative wind radius: " + line);
        for (double r : p.r64) if (r < 0) throw DataError("negative wind radius: " + line);
        track.push_back(p);
    }
    return track;
}

void write_track(const std::string& path, std::span<const StormTrackPoint> track) {
    auto out = open_out(path);
    out << "# timestamp\tlat\tlon\tr34_ne\tr34_se\tr34_sw\tr34_nw\tr50_ne\tr50_se\tr50_sw\t"
           "r50_nw\tr64_ne\tr64_se\tr64_sw\tr64_nw\n";
    for (const auto& p : track) {
        out << format_iso(p.time) << '\t' << fmt(p.center.lat) << '\t' << fmt(p.center.lon);
        for (double r : p.r34) out << '\t' << fmt(r);
        for (double r : p.r50) out << '\t' << fmt(r);
        for (double r : p.r64) out << '\t' << fmt(r);
        out << '\n';
    }
    if (!out) throw IoError("write failure on " + path);
}

Lexicon load_lexicon(const std::string& path, const std::string& name) {
    auto in = open_in(path);
    std::vector<std::pair<std::string, double>> entries;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (skip_line(line)) continue;
        std::istringstream ss(line);
        std::string token;
        double weight;
        if (!(ss >> token >> weight)) throw DataError("bad lexicon line: " + line);
        entries.emplace_back(std::move(token), weight);
    }
    return make_lexicon(name, std::move(entries));
}

void write_truth(const std::string& path,
                 const std::unordered_map<std::string, double>& awareness) {
    auto out = open_out(path);
    out << "user\tawareness_h\n";
    std::vector<std::pair<std::string, double>> rows(awareness.begin(), awareness.end());
    std::sort(rows.begin(), rows.end());
    for (const auto& [user, t] : rows) out << user << '\t' << fmt(t) << '\n';
    if (!out) throw IoError("write failure on " + path);
}

std::unordered_map<std::string, double> load_truth(const std::string& path) {
    auto in = open_in(path);
    std::unordered_map<std::string, double> truth;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (skip_line(line)) continue;
        if (header) { header = false; continue; }
        auto f = split_tabs(line);
        if (f.size() != 2) throw DataError("bad truth line: " + line);
        truth[f[0]] = std::stod(f[1]);
    }
    return truth;
}

void write_sweep_table(const std::string& path, std::span<const LeadTimeResult> rows,
                       const Provenance& prov) {
    auto out = open_out(path);
    out << prov.comment_line() << '\n';
    out << "size\tcombo\ttrials\tdt\tdt_sigma\tmean_tc\tmean_ts\tn_c\tn_s\n";
    for (const auto& r : rows) {
        out << r.sample_size << '\t' << to_string(r.combo) << '\t' << r.trials << '\t'
            << fmt(r.dt) << '\t' << fmt(r.dt_sigma) << '\t' << fmt(r.mean_tc) << '\t'
            << fmt(r.mean_ts) << '\t' << fmt(r.n_c) << '\t' << fmt(r.n_s) << '\n';
    }
    if (!out) throw IoError("write failure on " + path);
}

std::vector<LeadTimeResult> load_sweep_table(const std::string& path) {
    auto in = open_in(path);
    std::vector<LeadTimeResult> rows;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (skip_line(line)) continue;
        if (!header_seen) { header_seen = true; continue; }
        auto f = split_tabs(line);
        if (f.size() != 9) throw DataError("bad sweep row: " + line);
        LeadTimeResult r;
        r.sample_size = std::stoi(f[0]);
        r.combo = parse_geo_combo(f[1]);
        r.trials = std::stoi(f[2]);
        r.dt = parse_double_field(f[3]);
        r.dt_sigma = parse_double_field(f[4]);
        r.mean_tc = parse_double_field(f[5]);
        r.mean_ts = parse_double_field(f[6]);
        r.n_c = parse_double_field(f[7]);
        r.n_s = parse_double_field(f[8]);
        rows.push_back(r);
    }
    return rows;
}

void write_cdf(const std::string& path, const CdfCurve& curve, const Provenance& prov) {
    auto out = open_out(path);
    out << prov.comment_line() << '\n';
    out << "offset_h\tcdf\n";
    for (size_t i = 0; i < curve.grid.size(); ++i)
        out << fmt(curve.grid[i]) << '\t' << fmt(curve.value[i]) << '\n';
    if (!out) throw IoError("write failure on " + path);
}

void write_trend(const std::string& path, const TrendSeries& s, const Provenance& prov) {
    auto out = open_out(path);
    out << prov.comment_line() << '\n';
    out << "bin_start_h\tvalue\tcount\n";
    for (size_t i = 0; i < s.size(); ++i)
        out << fmt(s.bin_start(i)) << '\t' << fmt(s.value[i]) << '\t' << s.count[i] << '\n';
    if (!out) throw IoError("write failure on " + path);
}

TrendSeries load_trend(const std::string& path) {
    auto in = open_in(path);
    std::vector<std::pair<double, std::pair<double, int64_t>>> rows;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (skip_line(line)) continue;
        if (!header_seen) { header_seen = true; continue; }
        auto f = split_tabs(line);
        if (f.size() != 3) throw DataError("bad trend row: " + line);
        rows.push_back({std::stod(f[0]), {parse_double_field(f[1]), std::stoll(f[2])}});
    }
    TrendSeries s;
    if (rows.empty()) return s;
    const double bin_h = rows.size() > 1 ? rows[1].first - rows[0].first : 1.0;
    s.bin_h = bin_h;
    s.start_h = rows[0].first;
    for (const auto& [start, vc] : rows) {
        (void)start;
        s.value.push_back(vc.first);
        s.count.push_back(vc.second);
    }
    return s;
}

void write_composition(const std::string& path, const CompositionSeries& s,
                       const Provenance& prov) {
    auto out = open_out(path);
    out << prov.comment_line() << '\n';
    out << "bin_start_h\tpos\tneg\tneutral\tcount\n";
    for (size_t i = 0; i < s.size(); ++i)
        out << fmt(s.bin_start(i)) << '\t' << fmt(s.pos[i]) << '\t' << fmt(s.neg[i]) << '\t'
            << fmt(s.neu[i]) << '\t' << s.count[i] << '\n';
    if (!out) throw IoError("write failure on " + path);
}

void write_groups(const std::string& path, const SampleGroup& control,
                  const SampleGroup& sensor, const SocialGraph& g, const Provenance& prov) {
    auto out = open_out(path);
    out << prov.comment_line() << '\n';
    out << "kind\tuser_id\tseed\tcombo\n";
    for (int u : control.members)
        out << "control\t" << g.user_id(u) << '\t' << control.seed << '\t'
            << to_string(control.combo) << '\n';
    for (int u : sensor.members)
        out << "sensor\t" << g.user_id(u) << '\t' << sensor.seed << '\t'
            << to_string(sensor.combo) << '\n';
    if (!out) throw IoError("write failure on " + path);
}

LoadedGroups load_groups(const std::string& path) {
    auto in = open_in(path);
    LoadedGroups groups;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (skip_line(line)) continue;
        if (!header_seen) { header_seen = true; continue; }
        auto f = split_tabs(line);
        if (f.size() != 4) throw DataError("bad group row: " + line);
        if (f[0] == "control") groups.control.push_back(f[1]);
        else if (f[0] == "sensor") groups.sensor.push_back(f[1]);
        else throw DataError("unknown group kind: " + f[0]);
    }
    return groups;
}

void write_alerts(const std::string& path, std::span<const Alert> alerts,
                  const GridSpec& grid, const Provenance& prov) {
    auto out = open_out(path);
    out << prov.comment_line() << '\n';
    out << "row\tcol\tcenter_lat\tcenter_lon\tstart_h\tend_h\tseverity\tcount\n";
    for (const auto& a : alerts) {
        const double clat = grid.lat_min + (a.cell.first + 0.5) * grid.cell_deg;
        const double clon = grid.lon_min + (a.cell.second + 0.5) * grid.cell_deg;
        out << a.cell.first << '\t' << a.cell.second << '\t' << fmt(clat) << '\t' << fmt(clon)
            << '\t' << fmt(a.start_h) << '\t' << fmt(a.end_h) << '\t' << fmt(a.severity)
            << '\t' << a.count << '\n';
    }
    if (!out) throw IoError("write failure on " + path);
}

void write_activity_profile(const std::string& path, const ActivityProfile& prof,
                            const Provenance& prov) {
    auto out = open_out(path);
    out << prov.comment_line() << '\n';
    out << "bin_start_h\tmean_activity\tmean_in_degree\tmean_out_degree\tcount\n";
    for (size_t i = 0; i < prof.bin_index.size(); ++i)
        out << fmt(static_cast<double>(prof.bin_index[i]) * prof.bin_h) << '\t'
            << fmt(prof.mean_activity[i]) << '\t' << fmt(prof.mean_in_degree[i]) << '\t'
            << fmt(prof.mean_out_degree[i]) << '\t' << prof.count[i] << '\n';
    if (!out) throw IoError("write failure on " + path);
}

void write_histogram(const std::string& path, const KeywordHistogram& hist,
                     const Provenance& prov) {
    auto out = open_out(path);
    out << prov.comment_line() << '\n';
    out << "bin_start_h\tcount\twith_sandy\n";
    for (const auto& [idx, count] : hist.solo) {
        auto it = hist.with_sandy.find(idx);
        const size_t with = it == hist.with_sandy.end() ? 0 : it->second;
        out << fmt(static_cast<double>(idx) * hist.bin_h) << '\t' << count << '\t' << with
            << '\n';
    }
    if (!out) throw IoError("write failure on " + path);
}

nlohmann::json area_to_geojson(const AffectedArea& area, const Provenance& prov) {
    json coords = json::array();
    for (const auto& ring : area.rings) {
        json jring = json::array();
        for (const auto& p : ring) jring.push_back({p.lon, p.lat});
        coords.push_back(json::array({jring}));
    }
    json feature;
    feature["type"] = "Feature";
    feature["geometry"] = {{"type", "MultiPolygon"}, {"coordinates", coords}};
    feature["properties"] = {{"threshold_kt", area.threshold_kt},
                             {"tool", prov.tool},
                             {"config_hash", prov.config_hash},
                             {"seed", prov.seed}};
    return feature;
}

AffectedArea area_from_geojson(const nlohmann::json& j) {
    const json* geometry = &j;
    AffectedArea area;
    if (j.contains("geometry")) geometry = &j.at("geometry");
    if (j.contains("properties") && j.at("properties").contains("threshold_kt"))
        area.threshold_kt = j.at("properties").at("threshold_kt").get<int>();
    if (geometry->at("type").get<std::string>() != "MultiPolygon")
        throw DataError("expected a MultiPolygon area");
    for (const auto& poly : geometry->at("coordinates")) {
        for (const auto& jring : poly) {
            std::vector<LatLon> ring;
            for (const auto& pt : jring)
                ring.push_back({pt.at(1).get<double>(), pt.at(0).get<double>()});
            area.rings.push_back(std::move(ring));
        }
    }
    return area;
}

void write_area_geojson(const std::string& path, const AffectedArea& area,
                        const Provenance& prov) {
    auto out = open_out(path);
    out << area_to_geojson(area, prov).dump(2) << '\n';
    if (!out) throw IoError("write failure on " + path);
}

AffectedArea load_area_geojson(const std::string& path) {
    auto in = open_in(path);
    json j = json::parse(in, nullptr, true);
    return area_from_geojson(j);
}

nlohmann::json snapshot_to_geojson(const GridSnapshot& snap, const GridSpec& g,
                                   const Provenance& prov) {
    json features = json::array();
    for (const auto& [cell, stat] : snap.cells) {
        auto corners = cell_corners(cell.first, cell.second, g);
        json ring = json::array();
        for (const auto& p : corners) ring.push_back({p.lon, p.lat});
        ring.push_back({corners[0].lon, corners[0].lat});
        json feature;
        feature["type"] = "Feature";
        feature["geometry"] = {{"type", "Polygon"}, {"coordinates", json::array({ring})}};
        feature["properties"] = {{"row", cell.first},
                                 {"col", cell.second},
                                 {"count", stat.count},
                                 {"mean_sentiment", stat.mean_sentiment}};
        features.push_back(std::move(feature));
    }
    json fc;
    fc["type"] = "FeatureCollection";
    fc["features"] = std::move(features);
    fc["metadata"] = {{"hour_start_h", snap.hour_start_h},
                      {"tool", prov.tool},
                      {"config_hash", prov.config_hash},
                      {"seed", prov.seed}};
    return fc;
}

void write_text_file(const std::string& path, const std::string& content) {
    auto out = open_out(path);
    out << content;
    if (!out) throw IoError("write failure on " + path);
}

std::string read_text_file(const std::string& path) {
    auto in = open_in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

}  // namespace sns
