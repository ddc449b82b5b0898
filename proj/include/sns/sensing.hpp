#ifndef SNS_SENSING_HPP
#define SNS_SENSING_HPP

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "sns/geo.hpp"
#include "sns/latlon.hpp"

namespace sns {

struct CellStat {
    int64_t count = 0;
    double mean_sentiment = 0;  // defined only when count > 0
};

struct GridSnapshot {
    int64_t hour = 0;        // bin index; start = hour * hour_h
    double hour_start_h = 0;
    std::map<std::pair<int, int>, CellStat> cells;
};

struct GridSample {
    double offset_h = 0;
    LatLon position;
    double score = 0;
};

struct GridAggregate {
    std::vector<GridSnapshot> snapshots;  // time-ordered, empty hours absent
    size_t off_grid = 0;                  // samples outside the bbox
};

GridAggregate grid_aggregate(std::span<const GridSample> samples, const GridSpec& g,
                             double hour_h = 1.0);

struct Alert {
    std::pair<int, int> cell;
    double start_h = 0;
    double end_h = 0;     // exclusive
    double severity = 0;  // max depth below the baseline median in MAD units
    int64_t count = 0;    // messages across the alert window
};

struct DetectorConfig {
    int64_t min_count = 20;
    double k_mad = 3.0;
    int persistence_hours = 2;
    int baseline_window_h = 72;       // must cover at least one diurnal cycle
    int min_baseline_samples = 24;
};

struct DetectReport {
    std::vector<Alert> alerts;             // ordered by (start, cell)
    size_t insufficient_history = 0;       // candidate hours skipped for lack of baseline
};

// A cell alerts when its hourly mean sentiment sits at least k_mad MADs below
// the median of its trailing window (candidate hours excluded from the
// baseline) with count >= min_count, for persistence_hours consecutive hours.
DetectReport detect(std::span<const GridSnapshot> snapshots, const DetectorConfig& cfg,
                    double hour_h = 1.0);

}  // namespace sns

#endif
