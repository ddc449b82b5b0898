#include "sns/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_map>

#include "sns/errors.hpp"

namespace sns {

GridAggregate grid_aggregate(std::span<const GridSample> samples, const GridSpec& g,
                             double hour_h) {
    if (!g.valid()) throw std::invalid_argument("invalid grid spec");
    if (!(hour_h > 0)) throw std::invalid_argument("hour_h must be positive");

    struct Acc {
        int64_t count = 0;
        double sum = 0;
    };
    std::map<int64_t, std::map<std::pair<int, int>, Acc>> hours;
    GridAggregate out;
    for (const auto& s : samples) {
        auto cell = assign_cell(s.position, g);
        if (!cell) {
            ++out.off_grid;
            continue;
        }
        auto hour = static_cast<int64_t>(std::floor(s.offset_h / hour_h));
        Acc& a = hours[hour][*cell];
        ++a.count;
        a.sum += s.score;
    }
    out.snapshots.reserve(hours.size());
    for (const auto& [hour, cells] : hours) {
        GridSnapshot snap;
        snap.hour = hour;
        snap.hour_start_h = static_cast<double>(hour) * hour_h;
        for (const auto& [cell, acc] : cells)
            snap.cells[cell] = {acc.count, acc.sum / static_cast<double>(acc.count)};
        out.snapshots.push_back(std::move(snap));
    }
    return out;
}

namespace {

double median_of(std::vector<double>& v) {
    const size_t n = v.size();
    auto mid = v.begin() + static_cast<ptrdiff_t>(n / 2);
    std::nth_element(v.begin(), mid, v.end());
    double m = *mid;
    if (n % 2 == 0) {
        auto lower = std::max_element(v.begin(), mid);
        m = (m + *lower) / 2.0;
    }
    return m;
}

struct HistEntry {
    int64_t hour;
    double mean;
    bool candidate;
};

struct CellState {
    std::deque<HistEntry> history;
    bool streak_open = false;
    int64_t streak_start = 0;
    int64_t streak_last = 0;
    double max_severity = 0;
    int64_t msg_count = 0;
};

}  // namespace

DetectReport detect(std::span<const GridSnapshot> snapshots, const DetectorConfig& cfg,
                    double hour_h) {
    if (cfg.baseline_window_h < 24)
        throw std::invalid_argument("baseline window must cover >= 24 hours");
    if (cfg.persistence_hours < 1)
        throw std::invalid_argument("persistence_hours must be >= 1");

    DetectReport report;
    std::map<std::pair<int, int>, CellState> states;

    auto close_streak = [&](const std::pair<int, int>& cell, CellState& st) {
        if (!st.streak_open) return;
        const int64_t len = st.streak_last - st.streak_start + 1;
        if (len >= cfg.persistence_hours) {
            Alert a;
            a.cell = cell;
            a.start_h = static_cast<double>(st.streak_start) * hour_h;
            a.end_h = static_cast<double>(st.streak_last + 1) * hour_h;
            a.severity = st.max_severity;
            a.count = st.msg_count;
            report.alerts.push_back(a);
        }
        st.streak_open = false;
        st.max_severity = 0;
        st.msg_count = 0;
    };

    std::vector<double> baseline, deviations;
    for (const auto& snap : snapshots) {
        for (const auto& [cell, stat] : snap.cells) {
            if (stat.count <= 0) continue;
            CellState& st = states[cell];

            // A gap in the cell's hourly presence breaks any running streak.
            if (st.streak_open && snap.hour != st.streak_last + 1) close_streak(cell, st);

            while (!st.history.empty() &&
                   st.history.front().hour < snap.hour - cfg.baseline_window_h)
                st.history.pop_front();

            baseline.clear();
            for (const auto& h : st.history)
                if (!h.candidate) baseline.push_back(h.mean);

            bool candidate = false;
            double severity = 0;
            if (stat.count >= cfg.min_count) {
                if (static_cast<int>(baseline.size()) < cfg.min_baseline_samples) {
                    ++report.insufficient_history;
                } else {
                    const double med = median_of(baseline);
                    deviations.clear();
                    for (double x : baseline) deviations.push_back(std::abs(x - med));
                    const double mad = median_of(deviations);
                    const double deficit = med - stat.mean_sentiment;
                    if (deficit > 0 && deficit >= cfg.k_mad * mad) {
                        candidate = true;
                        severity = deficit / std::max(mad, 1e-9);
                    }
                }
            }

            if (candidate) {
                if (!st.streak_open) {
                    st.streak_open = true;
                    st.streak_start = snap.hour;
                }
                st.streak_last = snap.hour;
                st.max_severity = std::max(st.max_severity, severity);
                st.msg_count += stat.count;
            } else {
                close_streak(cell, st);
            }
            st.history.push_back({snap.hour, stat.mean_sentiment, candidate});
        }
    }
    for (auto& [cell, st] : states) close_streak(cell, st);

    std::sort(report.alerts.begin(), report.alerts.end(), [](const Alert& a, const Alert& b) {
        if (a.start_h != b.start_h) return a.start_h < b.start_h;
        return a.cell < b.cell;
    });
    return report;
}

}  // namespace sns
