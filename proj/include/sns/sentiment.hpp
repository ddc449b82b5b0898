#ifndef SNS_SENTIMENT_HPP
#define SNS_SENTIMENT_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace sns {

struct Lexicon {
    std::string name;
    std::unordered_map<std::string, double> weights;  // folded token -> [-1, 1]
};

// Validates tokens (re-folded) and weight range.
Lexicon make_lexicon(std::string name,
                     std::vector<std::pair<std::string, double>> entries);

struct SentimentScore {
    double relative = 0;  // signed weight sum / token count
    double absolute = 0;  // |weight| sum / token count
    int discrete = 0;     // sign of relative: -1, 0, +1
};

// Bag-of-words lexicon scorer, normalized by the total token count (set
// matched_only to divide by matched tokens instead). Empty text scores zero.
SentimentScore score_message(std::string_view text, const Lexicon& lex,
                             bool matched_only = false);

// posemo - 1.5 * negemo; both inputs must be nonnegative category rates.
double combine_polarity(double posemo, double negemo);

struct TrendSeries {
    double start_h = 0;  // start of the first bin
    double bin_h = 1;
    std::vector<double> value;   // NaN where missing
    std::vector<int64_t> count;  // missing <=> count == 0

    size_t size() const { return value.size(); }
    bool missing(size_t i) const { return count[i] == 0; }
    double bin_start(size_t i) const { return start_h + static_cast<double>(i) * bin_h; }
};

// Per-bin mean of relative scores over (offset_h, score) points. Bins are
// aligned so offset 0 is a boundary; interior empty bins stay missing.
TrendSeries trend(std::span<const std::pair<double, double>> points, double bin_h);

// Three-point running average. A missing value stays missing; missing
// neighbors are skipped, endpoints average what is available.
TrendSeries smooth3(const TrendSeries& s);

struct CompositionSeries {
    double start_h = 0;
    double bin_h = 1;
    std::vector<double> pos, neg, neu;  // fractions; NaN where count == 0
    std::vector<int64_t> count;

    size_t size() const { return count.size(); }
    double bin_start(size_t i) const { return start_h + static_cast<double>(i) * bin_h; }
};

// Per-bin fractions of discrete classes (+1 / -1 / 0); sums to 1 per
// non-empty bin.
CompositionSeries composition(std::span<const std::pair<double, int>> points, double bin_h);

struct TrendFit {
    double scale = 0;
    double offset = 0;
    double residual = 0;  // RMSE over the overlap
};

// Least-squares fit b ~ scale*a + offset over bins where both series have
// values. Requires >= 2 overlapping bins and nonzero variance in a.
TrendFit align_trends(const TrendSeries& a, const TrendSeries& b);

}  // namespace sns

#endif
