#include "sns/sentiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sns/errors.hpp"
#include "sns/text.hpp"

namespace sns {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

Lexicon make_lexicon(std::string name, std::vector<std::pair<std::string, double>> entries) {
    Lexicon lex;
    lex.name = std::move(name);
    for (auto& [token, weight] : entries) {
        if (!(weight >= -1.0 && weight <= 1.0))
            throw DataError("lexicon weight out of [-1,1] for token '" + token + "'");
        std::string folded = fold_case(token);
        if (folded.empty()) throw DataError("empty lexicon token");
        lex.weights[std::move(folded)] = weight;
    }
    return lex;
}

SentimentScore score_message(std::string_view text, const Lexicon& lex, bool matched_only) {
    double signed_sum = 0;
    double abs_sum = 0;
    size_t tokens = 0;
    size_t matched = 0;
    for_each_token(text, [&](std::string_view t) {
        ++tokens;
        auto it = lex.weights.find(std::string(t));
        if (it != lex.weights.end()) {
            signed_sum += it->second;
            abs_sum += std::abs(it->second);
            ++matched;
        }
    });
    SentimentScore s;
    const size_t denom = matched_only ? matched : tokens;
    if (denom == 0) return s;
    s.relative = signed_sum / static_cast<double>(denom);
    s.absolute = abs_sum / static_cast<double>(denom);
    s.discrete = s.relative > 0 ? 1 : s.relative < 0 ? -1 : 0;
    return s;
}

double combine_polarity(double posemo, double negemo) {
    if (posemo < 0 || negemo < 0)
        throw std::invalid_argument("polarity inputs must be nonnegative rates");
    return posemo - 1.5 * negemo;
}

TrendSeries trend(std::span<const std::pair<double, double>> points, double bin_h) {
    if (!(bin_h > 0)) throw std::invalid_argument("bin_h must be positive");
    TrendSeries s;
    s.bin_h = bin_h;
    if (points.empty()) return s;

    int64_t lo = std::numeric_limits<int64_t>::max();
    int64_t hi = std::numeric_limits<int64_t>::min();
    for (const auto& [t, _] : points) {
        auto idx = static_cast<int64_t>(std::floor(t / bin_h));
        lo = std::min(lo, idx);
        hi = std::max(hi, idx);
    }
    const auto n = static_cast<size_t>(hi - lo + 1);
    s.start_h = static_cast<double>(lo) * bin_h;
    std::vector<double> sum(n, 0);
    s.count.assign(n, 0);
    for (const auto& [t, v] : points) {
        auto idx = static_cast<size_t>(static_cast<int64_t>(std::floor(t / bin_h)) - lo);
        sum[idx] += v;
        ++s.count[idx];
    }
    s.value.assign(n, kNaN);
    for (size_t i = 0; i < n; ++i)
        if (s.count[i] > 0) s.value[i] = sum[i] / static_cast<double>(s.count[i]);
    return s;
}

TrendSeries smooth3(const TrendSeries& s) {
    TrendSeries out = s;
    const size_t n = s.size();
    for (size_t i = 0; i < n; ++i) {
        if (s.missing(i)) continue;
        double sum = s.value[i];
        int k = 1;
        if (i > 0 && !s.missing(i - 1)) { sum += s.value[i - 1]; ++k; }
        if (i + 1 < n && !s.missing(i + 1)) { sum += s.value[i + 1]; ++k; }
        out.value[i] = sum / k;
    }
    return out;
}

CompositionSeries composition(std::span<const std::pair<double, int>> points, double bin_h) {
    if (!(bin_h > 0)) throw std::invalid_argument("bin_h must be positive");
    CompositionSeries s;
    s.bin_h = bin_h;
    if (points.empty()) return s;

    int64_t lo = std::numeric_limits<int64_t>::max();
    int64_t hi = std::numeric_limits<int64_t>::min();
    for (const auto& [t, _] : points) {
        auto idx = static_cast<int64_t>(std::floor(t / bin_h));
        lo = std::min(lo, idx);
        hi = std::max(hi, idx);
    }
    const auto n = static_cast<size_t>(hi - lo + 1);
    s.start_h = static_cast<double>(lo) * bin_h;
    std::vector<int64_t> npos(n, 0), nneg(n, 0), nneu(n, 0);
    s.count.assign(n, 0);
    for (const auto& [t, cls] : points) {
        auto idx = static_cast<size_t>(static_cast<int64_t>(std::floor(t / bin_h)) - lo);
        if (cls > 0) ++npos[idx];
        else if (cls < 0) ++nneg[idx];
        else ++nneu[idx];
        ++s.count[idx];
    }
    s.pos.assign(n, kNaN);
    s.neg.assign(n, kNaN);
    s.neu.assign(n, kNaN);
    for (size_t i = 0; i < n; ++i) {
        if (s.count[i] == 0) continue;
        const auto total = static_cast<double>(s.count[i]);
        s.pos[i] = static_cast<double>(npos[i]) / total;
        s.neg[i] = static_cast<double>(nneg[i]) / total;
        s.neu[i] = static_cast<double>(nneu[i]) / total;
    }
    return s;
}

TrendFit align_trends(const TrendSeries& a, const TrendSeries& b) {
    // Overlap on absolute bin positions (the two series may start at
    // different bins but must share the bin width).
    if (a.bin_h != b.bin_h) throw std::invalid_argument("bin widths differ");
    std::vector<std::pair<double, double>> xy;
    const auto a0 = static_cast<int64_t>(std::llround(a.start_h / a.bin_h));
    const auto b0 = static_cast<int64_t>(std::llround(b.start_h / b.bin_h));
    for (size_t i = 0; i < a.size(); ++i) {
        const int64_t bin = a0 + static_cast<int64_t>(i);
        const int64_t j = bin - b0;
        if (j < 0 || j >= static_cast<int64_t>(b.size())) continue;
        if (a.missing(i) || b.missing(static_cast<size_t>(j))) continue;
        xy.emplace_back(a.value[i], b.value[static_cast<size_t>(j)]);
    }
    if (xy.size() < 2)
        throw std::invalid_argument("align_trends needs >= 2 overlapping non-missing bins");

    double mx = 0, my = 0;
    for (const auto& [x, y] : xy) { mx += x; my += y; }
    const auto n = static_cast<double>(xy.size());
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (const auto& [x, y] : xy) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if (sxx == 0) throw DataError("degenerate fit: first series has zero variance");

    TrendFit fit;
    fit.scale = sxy / sxx;
    fit.offset = my - fit.scale * mx;
    double ss = 0;
    for (const auto& [x, y] : xy) {
        const double r = y - (fit.scale * x + fit.offset);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

}  // namespace sns
