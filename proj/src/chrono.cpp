#include "sns/chrono.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>

namespace sns {

// Howard Hinnant's days-from-civil algorithm; proleptic Gregorian calendar.
int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                         static_cast<unsigned>(d) - 1u;
    const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
    return era * 146097 + static_cast<int64_t>(doe) - 719468;
}

int64_t civil_to_epoch_s(int y, int m, int d, int hh, int mm, int ss) {
    return days_from_civil(y, m, d) * 86400 + hh * 3600 + mm * 60 + ss;
}

int64_t default_reference_epoch() {
    static const int64_t e = civil_to_epoch_s(2012, 10, 30);
    return e;
}

namespace {

bool parse_int(std::string_view s, size_t pos, size_t len, int& out) {
    if (pos + len > s.size()) return false;
    int v = 0;
    for (size_t i = pos; i < pos + len; ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        v = v * 10 + (s[i] - '0');
    }
    out = v;
    return true;
}

}  // namespace

std::optional<int64_t> parse_instant(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) return std::nullopt;

    // Plain epoch seconds (optionally signed, optional fractional part which
    // is truncated; instants carry 1-second resolution).
    {
        bool numeric = true;
        bool seen_digit = false;
        for (size_t i = 0; i < s.size(); ++i) {
            char c = s[i];
            if (std::isdigit(static_cast<unsigned char>(c))) { seen_digit = true; continue; }
            if (i == 0 && (c == '-' || c == '+')) continue;
            if (c == '.') continue;
            numeric = false;
            break;
        }
        if (numeric && seen_digit) {
            double v = 0;
            auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec == std::errc() && p == s.data() + s.size())
                return static_cast<int64_t>(v);
            return std::nullopt;
        }
    }

    // ISO-8601 calendar form.
    int Y, M, D;
    if (!parse_int(s, 0, 4, Y) || s.size() < 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
    if (!parse_int(s, 5, 2, M) || !parse_int(s, 8, 2, D)) return std::nullopt;
    if (M < 1 || M > 12 || D < 1 || D > 31) return std::nullopt;
    if (s.size() == 10) return civil_to_epoch_s(Y, M, D);

    if (s[10] != 'T' && s[10] != ' ') return std::nullopt;
    int hh, mm, ss = 0;
    if (!parse_int(s, 11, 2, hh) || s.size() < 16 || s[13] != ':' || !parse_int(s, 14, 2, mm))
        return std::nullopt;
    size_t pos = 16;
    if (pos < s.size() && s[pos] == ':') {
        if (!parse_int(s, pos + 1, 2, ss)) return std::nullopt;
        pos += 3;
    }
    if (hh > 23 || mm > 59 || ss > 60) return std::nullopt;
    // Fractional seconds: truncate.
    if (pos < s.size() && s[pos] == '.') {
        ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    int64_t t = civil_to_epoch_s(Y, M, D, hh, mm, ss);
    if (pos == s.size()) return t;  // naive timestamps are taken as UTC
    if (s[pos] == 'Z' && pos + 1 == s.size()) return t;
    if (s[pos] == '+' || s[pos] == '-') {
        int sign = s[pos] == '+' ? 1 : -1;
        int oh, om = 0;
        if (!parse_int(s, pos + 1, 2, oh)) return std::nullopt;
        pos += 3;
        if (pos < s.size() && s[pos] == ':') ++pos;
        if (pos < s.size()) {
            if (!parse_int(s, pos, 2, om)) return std::nullopt;
            pos += 2;
        }
        if (pos != s.size()) return std::nullopt;
        return t - sign * (oh * 3600 + om * 60);
    }
    return std::nullopt;
}

std::string format_iso(int64_t t) {
    int64_t days = t / 86400;
    int64_t rem = t % 86400;
    if (rem < 0) { rem += 86400; --days; }

    // Inverse of days_from_civil.
    int64_t z = days + 719468;
    const int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const int64_t y = static_cast<int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    const int64_t year = y + (m <= 2);

    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02uT%02lld:%02lld:%02lldZ",
                  static_cast<long long>(year), m, d,
                  static_cast<long long>(rem / 3600),
                  static_cast<long long>((rem % 3600) / 60),
                  static_cast<long long>(rem % 60));
    return buf;
}

}  // namespace sns
