#ifndef SNS_CHRONO_HPP
#define SNS_CHRONO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace sns {

// Instants are UTC epoch seconds. Offsets are fractional hours relative to a
// configurable reference epoch (default: 2012-10-30 00:00 UTC, approximately
// the landfall on the continental US).

int64_t days_from_civil(int year, int month, int day);
int64_t civil_to_epoch_s(int year, int month, int day, int hour = 0, int minute = 0, int second = 0);

// Accepts "YYYY-MM-DD[T ]HH:MM:SS[Z|+hh:mm|-hh:mm]", "YYYY-MM-DD", or a plain
// integer interpreted as epoch seconds.
std::optional<int64_t> parse_instant(std::string_view s);

std::string format_iso(int64_t epoch_s);

inline double offset_hours(int64_t instant_s, int64_t reference_epoch_s) {
    return static_cast<double>(instant_s - reference_epoch_s) / 3600.0;
}

// Default reference epoch: 2012-10-30 00:00 UTC.
int64_t default_reference_epoch();

}  // namespace sns

#endif
