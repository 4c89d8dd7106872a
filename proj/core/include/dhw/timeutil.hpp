#pragma once

#include <cstdint>
#include <string>

namespace dhw {

// Simulation time is kept as whole minutes since the configured start
// instant. Calendar conversions below are UTC, proleptic Gregorian.

constexpr int kMinutesPerDay = 1440;

struct CivilTime {
    int year = 1970;
    int month = 1;  // 1..12
    int day = 1;    // 1..31
    int hour = 0;
    int minute = 0;
    int second = 0;
};

// Days since 1970-01-01 (Hinnant's civil-days algorithm).
std::int64_t days_from_civil(int y, int m, int d);
void civil_from_days(std::int64_t z, int& y, int& m, int& d);

// Minutes since the Unix epoch for a civil instant (seconds truncated).
std::int64_t minutes_from_civil(const CivilTime& c);
CivilTime civil_from_minutes(std::int64_t minutes);

// Parses "YYYY-MM-DD", "YYYY-MM-DDTHH:MM" or "YYYY-MM-DDTHH:MM:SS".
// Throws std::invalid_argument with the offending text on malformed input.
CivilTime parse_iso8601(const std::string& text);

std::int64_t parse_iso8601_minutes(const std::string& text);

// "YYYY-MM-DDTHH:MM:SS"
std::string format_iso8601(std::int64_t minutes_since_epoch);

// 0 = Monday ... 6 = Sunday.
int weekday_from_minutes(std::int64_t minutes_since_epoch);

inline bool is_weekend(std::int64_t minutes_since_epoch) {
    return weekday_from_minutes(minutes_since_epoch) >= 5;
}

inline int period_of_day(std::int64_t minutes_since_epoch, int period_min) {
    std::int64_t m = minutes_since_epoch % kMinutesPerDay;
    if (m < 0) m += kMinutesPerDay;
    return static_cast<int>(m / period_min);
}

}  // namespace dhw
