#include "dhw/timeutil.hpp"

#include <cstdio>
#include <stdexcept>

namespace dhw {

std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = static_cast<int>(yy + (m <= 2));
}

std::int64_t minutes_from_civil(const CivilTime& c) {
    return days_from_civil(c.year, c.month, c.day) * kMinutesPerDay + c.hour * 60 + c.minute;
}

CivilTime civil_from_minutes(std::int64_t minutes) {
    std::int64_t days = minutes / kMinutesPerDay;
    std::int64_t rem = minutes % kMinutesPerDay;
    if (rem < 0) {
        rem += kMinutesPerDay;
        days -= 1;
    }
    CivilTime c;
    civil_from_days(days, c.year, c.month, c.day);
    c.hour = static_cast<int>(rem / 60);
    c.minute = static_cast<int>(rem % 60);
    c.second = 0;
    return c;
}

CivilTime parse_iso8601(const std::string& text) {
    CivilTime c;
    int n = 0;
    int got = std::sscanf(text.c_str(), "%d-%d-%dT%d:%d:%d%n", &c.year, &c.month, &c.day, &c.hour,
                          &c.minute, &c.second, &n);
    if (got < 3) throw std::invalid_argument("unparseable ISO-8601 timestamp: '" + text + "'");
    if (got == 3) {
        // date-only form; re-scan to validate there is no trailing junk
        std::sscanf(text.c_str(), "%d-%d-%d%n", &c.year, &c.month, &c.day, &n);
        c.hour = c.minute = c.second = 0;
    } else if (got == 4) {
        throw std::invalid_argument("unparseable ISO-8601 timestamp: '" + text + "'");
    } else if (got == 5) {
        c.second = 0;
    }
    if (static_cast<size_t>(n) != text.size())
        throw std::invalid_argument("trailing characters in timestamp: '" + text + "'");
    if (c.month < 1 || c.month > 12 || c.day < 1 || c.day > 31 || c.hour < 0 || c.hour > 23 ||
        c.minute < 0 || c.minute > 59 || c.second < 0 || c.second > 59)
        throw std::invalid_argument("out-of-range field in timestamp: '" + text + "'");
    return c;
}

std::int64_t parse_iso8601_minutes(const std::string& text) {
    return minutes_from_civil(parse_iso8601(text));
}

std::string format_iso8601(std::int64_t minutes_since_epoch) {
    const CivilTime c = civil_from_minutes(minutes_since_epoch);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02d", c.year, c.month, c.day, c.hour,
                  c.minute, c.second);
    return buf;
}

int weekday_from_minutes(std::int64_t minutes_since_epoch) {
    std::int64_t days = minutes_since_epoch / kMinutesPerDay;
    if (minutes_since_epoch % kMinutesPerDay < 0) days -= 1;
    // 1970-01-01 was a Thursday (weekday 3 with Monday = 0).
    std::int64_t w = (days + 3) % 7;
    if (w < 0) w += 7;
    return static_cast<int>(w);
}

}  // namespace dhw
