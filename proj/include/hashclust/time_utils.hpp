// Minimal UTC timestamp handling: ISO-8601 parsing/formatting and
// civil-date arithmetic. Everything is stored as seconds since the Unix
// epoch; offsets in the input are converted to UTC.
#pragma once

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

namespace hashclust {

namespace detail {

// Days since 1970-01-01 for a civil date (proleptic Gregorian).
inline std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);            // [0, 399]
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;  // [0, 365]
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;           // [0, 146096]
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

struct CivilDate {
    std::int64_t year;
    unsigned month;
    unsigned day;
};

inline CivilDate civil_from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return {y + (m <= 2), m, d};
}

inline bool parse_fixed_uint(std::string_view s, std::size_t pos, std::size_t len,
                             unsigned& out) {
    if (pos + len > s.size()) return false;
    unsigned v = 0;
    for (std::size_t i = pos; i < pos + len; ++i) {
        char c = s[i];
        if (c < '0' || c > '9') return false;
        v = v * 10 + static_cast<unsigned>(c - '0');
    }
    out = v;
    return true;
}

inline unsigned days_in_month(std::int64_t y, unsigned m) {
    static constexpr unsigned lengths[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2) {
        bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
        return leap ? 29 : 28;
    }
    return m >= 1 && m <= 12 ? lengths[m - 1] : 0;
}

}  // namespace detail

// Parses "YYYY-MM-DDTHH:MM:SS[.fff][Z|+HH:MM|-HH:MM|+HHMM|-HHMM]" into Unix
// seconds (UTC). Fractional seconds are truncated. A missing offset is read
// as UTC. Returns nullopt on any malformation.
inline std::optional<std::int64_t> parse_iso8601(std::string_view s) {
    using namespace detail;
    unsigned year4 = 0, mon = 0, day = 0, hh = 0, mm = 0, ss = 0;
    if (s.size() < 19) return std::nullopt;
    if (!parse_fixed_uint(s, 0, 4, year4) || s[4] != '-' ||
        !parse_fixed_uint(s, 5, 2, mon) || s[7] != '-' ||
        !parse_fixed_uint(s, 8, 2, day))
        return std::nullopt;
    if (s[10] != 'T' && s[10] != 't' && s[10] != ' ') return std::nullopt;
    if (!parse_fixed_uint(s, 11, 2, hh) || s[13] != ':' ||
        !parse_fixed_uint(s, 14, 2, mm) || s[16] != ':' ||
        !parse_fixed_uint(s, 17, 2, ss))
        return std::nullopt;
    if (mon < 1 || mon > 12 || day < 1 || day > days_in_month(year4, mon) ||
        hh > 23 || mm > 59 || ss > 60)
        return std::nullopt;
    if (ss == 60) ss = 59;  // fold leap seconds

    std::size_t pos = 19;
    if (pos < s.size() && s[pos] == '.') {
        ++pos;
        std::size_t digits = 0;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
            ++pos;
            ++digits;
        }
        if (digits == 0) return std::nullopt;
    }

    std::int64_t offset_seconds = 0;
    if (pos < s.size()) {
        char c = s[pos];
        if (c == 'Z' || c == 'z') {
            ++pos;
        } else if (c == '+' || c == '-') {
            int sign = c == '+' ? 1 : -1;
            ++pos;
            unsigned oh = 0, om = 0;
            if (!parse_fixed_uint(s, pos, 2, oh)) return std::nullopt;
            pos += 2;
            if (pos < s.size() && s[pos] == ':') ++pos;
            if (pos < s.size()) {
                if (!parse_fixed_uint(s, pos, 2, om)) return std::nullopt;
                pos += 2;
            }
            if (oh > 14 || om > 59) return std::nullopt;
            offset_seconds = sign * (static_cast<std::int64_t>(oh) * 3600 + om * 60);
        } else {
            return std::nullopt;
        }
    }
    if (pos != s.size()) return std::nullopt;

    std::int64_t days = days_from_civil(static_cast<std::int64_t>(year4), mon, day);
    std::int64_t local = days * 86400 + hh * 3600 + mm * 60 + ss;
    return local - offset_seconds;
}

// Formats Unix seconds as "YYYY-MM-DDTHH:MM:SSZ".
inline std::string format_iso8601(std::int64_t epoch_seconds) {
    std::int64_t days = epoch_seconds / 86400;
    std::int64_t rem = epoch_seconds % 86400;
    if (rem < 0) {
        rem += 86400;
        days -= 1;
    }
    const auto cd = detail::civil_from_days(days);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02uT%02lld:%02lld:%02lldZ",
                  static_cast<long long>(cd.year), cd.month, cd.day,
                  static_cast<long long>(rem / 3600),
                  static_cast<long long>((rem % 3600) / 60),
                  static_cast<long long>(rem % 60));
    return buf;
}

// Floors an epoch to a multiple of `window_seconds` from midnight UTC
// (windows that divide a day are automatically midnight-aligned).
inline std::int64_t floor_to_window(std::int64_t epoch_seconds, std::int64_t window_seconds) {
    std::int64_t q = epoch_seconds / window_seconds;
    if (epoch_seconds % window_seconds < 0) --q;
    return q * window_seconds;
}

}  // namespace hashclust
