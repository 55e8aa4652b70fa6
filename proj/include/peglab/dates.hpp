#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace peglab {

/// Proleptic Gregorian calendar date, stored as days since 1970-01-01.
class Date {
public:
    Date() = default;
    Date(int year, int month, int day);

    static Date from_serial(std::int64_t days);

    /// Parses strict ISO-8601 `YYYY-MM-DD`. Throws std::invalid_argument otherwise.
    static Date parse(std::string_view iso);

    std::int64_t serial() const { return days_; }
    int year() const;
    int month() const;
    int day() const;

    Date plus_days(std::int64_t n) const { return from_serial(days_ + n); }

    std::string to_string() const;

    auto operator<=>(const Date&) const = default;

private:
    std::int64_t days_ = 0;
};

}  // namespace peglab
