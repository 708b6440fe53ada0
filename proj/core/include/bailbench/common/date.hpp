#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace bailbench {

using Date = std::chrono::year_month_day;

// YYYY-MM-DD. Returns nullopt for malformed or non-existent dates.
std::optional<Date> parse_iso_date(std::string_view s);
std::string to_iso(const Date& d);

// Whole days from `from` to `to` (negative when `to` precedes `from`).
long long days_between(const Date& from, const Date& to);

std::optional<Date> make_date(int year, unsigned month, unsigned day);

// "YYYY-MM-DDTHH:MM:SSZ" for now, or for $SOURCE_DATE_EPOCH when set so
// that reruns produce identical manifests.
std::string utc_timestamp_now();

}  // namespace bailbench
