#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace gridcharge::csv {

// One timestamped meter reading. Timestamps are reduced to a day ordinal
// (days since the first record's date) and a minute-of-day.
struct MeterRecord {
    int day = 0;
    int minute_of_day = 0;
    double value = 0.0;
};

// Parse a `timestamp,<value>` CSV with header. Timestamp format is
// `YYYY-MM-DD HH:MM`. Throws std::runtime_error with the line number on
// malformed rows.
std::vector<MeterRecord> read_timestamped(const std::filesystem::path& path);

// Write rows of doubles/strings; every cell is preformatted by the caller.
void write_rows(const std::filesystem::path& path, const std::string& header,
                const std::vector<std::string>& rows);

// Canonical number formatting for emitted CSV/JSON (shortest round-trip).
std::string format_double(double v);

}  // namespace gridcharge::csv
