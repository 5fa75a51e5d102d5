#include "gridcharge/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace gridcharge::csv {

namespace {

// days since civil epoch 1970-01-01 (Howard Hinnant's algorithm)
long days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long>(doe) - 719468;
}

int parse_int(const std::string& s, size_t pos, size_t len, size_t line_no) {
    int out = 0;
    auto [p, ec] = std::from_chars(s.data() + pos, s.data() + pos + len, out);
    if (ec != std::errc{} || p != s.data() + pos + len)
        throw std::runtime_error("csv: bad timestamp field at line " +
                                 std::to_string(line_no));
    return out;
}

}  // namespace

std::vector<MeterRecord> read_timestamped(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("csv: cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("csv: empty file " + path.string());

    std::vector<MeterRecord> out;
    long day0 = 0;
    bool have_day0 = false;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        // "YYYY-MM-DD HH:MM,value"
        const auto comma = line.find(',');
        if (comma == std::string::npos || comma < 16)
            throw std::runtime_error("csv: malformed row at line " +
                                     std::to_string(line_no) + " in " +
                                     path.string());
        const int year = parse_int(line, 0, 4, line_no);
        const int month = parse_int(line, 5, 2, line_no);
        const int dom = parse_int(line, 8, 2, line_no);
        const int hour = parse_int(line, 11, 2, line_no);
        const int minute = parse_int(line, 14, 2, line_no);
        const long abs_day = days_from_civil(year, month, dom);
        if (!have_day0) {
            day0 = abs_day;
            have_day0 = true;
        }

        double value = 0.0;
        const char* vb = line.data() + comma + 1;
        const char* ve = line.data() + line.size();
        auto [p, ec] = std::from_chars(vb, ve, value);
        if (ec != std::errc{} || p != ve)
            throw std::runtime_error("csv: non-numeric value at line " +
                                     std::to_string(line_no) + " in " +
                                     path.string());

        out.push_back({static_cast<int>(abs_day - day0), hour * 60 + minute, value});
    }
    return out;
}

void write_rows(const std::filesystem::path& path, const std::string& header,
                const std::vector<std::string>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("csv: cannot write " + path.string());
    out << header << '\n';
    for (const auto& r : rows) out << r << '\n';
    if (!out) throw std::runtime_error("csv: write failed for " + path.string());
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace gridcharge::csv
