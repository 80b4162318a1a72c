#include "attrgraph/util.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <ctime>
#include <fstream>

namespace attrgraph {

std::string to_hex(std::span<const uint8_t> bytes) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (uint8_t b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0x0f]);
    }
    return out;
}

bool is_lower_hex(std::string_view s) {
    for (char c : s) {
        if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
    }
    return true;
}

std::string sha256_hex(std::span<const uint8_t> bytes) {
    std::array<uint8_t, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
        throw ParseError("digest-failure", "SHA-256 computation failed");
    }
    return to_hex({digest.data(), len});
}

std::vector<uint8_t> read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("file-unreadable", "cannot open file: " + path);
    std::vector<uint8_t> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw ParseError("file-unreadable", "read failed: " + path);
    return data;
}

void write_file_bytes(const std::string& path, std::span<const uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError("file-unwritable", "cannot open file for writing: " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw ParseError("file-unwritable", "write failed: " + path);
}

std::string ascii_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

int parse_fixed_int(std::string_view s, size_t pos, size_t len) {
    int value = 0;
    for (size_t i = pos; i < pos + len; ++i) {
        if (i >= s.size() || !is_digit(s[i])) return -1;
        value = value * 10 + (s[i] - '0');
    }
    return value;
}

int64_t days_from_civil(int y, int m, int d) {
    // Howard Hinnant's algorithm; valid for the proleptic Gregorian calendar.
    y -= m <= 2;
    const int era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2) / 5 + static_cast<unsigned>(d) - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return static_cast<int64_t>(era) * 146097 + static_cast<int64_t>(doe) - 719468;
}

} // namespace

int64_t parse_utc_timestamp(std::string_view text, bool* date_only) {
    if (date_only) *date_only = false;
    const int year = parse_fixed_int(text, 0, 4);
    if (year < 0 || text.size() < 10 || text[4] != '-' || text[7] != '-') {
        throw ParseError("bad-timestamp", "not an ISO-8601 UTC timestamp: '" + std::string(text) + "'");
    }
    const int month = parse_fixed_int(text, 5, 2);
    const int day = parse_fixed_int(text, 8, 2);
    if (month < 1 || month > 12 || day < 1 || day > 31) {
        throw ParseError("bad-timestamp", "invalid date: '" + std::string(text) + "'");
    }
    static constexpr int month_days[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    if (day > month_days[month - 1] + (month == 2 && leap ? 1 : 0)) {
        throw ParseError("bad-timestamp", "invalid date: '" + std::string(text) + "'");
    }

    int hour = 0, minute = 0, second = 0;
    if (text.size() == 10) {
        if (date_only) *date_only = true;
    } else {
        if (text[10] != 'T' || text.size() < 20 || text[13] != ':' || text[16] != ':') {
            throw ParseError("bad-timestamp", "invalid time: '" + std::string(text) + "'");
        }
        hour = parse_fixed_int(text, 11, 2);
        minute = parse_fixed_int(text, 14, 2);
        second = parse_fixed_int(text, 17, 2);
        if (hour < 0 || hour > 23 || minute < 0 || minute > 59 || second < 0 || second > 60) {
            throw ParseError("bad-timestamp", "invalid time: '" + std::string(text) + "'");
        }
        size_t pos = 19;
        if (pos < text.size() && text[pos] == '.') {
            ++pos;
            while (pos < text.size() && is_digit(text[pos])) ++pos;
        }
        if (pos + 1 != text.size() || text[pos] != 'Z') {
            throw ParseError("bad-timestamp", "timestamp must be UTC ('Z' suffix): '" + std::string(text) + "'");
        }
    }

    return days_from_civil(year, month, day) * 86400 + hour * 3600 + minute * 60 + second;
}

std::string format_utc_timestamp(int64_t epoch_seconds) {
    const time_t t = static_cast<time_t>(epoch_seconds);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[80];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900, tm.tm_mon + 1,
                  tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
    return buf;
}

} // namespace attrgraph
