#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace attrgraph {

// Raised for unreadable or structurally invalid input (files, records, DER).
class ParseError : public std::runtime_error {
public:
    ParseError(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

std::string to_hex(std::span<const uint8_t> bytes);
bool is_lower_hex(std::string_view s);

// SHA-256 digest as 64-char lowercase hex.
std::string sha256_hex(std::span<const uint8_t> bytes);

std::vector<uint8_t> read_file_bytes(const std::string& path);
void write_file_bytes(const std::string& path, std::span<const uint8_t> bytes);

std::string ascii_lower(std::string_view s);

// Parses UTC ISO-8601 timestamps ("2021-06-01T12:30:00Z", fractional seconds
// tolerated and truncated). A bare date parses as midnight UTC; *date_only is
// set so callers can record the precision loss. Returns seconds since epoch.
int64_t parse_utc_timestamp(std::string_view text, bool* date_only = nullptr);
std::string format_utc_timestamp(int64_t epoch_seconds);

} // namespace attrgraph
