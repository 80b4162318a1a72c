#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace attrgraph::apk {

// String pool shared by binary XML and resource tables (UTF-8 and UTF-16
// encodings, including the high-bit length extension for long strings).
struct StringPool {
    std::vector<std::string> strings;

    const std::string& at(uint32_t index) const;
    size_t size() const { return strings.size(); }
};

// `chunk` spans the whole RES_STRING_POOL chunk including its header.
StringPool parse_string_pool(std::span<const uint8_t> chunk);

} // namespace attrgraph::apk
