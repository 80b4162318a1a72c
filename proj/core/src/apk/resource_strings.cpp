#include "attrgraph/apk/resource_strings.hpp"

#include "attrgraph/apk/byte_reader.hpp"

#include <unicode/unistr.h>

namespace attrgraph::apk {

namespace {

constexpr uint32_t kUtf8Flag = 1u << 8;

std::string utf16le_to_utf8(std::span<const uint8_t> bytes) {
    std::vector<UChar> units(bytes.size() / 2);
    for (size_t i = 0; i < units.size(); ++i) {
        units[i] = static_cast<UChar>(bytes[2 * i] | (bytes[2 * i + 1] << 8));
    }
    icu::UnicodeString s(units.data(), static_cast<int32_t>(units.size()));
    std::string out;
    s.toUTF8String(out);
    return out;
}

// UTF-8 pools store two lengths (char count, byte count), each with a
// one-byte form extended to two bytes via the high bit.
uint32_t read_utf8_length(ByteReader& r) {
    uint32_t len = r.u8();
    if (len & 0x80) {
        len = ((len & 0x7f) << 8) | r.u8();
    }
    return len;
}

uint32_t read_utf16_length(ByteReader& r) {
    uint32_t len = r.u16();
    if (len & 0x8000) {
        len = ((len & 0x7fff) << 16) | r.u16();
    }
    return len;
}

} // namespace

const std::string& StringPool::at(uint32_t index) const {
    if (index >= strings.size()) {
        throw ParseError("bad-string-index",
                         "string pool index " + std::to_string(index) + " out of range (pool size " +
                             std::to_string(strings.size()) + ")");
    }
    return strings[index];
}

StringPool parse_string_pool(std::span<const uint8_t> chunk) {
    ByteReader header(chunk);
    header.skip(2); // type
    const uint16_t header_size = header.u16();
    const uint32_t chunk_size = header.u32();
    const uint32_t string_count = header.u32();
    header.skip(4); // style count
    const uint32_t flags = header.u32();
    const uint32_t strings_start = header.u32();
    if (chunk_size > chunk.size() || strings_start > chunk_size) {
        throw ParseError("bad-string-pool", "string pool sizes inconsistent");
    }
    const bool utf8 = (flags & kUtf8Flag) != 0;

    StringPool pool;
    pool.strings.reserve(string_count);
    ByteReader offsets(chunk, header_size);
    for (uint32_t i = 0; i < string_count; ++i) {
        const uint32_t offset = offsets.u32();
        ByteReader s(chunk, strings_start + offset);
        if (utf8) {
            read_utf8_length(s); // char count, unused
            const uint32_t byte_len = read_utf8_length(s);
            auto bytes = s.take(byte_len);
            pool.strings.emplace_back(reinterpret_cast<const char*>(bytes.data()), bytes.size());
        } else {
            const uint32_t unit_len = read_utf16_length(s);
            auto bytes = s.take(static_cast<size_t>(unit_len) * 2);
            pool.strings.push_back(utf16le_to_utf8(bytes));
        }
    }
    return pool;
}

} // namespace attrgraph::apk
