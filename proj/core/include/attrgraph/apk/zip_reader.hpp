#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace attrgraph::apk {

struct ZipEntry {
    std::string name;
    uint16_t method = 0; // 0 = stored, 8 = deflate
    uint32_t compressed_size = 0;
    uint32_t uncompressed_size = 0;
    uint32_t local_header_offset = 0;
};

// Minimal read-only ZIP parser. Kept in-house because the APK signing block
// lives between the last entry and the central directory, so the byte offsets
// the usual libraries hide are exactly what we need.
class ZipReader {
public:
    // Throws ParseError("not-a-zip") when no end-of-central-directory record
    // is found or the directory is inconsistent.
    explicit ZipReader(std::span<const uint8_t> data);

    const std::vector<ZipEntry>& entries() const { return entries_; }
    std::optional<ZipEntry> find(std::string_view name) const;

    std::vector<uint8_t> read(const ZipEntry& entry) const;

    uint32_t central_directory_offset() const { return central_directory_offset_; }

private:
    std::span<const uint8_t> data_;
    std::vector<ZipEntry> entries_;
    uint32_t central_directory_offset_ = 0;
};

} // namespace attrgraph::apk
