#include "attrgraph/apk/zip_reader.hpp"

#include "attrgraph/apk/byte_reader.hpp"

#include <zlib.h>

#include <cstring>

namespace attrgraph::apk {

namespace {

constexpr uint32_t kEocdSignature = 0x06054b50;
constexpr uint32_t kCentralSignature = 0x02014b50;
constexpr uint32_t kLocalSignature = 0x04034b50;
constexpr size_t kEocdMinSize = 22;
constexpr size_t kMaxCommentScan = 65535 + kEocdMinSize;

size_t find_eocd(std::span<const uint8_t> data) {
    if (data.size() < kEocdMinSize) {
        throw ParseError("not-a-zip", "file too small for a ZIP end-of-central-directory record");
    }
    const size_t scan_floor = data.size() > kMaxCommentScan ? data.size() - kMaxCommentScan : 0;
    for (size_t pos = data.size() - kEocdMinSize + 1; pos-- > scan_floor;) {
        if (data[pos] == 0x50 && data[pos + 1] == 0x4b && data[pos + 2] == 0x05 && data[pos + 3] == 0x06) {
            // Require the comment length to be consistent with the file end.
            ByteReader r(data, pos + 20);
            const uint16_t comment_len = r.u16();
            if (pos + kEocdMinSize + comment_len == data.size()) return pos;
        }
    }
    throw ParseError("not-a-zip", "no ZIP end-of-central-directory record found");
}

std::vector<uint8_t> inflate_raw(std::span<const uint8_t> compressed, size_t expected_size) {
    std::vector<uint8_t> out(expected_size);
    z_stream stream{};
    if (inflateInit2(&stream, -MAX_WBITS) != Z_OK) {
        throw ParseError("zip-inflate", "zlib initialization failed");
    }
    stream.next_in = const_cast<Bytef*>(compressed.data());
    stream.avail_in = static_cast<uInt>(compressed.size());
    stream.next_out = out.data();
    stream.avail_out = static_cast<uInt>(out.size());
    const int rc = inflate(&stream, Z_FINISH);
    inflateEnd(&stream);
    if (rc != Z_STREAM_END || stream.total_out != expected_size) {
        throw ParseError("zip-inflate", "corrupt deflate stream in ZIP entry");
    }
    return out;
}

} // namespace

ZipReader::ZipReader(std::span<const uint8_t> data) : data_(data) {
    const size_t eocd_pos = find_eocd(data);
    ByteReader eocd(data, eocd_pos + 4);
    eocd.skip(2 + 2); // disk numbers
    eocd.skip(2);     // entries on this disk
    const uint16_t total_entries = eocd.u16();
    eocd.skip(4); // central directory size
    central_directory_offset_ = eocd.u32();

    if (central_directory_offset_ >= data.size()) {
        throw ParseError("not-a-zip", "central directory offset out of range");
    }

    ByteReader cd(data, central_directory_offset_);
    entries_.reserve(total_entries);
    for (uint16_t i = 0; i < total_entries; ++i) {
        if (cd.u32() != kCentralSignature) {
            throw ParseError("not-a-zip", "bad central directory entry signature");
        }
        cd.skip(2 + 2 + 2); // version made by, version needed, flags
        ZipEntry entry;
        entry.method = cd.u16();
        cd.skip(2 + 2 + 4); // time, date, crc32
        entry.compressed_size = cd.u32();
        entry.uncompressed_size = cd.u32();
        const uint16_t name_len = cd.u16();
        const uint16_t extra_len = cd.u16();
        const uint16_t comment_len = cd.u16();
        cd.skip(2 + 2 + 4); // disk start, internal attrs, external attrs
        entry.local_header_offset = cd.u32();
        auto name = cd.take(name_len);
        entry.name.assign(reinterpret_cast<const char*>(name.data()), name.size());
        cd.skip(extra_len);
        cd.skip(comment_len);
        entries_.push_back(std::move(entry));
    }
}

std::optional<ZipEntry> ZipReader::find(std::string_view name) const {
    for (const auto& e : entries_) {
        if (e.name == name) return e;
    }
    return std::nullopt;
}

std::vector<uint8_t> ZipReader::read(const ZipEntry& entry) const {
    ByteReader local(data_, entry.local_header_offset);
    if (local.u32() != kLocalSignature) {
        throw ParseError("not-a-zip", "bad local header for '" + entry.name + "'");
    }
    local.skip(2 + 2 + 2 + 2 + 2 + 4 + 4 + 4); // up to name/extra lengths
    const uint16_t name_len = local.u16();
    const uint16_t extra_len = local.u16();
    local.skip(name_len);
    local.skip(extra_len);

    auto payload = local.take(entry.compressed_size);
    if (entry.method == 0) {
        if (entry.compressed_size != entry.uncompressed_size) {
            throw ParseError("not-a-zip", "stored entry size mismatch for '" + entry.name + "'");
        }
        return {payload.begin(), payload.end()};
    }
    if (entry.method == 8) {
        return inflate_raw(payload, entry.uncompressed_size);
    }
    throw ParseError("zip-method", "unsupported compression method " + std::to_string(entry.method) +
                                       " for '" + entry.name + "'");
}

} // namespace attrgraph::apk
