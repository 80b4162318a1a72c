#include "attrgraph/apk/arsc.hpp"

#include "attrgraph/apk/byte_reader.hpp"

namespace attrgraph::apk {

namespace {

constexpr uint16_t kChunkTable = 0x0002;
constexpr uint16_t kChunkStringPool = 0x0001;
constexpr uint16_t kChunkPackage = 0x0200;
constexpr uint16_t kChunkType = 0x0201;

constexpr uint32_t kNoEntry = 0xFFFFFFFF;
constexpr uint16_t kEntryFlagComplex = 0x0001;
constexpr uint8_t kTypeFlagSparse = 0x01;

constexpr uint8_t kTypeString = 0x03;
constexpr uint8_t kTypeReference = 0x01;

bool is_default_config(std::span<const uint8_t> config_body) {
    for (uint8_t b : config_body) {
        if (b != 0) return false;
    }
    return true;
}

} // namespace

ResourceTable::ResourceTable(std::span<const uint8_t> arsc) {
    ByteReader file(arsc);
    const uint16_t type = file.u16();
    const uint16_t header_size = file.u16();
    const uint32_t size = file.u32();
    if (type != kChunkTable || size > arsc.size()) {
        throw ParseError("bad-resource-table", "not a compiled resource table");
    }
    file.skip(4); // package count

    size_t pos = header_size;
    bool have_value_strings = false;
    while (pos + 8 <= size) {
        ByteReader chunk(arsc, pos);
        const uint16_t chunk_type = chunk.u16();
        const uint16_t chunk_header = chunk.u16();
        const uint32_t chunk_size = chunk.u32();
        if (chunk_size < 8 || pos + chunk_size > size) {
            throw ParseError("bad-resource-table", "chunk overruns table");
        }

        if (chunk_type == kChunkStringPool && !have_value_strings) {
            value_strings_ = parse_string_pool(arsc.subspan(pos, chunk_size));
            have_value_strings = true;
        } else if (chunk_type == kChunkPackage) {
            ByteReader pkg(arsc, pos + 8);
            const uint32_t package_id = pkg.u32();

            size_t inner = pos + chunk_header;
            const size_t package_end = pos + chunk_size;
            while (inner + 8 <= package_end) {
                ByteReader ic(arsc, inner);
                const uint16_t inner_type = ic.u16();
                const uint16_t inner_header = ic.u16();
                const uint32_t inner_size = ic.u32();
                if (inner_size < 8 || inner + inner_size > package_end) {
                    throw ParseError("bad-resource-table", "package chunk overruns");
                }

                if (inner_type == kChunkType) {
                    const uint8_t type_id = ic.u8();
                    const uint8_t type_flags = ic.u8();
                    ic.skip(2); // reserved
                    const uint32_t entry_count = ic.u32();
                    const uint32_t entries_start = ic.u32();
                    const uint32_t config_size = ic.u32();
                    if (config_size < 4 || inner + 24 + (config_size - 4) > package_end) {
                        throw ParseError("bad-resource-table", "bad config block");
                    }
                    auto config_body = arsc.subspan(inner + 24, config_size - 4);

                    // Default configuration only; sparse chunks are an AAPT2
                    // optimization our inputs do not use.
                    if ((type_flags & kTypeFlagSparse) == 0 && is_default_config(config_body)) {
                        ByteReader offsets(arsc, inner + inner_header);
                        for (uint32_t e = 0; e < entry_count; ++e) {
                            const uint32_t entry_offset = offsets.u32();
                            if (entry_offset == kNoEntry) continue;
                            ByteReader entry(arsc, inner + entries_start + entry_offset);
                            entry.skip(2); // entry size
                            const uint16_t entry_flags = entry.u16();
                            entry.skip(4); // key string index
                            if (entry_flags & kEntryFlagComplex) continue;
                            entry.skip(2 + 1); // value size, res0
                            const uint8_t data_type = entry.u8();
                            const uint32_t data = entry.u32();
                            const uint32_t res_id =
                                (package_id << 24) | (static_cast<uint32_t>(type_id) << 16) | e;
                            entries_.emplace(res_id, Value{data_type, data});
                        }
                    }
                }
                inner += inner_size;
            }
        }
        pos += chunk_size;
    }
}

std::optional<std::string> ResourceTable::resolve_string(uint32_t resource_id) const {
    uint32_t current = resource_id;
    for (int depth = 0; depth < 10; ++depth) {
        auto it = entries_.find(current);
        if (it == entries_.end()) return std::nullopt;
        if (it->second.data_type == kTypeString) {
            if (it->second.data >= value_strings_.size()) return std::nullopt;
            return value_strings_.at(it->second.data);
        }
        if (it->second.data_type == kTypeReference) {
            current = it->second.data;
            continue;
        }
        return std::nullopt;
    }
    return std::nullopt; // reference cycle
}

} // namespace attrgraph::apk
