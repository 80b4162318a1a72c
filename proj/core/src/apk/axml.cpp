#include "attrgraph/apk/axml.hpp"

#include "attrgraph/apk/byte_reader.hpp"
#include "attrgraph/apk/resource_strings.hpp"

namespace attrgraph::apk {

namespace {

constexpr uint16_t kChunkXml = 0x0003;
constexpr uint16_t kChunkStringPool = 0x0001;
constexpr uint16_t kChunkResourceMap = 0x0180;
constexpr uint16_t kChunkStartElement = 0x0102;

constexpr uint32_t kNoIndex = 0xFFFFFFFF;
constexpr uint32_t kLabelAttrResId = 0x01010001; // android:label

constexpr uint8_t kTypeString = 0x03;
constexpr uint8_t kTypeReference = 0x01;

struct Attribute {
    uint32_t ns;
    uint32_t name;
    uint32_t raw_value;
    uint8_t data_type;
    uint32_t data;
};

} // namespace

ManifestInfo parse_binary_manifest(std::span<const uint8_t> axml) {
    ByteReader file(axml);
    uint16_t type, header_size;
    uint32_t size;
    try {
        type = file.u16();
        header_size = file.u16();
        size = file.u32();
    } catch (const ParseError&) {
        throw ParseError("bad-manifest", "manifest too small for a chunk header");
    }
    if (type != kChunkXml || size > axml.size() || header_size < 8) {
        throw ParseError("bad-manifest", "not an Android binary XML document");
    }

    StringPool strings;
    std::vector<uint32_t> resource_map;
    ManifestInfo info;
    bool saw_manifest_element = false;
    bool in_application_scope = false;
    int element_depth = 0;

    size_t pos = header_size;
    while (pos + 8 <= size) {
        ByteReader chunk(axml, pos);
        const uint16_t chunk_type = chunk.u16();
        const uint16_t chunk_header = chunk.u16();
        const uint32_t chunk_size = chunk.u32();
        if (chunk_size < 8 || pos + chunk_size > size) {
            throw ParseError("bad-manifest", "chunk overruns document at offset " + std::to_string(pos));
        }

        if (chunk_type == kChunkStringPool) {
            strings = parse_string_pool(axml.subspan(pos, chunk_size));
        } else if (chunk_type == kChunkResourceMap) {
            ByteReader ids(axml, pos + chunk_header);
            const size_t count = (chunk_size - chunk_header) / 4;
            resource_map.reserve(count);
            for (size_t i = 0; i < count; ++i) resource_map.push_back(ids.u32());
        } else if (chunk_type == kChunkStartElement) {
            ByteReader body(axml, pos + chunk_header);
            body.skip(4); // ns
            const uint32_t name_idx = body.u32();
            const uint16_t attribute_start = body.u16();
            const uint16_t attribute_size = body.u16();
            const uint16_t attribute_count = body.u16();
            if (attribute_size < 20) {
                throw ParseError("bad-manifest", "attribute record too small");
            }

            const std::string element = name_idx == kNoIndex ? "" : strings.at(name_idx);
            ++element_depth;

            std::vector<Attribute> attrs;
            attrs.reserve(attribute_count);
            for (uint16_t a = 0; a < attribute_count; ++a) {
                ByteReader ar(axml, pos + chunk_header + attribute_start + a * attribute_size);
                Attribute attr{};
                attr.ns = ar.u32();
                attr.name = ar.u32();
                attr.raw_value = ar.u32();
                ar.skip(2); // value size
                ar.skip(1); // res0
                attr.data_type = ar.u8();
                attr.data = ar.u32();
                attrs.push_back(attr);
            }

            if (element_depth == 1) {
                if (element != "manifest") {
                    throw ParseError("bad-manifest", "root element is <" + element + ">, expected <manifest>");
                }
                saw_manifest_element = true;
                for (const Attribute& attr : attrs) {
                    if (attr.name != kNoIndex && strings.at(attr.name) == "package") {
                        if (attr.raw_value != kNoIndex) {
                            info.package_name = strings.at(attr.raw_value);
                        } else if (attr.data_type == kTypeString) {
                            info.package_name = strings.at(attr.data);
                        }
                    }
                }
                if (info.package_name.empty()) {
                    throw ParseError("bad-manifest", "manifest has no package attribute");
                }
            } else if (element == "application" && element_depth == 2 && !in_application_scope) {
                in_application_scope = true;
                for (const Attribute& attr : attrs) {
                    const bool by_resource_id = attr.name < resource_map.size() &&
                                                resource_map[attr.name] == kLabelAttrResId;
                    const bool by_name = attr.name != kNoIndex && strings.at(attr.name) == "label";
                    if (!by_resource_id && !by_name) continue;
                    if (attr.data_type == kTypeReference) {
                        info.label_resource_id = attr.data;
                    } else if (attr.raw_value != kNoIndex) {
                        info.label_literal = strings.at(attr.raw_value);
                    } else if (attr.data_type == kTypeString) {
                        info.label_literal = strings.at(attr.data);
                    }
                    break;
                }
            }
        } else if (chunk_type == 0x0103) { // end element
            --element_depth;
        }

        pos += chunk_size;
    }

    if (!saw_manifest_element) {
        throw ParseError("bad-manifest", "no <manifest> element found");
    }
    return info;
}

} // namespace attrgraph::apk
