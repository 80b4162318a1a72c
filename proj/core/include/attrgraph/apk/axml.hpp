#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

namespace attrgraph::apk {

struct ManifestInfo {
    std::string package_name;
    // One of the two below is set when the <application> carries a label;
    // a resource id means the value must be resolved through resources.arsc.
    std::optional<std::string> label_literal;
    std::optional<uint32_t> label_resource_id;
};

// Parses Android binary XML and returns the manifest package attribute plus
// the application label. Throws ParseError("bad-manifest") on malformed
// chunks or string-pool indices out of range.
ManifestInfo parse_binary_manifest(std::span<const uint8_t> axml);

} // namespace attrgraph::apk
