#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>

#include "attrgraph/apk/resource_strings.hpp"

namespace attrgraph::apk {

// Read-only view of a compiled resource table, restricted to entries in the
// default (unqualified) configuration; locale- or density-qualified values
// are ignored on purpose.
class ResourceTable {
public:
    explicit ResourceTable(std::span<const uint8_t> arsc);

    // Resolves a resource id to its string value in the default config,
    // following reference chains up to a small depth. nullopt when the entry
    // is missing, non-string, or only exists in qualified configs.
    std::optional<std::string> resolve_string(uint32_t resource_id) const;

private:
    struct Value {
        uint8_t data_type;
        uint32_t data;
    };

    StringPool value_strings_;
    std::map<uint32_t, Value> entries_;
};

} // namespace attrgraph::apk
