#pragma once

namespace attrgraph {

inline constexpr const char* kToolVersion = "0.1.0";

// Bumped whenever the dataset container or a report schema changes shape.
inline constexpr int kDatasetFormatVersion = 1;
inline constexpr int kReportSchemaVersion = 1;

} // namespace attrgraph
