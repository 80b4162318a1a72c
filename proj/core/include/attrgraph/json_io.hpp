#pragma once

#include "attrgraph/apk/extract.hpp"
#include "attrgraph/dataset.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace attrgraph {

// Ordered JSON keeps field order stable, which the byte-identical output
// guarantee depends on.
using ojson = nlohmann::ordered_json;

ojson certificate_to_json(const apk::CertificateInfo& cert);
apk::CertificateInfo certificate_from_json(const ojson& doc);

ojson apk_signals_to_json(const apk::ApkSignals& signals);
apk::ApkSignals apk_signals_from_json(const ojson& doc);

// One ApkSignals object per line, in input order.
std::string apk_signals_to_jsonl(const std::vector<apk::ApkSignals>& all);
std::vector<apk::ApkSignals> apk_signals_from_jsonl(const std::string& text);

ojson registry_to_json(const MarketRegistry& registry);

// Versioned dataset container; parse rejects unknown format versions.
std::string serialize_dataset(const Dataset& dataset);
Dataset parse_dataset(const std::string& text);

// Machine-readable error envelope written to stderr on failures.
std::string error_json(std::string_view code, std::string_view message);

} // namespace attrgraph
