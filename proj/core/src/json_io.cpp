#include "attrgraph/json_io.hpp"

#include "attrgraph/util.hpp"
#include "attrgraph/version.hpp"

#include <sstream>

namespace attrgraph {

namespace {

void put_optional(ojson& doc, const char* field, const std::optional<std::string>& value) {
    if (value.has_value()) doc[field] = *value;
}

std::optional<std::string> get_optional(const ojson& doc, const char* field) {
    const auto it = doc.find(field);
    if (it == doc.end() || it->is_null()) return std::nullopt;
    return it->get<std::string>();
}

ojson rdn_to_json(const apk::RdnSet& rdn) {
    ojson doc = ojson::object();
    put_optional(doc, "common_name", rdn.common_name);
    put_optional(doc, "organization", rdn.organization);
    put_optional(doc, "organizational_unit", rdn.organizational_unit);
    put_optional(doc, "locality", rdn.locality);
    put_optional(doc, "state", rdn.state);
    put_optional(doc, "country", rdn.country);
    return doc;
}

apk::RdnSet rdn_from_json(const ojson& doc) {
    apk::RdnSet rdn;
    rdn.common_name = get_optional(doc, "common_name");
    rdn.organization = get_optional(doc, "organization");
    rdn.organizational_unit = get_optional(doc, "organizational_unit");
    rdn.locality = get_optional(doc, "locality");
    rdn.state = get_optional(doc, "state");
    rdn.country = get_optional(doc, "country");
    return rdn;
}

} // namespace

ojson certificate_to_json(const apk::CertificateInfo& cert) {
    ojson doc = ojson::object();
    doc["fingerprint_sha256"] = cert.fingerprint_sha256;
    doc["subject"] = rdn_to_json(cert.subject);
    doc["issuer"] = rdn_to_json(cert.issuer);
    doc["self_signed"] = cert.self_signed;
    ojson schemes = ojson::array();
    for (const auto scheme : cert.schemes) schemes.push_back(std::string(scheme_name(scheme)));
    doc["schemes"] = std::move(schemes);
    return doc;
}

apk::CertificateInfo certificate_from_json(const ojson& doc) {
    apk::CertificateInfo cert;
    cert.fingerprint_sha256 = doc.at("fingerprint_sha256").get<std::string>();
    cert.subject = rdn_from_json(doc.at("subject"));
    cert.issuer = rdn_from_json(doc.at("issuer"));
    cert.self_signed = doc.at("self_signed").get<bool>();
    for (const auto& name : doc.at("schemes")) {
        const auto scheme = apk::scheme_from_name(name.get<std::string>());
        if (!scheme.has_value()) {
            throw ParseError("bad-scheme", "unknown signature scheme: " + name.get<std::string>());
        }
        cert.schemes.insert(*scheme);
    }
    return cert;
}

ojson apk_signals_to_json(const apk::ApkSignals& signals) {
    ojson doc = ojson::object();
    doc["apk_sha256"] = signals.apk_sha256;
    doc["package_name"] = signals.package_name;
    if (signals.app_name_manifest.has_value()) {
        doc["app_name_manifest"] = *signals.app_name_manifest;
    } else {
        doc["app_name_manifest"] = nullptr;
    }
    ojson certs = ojson::array();
    for (const auto& cert : signals.certificates) certs.push_back(certificate_to_json(cert));
    doc["certificates"] = std::move(certs);
    doc["signer_count"] = signals.signer_count;
    doc["warnings"] = signals.warnings;
    return doc;
}

apk::ApkSignals apk_signals_from_json(const ojson& doc) {
    apk::ApkSignals signals;
    signals.apk_sha256 = doc.at("apk_sha256").get<std::string>();
    signals.package_name = doc.at("package_name").get<std::string>();
    signals.app_name_manifest = get_optional(doc, "app_name_manifest");
    for (const auto& cert : doc.at("certificates")) {
        signals.certificates.push_back(certificate_from_json(cert));
    }
    signals.signer_count = doc.at("signer_count").get<int>();
    if (const auto it = doc.find("warnings"); it != doc.end()) {
        signals.warnings = it->get<std::vector<std::string>>();
    }
    return signals;
}

std::string apk_signals_to_jsonl(const std::vector<apk::ApkSignals>& all) {
    std::string out;
    for (const auto& signals : all) {
        out += apk_signals_to_json(signals).dump();
        out += '\n';
    }
    return out;
}

std::vector<apk::ApkSignals> apk_signals_from_jsonl(const std::string& text) {
    std::vector<apk::ApkSignals> all;
    std::istringstream input(text);
    std::string line;
    size_t line_no = 0;
    while (std::getline(input, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        ojson doc = ojson::parse(line, nullptr, false);
        if (doc.is_discarded() || !doc.is_object()) {
            throw ParseError("bad-json",
                             "apk-signals line " + std::to_string(line_no) + " is not a JSON object");
        }
        try {
            all.push_back(apk_signals_from_json(doc));
        } catch (const ojson::exception& e) {
            throw ParseError("bad-json", "apk-signals line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return all;
}

ojson registry_to_json(const MarketRegistry& registry) {
    ojson markets = ojson::array();
    for (const auto& [name, policy] : registry.policies()) {
        ojson entry = ojson::object();
        entry["name"] = name;
        ojson collects = ojson::array();
        for (const SignalKind kind : kAllSignalKinds) {
            if (policy.collects.contains(kind)) collects.push_back(std::string(kind_token(kind)));
        }
        entry["collects"] = std::move(collects);
        markets.push_back(std::move(entry));
    }
    ojson doc = ojson::object();
    doc["markets"] = std::move(markets);
    return doc;
}

std::string serialize_dataset(const Dataset& dataset) {
    ojson doc = ojson::object();
    doc["format_version"] = kDatasetFormatVersion;
    doc["tool_version"] = kToolVersion;
    doc["registry"] = registry_to_json(dataset.registry);

    ojson entries = ojson::array();
    for (const MarketEntry& entry : dataset.entries) {
        ojson row = ojson::object();
        row["market"] = entry.market;
        row["package_name"] = entry.package_name;
        row["crawl_id"] = entry.crawl_id;
        row["fetched_at"] = format_utc_timestamp(entry.fetched_at);
        if (entry.date_only) row["date_only"] = true;
        put_optional(row, "apk_sha256", entry.apk_sha256);

        ojson signals = ojson::object();
        for (const SignalKind kind : kAllSignalKinds) {
            if (const Signal* signal = entry.signal(kind); signal != nullptr) {
                ojson value = ojson::object();
                value["raw"] = signal->raw_value;
                value["canonical"] = signal->canonical_value;
                signals[std::string(kind_token(kind))] = std::move(value);
            }
        }
        row["signals"] = std::move(signals);

        if (!entry.certificates.empty()) {
            ojson certs = ojson::array();
            for (const auto& cert : entry.certificates) certs.push_back(certificate_to_json(cert));
            row["certificates"] = std::move(certs);
        }
        if (!entry.flags.empty()) row["flags"] = entry.flags;
        entries.push_back(std::move(row));
    }
    doc["entries"] = std::move(entries);
    return doc.dump(2) + "\n";
}

Dataset parse_dataset(const std::string& text) {
    ojson doc = ojson::parse(text, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
        throw ParseError("bad-dataset", "dataset file is not a JSON object");
    }
    if (!doc.contains("format_version") || !doc["format_version"].is_number_integer() ||
        doc["format_version"].get<int>() != kDatasetFormatVersion) {
        throw ParseError("bad-dataset", "unsupported dataset format version");
    }

    Dataset dataset;
    dataset.registry = MarketRegistry::from_json(doc.at("registry").dump());

    try {
        size_t index = 0;
        for (const auto& row : doc.at("entries")) {
            MarketEntry entry;
            entry.market = row.at("market").get<std::string>();
            entry.package_name = row.at("package_name").get<std::string>();
            entry.crawl_id = row.at("crawl_id").get<int>();
            entry.fetched_at = parse_utc_timestamp(row.at("fetched_at").get<std::string>());
            entry.date_only = row.value("date_only", false);
            entry.apk_sha256 = get_optional(row, "apk_sha256");

            for (const auto& [token, value] : row.at("signals").items()) {
                const auto kind = kind_from_token(token);
                if (!kind.has_value()) {
                    throw ParseError("bad-dataset", "unknown signal kind: " + token);
                }
                Signal signal;
                signal.kind = *kind;
                signal.raw_value = value.at("raw").get<std::string>();
                signal.canonical_value = value.at("canonical").get<std::string>();
                entry.signals.emplace(*kind, std::move(signal));
            }

            if (const auto it = row.find("certificates"); it != row.end()) {
                for (const auto& cert : *it) {
                    entry.certificates.push_back(certificate_from_json(cert));
                }
            }
            if (const auto it = row.find("flags"); it != row.end()) {
                entry.flags = it->get<std::vector<std::string>>();
            }
            entry.input_index = index++;
            dataset.markets.insert(entry.market);
            dataset.entries.push_back(std::move(entry));
        }
    } catch (const ojson::exception& e) {
        throw ParseError("bad-dataset", std::string("malformed dataset entry: ") + e.what());
    }
    return dataset;
}

std::string error_json(std::string_view code, std::string_view message) {
    ojson doc = ojson::object();
    doc["error"] = ojson::object();
    doc["error"]["code"] = std::string(code);
    doc["error"]["message"] = std::string(message);
    return doc.dump();
}

} // namespace attrgraph
