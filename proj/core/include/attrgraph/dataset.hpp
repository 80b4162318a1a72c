#pragma once

#include "attrgraph/apk/certificate.hpp"
#include "attrgraph/apk/extract.hpp"
#include "attrgraph/signal.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace attrgraph {

// Which signals a market publishes at all. A kind outside `collects` renders
// as "not collected" in availability reports instead of 100% missing.
struct MarketPolicy {
    std::string name;
    std::set<SignalKind> collects;
};

class MarketRegistry {
public:
    // The five markets of the source corpus with their observed signal masks.
    static MarketRegistry builtin();
    static MarketRegistry from_json(const std::string& json_text);

    void add(MarketPolicy policy);
    bool known(const std::string& market) const;
    bool collects(const std::string& market, SignalKind kind) const;
    const std::map<std::string, MarketPolicy>& policies() const { return policies_; }

private:
    std::map<std::string, MarketPolicy> policies_;
};

struct MarketEntry {
    std::string market;
    std::string package_name; // raw identifier as listed
    int crawl_id = 0;         // 1 or 2
    int64_t fetched_at = 0;   // UTC epoch seconds
    bool date_only = false;   // input carried a date without a time of day
    std::optional<std::string> apk_sha256;
    std::map<SignalKind, Signal> signals; // present signals only, canonicalized
    std::vector<apk::CertificateInfo> certificates;
    std::vector<std::string> flags; // "apk-missing", "package-conflict", ...
    size_t input_index = 0;         // load order, last-resort tie break

    const Signal* signal(SignalKind kind) const;
    std::set<std::string> fingerprints() const;
};

struct Dataset {
    std::vector<MarketEntry> entries; // sorted by (market, package_name, fetched_at)
    std::set<std::string> markets;
    MarketRegistry registry;
};

struct LoadError {
    size_t line = 0; // 1-based input line
    std::string code;
    std::string message;
};

struct LoadResult {
    Dataset dataset;
    std::vector<LoadError> errors;
};

// Parses newline-delimited JSON market records. Rows that fail validation
// (missing market/package_name/fetched_at, unknown market, bad timestamp,
// bad hash, duplicate (market, package_name, fetched_at) triple) land in
// `errors`; everything else is normalized and sorted into the dataset.
LoadResult load_dataset(const std::string& jsonl_text, const MarketRegistry& registry);

struct EntryKey {
    std::string market;
    std::string package_name;

    friend auto operator<=>(const EntryKey&, const EntryKey&) = default;
};

struct LatestPick {
    const MarketEntry* entry = nullptr;
    bool tie = false; // more than one candidate shared the maximal fetched_at
};

// Latest entry per (market, package_name): maximal fetched_at, ties broken
// by lexicographically larger apk_sha256, then by later input order.
std::map<EntryKey, LatestPick> latest_entries(const Dataset& dataset);

struct LongitudinalPair {
    const MarketEntry* first = nullptr; // earliest crawl-1 entry
    const MarketEntry* last = nullptr;  // latest crawl-2 entry
};

struct LongitudinalResult {
    std::vector<LongitudinalPair> pairs; // sorted by (market, package_name)
    size_t crawl1_only = 0;              // keys seen in crawl 1 but not 2
    size_t crawl2_only = 0;
    size_t inverted = 0; // dropped pairs whose crawl-1 entry postdates crawl-2
};

LongitudinalResult longitudinal_pairs(const Dataset& dataset);

// Attaches extraction output to entries by apk_sha256: certificates and the
// manifest app name. Entries without a matching extraction are flagged
// "apk-missing"; a package-name mismatch flags "package-conflict" but the
// join still happens (the mismatch itself is a signal worth keeping).
Dataset join_apk_signals(Dataset dataset, const std::vector<apk::ApkSignals>& extractions);

} // namespace attrgraph
