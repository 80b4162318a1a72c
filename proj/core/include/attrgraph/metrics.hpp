#pragma once

#include "attrgraph/dataset.hpp"
#include "attrgraph/signal.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace attrgraph {

// Every percentage ships as numerator/denominator so reports re-derive it.
struct Ratio {
    uint64_t numerator = 0;
    uint64_t denominator = 0;

    double percent() const {
        return denominator == 0 ? 0.0
                                : 100.0 * static_cast<double>(numerator) /
                                      static_cast<double>(denominator);
    }
    friend bool operator==(const Ratio&, const Ratio&) = default;
};

// ---------------------------------------------------------------- availability

struct AvailabilityCell {
    bool collected = true; // false renders as a not-collected dash, never 0%
    Ratio missing;         // entries lacking the value / entries considered
};

struct AvailabilityMarketRow {
    std::string market;
    uint64_t entries = 0;           // unique latest (market, package) listings
    uint64_t entries_with_cert = 0; // denominator for the RDN rows
    std::map<SignalKind, AvailabilityCell> signals;
    std::map<std::string, AvailabilityCell> rdn; // keyed by RDN field name
};

struct AvailabilityReport {
    std::vector<AvailabilityMarketRow> rows; // sorted by market
    std::optional<int64_t> cutoff;
    bool all_signers = false;
};

struct AvailabilityOptions {
    // Entries before the cutoff leave the denominator of cutoff-restricted
    // signals (partial collection periods). No default: unset means no
    // restriction anywhere.
    std::optional<int64_t> cutoff_epoch;
    std::map<std::string, std::set<SignalKind>> cutoff_signals = {
        {"google-play", {SignalKind::DeveloperEmail, SignalKind::DeveloperAddress}}};
    // false: RDN presence judged on the first certificate by fingerprint
    // order; true: a field is missing when any signer's certificate lacks it.
    bool all_signers = false;
};

AvailabilityReport availability(const Dataset& dataset, const AvailabilityOptions& options = {});

// ------------------------------------------------------------------ volatility

enum class ValueChange { Unchanged, Changed, Appeared, Disappeared, BothAbsent };
enum class CertChange { Unchanged, Added, FullyReplaced, RemovedOnly, Mixed, BothEmpty };

std::string_view value_change_name(ValueChange c);
std::string_view cert_change_name(CertChange c);

ValueChange classify_value_change(const Signal* first, const Signal* last);
CertChange classify_cert_change(const std::set<std::string>& first,
                                const std::set<std::string>& last);

struct VolatilityKindRow {
    uint64_t changed = 0;
    uint64_t appeared = 0;
    uint64_t disappeared = 0;
    uint64_t unchanged = 0;   // same value on both ends
    uint64_t both_absent = 0; // reported alongside, outside the headline rate
    uint64_t reverted = 0;    // unchanged ends, differing intermediate value
    Ratio change_rate;        // changed / both-present
    Ratio coverage;           // both-present / pairs
};

struct VolatilityCertRow {
    uint64_t unchanged = 0;
    uint64_t added = 0;
    uint64_t fully_replaced = 0;
    uint64_t removed_only = 0;
    uint64_t mixed = 0; // partial overlap with both additions and removals
    uint64_t both_empty = 0;
};

struct VolatilityMarketRow {
    std::string market;
    uint64_t pairs = 0;
    std::map<SignalKind, VolatilityKindRow> kinds;
    VolatilityCertRow certs;
};

struct VolatilityReport {
    std::vector<VolatilityMarketRow> rows; // sorted by market
    uint64_t pairs_total = 0;
    uint64_t crawl1_only = 0;
    uint64_t crawl2_only = 0;
};

struct VolatilityOptions {
    // Scan entries between the pair's endpoints and count pairs that changed
    // in between but ended on their starting value.
    bool scan_intermediate = false;
};

VolatilityReport volatility(const Dataset& dataset, const VolatilityOptions& options = {});

// ------------------------------------------------------- within-app consistency

struct WithinAppMarketRow {
    std::string market;
    uint64_t with_both_names = 0;  // latest entries carrying market + manifest name
    uint64_t non_latin_excluded = 0;
    Ratio exact_match;             // over compared (both-Latin) pairs
    Ratio below_half;              // similarity < 0.5
    // Ten similarity bins: [0,0.1), ..., [0.8,0.9), [0.9,1.0].
    std::array<uint64_t, 10> histogram{};
};

struct WithinAppReport {
    std::vector<WithinAppMarketRow> rows; // sorted by market
};

WithinAppReport within_app_consistency(const Dataset& dataset);

// ----------------------------------------------------------------- cross-market

struct CrossMarketCell {
    std::string market_a; // lexicographically first of the pair
    std::string market_b;
    uint64_t shared_packages = 0;
    Ratio same_cert;           // over all shared packages
    Ratio same_app_name;       // over shared packages with same-script names both sides
    Ratio same_developer_name; // likewise
    std::optional<Ratio> play_signed_on_other; // only for pairs involving google-play
};

struct CrossMarketReport {
    std::vector<CrossMarketCell> cells; // sorted by (market_a, market_b)
    std::string play_market = "google-play";
};

struct CrossMarketOptions {
    // false: certificates "match" when the fingerprint sets intersect;
    // true: only when they are equal.
    bool require_equal_cert_sets = false;
    std::string play_market = "google-play";
};

CrossMarketReport cross_market(const Dataset& dataset, const CrossMarketOptions& options = {});

// -------------------------------------------------------------------------- org

struct OrgRow {
    std::string developer_name; // as requested
    bool known = false;
    uint64_t apps = 0;     // unique canonical package names
    uint64_t emails = 0;
    uint64_t websites = 0;
    uint64_t certs = 0;    // unique fingerprints
    std::vector<std::string> other_names; // canonical names sharing any cert
};

struct OrgReport {
    std::string market;
    std::vector<OrgRow> rows; // input order
};

OrgReport org_report(const Dataset& dataset, const std::string& market,
                     const std::vector<std::string>& developer_names);

} // namespace attrgraph
