#include "attrgraph/dataset.hpp"

#include "attrgraph/util.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <sstream>
#include <tuple>

namespace attrgraph {

using nlohmann::json;

namespace {

// The market-provided kinds; certificates and the manifest name arrive via
// the APK join, never from listing metadata.
constexpr SignalKind kMarketKinds[] = {
    SignalKind::PackageName,      SignalKind::AppNameMarket,   SignalKind::DeveloperName,
    SignalKind::DeveloperWebsite, SignalKind::DeveloperEmail,  SignalKind::DeveloperAddress,
    SignalKind::PrivacyPolicyUrl,
};

std::set<SignalKind> kinds_from_tokens(const json& tokens) {
    std::set<SignalKind> kinds;
    for (const auto& token : tokens) {
        const auto kind = kind_from_token(token.get<std::string>());
        if (!kind.has_value()) {
            throw ParseError("bad-registry", "unknown signal kind token: " + token.get<std::string>());
        }
        kinds.insert(*kind);
    }
    return kinds;
}

std::optional<std::string> optional_text(const json& record, const char* field) {
    const auto it = record.find(field);
    if (it == record.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) {
        throw ParseError("bad-field", std::string(field) + " must be a string");
    }
    return it->get<std::string>();
}

bool entry_order(const MarketEntry& a, const MarketEntry& b) {
    return std::tie(a.market, a.package_name, a.fetched_at) <
           std::tie(b.market, b.package_name, b.fetched_at);
}

void add_flag(MarketEntry& entry, std::string_view flag) {
    if (std::find(entry.flags.begin(), entry.flags.end(), flag) == entry.flags.end()) {
        entry.flags.emplace_back(flag);
    }
}

} // namespace

const Signal* MarketEntry::signal(SignalKind kind) const {
    const auto it = signals.find(kind);
    return it == signals.end() ? nullptr : &it->second;
}

std::set<std::string> MarketEntry::fingerprints() const {
    std::set<std::string> out;
    for (const auto& cert : certificates) out.insert(cert.fingerprint_sha256);
    return out;
}

MarketRegistry MarketRegistry::builtin() {
    const std::set<SignalKind> all(std::begin(kMarketKinds), std::end(kMarketKinds));
    const std::set<SignalKind> name_triple = {SignalKind::PackageName, SignalKind::AppNameMarket,
                                              SignalKind::DeveloperName};
    MarketRegistry registry;
    registry.add({"google-play", all});
    registry.add({"apkmonk", name_triple});
    registry.add({"tencent", name_triple});
    registry.add({"apkmirror", name_triple});
    registry.add({"baidu", {SignalKind::PackageName, SignalKind::AppNameMarket}});
    return registry;
}

MarketRegistry MarketRegistry::from_json(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ParseError("bad-registry", std::string("registry is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("markets") || !doc["markets"].is_array()) {
        throw ParseError("bad-registry", "registry must be an object with a markets array");
    }
    MarketRegistry registry;
    for (const auto& entry : doc["markets"]) {
        if (!entry.contains("name") || !entry["name"].is_string()) {
            throw ParseError("bad-registry", "market entry missing name");
        }
        MarketPolicy policy;
        policy.name = entry["name"].get<std::string>();
        if (entry.contains("collects")) {
            policy.collects = kinds_from_tokens(entry["collects"]);
        }
        policy.collects.insert(SignalKind::PackageName); // identity field, always collected
        registry.add(std::move(policy));
    }
    return registry;
}

void MarketRegistry::add(MarketPolicy policy) {
    const std::string name = policy.name;
    policies_[name] = std::move(policy);
}

bool MarketRegistry::known(const std::string& market) const {
    return policies_.contains(market);
}

bool MarketRegistry::collects(const std::string& market, SignalKind kind) const {
    const auto it = policies_.find(market);
    if (it == policies_.end()) return false;
    return it->second.collects.contains(kind);
}

LoadResult load_dataset(const std::string& jsonl_text, const MarketRegistry& registry) {
    LoadResult result;
    result.dataset.registry = registry;

    std::set<std::tuple<std::string, std::string, int64_t>> seen;
    std::istringstream input(jsonl_text);
    std::string line;
    size_t line_no = 0;
    size_t accepted = 0;

    while (std::getline(input, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

        const auto reject = [&](std::string code, std::string message) {
            result.errors.push_back({line_no, std::move(code), std::move(message)});
        };

        json record = json::parse(line, nullptr, false);
        if (record.is_discarded() || !record.is_object()) {
            reject("bad-json", "line is not a JSON object");
            continue;
        }

        try {
            MarketEntry entry;

            const auto market = optional_text(record, "market");
            if (!market.has_value() || market->empty()) {
                reject("missing-field", "market is required");
                continue;
            }
            entry.market = *market;
            if (!registry.known(entry.market)) {
                reject("unknown-market", "market not in registry: " + entry.market);
                continue;
            }

            const auto package = optional_text(record, "package_name");
            auto package_signal =
                package.has_value() ? normalize_signal(SignalKind::PackageName, *package)
                                    : std::nullopt;
            if (!package_signal.has_value()) {
                reject("missing-field", "package_name is required");
                continue;
            }
            entry.package_name = *package;
            entry.signals.emplace(SignalKind::PackageName, std::move(*package_signal));

            const auto crawl_it = record.find("crawl_id");
            if (crawl_it == record.end() || !crawl_it->is_number_integer()) {
                reject("missing-field", "crawl_id is required");
                continue;
            }
            entry.crawl_id = crawl_it->get<int>();
            if (entry.crawl_id != 1 && entry.crawl_id != 2) {
                reject("bad-field", "crawl_id must be 1 or 2");
                continue;
            }

            const auto fetched = optional_text(record, "fetched_at");
            if (!fetched.has_value()) {
                reject("missing-field", "fetched_at is required");
                continue;
            }
            bool date_only = false;
            entry.fetched_at = parse_utc_timestamp(*fetched, &date_only);
            entry.date_only = date_only;

            if (auto sha = optional_text(record, "apk_sha256"); sha.has_value()) {
                std::string lowered = ascii_lower(*sha);
                if (lowered.size() != 64 || !is_lower_hex(lowered)) {
                    reject("bad-hash", "apk_sha256 must be 64 hex chars");
                    continue;
                }
                entry.apk_sha256 = std::move(lowered);
            }

            static constexpr std::pair<const char*, SignalKind> kOptionalFields[] = {
                {"app_name", SignalKind::AppNameMarket},
                {"developer_name", SignalKind::DeveloperName},
                {"developer_website", SignalKind::DeveloperWebsite},
                {"developer_email", SignalKind::DeveloperEmail},
                {"developer_address", SignalKind::DeveloperAddress},
                {"privacy_policy_url", SignalKind::PrivacyPolicyUrl},
            };
            for (const auto& [field, kind] : kOptionalFields) {
                if (auto raw = optional_text(record, field); raw.has_value()) {
                    if (auto signal = normalize_signal(kind, *raw); signal.has_value()) {
                        entry.signals.emplace(kind, std::move(*signal));
                    }
                }
            }

            const auto triple = std::make_tuple(entry.market, entry.package_name, entry.fetched_at);
            if (!seen.insert(triple).second) {
                reject("duplicate-entry", "duplicate (market, package_name, fetched_at): " +
                                              entry.market + ", " + entry.package_name + ", " +
                                              format_utc_timestamp(entry.fetched_at));
                continue;
            }

            entry.input_index = accepted++;
            result.dataset.markets.insert(entry.market);
            result.dataset.entries.push_back(std::move(entry));
        } catch (const ParseError& e) {
            reject(e.code(), e.what());
        }
    }

    std::stable_sort(result.dataset.entries.begin(), result.dataset.entries.end(), entry_order);
    // Re-number in sorted order so serialization round-trips exactly; the
    // triple is unique, so sorted order itself is input-order independent.
    for (size_t i = 0; i < result.dataset.entries.size(); ++i) {
        result.dataset.entries[i].input_index = i;
    }
    return result;
}

namespace {

// Later timestamp wins; on equal timestamps the larger hash, then the later
// input position. Used with reversed arguments for "earliest" selection.
bool prefer_as_latest(const MarketEntry& candidate, const MarketEntry& incumbent) {
    if (candidate.fetched_at != incumbent.fetched_at) {
        return candidate.fetched_at > incumbent.fetched_at;
    }
    const std::string& ch = candidate.apk_sha256.value_or("");
    const std::string& ih = incumbent.apk_sha256.value_or("");
    if (ch != ih) return ch > ih;
    return candidate.input_index > incumbent.input_index;
}

} // namespace

std::map<EntryKey, LatestPick> latest_entries(const Dataset& dataset) {
    std::map<EntryKey, LatestPick> picks;
    for (const MarketEntry& entry : dataset.entries) {
        auto& pick = picks[{entry.market, entry.package_name}];
        if (pick.entry == nullptr) {
            pick.entry = &entry;
        } else if (entry.fetched_at == pick.entry->fetched_at) {
            pick.tie = true;
            if (prefer_as_latest(entry, *pick.entry)) pick.entry = &entry;
        } else if (prefer_as_latest(entry, *pick.entry)) {
            pick.entry = &entry;
            pick.tie = false;
        }
    }
    return picks;
}

LongitudinalResult longitudinal_pairs(const Dataset& dataset) {
    struct Slot {
        const MarketEntry* first = nullptr;
        const MarketEntry* last = nullptr;
    };
    std::map<EntryKey, Slot> slots;
    for (const MarketEntry& entry : dataset.entries) {
        Slot& slot = slots[{entry.market, entry.package_name}];
        if (entry.crawl_id == 1) {
            if (slot.first == nullptr || prefer_as_latest(*slot.first, entry)) {
                slot.first = &entry;
            }
        } else {
            if (slot.last == nullptr || prefer_as_latest(entry, *slot.last)) {
                slot.last = &entry;
            }
        }
    }

    LongitudinalResult result;
    for (const auto& [key, slot] : slots) {
        if (slot.first == nullptr) {
            ++result.crawl2_only;
        } else if (slot.last == nullptr) {
            ++result.crawl1_only;
        } else if (slot.first->fetched_at > slot.last->fetched_at) {
            ++result.inverted;
        } else {
            result.pairs.push_back({slot.first, slot.last});
        }
    }
    return result;
}

Dataset join_apk_signals(Dataset dataset, const std::vector<apk::ApkSignals>& extractions) {
    std::map<std::string, const apk::ApkSignals*> by_sha;
    for (const auto& extraction : extractions) {
        by_sha[extraction.apk_sha256] = &extraction;
    }

    for (MarketEntry& entry : dataset.entries) {
        const apk::ApkSignals* match = nullptr;
        if (entry.apk_sha256.has_value()) {
            const auto it = by_sha.find(*entry.apk_sha256);
            if (it != by_sha.end()) match = it->second;
        }
        if (match == nullptr) {
            add_flag(entry, "apk-missing");
            continue;
        }

        entry.certificates = match->certificates;
        if (match->app_name_manifest.has_value()) {
            if (auto signal = normalize_signal(SignalKind::AppNameManifest, *match->app_name_manifest);
                signal.has_value()) {
                entry.signals.insert_or_assign(SignalKind::AppNameManifest, std::move(*signal));
            }
        }

        const auto manifest_package = normalize_signal(SignalKind::PackageName, match->package_name);
        const Signal* listed = entry.signal(SignalKind::PackageName);
        if (manifest_package.has_value() && listed != nullptr &&
            manifest_package->canonical_value != listed->canonical_value) {
            add_flag(entry, "package-conflict");
        }
    }
    return dataset;
}

} // namespace attrgraph
