#include "attrgraph/metrics.hpp"

#include "attrgraph/util.hpp"

#include <algorithm>
#include <array>

namespace attrgraph {

namespace {

constexpr SignalKind kMarketSignalKinds[] = {
    SignalKind::PackageName,      SignalKind::AppNameMarket,  SignalKind::DeveloperName,
    SignalKind::DeveloperWebsite, SignalKind::DeveloperEmail, SignalKind::DeveloperAddress,
    SignalKind::PrivacyPolicyUrl,
};

struct RdnField {
    const char* name;
    const std::optional<std::string> apk::RdnSet::* member;
};

constexpr RdnField kRdnFields[] = {
    {"common_name", &apk::RdnSet::common_name},
    {"organization", &apk::RdnSet::organization},
    {"organizational_unit", &apk::RdnSet::organizational_unit},
    {"locality", &apk::RdnSet::locality},
    {"state", &apk::RdnSet::state},
    {"country", &apk::RdnSet::country},
};

std::map<std::string, std::vector<const MarketEntry*>> latest_by_market(const Dataset& dataset) {
    std::map<std::string, std::vector<const MarketEntry*>> by_market;
    for (const auto& [key, pick] : latest_entries(dataset)) {
        by_market[key.market].push_back(pick.entry);
    }
    return by_market;
}

} // namespace

AvailabilityReport availability(const Dataset& dataset, const AvailabilityOptions& options) {
    AvailabilityReport report;
    report.cutoff = options.cutoff_epoch;
    report.all_signers = options.all_signers;

    const auto cutoff_applies = [&options](const std::string& market, SignalKind kind) {
        if (!options.cutoff_epoch.has_value()) return false;
        const auto it = options.cutoff_signals.find(market);
        return it != options.cutoff_signals.end() && it->second.contains(kind);
    };

    for (const auto& [market, entries] : latest_by_market(dataset)) {
        AvailabilityMarketRow row;
        row.market = market;
        row.entries = entries.size();

        for (const SignalKind kind : kMarketSignalKinds) {
            AvailabilityCell cell;
            cell.collected = dataset.registry.collects(market, kind);
            if (cell.collected) {
                for (const MarketEntry* entry : entries) {
                    if (cutoff_applies(market, kind) && entry->fetched_at < *options.cutoff_epoch) {
                        continue; // collected only after the cutoff; out of scope
                    }
                    ++cell.missing.denominator;
                    if (entry->signal(kind) == nullptr) ++cell.missing.numerator;
                }
            }
            row.signals.emplace(kind, cell);
        }

        for (const RdnField& field : kRdnFields) {
            row.rdn.emplace(field.name, AvailabilityCell{});
        }
        for (const MarketEntry* entry : entries) {
            if (entry->certificates.empty()) continue;
            ++row.entries_with_cert;
            for (const RdnField& field : kRdnFields) {
                AvailabilityCell& cell = row.rdn.at(field.name);
                ++cell.missing.denominator;
                bool missing;
                if (options.all_signers) {
                    missing = std::any_of(entry->certificates.begin(), entry->certificates.end(),
                                          [&field](const apk::CertificateInfo& cert) {
                                              return !(cert.subject.*field.member).has_value();
                                          });
                } else {
                    // Certificates are kept sorted by fingerprint.
                    missing = !(entry->certificates.front().subject.*field.member).has_value();
                }
                if (missing) ++cell.missing.numerator;
            }
        }

        report.rows.push_back(std::move(row));
    }
    return report;
}

std::string_view value_change_name(ValueChange c) {
    switch (c) {
        case ValueChange::Unchanged: return "unchanged";
        case ValueChange::Changed: return "changed";
        case ValueChange::Appeared: return "appeared";
        case ValueChange::Disappeared: return "disappeared";
        case ValueChange::BothAbsent: return "both-absent";
    }
    return "?";
}

std::string_view cert_change_name(CertChange c) {
    switch (c) {
        case CertChange::Unchanged: return "unchanged";
        case CertChange::Added: return "added";
        case CertChange::FullyReplaced: return "fully-replaced";
        case CertChange::RemovedOnly: return "removed-only";
        case CertChange::Mixed: return "mixed";
        case CertChange::BothEmpty: return "both-empty";
    }
    return "?";
}

ValueChange classify_value_change(const Signal* first, const Signal* last) {
    if (first == nullptr && last == nullptr) return ValueChange::BothAbsent;
    if (first == nullptr) return ValueChange::Appeared;
    if (last == nullptr) return ValueChange::Disappeared;
    return first->canonical_value == last->canonical_value ? ValueChange::Unchanged
                                                           : ValueChange::Changed;
}

CertChange classify_cert_change(const std::set<std::string>& first,
                                const std::set<std::string>& last) {
    if (first.empty() && last.empty()) return CertChange::BothEmpty;
    if (first == last) return CertChange::Unchanged;

    const bool keeps_all = std::includes(last.begin(), last.end(), first.begin(), first.end());
    if (keeps_all) return CertChange::Added; // last ⊋ first (covers empty first)
    const bool kept_some = std::includes(first.begin(), first.end(), last.begin(), last.end());
    if (kept_some) return CertChange::RemovedOnly; // last ⊊ first (covers empty last)

    std::vector<std::string> common;
    std::set_intersection(first.begin(), first.end(), last.begin(), last.end(),
                          std::back_inserter(common));
    return common.empty() ? CertChange::FullyReplaced : CertChange::Mixed;
}

VolatilityReport volatility(const Dataset& dataset, const VolatilityOptions& options) {
    const LongitudinalResult longitudinal = longitudinal_pairs(dataset);

    VolatilityReport report;
    report.pairs_total = longitudinal.pairs.size();
    report.crawl1_only = longitudinal.crawl1_only;
    report.crawl2_only = longitudinal.crawl2_only;

    // Intermediate entries per key, for the optional reverted-change scan.
    std::map<EntryKey, std::vector<const MarketEntry*>> intermediates;
    if (options.scan_intermediate) {
        for (const MarketEntry& entry : dataset.entries) {
            intermediates[{entry.market, entry.package_name}].push_back(&entry);
        }
    }

    std::map<std::string, VolatilityMarketRow> rows;
    for (const LongitudinalPair& pair : longitudinal.pairs) {
        VolatilityMarketRow& row = rows[pair.first->market];
        row.market = pair.first->market;
        ++row.pairs;

        for (const SignalKind kind : kMarketSignalKinds) {
            if (!dataset.registry.collects(pair.first->market, kind)) continue;
            VolatilityKindRow& krow = row.kinds[kind];
            const Signal* first = pair.first->signal(kind);
            const Signal* last = pair.last->signal(kind);
            switch (classify_value_change(first, last)) {
                case ValueChange::Changed: ++krow.changed; break;
                case ValueChange::Appeared: ++krow.appeared; break;
                case ValueChange::Disappeared: ++krow.disappeared; break;
                case ValueChange::Unchanged: ++krow.unchanged; break;
                case ValueChange::BothAbsent: ++krow.both_absent; break;
            }
            if (options.scan_intermediate && first != nullptr && last != nullptr &&
                first->canonical_value == last->canonical_value) {
                const auto& all = intermediates[{pair.first->market, pair.first->package_name}];
                for (const MarketEntry* middle : all) {
                    if (middle->fetched_at <= pair.first->fetched_at ||
                        middle->fetched_at >= pair.last->fetched_at) {
                        continue;
                    }
                    const Signal* between = middle->signal(kind);
                    if (between != nullptr && between->canonical_value != first->canonical_value) {
                        ++krow.reverted;
                        break;
                    }
                }
            }
        }

        switch (classify_cert_change(pair.first->fingerprints(), pair.last->fingerprints())) {
            case CertChange::Unchanged: ++row.certs.unchanged; break;
            case CertChange::Added: ++row.certs.added; break;
            case CertChange::FullyReplaced: ++row.certs.fully_replaced; break;
            case CertChange::RemovedOnly: ++row.certs.removed_only; break;
            case CertChange::Mixed: ++row.certs.mixed; break;
            case CertChange::BothEmpty: ++row.certs.both_empty; break;
        }
    }

    for (auto& [market, row] : rows) {
        for (auto& [kind, krow] : row.kinds) {
            const uint64_t both_present = krow.changed + krow.unchanged;
            krow.change_rate = {krow.changed, both_present};
            krow.coverage = {both_present, row.pairs};
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

WithinAppReport within_app_consistency(const Dataset& dataset) {
    WithinAppReport report;
    for (const auto& [market, entries] : latest_by_market(dataset)) {
        WithinAppMarketRow row;
        row.market = market;

        for (const MarketEntry* entry : entries) {
            const Signal* market_name = entry->signal(SignalKind::AppNameMarket);
            const Signal* manifest_name = entry->signal(SignalKind::AppNameManifest);
            if (market_name == nullptr || manifest_name == nullptr) continue;
            ++row.with_both_names;

            if (detect_script(market_name->canonical_value) != Script::Latin ||
                detect_script(manifest_name->canonical_value) != Script::Latin) {
                ++row.non_latin_excluded;
                continue;
            }

            ++row.exact_match.denominator;
            ++row.below_half.denominator;
            const double similarity = levenshtein_similarity(market_name->canonical_value,
                                                             manifest_name->canonical_value);
            if (market_name->canonical_value == manifest_name->canonical_value) {
                ++row.exact_match.numerator;
            }
            if (similarity < 0.5) ++row.below_half.numerator;
            const auto bin = std::min<size_t>(9, static_cast<size_t>(similarity * 10.0));
            ++row.histogram[bin];
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

CrossMarketReport cross_market(const Dataset& dataset, const CrossMarketOptions& options) {
    CrossMarketReport report;
    report.play_market = options.play_market;

    // Latest entries per market, keyed by canonical package name.
    std::map<std::string, std::map<std::string, const MarketEntry*>> per_market;
    for (const auto& [key, pick] : latest_entries(dataset)) {
        const Signal* package = pick.entry->signal(SignalKind::PackageName);
        per_market[key.market].emplace(package->canonical_value, pick.entry);
    }

    std::vector<std::string> markets;
    for (const auto& [market, _] : per_market) markets.push_back(market);

    for (size_t a = 0; a < markets.size(); ++a) {
        for (size_t b = a + 1; b < markets.size(); ++b) {
            CrossMarketCell cell;
            cell.market_a = markets[a];
            cell.market_b = markets[b];
            const auto& side_a = per_market[markets[a]];
            const auto& side_b = per_market[markets[b]];
            const bool has_play = markets[a] == options.play_market ||
                                  markets[b] == options.play_market;
            if (has_play) cell.play_signed_on_other = Ratio{};

            for (const auto& [package, entry_a] : side_a) {
                const auto it = side_b.find(package);
                if (it == side_b.end()) continue;
                const MarketEntry* entry_b = it->second;
                ++cell.shared_packages;

                const auto certs_a = entry_a->fingerprints();
                const auto certs_b = entry_b->fingerprints();
                ++cell.same_cert.denominator;
                bool cert_match;
                if (options.require_equal_cert_sets) {
                    cert_match = !certs_a.empty() && certs_a == certs_b;
                } else {
                    std::vector<std::string> common;
                    std::set_intersection(certs_a.begin(), certs_a.end(), certs_b.begin(),
                                          certs_b.end(), std::back_inserter(common));
                    cert_match = !common.empty();
                }
                if (cert_match) ++cell.same_cert.numerator;

                const auto compare_names = [](const Signal* x, const Signal* y, Ratio& ratio) {
                    if (x == nullptr || y == nullptr) return;
                    if (detect_script(x->canonical_value) != detect_script(y->canonical_value)) {
                        return; // different alphabets are incomparable, skip
                    }
                    ++ratio.denominator;
                    if (x->canonical_value == y->canonical_value) ++ratio.numerator;
                };
                compare_names(entry_a->signal(SignalKind::AppNameMarket),
                              entry_b->signal(SignalKind::AppNameMarket), cell.same_app_name);
                compare_names(entry_a->signal(SignalKind::DeveloperName),
                              entry_b->signal(SignalKind::DeveloperName),
                              cell.same_developer_name);

                if (has_play) {
                    const MarketEntry* other =
                        markets[a] == options.play_market ? entry_b : entry_a;
                    ++cell.play_signed_on_other->denominator;
                    const bool play_signed =
                        std::any_of(other->certificates.begin(), other->certificates.end(),
                                    apk::is_play_signing_subject);
                    if (play_signed) ++cell.play_signed_on_other->numerator;
                }
            }
            report.cells.push_back(std::move(cell));
        }
    }
    return report;
}

OrgReport org_report(const Dataset& dataset, const std::string& market,
                     const std::vector<std::string>& developer_names) {
    OrgReport report;
    report.market = market;

    std::vector<const MarketEntry*> entries;
    for (const auto& [key, pick] : latest_entries(dataset)) {
        if (key.market == market) entries.push_back(pick.entry);
    }

    // Index latest entries by canonical developer name.
    std::map<std::string, std::vector<const MarketEntry*>> by_developer;
    for (const MarketEntry* entry : entries) {
        if (const Signal* name = entry->signal(SignalKind::DeveloperName); name != nullptr) {
            by_developer[name->canonical_value].push_back(entry);
        }
    }

    for (const std::string& requested : developer_names) {
        OrgRow row;
        row.developer_name = requested;
        const auto canonical = normalize_signal(SignalKind::DeveloperName, requested);
        const auto it = canonical.has_value() ? by_developer.find(canonical->canonical_value)
                                              : by_developer.end();
        if (it == by_developer.end()) {
            report.rows.push_back(std::move(row)); // unknown name: empty, flagged
            continue;
        }
        row.known = true;

        std::set<std::string> packages;
        std::set<std::string> emails;
        std::set<std::string> websites;
        std::set<std::string> certs;
        for (const MarketEntry* entry : it->second) {
            packages.insert(entry->signal(SignalKind::PackageName)->canonical_value);
            if (const Signal* s = entry->signal(SignalKind::DeveloperEmail); s != nullptr) {
                emails.insert(s->canonical_value);
            }
            if (const Signal* s = entry->signal(SignalKind::DeveloperWebsite); s != nullptr) {
                websites.insert(s->canonical_value);
            }
            const auto fps = entry->fingerprints();
            certs.insert(fps.begin(), fps.end());
        }
        row.apps = packages.size();
        row.emails = emails.size();
        row.websites = websites.size();
        row.certs = certs.size();

        std::set<std::string> others;
        for (const MarketEntry* entry : entries) {
            const Signal* name = entry->signal(SignalKind::DeveloperName);
            if (name == nullptr || name->canonical_value == it->first) continue;
            for (const auto& fp : entry->fingerprints()) {
                if (certs.contains(fp)) {
                    others.insert(name->canonical_value);
                    break;
                }
            }
        }
        row.other_names.assign(others.begin(), others.end());
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace attrgraph
