#include "attrgraph/report_json.hpp"

#include "attrgraph/util.hpp"
#include "attrgraph/version.hpp"

#include <algorithm>
#include <cstdio>

namespace attrgraph {

namespace {

ojson report_header(const char* kind) {
    ojson doc = ojson::object();
    doc["schema_version"] = kReportSchemaVersion;
    doc["report"] = kind;
    return doc;
}

ojson ratio_to_json(const Ratio& ratio) {
    ojson doc = ojson::object();
    doc["numerator"] = ratio.numerator;
    doc["denominator"] = ratio.denominator;
    doc["percent"] = ratio.percent();
    return doc;
}

ojson cell_to_json(const AvailabilityCell& cell) {
    ojson doc = ojson::object();
    doc["collected"] = cell.collected;
    if (cell.collected) doc["missing"] = ratio_to_json(cell.missing);
    return doc;
}

std::string percent_text(const Ratio& ratio) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", ratio.percent());
    return buf;
}

std::string csv_quote(std::string_view field) {
    if (field.find_first_of(",\"\n") == std::string_view::npos) return std::string(field);
    std::string quoted = "\"";
    for (const char c : field) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

constexpr const char* kRdnOrder[] = {"common_name", "organization", "organizational_unit",
                                     "locality",    "state",        "country"};

} // namespace

ojson availability_to_json(const AvailabilityReport& report) {
    ojson doc = report_header("availability");
    doc["cutoff"] =
        report.cutoff.has_value() ? ojson(format_utc_timestamp(*report.cutoff)) : ojson(nullptr);
    doc["all_signers"] = report.all_signers;

    ojson markets = ojson::array();
    for (const auto& row : report.rows) {
        ojson market = ojson::object();
        market["market"] = row.market;
        market["entries"] = row.entries;
        market["entries_with_cert"] = row.entries_with_cert;
        ojson signals = ojson::object();
        for (const auto& [kind, cell] : row.signals) {
            signals[std::string(kind_token(kind))] = cell_to_json(cell);
        }
        market["signals"] = std::move(signals);
        ojson rdn = ojson::object();
        for (const char* field : kRdnOrder) {
            rdn[field] = cell_to_json(row.rdn.at(field));
        }
        market["rdn"] = std::move(rdn);
        markets.push_back(std::move(market));
    }
    doc["markets"] = std::move(markets);
    return doc;
}

std::string availability_to_csv(const AvailabilityReport& report) {
    std::string csv = "row";
    for (const auto& row : report.rows) csv += "," + csv_quote(row.market);
    csv += "\n";

    const auto emit = [&report, &csv](const std::string& label, auto cell_of) {
        csv += csv_quote(label);
        for (const auto& row : report.rows) {
            const AvailabilityCell* cell = cell_of(row);
            csv += ",";
            if (cell == nullptr || !cell->collected) {
                csv += "---";
            } else {
                csv += percent_text(cell->missing);
            }
        }
        csv += "\n";
    };

    for (const SignalKind kind : kAllSignalKinds) {
        if (kind == SignalKind::AppNameManifest || kind == SignalKind::CertFingerprint) continue;
        emit(std::string(kind_token(kind)), [kind](const AvailabilityMarketRow& row) {
            const auto it = row.signals.find(kind);
            return it == row.signals.end() ? nullptr : &it->second;
        });
    }
    for (const char* field : kRdnOrder) {
        emit(std::string("rdn_") + field, [field](const AvailabilityMarketRow& row) {
            const auto it = row.rdn.find(field);
            return it == row.rdn.end() ? nullptr : &it->second;
        });
    }
    return csv;
}

ojson volatility_to_json(const VolatilityReport& report) {
    ojson doc = report_header("volatility");
    doc["pairs_total"] = report.pairs_total;
    doc["crawl1_only"] = report.crawl1_only;
    doc["crawl2_only"] = report.crawl2_only;

    ojson markets = ojson::array();
    for (const auto& row : report.rows) {
        ojson market = ojson::object();
        market["market"] = row.market;
        market["pairs"] = row.pairs;
        ojson kinds = ojson::object();
        for (const auto& [kind, krow] : row.kinds) {
            ojson k = ojson::object();
            k["changed"] = krow.changed;
            k["appeared"] = krow.appeared;
            k["disappeared"] = krow.disappeared;
            k["unchanged"] = krow.unchanged;
            k["both_absent"] = krow.both_absent;
            k["reverted"] = krow.reverted;
            k["change_rate"] = ratio_to_json(krow.change_rate);
            k["coverage"] = ratio_to_json(krow.coverage);
            kinds[std::string(kind_token(kind))] = std::move(k);
        }
        market["kinds"] = std::move(kinds);
        ojson certs = ojson::object();
        certs["unchanged"] = row.certs.unchanged;
        certs["added"] = row.certs.added;
        certs["fully_replaced"] = row.certs.fully_replaced;
        certs["removed_only"] = row.certs.removed_only;
        certs["mixed"] = row.certs.mixed;
        certs["both_empty"] = row.certs.both_empty;
        market["certificates"] = std::move(certs);
        markets.push_back(std::move(market));
    }
    doc["markets"] = std::move(markets);
    return doc;
}

std::string volatility_to_csv(const VolatilityReport& report) {
    std::string csv = "row";
    for (const auto& row : report.rows) csv += "," + csv_quote(row.market);
    csv += "\n";

    for (const SignalKind kind : kAllSignalKinds) {
        if (kind == SignalKind::AppNameManifest || kind == SignalKind::CertFingerprint ||
            kind == SignalKind::PackageName) {
            continue; // package name keys the pair, it cannot change
        }
        csv += csv_quote(std::string(kind_token(kind)));
        for (const auto& row : report.rows) {
            const auto it = row.kinds.find(kind);
            csv += ",";
            csv += it == row.kinds.end() ? "---" : percent_text(it->second.change_rate);
        }
        csv += "\n";
    }

    const auto cert_line = [&report, &csv](const char* label, auto member) {
        csv += label;
        for (const auto& row : report.rows) {
            csv += ",";
            csv += std::to_string(row.certs.*member);
        }
        csv += "\n";
    };
    cert_line("cert_unchanged", &VolatilityCertRow::unchanged);
    cert_line("cert_added", &VolatilityCertRow::added);
    cert_line("cert_fully_replaced", &VolatilityCertRow::fully_replaced);
    cert_line("cert_removed_only", &VolatilityCertRow::removed_only);
    cert_line("cert_mixed", &VolatilityCertRow::mixed);
    cert_line("cert_both_empty", &VolatilityCertRow::both_empty);
    return csv;
}

ojson within_app_to_json(const WithinAppReport& report) {
    ojson doc = report_header("within_app_consistency");
    ojson markets = ojson::array();
    for (const auto& row : report.rows) {
        ojson market = ojson::object();
        market["market"] = row.market;
        market["with_both_names"] = row.with_both_names;
        market["non_latin_excluded"] = row.non_latin_excluded;
        market["exact_match"] = ratio_to_json(row.exact_match);
        market["below_half"] = ratio_to_json(row.below_half);
        ojson bins = ojson::array();
        for (size_t i = 0; i < row.histogram.size(); ++i) {
            ojson bin = ojson::object();
            bin["from"] = static_cast<double>(i) / 10.0;
            bin["to"] = static_cast<double>(i + 1) / 10.0;
            bin["count"] = row.histogram[i];
            bins.push_back(std::move(bin));
        }
        market["similarity_histogram"] = std::move(bins);
        markets.push_back(std::move(market));
    }
    doc["markets"] = std::move(markets);
    return doc;
}

ojson cross_market_to_json(const CrossMarketReport& report) {
    ojson doc = report_header("cross_market");
    doc["play_market"] = report.play_market;
    ojson cells = ojson::array();
    for (const auto& cell : report.cells) {
        ojson c = ojson::object();
        c["market_a"] = cell.market_a;
        c["market_b"] = cell.market_b;
        c["shared_packages"] = cell.shared_packages;
        c["same_cert"] = ratio_to_json(cell.same_cert);
        c["same_app_name"] = ratio_to_json(cell.same_app_name);
        c["same_developer_name"] = ratio_to_json(cell.same_developer_name);
        c["play_signed_on_other"] = cell.play_signed_on_other.has_value()
                                        ? ratio_to_json(*cell.play_signed_on_other)
                                        : ojson(nullptr);
        cells.push_back(std::move(c));
    }
    doc["pairs"] = std::move(cells);
    return doc;
}

std::string cross_market_to_csv(const CrossMarketReport& report) {
    // Symmetric same-certificate matrix; the diagonal is by definition 100.
    std::set<std::string> market_set;
    for (const auto& cell : report.cells) {
        market_set.insert(cell.market_a);
        market_set.insert(cell.market_b);
    }
    const std::vector<std::string> markets(market_set.begin(), market_set.end());
    const auto find_cell = [&report](const std::string& a, const std::string& b) {
        for (const auto& cell : report.cells) {
            if ((cell.market_a == a && cell.market_b == b) ||
                (cell.market_a == b && cell.market_b == a)) {
                return &cell;
            }
        }
        return static_cast<const CrossMarketCell*>(nullptr);
    };

    std::string csv = "same_cert_pct";
    for (const auto& market : markets) csv += "," + csv_quote(market);
    csv += "\n";
    for (const auto& row : markets) {
        csv += csv_quote(row);
        for (const auto& col : markets) {
            csv += ",";
            if (row == col) {
                csv += "100.0";
            } else if (const auto* cell = find_cell(row, col);
                       cell != nullptr && cell->shared_packages > 0) {
                csv += percent_text(cell->same_cert);
            } else {
                csv += "---";
            }
        }
        csv += "\n";
    }
    return csv;
}

ojson org_to_json(const OrgReport& report) {
    ojson doc = report_header("org");
    doc["market"] = report.market;
    ojson rows = ojson::array();
    for (const auto& row : report.rows) {
        ojson r = ojson::object();
        r["developer_name"] = row.developer_name;
        r["known"] = row.known;
        r["apps"] = row.apps;
        r["emails"] = row.emails;
        r["websites"] = row.websites;
        r["certs"] = row.certs;
        r["other_names_sharing_certs"] = row.other_names;
        rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    return doc;
}

std::string org_to_csv(const OrgReport& report) {
    std::string csv = "developer_name,known,apps,emails,websites,certs,other_names\n";
    for (const auto& row : report.rows) {
        std::string others;
        for (const auto& name : row.other_names) {
            if (!others.empty()) others += "; ";
            others += name;
        }
        csv += csv_quote(row.developer_name);
        csv += "," + std::string(row.known ? "true" : "false");
        csv += "," + std::to_string(row.apps);
        csv += "," + std::to_string(row.emails);
        csv += "," + std::to_string(row.websites);
        csv += "," + std::to_string(row.certs);
        csv += "," + csv_quote(others);
        csv += "\n";
    }
    return csv;
}

namespace {

ojson node_label(const AttributionGraph& graph, uint32_t node) {
    ojson doc = ojson::object();
    doc["node_id"] = node;
    if (graph.is_entry(node)) {
        const auto& entry = graph.entries[node];
        doc["type"] = "entry";
        doc["market"] = entry.market;
        doc["package_name"] = entry.package_name;
    } else {
        const auto& signal = graph.signals[node - graph.entries.size()];
        doc["type"] = "signal";
        doc["kind"] = std::string(kind_token(signal.kind));
        doc["value"] = signal.value;
    }
    return doc;
}

} // namespace

ojson clusters_to_json(const AttributionGraph& graph, const ComponentsResult& components,
                       const std::vector<double>* centrality, size_t top_per_cluster) {
    ojson doc = report_header("clusters");
    doc["scope"] = graph.scope;
    ojson kinds = ojson::array();
    for (const SignalKind kind : kAllSignalKinds) {
        if (graph.kinds.contains(kind)) kinds.push_back(std::string(kind_token(kind)));
    }
    doc["kinds"] = std::move(kinds);
    doc["entry_nodes"] = graph.entries.size();
    doc["signal_nodes"] = graph.signals.size();
    doc["edges"] = graph.edge_count;
    doc["cluster_count"] = components.clusters.size();
    doc["isolated_entries"] = components.isolated_entries;

    ojson clusters = ojson::array();
    for (const Cluster& cluster : components.clusters) {
        ojson c = ojson::object();
        c["id"] = cluster.id;
        c["entries"] = cluster.entry_nodes.size();
        c["signals"] = cluster.signal_nodes.size();
        c["size"] = cluster.size();
        c["fully_consistent"] = cluster.fully_consistent;
        c["consistency"] = cluster.consistency;
        if (centrality != nullptr && top_per_cluster > 0) {
            std::vector<uint32_t> nodes = cluster.entry_nodes;
            nodes.insert(nodes.end(), cluster.signal_nodes.begin(), cluster.signal_nodes.end());
            std::sort(nodes.begin(), nodes.end(), [centrality](uint32_t a, uint32_t b) {
                if ((*centrality)[a] != (*centrality)[b]) {
                    return (*centrality)[a] > (*centrality)[b];
                }
                return a < b;
            });
            ojson top = ojson::array();
            for (size_t i = 0; i < nodes.size() && i < top_per_cluster; ++i) {
                ojson entry = node_label(graph, nodes[i]);
                entry["centrality"] = (*centrality)[nodes[i]];
                top.push_back(std::move(entry));
            }
            c["top_centrality"] = std::move(top);
        }
        clusters.push_back(std::move(c));
    }
    doc["clusters"] = std::move(clusters);
    return doc;
}

ojson centrality_to_json(const AttributionGraph& graph, const std::vector<double>& raw,
                         const std::vector<double>& normalized, size_t top) {
    std::vector<uint32_t> nodes(graph.node_count());
    for (uint32_t i = 0; i < nodes.size(); ++i) nodes[i] = i;
    std::sort(nodes.begin(), nodes.end(), [&raw](uint32_t a, uint32_t b) {
        if (raw[a] != raw[b]) return raw[a] > raw[b];
        return a < b;
    });

    ojson doc = report_header("centrality");
    doc["scope"] = graph.scope;
    doc["node_count"] = graph.node_count();
    ojson rows = ojson::array();
    for (size_t i = 0; i < nodes.size() && i < top; ++i) {
        ojson row = node_label(graph, nodes[i]);
        row["betweenness"] = raw[nodes[i]];
        row["betweenness_normalized"] = normalized[nodes[i]];
        rows.push_back(std::move(row));
    }
    doc["top"] = std::move(rows);
    return doc;
}

ojson degrees_to_json(const DegreeStats& stats, const std::vector<CcdfPoint>& curve,
                      size_t top_values) {
    ojson doc = report_header("degrees");
    doc["from"] = std::string(kind_token(stats.from_kind));
    doc["to"] = std::string(kind_token(stats.to_kind));
    doc["from_total"] = stats.from_total;
    doc["multi_from"] = stats.multi_from;
    doc["multi_from_share"] = ratio_to_json({stats.multi_from, stats.from_total});
    doc["entries_touched"] = ratio_to_json({stats.entries_touched, stats.entries_total});

    std::map<uint64_t, uint64_t> histogram;
    for (const auto& [value, count] : stats.counts) ++histogram[count];
    ojson distribution = ojson::array();
    for (const auto& [count, nodes] : histogram) {
        ojson bucket = ojson::object();
        bucket["count"] = count;
        bucket["nodes"] = nodes;
        distribution.push_back(std::move(bucket));
    }
    doc["distribution"] = std::move(distribution);

    ojson points = ojson::array();
    for (const CcdfPoint& point : curve) {
        ojson p = ojson::object();
        p["x"] = point.x;
        p["numerator"] = point.numerator;
        p["denominator"] = point.denominator;
        p["probability"] = point.probability;
        points.push_back(std::move(p));
    }
    doc["ccdf"] = std::move(points);

    // Highest fan-out values, ties broken by value for determinism.
    std::vector<std::pair<std::string, uint64_t>> ranked(stats.counts.begin(), stats.counts.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    ojson top = ojson::array();
    for (size_t i = 0; i < ranked.size() && i < top_values; ++i) {
        ojson row = ojson::object();
        row["value"] = ranked[i].first;
        row["count"] = ranked[i].second;
        top.push_back(std::move(row));
    }
    doc["top"] = std::move(top);
    return doc;
}

std::string ccdf_to_csv(const std::vector<CcdfPoint>& curve) {
    std::string csv = "x,numerator,denominator,probability\n";
    for (const CcdfPoint& point : curve) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%llu,%llu,%llu,%.10g\n",
                      static_cast<unsigned long long>(point.x),
                      static_cast<unsigned long long>(point.numerator),
                      static_cast<unsigned long long>(point.denominator), point.probability);
        csv += buf;
    }
    return csv;
}

std::string graph_nodes_to_csv(const AttributionGraph& graph) {
    std::string csv = "node_id,node_type,kind,value_hash\n";
    for (uint32_t node = 0; node < graph.node_count(); ++node) {
        csv += std::to_string(node);
        if (graph.is_entry(node)) {
            const auto& entry = graph.entries[node];
            const std::string key = entry.market + "/" + entry.package_name;
            csv += ",entry,entry," + sha256_hex(std::span(
                reinterpret_cast<const uint8_t*>(key.data()), key.size()));
        } else {
            const auto& signal = graph.signals[node - graph.entries.size()];
            csv += ",signal," + std::string(kind_token(signal.kind)) + "," +
                   sha256_hex(std::span(reinterpret_cast<const uint8_t*>(signal.value.data()),
                                        signal.value.size()));
        }
        csv += "\n";
    }
    return csv;
}

std::string graph_edges_to_csv(const AttributionGraph& graph) {
    std::string csv = "signal_node_id,entry_node_id\n";
    for (uint32_t entry = 0; entry < graph.entries.size(); ++entry) {
        for (const uint32_t signal : graph.entry_adj[entry]) {
            csv += std::to_string(graph.signal_id(signal));
            csv += ",";
            csv += std::to_string(entry);
            csv += "\n";
        }
    }
    return csv;
}

} // namespace attrgraph
