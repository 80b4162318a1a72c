#include "attrgraph/graph.hpp"

#include "attrgraph/util.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace attrgraph {

std::set<SignalKind> default_graph_kinds() {
    return {SignalKind::PackageName,   SignalKind::AppNameMarket,
            SignalKind::DeveloperName, SignalKind::DeveloperWebsite,
            SignalKind::DeveloperEmail, SignalKind::PrivacyPolicyUrl,
            SignalKind::CertFingerprint};
}

std::vector<uint32_t> AttributionGraph::neighbors(uint32_t node) const {
    std::vector<uint32_t> out;
    if (is_entry(node)) {
        for (const uint32_t s : entry_adj[node]) out.push_back(signal_id(s));
    } else {
        out = signal_adj[node - entries.size()];
    }
    return out;
}

AttributionGraph build_graph(const std::vector<const MarketEntry*>& entries,
                             const GraphOptions& options) {
    AttributionGraph graph;
    graph.kinds = options.kinds;
    graph.kinds.erase(SignalKind::AppNameManifest); // never a graph signal
    graph.scope = options.market_filter.value_or("");

    std::vector<const MarketEntry*> selected;
    for (const MarketEntry* entry : entries) {
        if (options.market_filter.has_value() && entry->market != *options.market_filter) continue;
        selected.push_back(entry);
    }
    std::sort(selected.begin(), selected.end(), [](const MarketEntry* a, const MarketEntry* b) {
        return std::tie(a->market, a->package_name) < std::tie(b->market, b->package_name);
    });

    // Collect the signal vocabulary first so signal ids come out sorted.
    std::set<AttributionGraph::SignalNode> vocabulary;
    const auto entry_signals = [&graph](const MarketEntry& entry) {
        std::set<AttributionGraph::SignalNode> present;
        for (const auto& [kind, signal] : entry.signals) {
            if (graph.kinds.contains(kind)) present.insert({kind, signal.canonical_value});
        }
        if (graph.kinds.contains(SignalKind::CertFingerprint)) {
            for (const auto& fp : entry.fingerprints()) {
                present.insert({SignalKind::CertFingerprint, fp});
            }
        }
        return present;
    };

    for (const MarketEntry* entry : selected) {
        const auto present = entry_signals(*entry);
        vocabulary.insert(present.begin(), present.end());
    }

    graph.signals.assign(vocabulary.begin(), vocabulary.end());
    std::map<AttributionGraph::SignalNode, uint32_t> signal_index;
    for (uint32_t i = 0; i < graph.signals.size(); ++i) {
        signal_index.emplace(graph.signals[i], i);
    }

    graph.entries.reserve(selected.size());
    graph.entry_adj.resize(selected.size());
    graph.signal_adj.resize(graph.signals.size());
    for (uint32_t e = 0; e < selected.size(); ++e) {
        graph.entries.push_back({selected[e]->market, selected[e]->package_name});
        for (const auto& node : entry_signals(*selected[e])) {
            const uint32_t s = signal_index.at(node);
            graph.entry_adj[e].push_back(s);
            graph.signal_adj[s].push_back(e);
            ++graph.edge_count;
        }
        std::sort(graph.entry_adj[e].begin(), graph.entry_adj[e].end());
    }
    for (auto& adj : graph.signal_adj) std::sort(adj.begin(), adj.end());
    return graph;
}

ComponentsResult connected_components(const AttributionGraph& graph) {
    const size_t n = graph.node_count();
    std::vector<int> component(n, -1);
    int next_id = 0;

    for (uint32_t start = 0; start < n; ++start) {
        if (component[start] != -1) continue;
        const int id = next_id++;
        std::deque<uint32_t> queue = {start};
        component[start] = id;
        while (!queue.empty()) {
            const uint32_t node = queue.front();
            queue.pop_front();
            for (const uint32_t next : graph.neighbors(node)) {
                if (component[next] == -1) {
                    component[next] = id;
                    queue.push_back(next);
                }
            }
        }
    }

    std::vector<Cluster> clusters(next_id);
    for (uint32_t node = 0; node < n; ++node) {
        Cluster& cluster = clusters[component[node]];
        if (graph.is_entry(node)) {
            cluster.entry_nodes.push_back(node);
        } else {
            cluster.signal_nodes.push_back(node);
        }
    }

    std::sort(clusters.begin(), clusters.end(), [](const Cluster& a, const Cluster& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        const uint32_t a_min = a.entry_nodes.empty() ? a.signal_nodes.front() : a.entry_nodes.front();
        const uint32_t b_min = b.entry_nodes.empty() ? b.signal_nodes.front() : b.entry_nodes.front();
        return a_min < b_min;
    });

    ComponentsResult result;
    result.clusters = std::move(clusters);
    for (size_t i = 0; i < result.clusters.size(); ++i) {
        Cluster& cluster = result.clusters[i];
        cluster.id = static_cast<int>(i);
        classify_cluster(cluster, graph);
        if (cluster.entry_nodes.size() == 1) ++result.isolated_entries;
    }
    return result;
}

bool classify_cluster(Cluster& cluster, const AttributionGraph& graph) {
    if (cluster.entry_nodes.size() < 2) {
        cluster.fully_consistent = false;
        cluster.consistency = "isolated";
        return false;
    }
    std::map<SignalKind, size_t> values_per_kind;
    for (const uint32_t node : cluster.signal_nodes) {
        const auto& signal = graph.signals[node - graph.entries.size()];
        ++values_per_kind[signal.kind];
    }
    for (const auto& [kind, count] : values_per_kind) {
        if (kind == SignalKind::AppNameMarket || kind == SignalKind::PackageName) continue;
        if (count > 1) {
            cluster.fully_consistent = false;
            cluster.consistency = "kind-conflict:" + std::string(kind_token(kind));
            return false;
        }
    }
    cluster.fully_consistent = true;
    cluster.consistency = "consistent";
    return true;
}

std::vector<double> betweenness_centrality(const AttributionGraph& graph, bool normalized) {
    const size_t n = graph.node_count();
    std::vector<double> centrality(n, 0.0);

    // Component sizes drive per-component normalization.
    std::vector<uint32_t> component(n, UINT32_MAX);
    std::vector<size_t> component_size;
    for (uint32_t start = 0; start < n; ++start) {
        if (component[start] != UINT32_MAX) continue;
        const auto id = static_cast<uint32_t>(component_size.size());
        size_t size = 0;
        std::deque<uint32_t> queue = {start};
        component[start] = id;
        while (!queue.empty()) {
            const uint32_t node = queue.front();
            queue.pop_front();
            ++size;
            for (const uint32_t next : graph.neighbors(node)) {
                if (component[next] == UINT32_MAX) {
                    component[next] = id;
                    queue.push_back(next);
                }
            }
        }
        component_size.push_back(size);
    }

    // Brandes' accumulation, one source at a time.
    std::vector<uint32_t> order;
    std::vector<std::vector<uint32_t>> predecessors(n);
    std::vector<double> sigma(n);
    std::vector<int64_t> distance(n);
    std::vector<double> delta(n);

    for (uint32_t source = 0; source < n; ++source) {
        order.clear();
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(distance.begin(), distance.end(), -1);
        std::fill(delta.begin(), delta.end(), 0.0);
        for (auto& preds : predecessors) preds.clear();

        sigma[source] = 1.0;
        distance[source] = 0;
        std::deque<uint32_t> queue = {source};
        while (!queue.empty()) {
            const uint32_t node = queue.front();
            queue.pop_front();
            order.push_back(node);
            for (const uint32_t next : graph.neighbors(node)) {
                if (distance[next] < 0) {
                    distance[next] = distance[node] + 1;
                    queue.push_back(next);
                }
                if (distance[next] == distance[node] + 1) {
                    sigma[next] += sigma[node];
                    predecessors[next].push_back(node);
                }
            }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            const uint32_t node = *it;
            for (const uint32_t pred : predecessors[node]) {
                delta[pred] += sigma[pred] / sigma[node] * (1.0 + delta[node]);
            }
            if (node != source) centrality[node] += delta[node];
        }
    }

    for (uint32_t node = 0; node < n; ++node) {
        centrality[node] /= 2.0; // each unordered pair was visited twice
        if (normalized) {
            const auto size = static_cast<double>(component_size[component[node]]);
            const double pairs = (size - 1.0) * (size - 2.0) / 2.0;
            centrality[node] = pairs > 0.0 ? centrality[node] / pairs : 0.0;
        }
    }
    return centrality;
}

DegreeStats signal_degree_stats(const AttributionGraph& graph, SignalKind from_kind,
                                SignalKind to_kind) {
    if (!graph.kinds.contains(from_kind)) {
        throw ParseError("unknown-kind",
                         "kind not in graph: " + std::string(kind_token(from_kind)));
    }
    if (!graph.kinds.contains(to_kind)) {
        throw ParseError("unknown-kind", "kind not in graph: " + std::string(kind_token(to_kind)));
    }

    DegreeStats stats;
    stats.from_kind = from_kind;
    stats.to_kind = to_kind;
    stats.entries_total = graph.entries.size();

    std::set<uint32_t> touched;
    for (uint32_t s = 0; s < graph.signals.size(); ++s) {
        if (graph.signals[s].kind != from_kind) continue;
        std::set<std::string_view> reachable;
        for (const uint32_t entry : graph.signal_adj[s]) {
            for (const uint32_t other : graph.entry_adj[entry]) {
                if (graph.signals[other].kind == to_kind) {
                    reachable.insert(graph.signals[other].value);
                }
            }
        }
        const auto count = static_cast<uint64_t>(reachable.size());
        stats.counts.emplace(graph.signals[s].value, count);
        ++stats.from_total;
        if (count > 1) {
            ++stats.multi_from;
            touched.insert(graph.signal_adj[s].begin(), graph.signal_adj[s].end());
        }
    }
    stats.entries_touched = touched.size();
    return stats;
}

std::vector<CcdfPoint> ccdf(const std::vector<uint64_t>& values) {
    if (values.empty()) return {};
    std::vector<uint64_t> sorted = values;
    std::sort(sorted.begin(), sorted.end());

    const auto total = static_cast<uint64_t>(sorted.size());
    std::vector<CcdfPoint> points;
    size_t i = 0;
    while (i < sorted.size()) {
        const uint64_t x = sorted[i];
        // #values >= x are exactly the ones from position i on.
        const uint64_t at_least = total - static_cast<uint64_t>(i);
        points.push_back({x, at_least, total,
                          static_cast<double>(at_least) / static_cast<double>(total)});
        while (i < sorted.size() && sorted[i] == x) ++i;
    }
    return points;
}

} // namespace attrgraph
