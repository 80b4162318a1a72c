#pragma once

#include "attrgraph/dataset.hpp"
#include "attrgraph/signal.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace attrgraph {

// Signal kinds entering the graph unless overridden: the developer address
// stays out (availability-only) and the manifest app name never joins (it
// feeds the within-app comparison instead).
std::set<SignalKind> default_graph_kinds();

struct GraphOptions {
    std::set<SignalKind> kinds = default_graph_kinds();
    std::optional<std::string> market_filter;
};

// Bipartite attribution graph. Node ids are global: entry nodes occupy
// [0, entries.size()), signal nodes follow. Both sides are sorted, so ids
// are stable for identical input sets regardless of insertion order.
struct AttributionGraph {
    struct EntryNode {
        std::string market;
        std::string package_name; // raw, as listed

        friend auto operator<=>(const EntryNode&, const EntryNode&) = default;
    };
    struct SignalNode {
        SignalKind kind;
        std::string value; // canonical

        friend auto operator<=>(const SignalNode&, const SignalNode&) = default;
    };

    std::vector<EntryNode> entries;
    std::vector<SignalNode> signals;
    std::vector<std::vector<uint32_t>> entry_adj;  // entry index -> signal indices
    std::vector<std::vector<uint32_t>> signal_adj; // signal index -> entry indices
    std::set<SignalKind> kinds;
    std::string scope; // market filter applied at build time, empty = all
    size_t edge_count = 0;

    size_t node_count() const { return entries.size() + signals.size(); }
    bool is_entry(uint32_t node) const { return node < entries.size(); }
    uint32_t signal_id(uint32_t signal_index) const {
        return static_cast<uint32_t>(entries.size()) + signal_index;
    }
    // Neighbors by global node id.
    const std::vector<uint32_t>& neighbors_of_entry(uint32_t entry_index) const {
        return entry_adj[entry_index];
    }
    std::vector<uint32_t> neighbors(uint32_t node) const;
};

// One node per entry, one per distinct (kind, canonical value), one edge per
// present signal; certificates add one node per distinct fingerprint.
// Expects deduplicated entries (normally the latest_entries selection).
AttributionGraph build_graph(const std::vector<const MarketEntry*>& entries,
                             const GraphOptions& options = {});

struct Cluster {
    int id = 0;
    std::vector<uint32_t> entry_nodes;  // global ids, sorted
    std::vector<uint32_t> signal_nodes; // global ids, sorted
    bool fully_consistent = false;
    std::string consistency; // "consistent", "isolated" or "kind-conflict:<token>"

    size_t size() const { return entry_nodes.size() + signal_nodes.size(); }
};

struct ComponentsResult {
    std::vector<Cluster> clusters; // size descending, then smallest node id
    size_t isolated_entries = 0;   // entries alone in their cluster
};

ComponentsResult connected_components(const AttributionGraph& graph);

// True iff every kind in the graph's kind set other than the market app name
// and the package name takes at most one value across the cluster. Clusters
// with fewer than two entries are "isolated" and never consistent.
bool classify_cluster(Cluster& cluster, const AttributionGraph& graph);

// Exact betweenness over unweighted shortest paths, unordered-pair
// convention. Normalized divides by (n-1)(n-2)/2 with n the node's own
// component size (0 for components smaller than 3).
std::vector<double> betweenness_centrality(const AttributionGraph& graph, bool normalized);

struct DegreeStats {
    SignalKind from_kind;
    SignalKind to_kind;
    // Per from-node canonical value: distinct to-kind values one hop away.
    std::map<std::string, uint64_t> counts;
    uint64_t from_total = 0;
    uint64_t multi_from = 0;       // from-nodes with count > 1
    uint64_t entries_touched = 0;  // entries adjacent to any multi-valued from-node
    uint64_t entries_total = 0;
};

// Fan-out of from_kind values over to_kind values through shared entries,
// e.g. how many developer names each signing certificate covers.
DegreeStats signal_degree_stats(const AttributionGraph& graph, SignalKind from_kind,
                                SignalKind to_kind);

struct CcdfPoint {
    uint64_t x = 0;
    uint64_t numerator = 0;   // #values >= x
    uint64_t denominator = 0; // total values
    double probability = 0.0;
};

// Complementary CDF support points, ascending in x.
std::vector<CcdfPoint> ccdf(const std::vector<uint64_t>& values);

} // namespace attrgraph
