#include "attrgraph/graph.hpp"

#include "attrgraph/dataset.hpp"
#include "attrgraph/signal.hpp"
#include "attrgraph/util.hpp"

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

using namespace attrgraph;

namespace {

std::string fp(char fill) { return std::string(64, fill); }

struct EntrySpec {
    std::string market = "google-play";
    std::string package;
    std::vector<std::pair<SignalKind, std::string>> values;
    std::vector<std::string> fingerprints;
};

MarketEntry make_entry(const EntrySpec& spec) {
    MarketEntry entry;
    entry.market = spec.market;
    entry.package_name = spec.package;
    entry.crawl_id = 1;
    entry.fetched_at = 1000;
    entry.signals.emplace(SignalKind::PackageName,
                          *normalize_signal(SignalKind::PackageName, spec.package));
    for (const auto& [kind, value] : spec.values) {
        entry.signals.insert_or_assign(kind, *normalize_signal(kind, value));
    }
    for (const auto& fingerprint : spec.fingerprints) {
        apk::CertificateInfo cert;
        cert.fingerprint_sha256 = fingerprint;
        cert.schemes = {apk::SignatureScheme::V2};
        entry.certificates.push_back(cert);
    }
    return entry;
}

std::vector<MarketEntry> make_entries(const std::vector<EntrySpec>& specs) {
    std::vector<MarketEntry> entries;
    entries.reserve(specs.size());
    for (const auto& spec : specs) entries.push_back(make_entry(spec));
    return entries;
}

std::vector<const MarketEntry*> pointers(const std::vector<MarketEntry>& entries) {
    std::vector<const MarketEntry*> out;
    out.reserve(entries.size());
    for (const auto& entry : entries) out.push_back(&entry);
    return out;
}

// Independent breadth-first component labelling over the public adjacency.
std::vector<int> bfs_component_labels(const AttributionGraph& graph) {
    std::vector<int> label(graph.node_count(), -1);
    int next = 0;
    for (uint32_t start = 0; start < graph.node_count(); ++start) {
        if (label[start] != -1) continue;
        label[start] = next;
        std::deque<uint32_t> queue = {start};
        while (!queue.empty()) {
            const uint32_t node = queue.front();
            queue.pop_front();
            for (uint32_t next_node : graph.neighbors(node)) {
                if (label[next_node] == -1) {
                    label[next_node] = label[node];
                    queue.push_back(next_node);
                }
            }
        }
        ++next;
    }
    return label;
}

// Brute-force betweenness: all-pairs shortest-path counting from first
// principles, nothing shared with the production accumulation algorithm.
std::vector<double> brute_force_betweenness(const AttributionGraph& graph, bool normalized) {
    const size_t n = graph.node_count();
    std::vector<std::vector<int64_t>> dist(n, std::vector<int64_t>(n, -1));
    std::vector<std::vector<double>> sigma(n, std::vector<double>(n, 0.0));
    for (uint32_t s = 0; s < n; ++s) {
        dist[s][s] = 0;
        sigma[s][s] = 1.0;
        std::deque<uint32_t> queue = {s};
        while (!queue.empty()) {
            const uint32_t u = queue.front();
            queue.pop_front();
            for (uint32_t v : graph.neighbors(u)) {
                if (dist[s][v] == -1) {
                    dist[s][v] = dist[s][u] + 1;
                    queue.push_back(v);
                }
                if (dist[s][v] == dist[s][u] + 1) sigma[s][v] += sigma[s][u];
            }
        }
    }

    std::vector<double> centrality(n, 0.0);
    for (uint32_t s = 0; s < n; ++s) {
        for (uint32_t t = s + 1; t < n; ++t) {
            if (dist[s][t] <= 0) continue;
            for (uint32_t v = 0; v < n; ++v) {
                if (v == s || v == t || dist[s][v] == -1 || dist[t][v] == -1) continue;
                if (dist[s][v] + dist[t][v] == dist[s][t]) {
                    centrality[v] += sigma[s][v] * sigma[t][v] / sigma[s][t];
                }
            }
        }
    }

    if (normalized) {
        const auto labels = bfs_component_labels(graph);
        std::map<int, size_t> sizes;
        for (int label : labels) ++sizes[label];
        for (uint32_t v = 0; v < n; ++v) {
            const double size = static_cast<double>(sizes[labels[v]]);
            const double pairs = (size - 1.0) * (size - 2.0) / 2.0;
            centrality[v] = pairs > 0.0 ? centrality[v] / pairs : 0.0;
        }
    }
    return centrality;
}

std::vector<MarketEntry> random_entries(std::mt19937& rng, size_t max_nodes) {
    std::uniform_int_distribution<size_t> entry_count(1, std::max<size_t>(1, max_nodes / 3));
    std::uniform_int_distribution<int> value_pool(0, 9);
    std::uniform_int_distribution<int> coin(0, 3);
    const size_t entries = entry_count(rng);
    std::vector<EntrySpec> specs;
    const SignalKind kinds[] = {SignalKind::DeveloperName, SignalKind::DeveloperWebsite,
                                SignalKind::DeveloperEmail, SignalKind::AppNameMarket};
    for (size_t i = 0; i < entries; ++i) {
        EntrySpec spec;
        spec.package = "pkg" + std::to_string(i) + ".app";
        for (SignalKind kind : kinds) {
            if (coin(rng) == 0) {
                spec.values.push_back(
                    {kind, "v" + std::to_string(value_pool(rng)) +
                               std::string(kind_token(kind))});
            }
        }
        if (coin(rng) == 0) {
            spec.fingerprints.push_back(fp(static_cast<char>('a' + value_pool(rng))));
        }
        specs.push_back(std::move(spec));
    }
    return make_entries(specs);
}

} // namespace

TEST_CASE("default graph kinds exclude address and manifest name") {
    const auto kinds = default_graph_kinds();
    CHECK(kinds.size() == 7);
    CHECK(kinds.contains(SignalKind::PackageName));
    CHECK(kinds.contains(SignalKind::CertFingerprint));
    CHECK_FALSE(kinds.contains(SignalKind::DeveloperAddress));
    CHECK_FALSE(kinds.contains(SignalKind::AppNameManifest));
}

TEST_CASE("shared signal values connect entries") {
    const auto entries = make_entries({
        {.package = "a.app", .values = {}, .fingerprints = {fp('x')}},
        {.package = "b.app", .values = {}, .fingerprints = {fp('x')}},
    });
    const AttributionGraph graph = build_graph(pointers(entries));
    const ComponentsResult components = connected_components(graph);
    REQUIRE(components.clusters.size() == 1);
    CHECK(components.clusters[0].entry_nodes.size() == 2);
    CHECK(graph.edge_count == 4); // 2 package edges + 2 cert edges
}

TEST_CASE("an entry with only a package name forms a two-node component") {
    const auto entries = make_entries({{.package = "solo.app"}});
    const AttributionGraph graph = build_graph(pointers(entries));
    const ComponentsResult components = connected_components(graph);
    REQUIRE(components.clusters.size() == 1);
    CHECK(components.clusters[0].size() == 2);
    CHECK(components.isolated_entries == 1);
    CHECK(components.clusters[0].consistency == "isolated");
}

TEST_CASE("connectivity is transitive across different kinds") {
    const auto entries = make_entries({
        {.package = "a.app", .values = {{SignalKind::DeveloperName, "Shared Dev"}}},
        {.package = "b.app",
         .values = {{SignalKind::DeveloperName, "Shared Dev"}},
         .fingerprints = {fp('k')}},
        {.package = "c.app", .values = {}, .fingerprints = {fp('k')}},
    });
    const ComponentsResult components = connected_components(build_graph(pointers(entries)));
    REQUIRE(components.clusters.size() == 1);
    CHECK(components.clusters[0].entry_nodes.size() == 3);
}

TEST_CASE("graphs are strictly bipartite with no dangling signal nodes") {
    std::mt19937 rng(11);
    for (int round = 0; round < 10; ++round) {
        const auto entries = random_entries(rng, 45);
        const AttributionGraph graph = build_graph(pointers(entries));
        for (uint32_t entry = 0; entry < graph.entries.size(); ++entry) {
            for (uint32_t neighbor : graph.neighbors(entry)) {
                CHECK_FALSE(graph.is_entry(neighbor));
            }
        }
        for (size_t s = 0; s < graph.signals.size(); ++s) {
            const auto node = graph.signal_id(static_cast<uint32_t>(s));
            CHECK(graph.neighbors(node).size() >= 1);
            for (uint32_t neighbor : graph.neighbors(node)) {
                CHECK(graph.is_entry(neighbor));
            }
        }
        // Handshake: edge count matches both adjacency sums.
        size_t from_entries = 0;
        for (const auto& adj : graph.entry_adj) from_entries += adj.size();
        size_t from_signals = 0;
        for (const auto& adj : graph.signal_adj) from_signals += adj.size();
        CHECK(from_entries == graph.edge_count);
        CHECK(from_signals == graph.edge_count);
    }
}

TEST_CASE("market filter and kind subset narrow the graph") {
    const auto entries = make_entries({
        {.market = "google-play",
         .package = "a.app",
         .values = {{SignalKind::DeveloperEmail, "dev@x.example"}}},
        {.market = "baidu", .package = "b.app", .values = {}},
    });
    GraphOptions options;
    options.market_filter = "google-play";
    const AttributionGraph scoped = build_graph(pointers(entries), options);
    CHECK(scoped.entries.size() == 1);
    CHECK(scoped.scope == "google-play");

    GraphOptions no_email;
    no_email.kinds = {SignalKind::PackageName};
    const AttributionGraph narrowed = build_graph(pointers(entries), no_email);
    CHECK(narrowed.signals.size() == 2); // just the two package-name nodes
    for (const auto& signal : narrowed.signals) {
        CHECK(signal.kind == SignalKind::PackageName);
    }
}

TEST_CASE("manifest names never enter the graph even when requested") {
    auto entries = make_entries({{.package = "a.app"}});
    entries[0].signals.emplace(SignalKind::AppNameManifest,
                               *normalize_signal(SignalKind::AppNameManifest, "Manifest Name"));
    GraphOptions options;
    options.kinds = {SignalKind::PackageName, SignalKind::AppNameManifest};
    const AttributionGraph graph = build_graph(pointers(entries), options);
    for (const auto& signal : graph.signals) {
        CHECK(signal.kind != SignalKind::AppNameManifest);
    }
}

TEST_CASE("cluster classification exempts app and package names only") {
    const std::vector<std::pair<SignalKind, std::string>> shared = {
        {SignalKind::DeveloperName, "One Dev"},
        {SignalKind::DeveloperEmail, "one@dev.example"},
        {SignalKind::DeveloperWebsite, "https://one.dev"},
    };
    auto consistent = make_entries({
        {.package = "a.app", .values = shared, .fingerprints = {fp('s')}},
        {.package = "b.app", .values = shared, .fingerprints = {fp('s')}},
    });
    consistent[0].signals.insert_or_assign(
        SignalKind::AppNameMarket, *normalize_signal(SignalKind::AppNameMarket, "App A"));
    consistent[1].signals.insert_or_assign(
        SignalKind::AppNameMarket, *normalize_signal(SignalKind::AppNameMarket, "App B"));
    const ComponentsResult good = connected_components(build_graph(pointers(consistent)));
    REQUIRE(good.clusters.size() == 1);
    CHECK(good.clusters[0].fully_consistent);
    CHECK(good.clusters[0].consistency == "consistent");

    auto conflicted = make_entries({
        {.package = "a.app",
         .values = {{SignalKind::DeveloperName, "One Dev"},
                    {SignalKind::DeveloperEmail, "one@dev.example"}}},
        {.package = "b.app",
         .values = {{SignalKind::DeveloperName, "One Dev"},
                    {SignalKind::DeveloperEmail, "two@dev.example"}}},
    });
    const ComponentsResult bad = connected_components(build_graph(pointers(conflicted)));
    REQUIRE(bad.clusters.size() == 1);
    CHECK_FALSE(bad.clusters[0].fully_consistent);
    CHECK(bad.clusters[0].consistency == "kind-conflict:developer_email");
}

TEST_CASE("betweenness of a two-entry chain peaks at the shared signal") {
    // Path graph: entry A - shared value - entry B (package nodes pruned by
    // restricting kinds to the developer name).
    auto entries = make_entries({
        {.package = "a.app", .values = {{SignalKind::DeveloperName, "Mid"}}},
        {.package = "b.app", .values = {{SignalKind::DeveloperName, "Mid"}}},
    });
    GraphOptions options;
    options.kinds = {SignalKind::DeveloperName};
    const AttributionGraph graph = build_graph(pointers(entries), options);
    REQUIRE(graph.node_count() == 3);
    const auto normalized = betweenness_centrality(graph, true);
    const auto raw = betweenness_centrality(graph, false);
    const uint32_t mid = graph.signal_id(0);
    CHECK(normalized[mid] == doctest::Approx(1.0));
    CHECK(raw[mid] == doctest::Approx(1.0));
    CHECK(normalized[0] == doctest::Approx(0.0));
    CHECK(normalized[1] == doctest::Approx(0.0));
}

TEST_CASE("star centers take all the betweenness") {
    std::vector<EntrySpec> specs;
    for (int i = 0; i < 4; ++i) {
        specs.push_back({.package = "leaf" + std::to_string(i) + ".app",
                         .values = {{SignalKind::DeveloperName, "Hub"}}});
    }
    GraphOptions options;
    options.kinds = {SignalKind::DeveloperName};
    const auto entries = make_entries(specs);
    const AttributionGraph graph = build_graph(pointers(entries), options);
    REQUIRE(graph.node_count() == 5);
    const auto normalized = betweenness_centrality(graph, true);
    const uint32_t hub = graph.signal_id(0);
    CHECK(normalized[hub] == doctest::Approx(1.0));
    for (uint32_t leaf = 0; leaf < 4; ++leaf) {
        CHECK(normalized[leaf] == doctest::Approx(0.0));
    }
}

TEST_CASE("components and betweenness match brute-force oracles") {
    std::mt19937 rng(23);
    for (int round = 0; round < 15; ++round) {
        const auto entries = random_entries(rng, 40);
        const AttributionGraph graph = build_graph(pointers(entries));

        const auto labels = bfs_component_labels(graph);
        const ComponentsResult components = connected_components(graph);
        size_t covered = 0;
        for (const Cluster& cluster : components.clusters) {
            std::set<int> cluster_labels;
            for (uint32_t node : cluster.entry_nodes) cluster_labels.insert(labels[node]);
            for (uint32_t node : cluster.signal_nodes) cluster_labels.insert(labels[node]);
            CHECK(cluster_labels.size() == 1); // never spans oracle components
            covered += cluster.size();
        }
        CHECK(covered == graph.node_count());
        const int oracle_components =
            labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
        CHECK(components.clusters.size() == static_cast<size_t>(oracle_components));

        for (bool normalized : {false, true}) {
            const auto got = betweenness_centrality(graph, normalized);
            const auto want = brute_force_betweenness(graph, normalized);
            REQUIRE(got.size() == want.size());
            for (size_t i = 0; i < got.size(); ++i) {
                REQUIRE(std::abs(got[i] - want[i]) < 1e-9);
            }
        }
    }
}

TEST_CASE("clusters are ordered by size then smallest node id") {
    const auto entries = make_entries({
        {.package = "big1.app", .values = {{SignalKind::DeveloperName, "Big"}}},
        {.package = "big2.app", .values = {{SignalKind::DeveloperName, "Big"}}},
        {.package = "big3.app", .values = {{SignalKind::DeveloperName, "Big"}}},
        {.package = "small1.app", .values = {{SignalKind::DeveloperName, "Small"}}},
        {.package = "small2.app", .values = {{SignalKind::DeveloperName, "Small"}}},
        {.package = "lone.app"},
    });
    const ComponentsResult components = connected_components(build_graph(pointers(entries)));
    REQUIRE(components.clusters.size() == 3);
    CHECK(components.clusters[0].entry_nodes.size() == 3);
    CHECK(components.clusters[1].entry_nodes.size() == 2);
    CHECK(components.clusters[2].entry_nodes.size() == 1);
    CHECK(components.clusters[0].id == 0);
    CHECK(components.isolated_entries == 1);
    for (const Cluster& cluster : components.clusters) {
        CHECK(std::is_sorted(cluster.entry_nodes.begin(), cluster.entry_nodes.end()));
        CHECK(std::is_sorted(cluster.signal_nodes.begin(), cluster.signal_nodes.end()));
    }
}

TEST_CASE("removing a signal value never merges clusters") {
    std::mt19937 rng(31);
    for (int round = 0; round < 8; ++round) {
        auto entries = random_entries(rng, 40);
        const AttributionGraph before = build_graph(pointers(entries));
        if (before.signals.empty()) continue;

        // Drop one signal value from every entry carrying it, then rebuild.
        std::uniform_int_distribution<size_t> pick(0, before.signals.size() - 1);
        const auto& victim = before.signals[pick(rng)];
        for (MarketEntry& entry : entries) {
            if (victim.kind == SignalKind::CertFingerprint) {
                std::erase_if(entry.certificates, [&](const apk::CertificateInfo& cert) {
                    return cert.fingerprint_sha256 == victim.value;
                });
            } else if (const Signal* signal = entry.signal(victim.kind);
                       signal != nullptr && signal->canonical_value == victim.value) {
                entry.signals.erase(victim.kind);
            }
        }
        const AttributionGraph after = build_graph(pointers(entries));

        // Same-cluster-after implies same-cluster-before, checked on entries.
        const auto label_by_package = [](const AttributionGraph& graph) {
            const auto labels = bfs_component_labels(graph);
            std::map<std::string, int> out;
            for (uint32_t i = 0; i < graph.entries.size(); ++i) {
                out[graph.entries[i].package_name] = labels[i];
            }
            return out;
        };
        const auto before_labels = label_by_package(before);
        const auto after_labels = label_by_package(after);
        for (const auto& [pkg_a, label_a] : after_labels) {
            for (const auto& [pkg_b, label_b] : after_labels) {
                if (label_a == label_b) {
                    CHECK(before_labels.at(pkg_a) == before_labels.at(pkg_b));
                }
            }
        }
    }
}

TEST_CASE("graph construction is invariant under entry order") {
    std::mt19937 rng(41);
    auto entries = random_entries(rng, 45);
    auto ptrs = pointers(entries);
    const AttributionGraph baseline = build_graph(ptrs);
    for (int round = 0; round < 4; ++round) {
        std::shuffle(ptrs.begin(), ptrs.end(), rng);
        const AttributionGraph shuffled = build_graph(ptrs);
        CHECK(shuffled.entries == baseline.entries);
        CHECK(shuffled.signals == baseline.signals);
        CHECK(shuffled.entry_adj == baseline.entry_adj);
        CHECK(shuffled.signal_adj == baseline.signal_adj);
        CHECK(shuffled.edge_count == baseline.edge_count);
    }
}

TEST_CASE("degree stats count distinct values one hop away") {
    const auto entries = make_entries({
        {.package = "a.app",
         .values = {{SignalKind::DeveloperName, "Name One"}},
         .fingerprints = {fp('z')}},
        {.package = "b.app",
         .values = {{SignalKind::DeveloperName, "Name Two"}},
         .fingerprints = {fp('z')}},
        {.package = "c.app",
         .values = {{SignalKind::DeveloperName, "Name Three"}},
         .fingerprints = {fp('z')}},
        {.package = "d.app",
         .values = {{SignalKind::DeveloperName, "Name Three"}},
         .fingerprints = {fp('y')}},
    });
    const AttributionGraph graph = build_graph(pointers(entries));

    const DegreeStats forward =
        signal_degree_stats(graph, SignalKind::CertFingerprint, SignalKind::DeveloperName);
    CHECK(forward.counts.at(fp('z')) == 3);
    CHECK(forward.counts.at(fp('y')) == 1);
    CHECK(forward.from_total == 2);
    CHECK(forward.multi_from == 1);
    CHECK(forward.entries_touched == 3);
    CHECK(forward.entries_total == 4);

    const DegreeStats reverse =
        signal_degree_stats(graph, SignalKind::DeveloperName, SignalKind::CertFingerprint);
    CHECK(reverse.counts.at("name three") == 2); // two certs under one name
    CHECK(reverse.counts.at("name one") == 1);

    CHECK_THROWS_AS(
        (void)signal_degree_stats(graph, SignalKind::AppNameManifest, SignalKind::DeveloperName),
        ParseError);
}

TEST_CASE("ccdf emits exact survivor ratios") {
    const auto points = ccdf({1, 1, 2});
    REQUIRE(points.size() == 2);
    CHECK(points[0].x == 1);
    CHECK(points[0].numerator == 3);
    CHECK(points[0].denominator == 3);
    CHECK(points[0].probability == doctest::Approx(1.0));
    CHECK(points[1].x == 2);
    CHECK(points[1].numerator == 1);
    CHECK(points[1].probability == doctest::Approx(1.0 / 3.0));

    const auto single = ccdf({5});
    REQUIRE(single.size() == 1);
    CHECK(single[0].x == 5);
    CHECK(single[0].probability == doctest::Approx(1.0));

    CHECK(ccdf({}).empty());
}

TEST_CASE("ccdf matches a sort-and-scan oracle on random input") {
    std::mt19937 rng(53);
    std::uniform_int_distribution<uint64_t> draw(0, 30);
    std::vector<uint64_t> values;
    for (int i = 0; i < 1000; ++i) values.push_back(draw(rng));

    const auto points = ccdf(values);
    std::vector<uint64_t> sorted = values;
    std::sort(sorted.begin(), sorted.end());

    std::set<uint64_t> support(values.begin(), values.end());
    REQUIRE(points.size() == support.size());
    size_t index = 0;
    for (uint64_t x : support) {
        const auto at_least =
            sorted.end() - std::lower_bound(sorted.begin(), sorted.end(), x);
        CHECK(points[index].x == x);
        CHECK(points[index].numerator == static_cast<uint64_t>(at_least));
        CHECK(points[index].denominator == values.size());
        CHECK(points[index].probability ==
              doctest::Approx(static_cast<double>(at_least) / 1000.0));
        ++index;
    }
    for (size_t i = 1; i < points.size(); ++i) {
        CHECK(points[i].probability <= points[i - 1].probability);
        CHECK(points[i].x > points[i - 1].x);
    }
}
