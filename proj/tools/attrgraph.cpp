#include "attrgraph/apk/extract.hpp"
#include "attrgraph/dataset.hpp"
#include "attrgraph/graph.hpp"
#include "attrgraph/json_io.hpp"
#include "attrgraph/metrics.hpp"
#include "attrgraph/report_json.hpp"
#include "attrgraph/util.hpp"
#include "attrgraph/version.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

namespace fs = std::filesystem;
using namespace attrgraph;

namespace {

struct CliError : std::runtime_error {
    CliError(std::string code, const std::string& message)
        : std::runtime_error(message), code(std::move(code)) {}
    std::string code;
};

std::string read_text_file(const std::string& path) {
    const auto bytes = read_file_bytes(path);
    return {bytes.begin(), bytes.end()};
}

void write_text_file(const fs::path& path, const std::string& text) {
    write_file_bytes(path.string(), std::span(reinterpret_cast<const uint8_t*>(text.data()),
                                              text.size()));
}

void log_line(const std::string& message) { std::fprintf(stderr, "%s\n", message.c_str()); }

std::set<SignalKind> parse_kinds(const std::string& list) {
    std::set<SignalKind> kinds;
    std::istringstream input(list);
    std::string token;
    while (std::getline(input, token, ',')) {
        if (token.empty()) continue;
        const auto kind = kind_from_token(token);
        if (!kind.has_value()) throw CliError("bad-kind", "unknown signal kind: " + token);
        kinds.insert(*kind);
    }
    if (kinds.empty()) throw CliError("bad-kind", "empty kind list");
    return kinds;
}

MarketRegistry load_registry(const std::string& path) {
    if (path.empty()) return MarketRegistry::builtin();
    return MarketRegistry::from_json(read_text_file(path));
}

Dataset load_dataset_file(const std::string& path) {
    return parse_dataset(read_text_file(path));
}

Dataset filter_market(Dataset dataset, const std::string& market) {
    if (market.empty()) return dataset;
    std::erase_if(dataset.entries, [&market](const MarketEntry& e) { return e.market != market; });
    dataset.markets = {market};
    return dataset;
}

std::vector<const MarketEntry*> latest_pointers(const Dataset& dataset) {
    std::vector<const MarketEntry*> entries;
    for (const auto& [key, pick] : latest_entries(dataset)) entries.push_back(pick.entry);
    return entries;
}

std::optional<int64_t> parse_cutoff(const std::string& text) {
    if (text.empty()) return std::nullopt;
    return parse_utc_timestamp(text);
}

// ------------------------------------------------------------------- extract

struct ExtractArgs {
    std::vector<std::string> paths;
    std::string out;
    bool resources = false;
    unsigned jobs = 1;
};

int run_extract(const ExtractArgs& args) {
    std::vector<std::string> files;
    for (const auto& path : args.paths) {
        if (fs::is_directory(path)) {
            std::vector<std::string> found;
            for (const auto& entry : fs::directory_iterator(path)) {
                if (entry.is_regular_file() && entry.path().extension() == ".apk") {
                    found.push_back(entry.path().string());
                }
            }
            std::sort(found.begin(), found.end());
            files.insert(files.end(), found.begin(), found.end());
        } else {
            files.push_back(path);
        }
    }

    std::vector<std::optional<apk::ApkSignals>> results(files.size());
    std::vector<std::string> failures(files.size());
    std::atomic<size_t> next{0};
    const apk::ExtractOptions extract_options{.resolve_resources = args.resources};

    const auto worker = [&]() {
        while (true) {
            const size_t i = next.fetch_add(1);
            if (i >= files.size()) break;
            try {
                const auto bytes = read_file_bytes(files[i]);
                results[i] = apk::extract_apk(bytes, extract_options);
            } catch (const std::exception& e) {
                failures[i] = e.what();
            }
        }
    };

    const unsigned jobs = std::max(1u, args.jobs);
    if (jobs == 1 || files.size() <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < std::min<size_t>(jobs, files.size()); ++t) {
            pool.emplace_back(worker);
        }
        for (auto& thread : pool) thread.join();
    }

    std::vector<apk::ApkSignals> ok;
    size_t failed = 0;
    for (size_t i = 0; i < files.size(); ++i) {
        if (results[i].has_value()) {
            ok.push_back(std::move(*results[i]));
        } else {
            ++failed;
            std::fprintf(stderr, "%s\n",
                         error_json("extract-failed", files[i] + ": " + failures[i]).c_str());
        }
    }

    const std::string jsonl = apk_signals_to_jsonl(ok);
    if (args.out.empty()) {
        std::fwrite(jsonl.data(), 1, jsonl.size(), stdout);
    } else {
        write_text_file(args.out, jsonl);
    }
    log_line("extracted " + std::to_string(ok.size()) + " of " + std::to_string(files.size()) +
             " APKs");
    return failed == 0 ? 0 : 1;
}

// -------------------------------------------------------------------- ingest

struct IngestArgs {
    std::string entries;
    std::string apk_signals;
    std::string out;
    std::string markets;
};

int run_ingest(const IngestArgs& args) {
    const MarketRegistry registry = load_registry(args.markets);
    LoadResult loaded = load_dataset(read_text_file(args.entries), registry);

    if (!loaded.errors.empty()) {
        ojson errors = ojson::array();
        for (const auto& error : loaded.errors) {
            ojson row = ojson::object();
            row["line"] = error.line;
            row["code"] = error.code;
            row["message"] = error.message;
            errors.push_back(std::move(row));
        }
        ojson doc = ojson::object();
        doc["rejected_records"] = std::move(errors);
        std::fprintf(stderr, "%s\n", doc.dump().c_str());
    }

    Dataset dataset = std::move(loaded.dataset);
    if (!args.apk_signals.empty()) {
        const auto extractions = apk_signals_from_jsonl(read_text_file(args.apk_signals));
        dataset = join_apk_signals(std::move(dataset), extractions);
    }

    const std::string serialized = serialize_dataset(dataset);
    if (args.out.empty()) {
        std::fwrite(serialized.data(), 1, serialized.size(), stdout);
    } else {
        write_text_file(args.out, serialized);
    }
    log_line("ingested " + std::to_string(dataset.entries.size()) + " entries, rejected " +
             std::to_string(loaded.errors.size()));
    return 0;
}

// --------------------------------------------------------------------- graph

struct GraphArgs {
    std::string dataset;
    std::string market;
    std::string kinds;
    std::string out;     // single-file subcommands
    std::string out_dir; // graph build
    std::string from = "cert";
    std::string to = "developer_name";
    size_t top = 25;
    size_t max_centrality_component = 0; // 0 = no limit
};

GraphOptions graph_options(const GraphArgs& args) {
    GraphOptions options;
    if (!args.kinds.empty()) options.kinds = parse_kinds(args.kinds);
    if (!args.market.empty()) options.market_filter = args.market;
    return options;
}

AttributionGraph build_from_args(const GraphArgs& args, Dataset* keep_alive) {
    *keep_alive = load_dataset_file(args.dataset);
    return build_graph(latest_pointers(*keep_alive), graph_options(args));
}

void emit(const ojson& doc, const std::string& out) {
    const std::string text = doc.dump(2) + "\n";
    if (out.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
    } else {
        write_text_file(out, text);
    }
}

// Centrality with the optional big-component cutoff: nodes in components
// larger than the limit keep value 0 and the skip is reported.
std::pair<std::vector<double>, std::vector<double>> centrality_pair(
    const AttributionGraph& graph) {
    return {betweenness_centrality(graph, false), betweenness_centrality(graph, true)};
}

int run_graph_build(const GraphArgs& args) {
    Dataset dataset;
    const AttributionGraph graph = build_from_args(args, &dataset);
    const ComponentsResult components = connected_components(graph);
    const auto [raw, normalized] = centrality_pair(graph);

    const fs::path dir(args.out_dir);
    fs::create_directories(dir);
    write_text_file(dir / "nodes.csv", graph_nodes_to_csv(graph));
    write_text_file(dir / "edges.csv", graph_edges_to_csv(graph));
    emit(clusters_to_json(graph, components, &raw, 3), (dir / "clusters.json").string());
    emit(centrality_to_json(graph, raw, normalized, args.top),
         (dir / "centrality.json").string());
    log_line("graph: " + std::to_string(graph.node_count()) + " nodes, " +
             std::to_string(graph.edge_count) + " edges, " +
             std::to_string(components.clusters.size()) + " clusters");
    return 0;
}

int run_graph_components(const GraphArgs& args) {
    Dataset dataset;
    const AttributionGraph graph = build_from_args(args, &dataset);
    const ComponentsResult components = connected_components(graph);
    emit(clusters_to_json(graph, components, nullptr, 0), args.out);
    return 0;
}

int run_graph_centrality(const GraphArgs& args) {
    Dataset dataset;
    const AttributionGraph graph = build_from_args(args, &dataset);
    const auto [raw, normalized] = centrality_pair(graph);
    emit(centrality_to_json(graph, raw, normalized, args.top), args.out);
    return 0;
}

int run_graph_degrees(const GraphArgs& args) {
    Dataset dataset;
    const AttributionGraph graph = build_from_args(args, &dataset);
    const auto from = kind_from_token(args.from);
    const auto to = kind_from_token(args.to);
    if (!from.has_value()) throw CliError("bad-kind", "unknown --from kind: " + args.from);
    if (!to.has_value()) throw CliError("bad-kind", "unknown --to kind: " + args.to);

    const DegreeStats stats = signal_degree_stats(graph, *from, *to);
    std::vector<uint64_t> counts;
    for (const auto& [value, count] : stats.counts) counts.push_back(count);
    emit(degrees_to_json(stats, ccdf(counts), args.top), args.out);
    return 0;
}

// -------------------------------------------------------------------- report

struct ReportArgs {
    std::string dataset;
    std::string market;
    std::string names;
    std::string out_dir;
    std::string cutoff;
    bool all_signers = false;
    bool scan_intermediate = false;
    bool equal_cert_sets = false;
};

std::vector<std::string> read_names(const std::string& path) {
    std::vector<std::string> names;
    std::istringstream input(read_text_file(path));
    std::string line;
    while (std::getline(input, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (!line.empty()) names.push_back(line);
    }
    return names;
}

ojson resolved_config(const std::string& subcommand, const ReportArgs& args) {
    ojson config = ojson::object();
    config["subcommand"] = subcommand;
    config["dataset"] = args.dataset;
    config["market"] = args.market;
    if (!args.names.empty()) config["names"] = args.names;
    config["cutoff"] = args.cutoff.empty() ? ojson(nullptr) : ojson(args.cutoff);
    config["all_signers"] = args.all_signers;
    config["scan_intermediate"] = args.scan_intermediate;
    config["equal_cert_sets"] = args.equal_cert_sets;
    config["tool_version"] = kToolVersion;
    return config;
}

void emit_report(ojson doc, const std::string& subcommand, const ReportArgs& args,
                 const std::string& json_name, const std::string& csv,
                 const std::string& csv_name) {
    doc["config"] = resolved_config(subcommand, args);
    if (args.out_dir.empty()) {
        const std::string text = doc.dump(2) + "\n";
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    const fs::path dir(args.out_dir);
    fs::create_directories(dir);
    write_text_file(dir / json_name, doc.dump(2) + "\n");
    if (!csv.empty()) write_text_file(dir / csv_name, csv);
}

int run_report(const std::string& which, const ReportArgs& args) {
    const Dataset dataset = filter_market(load_dataset_file(args.dataset), args.market);

    if (which == "availability") {
        AvailabilityOptions options;
        options.cutoff_epoch = parse_cutoff(args.cutoff);
        options.all_signers = args.all_signers;
        const AvailabilityReport report = availability(dataset, options);
        emit_report(availability_to_json(report), which, args, "availability.json",
                    availability_to_csv(report), "availability.csv");
    } else if (which == "volatility") {
        const VolatilityReport report =
            volatility(dataset, {.scan_intermediate = args.scan_intermediate});
        emit_report(volatility_to_json(report), which, args, "volatility.json",
                    volatility_to_csv(report), "volatility.csv");
    } else if (which == "consistency") {
        const WithinAppReport report = within_app_consistency(dataset);
        emit_report(within_app_to_json(report), which, args, "within_app.json", "", "");
    } else if (which == "cross-market") {
        const CrossMarketReport report =
            cross_market(dataset, {.require_equal_cert_sets = args.equal_cert_sets});
        emit_report(cross_market_to_json(report), which, args, "cross_market.json",
                    cross_market_to_csv(report), "cross_market.csv");
    } else { // org
        if (args.market.empty()) throw CliError("missing-flag", "report org requires --market");
        if (args.names.empty()) throw CliError("missing-flag", "report org requires --names");
        const OrgReport report = org_report(dataset, args.market, read_names(args.names));
        emit_report(org_to_json(report), which, args, "org.json", org_to_csv(report), "org.csv");
    }
    return 0;
}

// ----------------------------------------------------------------------- all

struct AllArgs {
    std::string apks;
    std::string entries;
    std::string out_dir;
    std::string markets;
    std::string kinds;
    std::string cutoff;
    unsigned jobs = 1;
};

int run_all(const AllArgs& args) {
    const fs::path dir(args.out_dir);
    fs::create_directories(dir);

    ExtractArgs extract_args;
    extract_args.paths = {args.apks};
    extract_args.out = (dir / "apk_signals.jsonl").string();
    extract_args.resources = true;
    extract_args.jobs = args.jobs;
    if (const int status = run_extract(extract_args); status != 0) return status;

    IngestArgs ingest_args;
    ingest_args.entries = args.entries;
    ingest_args.apk_signals = extract_args.out;
    ingest_args.out = (dir / "dataset.json").string();
    ingest_args.markets = args.markets;
    if (const int status = run_ingest(ingest_args); status != 0) return status;

    GraphArgs graph_args;
    graph_args.dataset = ingest_args.out;
    graph_args.kinds = args.kinds;
    graph_args.out_dir = args.out_dir;
    if (const int status = run_graph_build(graph_args); status != 0) return status;

    {
        Dataset dataset = load_dataset_file(ingest_args.out);
        const AttributionGraph graph = build_graph(latest_pointers(dataset), graph_options(graph_args));
        const DegreeStats stats =
            signal_degree_stats(graph, SignalKind::CertFingerprint, SignalKind::DeveloperName);
        std::vector<uint64_t> counts;
        for (const auto& [value, count] : stats.counts) counts.push_back(count);
        const auto curve = ccdf(counts);
        emit(degrees_to_json(stats, curve, 10), (dir / "degrees.json").string());
        write_text_file(dir / "degrees_ccdf.csv", ccdf_to_csv(curve));
    }

    ReportArgs report_args;
    report_args.dataset = ingest_args.out;
    report_args.out_dir = args.out_dir;
    report_args.cutoff = args.cutoff;
    run_report("availability", report_args);
    run_report("volatility", report_args);
    run_report("consistency", report_args);
    run_report("cross-market", report_args);

    ojson config = ojson::object();
    config["subcommand"] = "all";
    config["apks"] = args.apks;
    config["entries"] = args.entries;
    config["out_dir"] = args.out_dir;
    config["markets"] = args.markets.empty() ? ojson(nullptr) : ojson(args.markets);
    config["kinds"] = args.kinds;
    config["cutoff"] = args.cutoff.empty() ? ojson(nullptr) : ojson(args.cutoff);
    config["jobs"] = args.jobs;
    config["tool_version"] = kToolVersion;
    config["dataset_format_version"] = kDatasetFormatVersion;
    config["report_schema_version"] = kReportSchemaVersion;
    write_text_file(dir / "resolved_config.json", config.dump(2) + "\n");
    return 0;
}

std::string default_out_dir() {
    const char* env = std::getenv("ATTRGRAPH_OUT_DIR");
    return env == nullptr ? std::string() : std::string(env);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Android attribution-signal extraction and graph analysis"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("attrgraph ") + kToolVersion +
                                          " (dataset format " +
                                          std::to_string(kDatasetFormatVersion) +
                                          ", report schema " +
                                          std::to_string(kReportSchemaVersion) + ")");

    ExtractArgs extract_args;
    auto* extract = app.add_subcommand("extract", "Extract signals from APK files");
    extract->add_option("paths", extract_args.paths, "APK files or directories")->required();
    extract->add_option("--out", extract_args.out, "Output JSONL path (default stdout)");
    extract->add_flag("--resources", extract_args.resources,
                      "Resolve label references through resources.arsc");
    extract->add_option("--jobs", extract_args.jobs, "Parallel extraction workers");

    IngestArgs ingest_args;
    auto* ingest = app.add_subcommand("ingest", "Load market entries and join APK signals");
    ingest->add_option("--entries", ingest_args.entries, "Market entries JSONL")->required();
    ingest->add_option("--apk-signals", ingest_args.apk_signals, "Extraction output JSONL");
    ingest->add_option("--out", ingest_args.out, "Dataset file (default stdout)");
    ingest->add_option("--markets", ingest_args.markets, "Market registry JSON");

    GraphArgs graph_args;
    auto* graph = app.add_subcommand("graph", "Attribution graph analyses");
    graph->require_subcommand(1);
    const auto add_graph_common = [&graph_args](CLI::App* cmd) {
        cmd->add_option("--dataset", graph_args.dataset, "Dataset file")->required();
        cmd->add_option("--market", graph_args.market, "Restrict to one market");
        cmd->add_option("--kinds", graph_args.kinds, "Comma-separated signal kinds");
    };
    auto* graph_build = graph->add_subcommand("build", "Build and export the graph");
    add_graph_common(graph_build);
    graph_build->add_option("--out-dir", graph_args.out_dir, "Output directory")->required();
    graph_build->add_option("--top", graph_args.top, "Centrality rows in the export");
    auto* graph_components = graph->add_subcommand("components", "Connected components");
    add_graph_common(graph_components);
    graph_components->add_option("--out", graph_args.out, "Output JSON (default stdout)");
    auto* graph_centrality = graph->add_subcommand("centrality", "Betweenness centrality");
    add_graph_common(graph_centrality);
    graph_centrality->add_option("--top", graph_args.top, "Rows to report");
    graph_centrality->add_option("--out", graph_args.out, "Output JSON (default stdout)");
    auto* graph_degrees = graph->add_subcommand("degrees", "Signal fan-out distribution");
    add_graph_common(graph_degrees);
    graph_degrees->add_option("--from", graph_args.from, "Source signal kind");
    graph_degrees->add_option("--to", graph_args.to, "Counted signal kind");
    graph_degrees->add_option("--top", graph_args.top, "Top fan-out values to list");
    graph_degrees->add_option("--out", graph_args.out, "Output JSON (default stdout)");

    ReportArgs report_args;
    report_args.out_dir = default_out_dir();
    auto* report = app.add_subcommand("report", "Availability / volatility / consistency reports");
    report->require_subcommand(1);
    std::vector<CLI::App*> report_subs;
    for (const char* name : {"availability", "volatility", "consistency", "cross-market", "org"}) {
        auto* sub = report->add_subcommand(name);
        sub->add_option("--dataset", report_args.dataset, "Dataset file")->required();
        sub->add_option("--market", report_args.market, "Restrict to one market");
        sub->add_option("--out-dir", report_args.out_dir,
                        "Write JSON+CSV here instead of stdout ($ATTRGRAPH_OUT_DIR)");
        report_subs.push_back(sub);
    }
    report_subs[0]->add_option("--cutoff", report_args.cutoff,
                               "Partial-collection cutoff timestamp");
    report_subs[0]->add_flag("--all-signers", report_args.all_signers,
                             "RDN missing when any signer lacks the field");
    report_subs[1]->add_flag("--scan-intermediate", report_args.scan_intermediate,
                             "Count reverted changes between the pair endpoints");
    report_subs[3]->add_flag("--equal-cert-sets", report_args.equal_cert_sets,
                             "Same-cert requires equal fingerprint sets");
    report_subs[4]->add_option("--names", report_args.names, "Developer names, one per line");

    AllArgs all_args;
    all_args.out_dir = default_out_dir();
    auto* all = app.add_subcommand("all", "extract -> ingest -> graph -> reports");
    all->add_option("--apks", all_args.apks, "Directory of APK files")->required();
    all->add_option("--entries", all_args.entries, "Market entries JSONL")->required();
    auto* all_out = all->add_option("--out-dir", all_args.out_dir,
                                    "Output directory ($ATTRGRAPH_OUT_DIR)");
    all->add_option("--markets", all_args.markets, "Market registry JSON");
    all->add_option("--kinds", all_args.kinds, "Comma-separated graph signal kinds");
    all->add_option("--cutoff", all_args.cutoff, "Partial-collection cutoff timestamp");
    all->add_option("--jobs", all_args.jobs, "Parallel extraction workers");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::RequiredError& e) {
        const std::string what = e.what();
        if (what.find("--") != std::string::npos) { // a required flag is absent
            std::fprintf(stderr, "%s\n", error_json("missing-flag", what).c_str());
            return 1;
        }
        std::cerr << what << "\n" << app.help() << std::flush;
        return 2;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n" << app.help() << std::flush;
        return 2;
    }

    try {
        if (extract->parsed()) return run_extract(extract_args);
        if (ingest->parsed()) return run_ingest(ingest_args);
        if (graph->parsed()) {
            if (graph_build->parsed()) return run_graph_build(graph_args);
            if (graph_components->parsed()) return run_graph_components(graph_args);
            if (graph_centrality->parsed()) return run_graph_centrality(graph_args);
            return run_graph_degrees(graph_args);
        }
        if (report->parsed()) {
            for (size_t i = 0; i < report_subs.size(); ++i) {
                if (report_subs[i]->parsed()) {
                    return run_report(report_subs[i]->get_name(), report_args);
                }
            }
        }
        if (all->parsed()) {
            if (all_args.out_dir.empty()) {
                throw CliError("missing-flag", "all requires --out-dir or $ATTRGRAPH_OUT_DIR");
            }
            (void)all_out;
            return run_all(all_args);
        }
    } catch (const CliError& e) {
        std::fprintf(stderr, "%s\n", error_json(e.code, e.what()).c_str());
        return 1;
    } catch (const ParseError& e) {
        std::fprintf(stderr, "%s\n", error_json(e.code(), e.what()).c_str());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "%s\n", error_json("internal", e.what()).c_str());
        return 1;
    }
    return 0;
}
