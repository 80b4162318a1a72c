#include "attrgraph/dataset.hpp"

#include "attrgraph/json_io.hpp"
#include "attrgraph/util.hpp"

#include "doctest.h"

#include <algorithm>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace attrgraph;

namespace {

std::string line(const std::string& market, const std::string& package, int crawl,
                 const std::string& fetched_at, ojson extra = ojson::object()) {
    ojson record = ojson::object();
    record["market"] = market;
    record["package_name"] = package;
    record["crawl_id"] = crawl;
    record["fetched_at"] = fetched_at;
    for (const auto& [key, value] : extra.items()) record[key] = value;
    return record.dump() + "\n";
}

std::string hexsha(char fill) { return std::string(64, fill); }

MarketEntry make_entry(const std::string& market, const std::string& package, int crawl,
                       int64_t fetched_at, const std::string& sha = "") {
    MarketEntry entry;
    entry.market = market;
    entry.package_name = package;
    entry.crawl_id = crawl;
    entry.fetched_at = fetched_at;
    if (!sha.empty()) entry.apk_sha256 = sha;
    entry.signals.emplace(SignalKind::PackageName,
                          *normalize_signal(SignalKind::PackageName, package));
    return entry;
}

} // namespace

TEST_CASE("valid records load, sorted and canonicalized") {
    const std::string text = line("google-play", "b.app", 1, "2021-06-02T00:00:00Z",
                                  {{"developer_name", "  Rad3 Limited "}}) +
                             line("google-play", "a.app", 1, "2021-06-01T00:00:00Z") +
                             line("baidu", "a.app", 2, "2021-11-01") +
                             line("google-play", "a.app", 2, "2021-11-03T09:30:00Z");
    const LoadResult result = load_dataset(text, MarketRegistry::builtin());
    CHECK(result.errors.empty());
    REQUIRE(result.dataset.entries.size() == 4);

    // Sorted by (market, package_name, fetched_at).
    const auto& entries = result.dataset.entries;
    CHECK(entries[0].market == "baidu");
    CHECK(entries[1].package_name == "a.app");
    CHECK(entries[1].fetched_at < entries[2].fetched_at);
    CHECK(entries[3].package_name == "b.app");
    CHECK(entries[0].date_only);
    CHECK_FALSE(entries[3].date_only);

    const Signal* name = entries[3].signal(SignalKind::DeveloperName);
    REQUIRE(name != nullptr);
    CHECK(name->canonical_value == "rad3 limited");
    CHECK(result.dataset.markets == std::set<std::string>{"baidu", "google-play"});
}

TEST_CASE("bad rows land in the error report with line numbers") {
    const std::string text =
        "not json at all\n" +
        line("google-play", "a.app", 1, "2021-06-01T00:00:00Z") +
        line("nokia-store", "a.app", 1, "2021-06-01T00:00:00Z") +
        line("google-play", "", 1, "2021-06-01T00:00:00Z") +
        line("google-play", "b.app", 3, "2021-06-01T00:00:00Z") +
        line("google-play", "c.app", 1, "junk-timestamp") +
        line("google-play", "d.app", 1, "2021-06-01T00:00:00Z", {{"apk_sha256", "1234"}}) +
        line("google-play", "a.app", 2, "2021-06-01T00:00:00Z");
    const LoadResult result = load_dataset(text, MarketRegistry::builtin());
    REQUIRE(result.dataset.entries.size() == 1);
    REQUIRE(result.errors.size() == 7);

    auto code_of = [&](size_t input_line) -> std::string {
        for (const auto& error : result.errors) {
            if (error.line == input_line) return error.code;
        }
        return "";
    };
    CHECK(code_of(1) == "bad-json");
    CHECK(code_of(3) == "unknown-market");
    CHECK(code_of(4) == "missing-field");
    CHECK(code_of(5) == "bad-field");
    CHECK(code_of(6) == "bad-timestamp");
    CHECK(code_of(7) == "bad-hash");
    CHECK(code_of(8) == "duplicate-entry");

    // The duplicate rejection names the offending triple.
    const auto dup = std::find_if(result.errors.begin(), result.errors.end(),
                                  [](const LoadError& e) { return e.code == "duplicate-entry"; });
    REQUIRE(dup != result.errors.end());
    CHECK(dup->message.find("google-play") != std::string::npos);
    CHECK(dup->message.find("a.app") != std::string::npos);
    CHECK(dup->message.find("2021-06-01T00:00:00Z") != std::string::npos);
}

TEST_CASE("missing and null optional fields both mean absent") {
    const std::string text = line("google-play", "a.app", 1, "2021-06-01T00:00:00Z",
                                  {{"developer_email", nullptr}, {"app_name", "   "}});
    const LoadResult result = load_dataset(text, MarketRegistry::builtin());
    REQUIRE(result.dataset.entries.size() == 1);
    CHECK(result.dataset.entries[0].signal(SignalKind::DeveloperEmail) == nullptr);
    CHECK(result.dataset.entries[0].signal(SignalKind::AppNameMarket) == nullptr);
    CHECK(result.dataset.entries[0].signal(SignalKind::PackageName) != nullptr);
}

TEST_CASE("custom registries gate market names") {
    const MarketRegistry registry = MarketRegistry::from_json(
        R"({"markets":[{"name":"mymarket","collects":["app_name","developer_name"]}]})");
    CHECK(registry.known("mymarket"));
    CHECK_FALSE(registry.known("google-play"));
    CHECK(registry.collects("mymarket", SignalKind::DeveloperName));
    CHECK(registry.collects("mymarket", SignalKind::PackageName)); // always on
    CHECK_FALSE(registry.collects("mymarket", SignalKind::DeveloperEmail));

    CHECK_THROWS_AS((void)MarketRegistry::from_json("{"), ParseError);
    CHECK_THROWS_AS((void)MarketRegistry::from_json(R"({"markets":[{"name":"m","collects":["nope"]}]})"),
                    ParseError);
}

TEST_CASE("builtin registry mirrors the observed per-market masks") {
    const MarketRegistry registry = MarketRegistry::builtin();
    CHECK(registry.collects("google-play", SignalKind::DeveloperEmail));
    CHECK(registry.collects("google-play", SignalKind::DeveloperAddress));
    CHECK(registry.collects("apkmonk", SignalKind::DeveloperName));
    CHECK_FALSE(registry.collects("apkmonk", SignalKind::DeveloperEmail));
    CHECK_FALSE(registry.collects("baidu", SignalKind::DeveloperName));
    CHECK(registry.collects("baidu", SignalKind::AppNameMarket));
    CHECK_FALSE(registry.known("f-droid"));
}

TEST_CASE("latest entry picks maximal timestamp then larger hash") {
    Dataset dataset;
    dataset.registry = MarketRegistry::builtin();
    dataset.entries.push_back(make_entry("google-play", "a.app", 1, 100, hexsha('a')));
    dataset.entries.push_back(make_entry("google-play", "a.app", 1, 100, hexsha('b')));
    dataset.entries.push_back(make_entry("google-play", "b.app", 1, 100, hexsha('c')));
    dataset.entries.push_back(make_entry("google-play", "b.app", 2, 200, hexsha('a')));
    for (size_t i = 0; i < dataset.entries.size(); ++i) dataset.entries[i].input_index = i;

    const auto picks = latest_entries(dataset);
    REQUIRE(picks.size() == 2);

    const LatestPick& tied = picks.at({"google-play", "a.app"});
    REQUIRE(tied.entry != nullptr);
    CHECK(tied.entry->apk_sha256 == hexsha('b')); // larger hash wins the tie
    CHECK(tied.tie);

    const LatestPick& clear = picks.at({"google-play", "b.app"});
    CHECK(clear.entry->fetched_at == 200);
    CHECK_FALSE(clear.tie); // a strictly later entry clears earlier ties
}

TEST_CASE("longitudinal pairing takes earliest crawl-1 and latest crawl-2") {
    // e0(c1,t0), e1(c1,t2), e3(c2,t6), e4(c2,t7) -> pair (e0, e4).
    const std::string text = line("google-play", "a.app", 1, "2021-06-05T00:00:00Z") +
                             line("google-play", "a.app", 1, "2021-06-01T00:00:00Z") +
                             line("google-play", "a.app", 2, "2021-11-01T00:00:00Z") +
                             line("google-play", "a.app", 2, "2021-11-07T00:00:00Z") +
                             line("google-play", "only1.app", 1, "2021-06-01T00:00:00Z") +
                             line("google-play", "only2.app", 2, "2021-11-01T00:00:00Z");
    const LoadResult loaded = load_dataset(text, MarketRegistry::builtin());
    REQUIRE(loaded.errors.empty());

    const LongitudinalResult result = longitudinal_pairs(loaded.dataset);
    REQUIRE(result.pairs.size() == 1);
    CHECK(result.pairs[0].first->fetched_at == parse_utc_timestamp("2021-06-01T00:00:00Z"));
    CHECK(result.pairs[0].last->fetched_at == parse_utc_timestamp("2021-11-07T00:00:00Z"));
    CHECK(result.pairs[0].first->fetched_at <= result.pairs[0].last->fetched_at);
    CHECK(result.crawl1_only == 1);
    CHECK(result.crawl2_only == 1);
    CHECK(result.inverted == 0);
}

TEST_CASE("pairs whose crawl-1 entry postdates crawl-2 are dropped and counted") {
    const std::string text = line("google-play", "a.app", 1, "2021-12-01T00:00:00Z") +
                             line("google-play", "a.app", 2, "2021-11-01T00:00:00Z");
    const LoadResult loaded = load_dataset(text, MarketRegistry::builtin());
    const LongitudinalResult result = longitudinal_pairs(loaded.dataset);
    CHECK(result.pairs.empty());
    CHECK(result.inverted == 1);
}

TEST_CASE("apk join attaches certificates and flags mismatches") {
    const std::string sha_ok = hexsha('1');
    const std::string sha_conflict = hexsha('2');
    const std::string text =
        line("google-play", "a.app", 1, "2021-06-01T00:00:00Z", {{"apk_sha256", sha_ok}}) +
        line("google-play", "b.app", 1, "2021-06-01T00:00:00Z", {{"apk_sha256", sha_conflict}}) +
        line("google-play", "c.app", 1, "2021-06-01T00:00:00Z", {{"apk_sha256", hexsha('3')}}) +
        line("google-play", "d.app", 1, "2021-06-01T00:00:00Z");
    const LoadResult loaded = load_dataset(text, MarketRegistry::builtin());
    REQUIRE(loaded.errors.empty());

    apk::ApkSignals ok;
    ok.apk_sha256 = sha_ok;
    ok.package_name = "a.app";
    ok.app_name_manifest = "Alpha App";
    apk::CertificateInfo cert;
    cert.fingerprint_sha256 = hexsha('f');
    cert.schemes = {apk::SignatureScheme::V2};
    ok.certificates.push_back(cert);
    ok.signer_count = 1;

    apk::ApkSignals conflict = ok;
    conflict.apk_sha256 = sha_conflict;
    conflict.package_name = "other.package";

    const Dataset joined = join_apk_signals(loaded.dataset, {ok, conflict});
    const auto find = [&](const std::string& package) -> const MarketEntry& {
        for (const auto& entry : joined.entries) {
            if (entry.package_name == package) return entry;
        }
        FAIL("entry not found: ", package);
        return joined.entries.front();
    };

    const MarketEntry& a = find("a.app");
    REQUIRE(a.certificates.size() == 1);
    CHECK(a.certificates[0].fingerprint_sha256 == hexsha('f'));
    REQUIRE(a.signal(SignalKind::AppNameManifest) != nullptr);
    CHECK(a.signal(SignalKind::AppNameManifest)->canonical_value == "alpha app");
    CHECK(a.flags.empty());
    CHECK(a.fingerprints() == std::set<std::string>{hexsha('f')});

    const MarketEntry& b = find("b.app");
    CHECK(b.flags == std::vector<std::string>{"package-conflict"});
    CHECK_FALSE(b.certificates.empty()); // the join still happens

    CHECK(find("c.app").flags == std::vector<std::string>{"apk-missing"});
    CHECK(find("d.app").flags == std::vector<std::string>{"apk-missing"});
}

TEST_CASE("dataset serialization round-trips byte for byte") {
    const std::string text =
        line("google-play", "a.app", 1, "2021-06-01T12:30:00Z",
             {{"developer_name", "Dev One"},
              {"developer_website", "https://dev.one/"},
              {"apk_sha256", hexsha('a')}}) +
        line("baidu", "b.app", 2, "2021-11-01") +
        line("tencent", "c.app", 2, "2021-11-02T08:00:00Z", {{"app_name", "应用"}});
    const LoadResult loaded = load_dataset(text, MarketRegistry::builtin());
    REQUIRE(loaded.errors.empty());

    const std::string serialized = serialize_dataset(loaded.dataset);
    const Dataset reparsed = parse_dataset(serialized);
    CHECK(serialize_dataset(reparsed) == serialized);
    CHECK(reparsed.entries.size() == loaded.dataset.entries.size());
    CHECK(reparsed.markets == loaded.dataset.markets);

    CHECK_THROWS_AS((void)parse_dataset("not json"), ParseError);
    CHECK_THROWS_AS((void)parse_dataset(R"({"format_version": 99})"), ParseError);
}

TEST_CASE("selection logic is invariant under input permutation") {
    std::vector<std::string> lines;
    for (int p = 0; p < 6; ++p) {
        const std::string package = "pkg" + std::to_string(p) + ".app";
        lines.push_back(line("google-play", package, 1,
                             "2021-06-0" + std::to_string(p % 5 + 1) + "T00:00:00Z"));
        lines.push_back(line("google-play", package, 2,
                             "2021-11-0" + std::to_string((p * 2) % 5 + 1) + "T00:00:00Z"));
        lines.push_back(line("baidu", package, 2, "2021-11-03T00:00:00Z"));
    }

    auto serialize_order = [&](const std::vector<std::string>& ordered) {
        std::string text;
        for (const auto& l : ordered) text += l;
        const LoadResult loaded = load_dataset(text, MarketRegistry::builtin());
        REQUIRE(loaded.errors.empty());
        return serialize_dataset(loaded.dataset);
    };

    const std::string baseline = serialize_order(lines);
    std::mt19937 rng(7);
    for (int round = 0; round < 5; ++round) {
        std::shuffle(lines.begin(), lines.end(), rng);
        CHECK(serialize_order(lines) == baseline);
    }
}
