#pragma once

#include "attrgraph/apk/certificate.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace attrgraph::apk {

struct ApkSignals {
    std::string apk_sha256;
    std::string package_name;
    std::optional<std::string> app_name_manifest;
    std::vector<CertificateInfo> certificates; // distinct, sorted by fingerprint
    int signer_count = 0;                      // 0 only for unsigned inputs
    std::vector<std::string> warnings;
};

struct ExtractOptions {
    // Resolve label resource references through resources.arsc when present.
    bool resolve_resources = false;
};

// Pulls package name, manifest label and all signing certificates (v1 files
// under META-INF plus the v2/v3 signing block) out of one APK. An unsigned
// APK yields an empty certificate list and an "unsigned" warning instead of
// an error; not-a-zip and missing/unparseable manifests throw ParseError.
ApkSignals extract_apk(std::span<const uint8_t> bytes, const ExtractOptions& options = {});

// Manifest-only variant used when the caller already unpacked the entries.
std::pair<std::string, std::optional<std::string>> parse_manifest_package_and_label(
    std::span<const uint8_t> manifest, std::span<const uint8_t> resource_table = {},
    std::vector<std::string>* warnings = nullptr);

struct BuilderScheme {
    std::string tag;
    std::string pattern; // anchored ECMAScript regex over the raw package name
};

// Built-in registry; currently the Andromo package naming scheme.
std::span<const BuilderScheme> builder_schemes();

// Matches the package name against a table of app-builder naming schemes and
// returns the builder tag of the first hit.
std::optional<std::string> match_package_scheme(std::string_view package_name);
std::optional<std::string> match_package_scheme(std::string_view package_name,
                                                std::span<const BuilderScheme> schemes);

enum class NamingMatch { Match, PartialMatch, NoMatch, NoWebsite };

std::string_view naming_match_name(NamingMatch m);

struct NamingCheck {
    NamingMatch result = NamingMatch::NoMatch;
    bool unparseable_url = false;
};

// Checks the reverse-domain package naming convention against the developer
// website: Match when the package's leading labels are the reversed
// registrable domain, PartialMatch when only the second-level label lines up.
NamingCheck check_naming_convention(std::string_view package_name,
                                    const std::optional<std::string>& developer_website);

} // namespace attrgraph::apk
