#include "attrgraph/apk/extract.hpp"

#include "attrgraph/apk/arsc.hpp"
#include "attrgraph/apk/axml.hpp"
#include "attrgraph/apk/signing.hpp"
#include "attrgraph/apk/zip_reader.hpp"
#include "attrgraph/util.hpp"

#include <algorithm>
#include <map>
#include <regex>
#include <set>

namespace attrgraph::apk {

namespace {

void merge_certificate(std::map<std::string, CertificateInfo>& by_fingerprint,
                       std::span<const uint8_t> der, SignatureScheme scheme,
                       std::vector<std::string>* warnings) {
    CertificateInfo parsed = parse_certificate(der, warnings);
    auto [it, inserted] = by_fingerprint.emplace(parsed.fingerprint_sha256, std::move(parsed));
    it->second.schemes.insert(scheme);
}

std::set<std::string> scheme_fingerprints(const std::map<std::string, CertificateInfo>& certs,
                                          SignatureScheme scheme) {
    std::set<std::string> out;
    for (const auto& [fp, cert] : certs) {
        if (cert.schemes.contains(scheme)) out.insert(fp);
    }
    return out;
}

std::vector<std::string> split_labels(std::string_view dotted) {
    std::vector<std::string> labels;
    size_t start = 0;
    while (start <= dotted.size()) {
        const size_t dot = dotted.find('.', start);
        if (dot == std::string_view::npos) {
            labels.emplace_back(dotted.substr(start));
            break;
        }
        labels.emplace_back(dotted.substr(start, dot - start));
        start = dot + 1;
    }
    return labels;
}

// Hosts under these public suffixes register at the third level. A handful
// of common ones; a full public-suffix list is overkill here.
const std::set<std::string>& multi_part_suffixes() {
    static const std::set<std::string> suffixes = {
        "co.uk", "org.uk", "ac.uk", "gov.uk", "co.nz", "net.nz", "org.nz",
        "com.au", "net.au", "org.au", "co.jp", "ne.jp", "or.jp", "com.cn",
        "net.cn", "org.cn", "com.br", "com.mx", "com.tr", "co.in", "co.kr",
        "com.sg", "com.hk", "com.tw", "co.za", "com.ar", "co.il",
    };
    return suffixes;
}

std::optional<std::string> url_host(std::string_view url) {
    std::string_view rest = url;
    const size_t scheme_pos = rest.find("://");
    if (scheme_pos != std::string_view::npos) {
        rest = rest.substr(scheme_pos + 3);
    }
    const size_t slash = rest.find_first_of("/?#");
    if (slash != std::string_view::npos) rest = rest.substr(0, slash);
    const size_t at = rest.find('@');
    if (at != std::string_view::npos) rest = rest.substr(at + 1);
    const size_t colon = rest.find(':');
    if (colon != std::string_view::npos) rest = rest.substr(0, colon);
    if (rest.empty() || rest.find('.') == std::string_view::npos) return std::nullopt;
    return ascii_lower(rest);
}

std::vector<std::string> registrable_domain_labels(const std::string& host) {
    std::vector<std::string> labels = split_labels(host);
    if (labels.size() <= 2) return labels;
    const std::string last_two = labels[labels.size() - 2] + "." + labels.back();
    const size_t keep = multi_part_suffixes().contains(last_two) ? 3 : 2;
    return {labels.end() - static_cast<long>(keep), labels.end()};
}

} // namespace

std::pair<std::string, std::optional<std::string>> parse_manifest_package_and_label(
    std::span<const uint8_t> manifest, std::span<const uint8_t> resource_table,
    std::vector<std::string>* warnings) {
    const ManifestInfo info = parse_binary_manifest(manifest);
    std::optional<std::string> label = info.label_literal;
    if (!label.has_value() && info.label_resource_id.has_value()) {
        if (!resource_table.empty()) {
            label = ResourceTable(resource_table).resolve_string(*info.label_resource_id);
            if (!label.has_value() && warnings != nullptr) {
                warnings->push_back("unresolved-resource");
            }
        } else if (warnings != nullptr) {
            warnings->push_back("unresolved-resource");
        }
    }
    return {info.package_name, std::move(label)};
}

ApkSignals extract_apk(std::span<const uint8_t> bytes, const ExtractOptions& options) {
    ApkSignals signals;
    signals.apk_sha256 = sha256_hex(bytes);

    ZipReader zip(bytes);

    const auto manifest_entry = zip.find("AndroidManifest.xml");
    if (!manifest_entry.has_value()) {
        throw ParseError("manifest-missing", "APK has no AndroidManifest.xml");
    }
    const std::vector<uint8_t> manifest = zip.read(*manifest_entry);

    std::vector<uint8_t> resources;
    if (options.resolve_resources) {
        if (const auto arsc = zip.find("resources.arsc"); arsc.has_value()) {
            resources = zip.read(*arsc);
        }
    }
    auto [package_name, label] =
        parse_manifest_package_and_label(manifest, resources, &signals.warnings);
    signals.package_name = std::move(package_name);
    signals.app_name_manifest = std::move(label);

    std::map<std::string, CertificateInfo> certs;

    const auto v1 = extract_v1_certificates(zip, &signals.warnings);
    for (const auto& der : v1) {
        merge_certificate(certs, der, SignatureScheme::V1, &signals.warnings);
    }

    size_t v2_count = 0;
    size_t v3_count = 0;
    if (const auto block = parse_signing_block(bytes, zip.central_directory_offset());
        block.has_value()) {
        v2_count = block->v2_signers.size();
        v3_count = block->v3_signers.size();
        for (const BlockSigner& signer : block->v2_signers) {
            merge_certificate(certs, signer.certificate, SignatureScheme::V2, &signals.warnings);
        }
        for (const BlockSigner& signer : block->v3_signers) {
            merge_certificate(certs, signer.certificate, SignatureScheme::V3, &signals.warnings);
            for (const auto& old_cert : signer.lineage) {
                merge_certificate(certs, old_cert, SignatureScheme::V3, &signals.warnings);
            }
        }
    }

    // Current signers per scheme; lineage history does not add signers.
    signals.signer_count = static_cast<int>(std::max({v1.size(), v2_count, v3_count}));
    if (certs.empty()) {
        signals.warnings.push_back("unsigned");
    } else {
        const auto v1_set = scheme_fingerprints(certs, SignatureScheme::V1);
        const auto v2_set = scheme_fingerprints(certs, SignatureScheme::V2);
        if (!v1_set.empty() && !v2_set.empty() && v1_set != v2_set) {
            signals.warnings.push_back("cross-scheme-mismatch");
        }
    }

    signals.certificates.reserve(certs.size());
    for (auto& [fp, cert] : certs) {
        signals.certificates.push_back(std::move(cert)); // map order = sorted by fingerprint
    }
    return signals;
}

std::span<const BuilderScheme> builder_schemes() {
    static const std::vector<BuilderScheme> schemes = {
        {"andromo", R"(^(com|net)\.andromo\.dev[0-9]+\.app[0-9]+$)"},
    };
    return schemes;
}

std::optional<std::string> match_package_scheme(std::string_view package_name) {
    return match_package_scheme(package_name, builder_schemes());
}

std::optional<std::string> match_package_scheme(std::string_view package_name,
                                                std::span<const BuilderScheme> schemes) {
    for (const BuilderScheme& scheme : schemes) {
        const std::regex re(scheme.pattern);
        if (std::regex_match(package_name.begin(), package_name.end(), re)) {
            return scheme.tag;
        }
    }
    return std::nullopt;
}

std::string_view naming_match_name(NamingMatch m) {
    switch (m) {
        case NamingMatch::Match: return "match";
        case NamingMatch::PartialMatch: return "partial-match";
        case NamingMatch::NoMatch: return "no-match";
        case NamingMatch::NoWebsite: return "no-website";
    }
    return "?";
}

NamingCheck check_naming_convention(std::string_view package_name,
                                    const std::optional<std::string>& developer_website) {
    NamingCheck check;
    if (!developer_website.has_value() || developer_website->empty()) {
        check.result = NamingMatch::NoWebsite;
        return check;
    }
    const auto host = url_host(*developer_website);
    if (!host.has_value()) {
        check.result = NamingMatch::NoMatch;
        check.unparseable_url = true;
        return check;
    }

    const std::vector<std::string> domain = registrable_domain_labels(*host);
    const std::vector<std::string> package = split_labels(ascii_lower(package_name));

    // Match: package leads with the registrable domain reversed,
    // e.g. com.facebook.* against facebook.com.
    if (package.size() >= domain.size()) {
        bool all = true;
        for (size_t i = 0; i < domain.size(); ++i) {
            if (package[i] != domain[domain.size() - 1 - i]) {
                all = false;
                break;
            }
        }
        if (all) {
            check.result = NamingMatch::Match;
            return check;
        }
    }

    // Partial: the second-level label sits in the right spot but the suffix
    // does not line up (facebook.org vs com.facebook.app).
    const size_t sld_position = domain.size() - 1;
    if (package.size() > sld_position && package[sld_position] == domain.front()) {
        check.result = NamingMatch::PartialMatch;
        return check;
    }

    check.result = NamingMatch::NoMatch;
    return check;
}

} // namespace attrgraph::apk
