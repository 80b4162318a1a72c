#include "attrgraph/signal.hpp"

#include "attrgraph/unicode.hpp"
#include "attrgraph/util.hpp"

#include <unicode/uchar.h>
#include <unicode/uscript.h>

#include <algorithm>
#include <vector>

namespace attrgraph {

std::string_view kind_token(SignalKind kind) {
    switch (kind) {
        case SignalKind::PackageName: return "package_name";
        case SignalKind::AppNameMarket: return "app_name";
        case SignalKind::AppNameManifest: return "app_name_manifest";
        case SignalKind::DeveloperName: return "developer_name";
        case SignalKind::DeveloperWebsite: return "developer_website";
        case SignalKind::DeveloperEmail: return "developer_email";
        case SignalKind::DeveloperAddress: return "developer_address";
        case SignalKind::PrivacyPolicyUrl: return "privacy_policy_url";
        case SignalKind::CertFingerprint: return "cert";
    }
    return "unknown";
}

std::optional<SignalKind> kind_from_token(std::string_view token) {
    for (SignalKind kind : kAllSignalKinds) {
        if (kind_token(kind) == token) return kind;
    }
    if (token == "cert_fingerprint") return SignalKind::CertFingerprint;
    return std::nullopt;
}

std::string_view script_name(Script s) {
    switch (s) {
        case Script::Latin: return "latin";
        case Script::NonLatin: return "non-latin";
        case Script::Mixed: return "mixed";
        case Script::Empty: return "empty";
    }
    return "unknown";
}

namespace {

std::string normalize_fingerprint(std::string_view trimmed) {
    if (trimmed.size() != 64) {
        throw ParseError("bad-fingerprint",
                         "certificate fingerprint must be 64 hex chars, got " +
                             std::to_string(trimmed.size()));
    }
    std::string out = ascii_lower(trimmed);
    if (!is_lower_hex(out)) {
        throw ParseError("bad-fingerprint", "certificate fingerprint contains non-hex characters");
    }
    return out;
}

// Lowercases scheme and host, preserves path case, strips one trailing '/'.
// Hosts are case-insensitive while paths may not be.
std::string normalize_url(const std::string& trimmed) {
    std::string value = uni::nfc(trimmed);

    size_t host_begin = 0;
    const size_t scheme_end = value.find("://");
    if (scheme_end != std::string::npos) {
        host_begin = scheme_end + 3;
    }
    size_t host_end = value.find('/', host_begin);
    if (host_end == std::string::npos) host_end = value.size();

    std::string out;
    out.reserve(value.size());
    out += uni::fold_case_nfc(value.substr(0, host_end));
    out += value.substr(host_end);
    if (out.size() > 1 && out.back() == '/') out.pop_back();
    return out;
}

bool is_url_kind(SignalKind kind) {
    return kind == SignalKind::DeveloperWebsite || kind == SignalKind::PrivacyPolicyUrl;
}

} // namespace

std::optional<Signal> normalize_signal(SignalKind kind, std::string_view raw) {
    const std::string trimmed = uni::trim(raw);
    if (trimmed.empty()) return std::nullopt;

    std::string canonical;
    if (kind == SignalKind::CertFingerprint) {
        canonical = normalize_fingerprint(trimmed);
    } else if (is_url_kind(kind)) {
        canonical = normalize_url(trimmed);
    } else {
        canonical = uni::fold_case_nfc(uni::nfc(trimmed));
    }
    if (canonical.empty()) return std::nullopt;
    return Signal{kind, std::string(raw), std::move(canonical)};
}

Script detect_script(std::string_view text) {
    bool any_latin = false;
    bool any_other = false;
    for (char32_t cp : uni::code_points(text)) {
        if (!u_isalpha(static_cast<UChar32>(cp))) continue;
        UErrorCode status = U_ZERO_ERROR;
        const UScriptCode script = uscript_getScript(static_cast<UChar32>(cp), &status);
        if (U_FAILURE(status)) continue;
        if (script == USCRIPT_LATIN) {
            any_latin = true;
        } else {
            any_other = true;
        }
    }
    if (!any_latin && !any_other) return Script::Empty;
    if (any_latin && any_other) return Script::Mixed;
    return any_latin ? Script::Latin : Script::NonLatin;
}

double levenshtein_similarity(std::string_view a, std::string_view b) {
    const std::vector<char32_t> s = uni::code_points(a);
    const std::vector<char32_t> t = uni::code_points(b);
    if (s.empty() && t.empty()) return 1.0;

    const std::vector<char32_t>& shorter = s.size() <= t.size() ? s : t;
    const std::vector<char32_t>& longer = s.size() <= t.size() ? t : s;

    std::vector<size_t> row(shorter.size() + 1);
    for (size_t i = 0; i <= shorter.size(); ++i) row[i] = i;
    for (size_t j = 1; j <= longer.size(); ++j) {
        size_t diagonal = row[0];
        row[0] = j;
        for (size_t i = 1; i <= shorter.size(); ++i) {
            const size_t saved = row[i];
            if (shorter[i - 1] == longer[j - 1]) {
                row[i] = diagonal;
            } else {
                row[i] = 1 + std::min({row[i - 1], row[i], diagonal});
            }
            diagonal = saved;
        }
    }
    const double distance = static_cast<double>(row[shorter.size()]);
    return 1.0 - distance / static_cast<double>(longer.size());
}

} // namespace attrgraph
