#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace attrgraph {

// The closed set of attribution signal kinds. DeveloperAddress is tracked for
// availability accounting but stays out of graph construction by default.
enum class SignalKind {
    PackageName,
    AppNameMarket,
    AppNameManifest,
    DeveloperName,
    DeveloperWebsite,
    DeveloperEmail,
    DeveloperAddress,
    PrivacyPolicyUrl,
    CertFingerprint,
};

inline constexpr SignalKind kAllSignalKinds[] = {
    SignalKind::PackageName,     SignalKind::AppNameMarket,  SignalKind::AppNameManifest,
    SignalKind::DeveloperName,   SignalKind::DeveloperWebsite, SignalKind::DeveloperEmail,
    SignalKind::DeveloperAddress, SignalKind::PrivacyPolicyUrl, SignalKind::CertFingerprint,
};

// Stable lowercase token, used in CLI flags, registries and report schemas.
std::string_view kind_token(SignalKind kind);
std::optional<SignalKind> kind_from_token(std::string_view token);

struct Signal {
    SignalKind kind;
    std::string raw_value;
    std::string canonical_value;

    friend bool operator==(const Signal&, const Signal&) = default;
};

enum class Script { Latin, NonLatin, Mixed, Empty };

std::string_view script_name(Script s);

// Canonicalizes a raw signal value. Returns nullopt when the value is empty
// or whitespace-only after trimming (missing and empty collapse to absent).
// Text kinds are NFC-normalized and case-folded; URL kinds lowercase only the
// scheme and host and drop a single trailing slash, keeping path case intact.
// Throws ParseError("bad-fingerprint") for a CertFingerprint that is not
// 64 hex characters.
std::optional<Signal> normalize_signal(SignalKind kind, std::string_view raw);

// Latin iff every alphabetic code point has the Latin script property,
// NonLatin iff none do, Mixed otherwise, Empty with no alphabetic code
// points at all. Digits, punctuation and whitespace are neutral.
Script detect_script(std::string_view text);

// 1 - d(a,b) / max(|a|,|b|) with unit-cost edit distance over code points;
// 1.0 when both inputs are empty. Inputs are expected canonicalized.
double levenshtein_similarity(std::string_view a, std::string_view b);

} // namespace attrgraph
