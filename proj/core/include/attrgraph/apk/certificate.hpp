#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace attrgraph::apk {

enum class SignatureScheme { V1, V2, V3 };

std::string_view scheme_name(SignatureScheme s);
std::optional<SignatureScheme> scheme_from_name(std::string_view name);

// The six subject/issuer attribute types tracked for availability reporting.
// Present-but-empty DER strings normalize to absent.
struct RdnSet {
    std::optional<std::string> common_name;
    std::optional<std::string> organization;
    std::optional<std::string> organizational_unit;
    std::optional<std::string> locality;
    std::optional<std::string> state;
    std::optional<std::string> country;

    friend bool operator==(const RdnSet&, const RdnSet&) = default;
};

struct CertificateInfo {
    std::string fingerprint_sha256; // over the DER bytes as found in the APK
    RdnSet subject;
    RdnSet issuer;
    bool self_signed = false; // subject name encoding equals issuer name encoding
    std::set<SignatureScheme> schemes;

    friend bool operator==(const CertificateInfo&, const CertificateInfo&) = default;
};

// Decodes one DER certificate; schemes are left empty at this level. Values
// in unexpected string encodings are converted best-effort and a note is
// appended to *warnings when that happens.
CertificateInfo parse_certificate(std::span<const uint8_t> der,
                                  std::vector<std::string>* warnings = nullptr);

// True iff the subject matches the Play Store's signing identity: common
// name "Google Inc." (case-insensitive) and, when an organization is
// present, "Google Inc." as well. Near-misses like O="Google"/CN="Cupid"
// are deliberately excluded.
bool is_play_signing_subject(const CertificateInfo& cert);

} // namespace attrgraph::apk
