#include "attrgraph/apk/certificate.hpp"

#include "attrgraph/unicode.hpp"
#include "attrgraph/util.hpp"

#include <openssl/asn1.h>
#include <openssl/objects.h>
#include <openssl/x509.h>

#include <memory>

namespace attrgraph::apk {

std::string_view scheme_name(SignatureScheme s) {
    switch (s) {
        case SignatureScheme::V1: return "v1";
        case SignatureScheme::V2: return "v2";
        case SignatureScheme::V3: return "v3";
    }
    return "?";
}

std::optional<SignatureScheme> scheme_from_name(std::string_view name) {
    if (name == "v1") return SignatureScheme::V1;
    if (name == "v2") return SignatureScheme::V2;
    if (name == "v3") return SignatureScheme::V3;
    return std::nullopt;
}

namespace {

using X509Ptr = std::unique_ptr<X509, decltype(&X509_free)>;

std::optional<std::string> name_attribute(X509_NAME* name, int nid,
                                          std::vector<std::string>* warnings) {
    const int index = X509_NAME_get_index_by_NID(name, nid, -1);
    if (index < 0) return std::nullopt;
    X509_NAME_ENTRY* entry = X509_NAME_get_entry(name, index);
    if (entry == nullptr) return std::nullopt;
    ASN1_STRING* value = X509_NAME_ENTRY_get_data(entry);
    if (value == nullptr) return std::nullopt;

    unsigned char* utf8 = nullptr;
    const int len = ASN1_STRING_to_UTF8(&utf8, value);
    std::string out;
    if (len >= 0 && utf8 != nullptr) {
        out.assign(reinterpret_cast<const char*>(utf8), static_cast<size_t>(len));
        OPENSSL_free(utf8);
    } else {
        // Unknown string encoding: keep the raw bytes and flag it.
        out.assign(reinterpret_cast<const char*>(ASN1_STRING_get0_data(value)),
                   static_cast<size_t>(ASN1_STRING_length(value)));
        if (warnings != nullptr) {
            warnings->push_back("certificate attribute NID " + std::to_string(nid) +
                                " used an unsupported string encoding");
        }
    }
    if (out.empty()) return std::nullopt;
    return out;
}

RdnSet extract_rdns(X509_NAME* name, std::vector<std::string>* warnings) {
    RdnSet rdns;
    rdns.common_name = name_attribute(name, NID_commonName, warnings);
    rdns.organization = name_attribute(name, NID_organizationName, warnings);
    rdns.organizational_unit = name_attribute(name, NID_organizationalUnitName, warnings);
    rdns.locality = name_attribute(name, NID_localityName, warnings);
    rdns.state = name_attribute(name, NID_stateOrProvinceName, warnings);
    rdns.country = name_attribute(name, NID_countryName, warnings);
    return rdns;
}

std::vector<uint8_t> encode_name(X509_NAME* name) {
    unsigned char* der = nullptr;
    const int len = i2d_X509_NAME(name, &der);
    if (len < 0 || der == nullptr) return {};
    std::vector<uint8_t> out(der, der + len);
    OPENSSL_free(der);
    return out;
}

} // namespace

CertificateInfo parse_certificate(std::span<const uint8_t> der, std::vector<std::string>* warnings) {
    const unsigned char* p = der.data();
    X509Ptr cert(d2i_X509(nullptr, &p, static_cast<long>(der.size())), &X509_free);
    if (!cert) {
        throw ParseError("bad-certificate", "DER decode failed");
    }

    CertificateInfo info;
    info.fingerprint_sha256 = sha256_hex(der);
    X509_NAME* subject = X509_get_subject_name(cert.get());
    X509_NAME* issuer = X509_get_issuer_name(cert.get());
    info.subject = extract_rdns(subject, warnings);
    info.issuer = extract_rdns(issuer, warnings);
    info.self_signed = encode_name(subject) == encode_name(issuer);
    return info;
}

bool is_play_signing_subject(const CertificateInfo& cert) {
    static const std::string play_subject = uni::fold_case_nfc("Google Inc.");
    if (!cert.subject.common_name.has_value()) return false;
    if (uni::fold_case_nfc(*cert.subject.common_name) != play_subject) return false;
    if (cert.subject.organization.has_value() &&
        uni::fold_case_nfc(*cert.subject.organization) != play_subject) {
        return false;
    }
    return true;
}

} // namespace attrgraph::apk
