#include "attrgraph/apk/signing.hpp"

#include "attrgraph/apk/byte_reader.hpp"
#include "attrgraph/apk/zip_reader.hpp"

#include <openssl/pkcs7.h>
#include <openssl/x509.h>

#include <algorithm>
#include <cstring>
#include <memory>

namespace attrgraph::apk {

namespace {

constexpr char kSigBlockMagic[] = "APK Sig Block 42"; // 16 bytes, no NUL
constexpr size_t kMagicLen = 16;
constexpr size_t kFooterLen = 24; // u64 size + magic

constexpr uint32_t kV2BlockId = 0x7109871a;
constexpr uint32_t kV3BlockId = 0xf05368c0;
constexpr uint32_t kProofOfRotationAttrId = 0x3ba06f8c;

std::vector<uint8_t> to_vec(std::span<const uint8_t> s) { return {s.begin(), s.end()}; }

// v2 and v3 signers share the leading layout: signed data holding digests,
// then the certificate chain with the signing certificate first.
BlockSigner parse_block_signer(std::span<const uint8_t> signer, bool v3) {
    BlockSigner out;
    ByteReader r(signer);
    auto signed_data = r.length_prefixed();

    ByteReader sd(signed_data);
    sd.length_prefixed(); // digests
    auto certificates = sd.length_prefixed();
    ByteReader certs(certificates);
    bool first = true;
    while (certs.remaining() >= 4) {
        auto cert = certs.length_prefixed();
        if (first) {
            out.certificate = to_vec(cert);
            first = false;
        }
        // Later chain entries are CA certificates, not signer identities.
    }

    if (v3) {
        sd.skip(4 + 4); // minSdkVersion, maxSdkVersion
        auto attributes = sd.length_prefixed();
        ByteReader attrs(attributes);
        while (attrs.remaining() >= 4) {
            auto attribute = attrs.length_prefixed();
            ByteReader ar(attribute);
            if (ar.remaining() < 4) break;
            const uint32_t id = ar.u32();
            if (id != kProofOfRotationAttrId) continue;
            ar.skip(4); // lineage version
            while (ar.remaining() >= 4) {
                auto node = ar.length_prefixed();
                ByteReader nr(node);
                auto node_signed = nr.length_prefixed();
                ByteReader ns(node_signed);
                auto cert = ns.length_prefixed();
                out.lineage.push_back(to_vec(cert));
            }
        }
    }
    return out;
}

std::vector<BlockSigner> parse_scheme_block(std::span<const uint8_t> block, bool v3) {
    std::vector<BlockSigner> signers;
    ByteReader r(block);
    auto sequence = r.length_prefixed();
    ByteReader seq(sequence);
    while (seq.remaining() >= 4) {
        auto signer = seq.length_prefixed();
        signers.push_back(parse_block_signer(signer, v3));
    }
    return signers;
}

using PKCS7Ptr = std::unique_ptr<PKCS7, decltype(&PKCS7_free)>;

std::vector<uint8_t> x509_to_der(X509* cert) {
    unsigned char* der = nullptr;
    const int len = i2d_X509(cert, &der);
    if (len < 0 || der == nullptr) return {};
    std::vector<uint8_t> out(der, der + len);
    OPENSSL_free(der);
    return out;
}

bool has_signature_suffix(const std::string& name) {
    auto ends_with = [&](std::string_view suffix) {
        return name.size() >= suffix.size() &&
               std::equal(suffix.rbegin(), suffix.rend(), name.rbegin(),
                          [](char a, char b) { return a == (b >= 'a' && b <= 'z' ? b - 32 : b); });
    };
    return ends_with(".RSA") || ends_with(".DSA") || ends_with(".EC");
}

} // namespace

std::optional<SigningBlockInfo> parse_signing_block(std::span<const uint8_t> apk,
                                                    uint32_t central_directory_offset) {
    if (central_directory_offset < kFooterLen + 8) return std::nullopt;

    ByteReader footer(apk, central_directory_offset - kFooterLen);
    const uint64_t block_size = footer.u64();
    auto magic = footer.take(kMagicLen);
    if (std::memcmp(magic.data(), kSigBlockMagic, kMagicLen) != 0) return std::nullopt;

    // block_size counts everything after the leading size field, footer
    // included, so the block starts 8 bytes before cd_offset - block_size.
    if (block_size < kFooterLen || block_size + 8 > central_directory_offset) {
        throw ParseError("bad-signing-block", "signing block size out of range");
    }
    const size_t block_start = central_directory_offset - static_cast<size_t>(block_size) - 8;

    SigningBlockInfo info;
    ByteReader pairs(apk, block_start + 8);
    const size_t pairs_end = central_directory_offset - kFooterLen;
    while (pairs.pos() + 12 <= pairs_end) {
        const uint64_t pair_len = pairs.u64();
        if (pair_len < 4 || pairs.pos() + pair_len > pairs_end) {
            throw ParseError("bad-signing-block", "pair overruns signing block");
        }
        const uint32_t id = pairs.u32();
        auto value = pairs.take(static_cast<size_t>(pair_len) - 4);
        if (id == kV2BlockId) {
            info.v2_signers = parse_scheme_block(value, /*v3=*/false);
        } else if (id == kV3BlockId) {
            info.v3_signers = parse_scheme_block(value, /*v3=*/true);
        }
    }
    return info;
}

std::vector<std::vector<uint8_t>> extract_v1_certificates(const ZipReader& zip,
                                                          std::vector<std::string>* warnings) {
    std::vector<std::vector<uint8_t>> certs;
    for (const ZipEntry& entry : zip.entries()) {
        if (entry.name.rfind("META-INF/", 0) != 0 || !has_signature_suffix(entry.name)) continue;

        const std::vector<uint8_t> data = zip.read(entry);
        const unsigned char* p = data.data();
        PKCS7Ptr p7(d2i_PKCS7(nullptr, &p, static_cast<long>(data.size())), &PKCS7_free);
        if (!p7 || !PKCS7_type_is_signed(p7.get())) {
            if (warnings != nullptr) {
                warnings->push_back("unparseable PKCS#7 signature file: " + entry.name);
            }
            continue;
        }

        // The end-entity certificates are the ones referenced by SignerInfos;
        // fall back to the first embedded certificate when matching fails.
        STACK_OF(X509)* signers = PKCS7_get0_signers(p7.get(), nullptr, 0);
        bool found = false;
        if (signers != nullptr) {
            for (int i = 0; i < sk_X509_num(signers); ++i) {
                auto der = x509_to_der(sk_X509_value(signers, i));
                if (!der.empty()) {
                    certs.push_back(std::move(der));
                    found = true;
                }
            }
            sk_X509_free(signers);
        }
        if (!found) {
            STACK_OF(X509)* all = p7->d.sign != nullptr ? p7->d.sign->cert : nullptr;
            if (all != nullptr && sk_X509_num(all) > 0) {
                auto der = x509_to_der(sk_X509_value(all, 0));
                if (!der.empty()) certs.push_back(std::move(der));
            } else if (warnings != nullptr) {
                warnings->push_back("no certificate in signature file: " + entry.name);
            }
        }
    }
    return certs;
}

} // namespace attrgraph::apk
