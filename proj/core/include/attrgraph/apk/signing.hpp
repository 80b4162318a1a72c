#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace attrgraph::apk {

class ZipReader;

struct BlockSigner {
    std::vector<uint8_t> certificate;                  // end-entity DER
    std::vector<std::vector<uint8_t>> lineage;         // v3 rotation history, oldest first
};

struct SigningBlockInfo {
    std::vector<BlockSigner> v2_signers;
    std::vector<BlockSigner> v3_signers;
};

// Locates the APK Signing Block immediately before the central directory and
// extracts the end-entity certificate of every v2/v3 signer plus the v3
// rotation lineage. Returns nullopt when no block is present.
std::optional<SigningBlockInfo> parse_signing_block(std::span<const uint8_t> apk,
                                                    uint32_t central_directory_offset);

// Extracts the end-entity signer certificates from the PKCS#7 signature
// files under META-INF (v1 / JAR signing). One DER per matched SignerInfo.
std::vector<std::vector<uint8_t>> extract_v1_certificates(const ZipReader& zip,
                                                          std::vector<std::string>* warnings);

} // namespace attrgraph::apk
