#include "attrgraph/unicode.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <stdexcept>

namespace attrgraph::uni {

namespace {

const icu::Normalizer2& nfc_instance() {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* norm = icu::Normalizer2::getNFCInstance(status);
    if (U_FAILURE(status) || norm == nullptr) {
        throw std::runtime_error("ICU NFC normalizer unavailable");
    }
    return *norm;
}

std::string to_utf8(const icu::UnicodeString& s) {
    std::string out;
    s.toUTF8String(out);
    return out;
}

} // namespace

std::string trim(std::string_view utf8) {
    const uint8_t* data = reinterpret_cast<const uint8_t*>(utf8.data());
    int32_t length = static_cast<int32_t>(utf8.size());

    int32_t begin = 0;
    while (begin < length) {
        int32_t i = begin;
        UChar32 cp;
        U8_NEXT(data, i, length, cp);
        if (cp < 0 || !u_isUWhiteSpace(cp)) break;
        begin = i;
    }
    int32_t end = length;
    while (end > begin) {
        int32_t i = end;
        UChar32 cp;
        U8_PREV(data, begin, i, cp);
        if (cp < 0 || !u_isUWhiteSpace(cp)) break;
        end = i;
    }
    return std::string(utf8.substr(static_cast<size_t>(begin), static_cast<size_t>(end - begin)));
}

std::string nfc(std::string_view utf8) {
    icu::UnicodeString s = icu::UnicodeString::fromUTF8(
        icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
    UErrorCode status = U_ZERO_ERROR;
    icu::UnicodeString normalized = nfc_instance().normalize(s, status);
    if (U_FAILURE(status)) throw std::runtime_error("NFC normalization failed");
    return to_utf8(normalized);
}

std::string fold_case_nfc(std::string_view utf8) {
    icu::UnicodeString current = icu::UnicodeString::fromUTF8(
        icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
    // Folding can denormalize and vice versa; two or three rounds always
    // suffice in practice, the loop just makes idempotence unconditional.
    for (int round = 0; round < 8; ++round) {
        icu::UnicodeString folded(current);
        folded.foldCase(U_FOLD_CASE_DEFAULT);
        UErrorCode status = U_ZERO_ERROR;
        icu::UnicodeString normalized = nfc_instance().normalize(folded, status);
        if (U_FAILURE(status)) throw std::runtime_error("NFC normalization failed");
        if (normalized == current) break;
        current = normalized;
    }
    return to_utf8(current);
}

std::vector<char32_t> code_points(std::string_view utf8) {
    std::vector<char32_t> out;
    out.reserve(utf8.size());
    const uint8_t* data = reinterpret_cast<const uint8_t*>(utf8.data());
    int32_t length = static_cast<int32_t>(utf8.size());
    int32_t i = 0;
    while (i < length) {
        UChar32 cp;
        U8_NEXT(data, i, length, cp);
        out.push_back(cp < 0 ? 0xFFFD : static_cast<char32_t>(cp));
    }
    return out;
}

} // namespace attrgraph::uni
