#pragma once

#include "attrgraph/util.hpp"

#include <cstdint>
#include <span>
#include <string>

namespace attrgraph::apk {

// Bounds-checked little-endian cursor over a byte buffer. All binary APK
// structures (ZIP, AXML, ARSC, signing block) are little-endian.
class ByteReader {
public:
    explicit ByteReader(std::span<const uint8_t> data, size_t pos = 0) : data_(data), pos_(pos) {}

    size_t pos() const { return pos_; }
    size_t remaining() const { return pos_ <= data_.size() ? data_.size() - pos_ : 0; }
    size_t size() const { return data_.size(); }

    void seek(size_t pos) {
        if (pos > data_.size()) fail("seek past end");
        pos_ = pos;
    }

    void skip(size_t n) {
        if (n > remaining()) fail("skip past end");
        pos_ += n;
    }

    uint8_t u8() { return take(1)[0]; }

    uint16_t u16() {
        auto b = take(2);
        return static_cast<uint16_t>(b[0] | (b[1] << 8));
    }

    uint32_t u32() {
        auto b = take(4);
        return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
               (static_cast<uint32_t>(b[2]) << 16) | (static_cast<uint32_t>(b[3]) << 24);
    }

    uint64_t u64() {
        const uint64_t lo = u32();
        const uint64_t hi = u32();
        return lo | (hi << 32);
    }

    std::span<const uint8_t> take(size_t n) {
        if (n > remaining()) fail("read past end");
        auto out = data_.subspan(pos_, n);
        pos_ += n;
        return out;
    }

    // Reads a u32 length prefix and returns that many bytes; the workhorse of
    // the APK signing block encoding.
    std::span<const uint8_t> length_prefixed() {
        const uint32_t len = u32();
        return take(len);
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("truncated", what + " (offset " + std::to_string(pos_) + ")");
    }

    std::span<const uint8_t> data_;
    size_t pos_;
};

} // namespace attrgraph::apk
