#include "attrgraph/util.hpp"

#include "doctest.h"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

using namespace attrgraph;

TEST_CASE("sha256 hex matches the published vector") {
    const std::string abc = "abc";
    const std::span<const uint8_t> bytes(reinterpret_cast<const uint8_t*>(abc.data()),
                                         abc.size());
    CHECK(sha256_hex(bytes) ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex({}) ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("hex helpers") {
    const std::vector<uint8_t> bytes = {0x00, 0xab, 0xff};
    CHECK(to_hex(bytes) == "00abff");
    CHECK(is_lower_hex("00abff"));
    CHECK_FALSE(is_lower_hex("00ABff"));
    CHECK_FALSE(is_lower_hex("0g"));
    CHECK(ascii_lower("MiXed-Case_01") == "mixed-case_01");
}

TEST_CASE("timestamps parse and format") {
    bool date_only = true;
    CHECK(parse_utc_timestamp("1970-01-01T00:00:00Z", &date_only) == 0);
    CHECK_FALSE(date_only);
    CHECK(parse_utc_timestamp("2021-06-01T12:30:00Z") == 1622550600);
    CHECK(parse_utc_timestamp("2021-06-01T12:30:00.750Z") == 1622550600);

    date_only = false;
    CHECK(parse_utc_timestamp("2021-06-01", &date_only) == 1622505600);
    CHECK(date_only);

    CHECK(format_utc_timestamp(1622550600) == "2021-06-01T12:30:00Z");
    CHECK(format_utc_timestamp(0) == "1970-01-01T00:00:00Z");

    // Round trip across a leap-year boundary.
    const int64_t leap = parse_utc_timestamp("2020-02-29T23:59:59Z");
    CHECK(format_utc_timestamp(leap) == "2020-02-29T23:59:59Z");

    CHECK_THROWS_AS((void)parse_utc_timestamp("yesterday"), ParseError);
    CHECK_THROWS_AS((void)parse_utc_timestamp("2021-13-01"), ParseError);
    CHECK_THROWS_AS((void)parse_utc_timestamp("2021-02-30"), ParseError);
}

TEST_CASE("parse errors carry their code") {
    try {
        (void)parse_utc_timestamp("not a time");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.code() == "bad-timestamp");
        CHECK(std::string(e.what()).find("not a time") != std::string::npos);
    }
}
