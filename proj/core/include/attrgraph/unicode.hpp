#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace attrgraph::uni {

// Strips Unicode whitespace from both ends.
std::string trim(std::string_view utf8);

std::string nfc(std::string_view utf8);

// Canonical caseless form: full locale-independent case folding composed with
// NFC, iterated to a fixed point so the result is idempotent by construction.
std::string fold_case_nfc(std::string_view utf8);

// Decodes UTF-8 into code points; invalid sequences map to U+FFFD.
std::vector<char32_t> code_points(std::string_view utf8);

} // namespace attrgraph::uni
