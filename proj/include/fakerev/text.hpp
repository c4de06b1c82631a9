#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace fakerev::text {

/// Decodes UTF-8 into code points. Ill-formed sequences become U+FFFD.
std::u32string to_u32(std::string_view utf8);

std::string to_utf8(std::u32string_view codepoints);

/// Number of Unicode scalar values in a UTF-8 string.
std::size_t scalar_count(std::string_view utf8);

/// Canonical composition (NFC), trims surrounding whitespace and collapses
/// every internal whitespace run to one ASCII space.
std::string normalize(std::string_view utf8);

}  // namespace fakerev::text
