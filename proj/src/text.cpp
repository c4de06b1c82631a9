#include "fakerev/text.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include <stdexcept>

namespace fakerev::text {

namespace {

icu::UnicodeString from_utf8(std::string_view utf8) {
  return icu::UnicodeString::fromUTF8(icu::StringPiece(utf8.data(), static_cast<std::int32_t>(utf8.size())));
}

std::u32string code_points(const icu::UnicodeString& s) {
  std::u32string out;
  out.reserve(static_cast<std::size_t>(s.length()));
  for (std::int32_t i = 0; i < s.length();) {
    UChar32 c = s.char32At(i);
    out.push_back(static_cast<char32_t>(c));
    i += U16_LENGTH(c);
  }
  return out;
}

}  // namespace

std::u32string to_u32(std::string_view utf8) { return code_points(from_utf8(utf8)); }

std::string to_utf8(std::u32string_view codepoints) {
  icu::UnicodeString s = icu::UnicodeString::fromUTF32(
      reinterpret_cast<const UChar32*>(codepoints.data()), static_cast<std::int32_t>(codepoints.size()));
  std::string out;
  s.toUTF8String(out);
  return out;
}

std::size_t scalar_count(std::string_view utf8) {
  icu::UnicodeString s = from_utf8(utf8);
  return static_cast<std::size_t>(s.countChar32());
}

std::string normalize(std::string_view utf8) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw std::runtime_error("ICU NFC normalizer unavailable");
  icu::UnicodeString composed = nfc->normalize(from_utf8(utf8), status);
  if (U_FAILURE(status)) throw std::runtime_error("NFC normalization failed");

  std::u32string out;
  bool pending_space = false;
  for (char32_t c : code_points(composed)) {
    if (u_isUWhiteSpace(static_cast<UChar32>(c))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(U' ');
    pending_space = false;
    out.push_back(c);
  }
  return to_utf8(out);
}

}  // namespace fakerev::text
