#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace pubindex::text {

/// Appends the UTF-8 encoding of `cp` to `out`. Invalid code points become U+FFFD.
void append_utf8(std::string& out, char32_t cp);

/// Decodes one code point starting at `pos` and advances it. Malformed
/// sequences decode to U+FFFD consuming a single byte.
char32_t next_code_point(std::string_view s, std::size_t& pos);

std::string trim(std::string_view s);

/// Trims and collapses every run of XML whitespace to a single space.
std::string collapse_whitespace(std::string_view s);

/// Lowercases, strips Latin diacritics and collapses whitespace.
/// "  João  Silva " -> "joao silva".
std::string fold_name(std::string_view s);

std::string to_lower_ascii(std::string_view s);

bool is_xml_space(char c);

bool is_all_digits(std::string_view s);

}  // namespace pubindex::text
