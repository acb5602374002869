#include "pubindex/xml_pull_parser.hpp"

#include <algorithm>
#include <array>
#include <cstring>

#include "pubindex/text.hpp"

namespace pubindex::xml {

XmlError::XmlError(const std::string& what, std::size_t offset)
    : std::runtime_error(what + " at byte " + std::to_string(offset)), offset_(offset) {}

namespace {

// HTML/DBLP Latin-1 entity names for U+00A0..U+00FF, in code point order.
constexpr std::array<std::string_view, 96> kLatin1Entities = {
    "nbsp",   "iexcl",  "cent",   "pound",  "curren", "yen",    "brvbar", "sect",
    "uml",    "copy",   "ordf",   "laquo",  "not",    "shy",    "reg",    "macr",
    "deg",    "plusmn", "sup2",   "sup3",   "acute",  "micro",  "para",   "middot",
    "cedil",  "sup1",   "ordm",   "raquo",  "frac14", "frac12", "frac34", "iquest",
    "Agrave", "Aacute", "Acirc",  "Atilde", "Auml",   "Aring",  "AElig",  "Ccedil",
    "Egrave", "Eacute", "Ecirc",  "Euml",   "Igrave", "Iacute", "Icirc",  "Iuml",
    "ETH",    "Ntilde", "Ograve", "Oacute", "Ocirc",  "Otilde", "Ouml",   "times",
    "Oslash", "Ugrave", "Uacute", "Ucirc",  "Uuml",   "Yacute", "THORN",  "szlig",
    "agrave", "aacute", "acirc",  "atilde", "auml",   "aring",  "aelig",  "ccedil",
    "egrave", "eacute", "ecirc",  "euml",   "igrave", "iacute", "icirc",  "iuml",
    "eth",    "ntilde", "ograve", "oacute", "ocirc",  "otilde", "ouml",   "divide",
    "oslash", "ugrave", "uacute", "ucirc",  "uuml",   "yacute", "thorn",  "yuml"};

bool is_name_start(int c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == ':' || c >= 0x80;
}

bool is_name_char(int c) {
  return is_name_start(c) || (c >= '0' && c <= '9') || c == '.' || c == '-';
}

constexpr std::size_t kMaxEntityName = 32;

}  // namespace

std::optional<char32_t> lookup_entity(std::string_view name) {
  if (name == "amp") return U'&';
  if (name == "lt") return U'<';
  if (name == "gt") return U'>';
  if (name == "quot") return U'"';
  if (name == "apos") return U'\'';
  for (std::size_t i = 0; i < kLatin1Entities.size(); ++i) {
    if (kLatin1Entities[i] == name) return static_cast<char32_t>(0xA0 + i);
  }
  return std::nullopt;
}

XmlPullParser::XmlPullParser(std::istream& in, std::size_t buffer_size)
    : in_(in), buffer_(std::max<std::size_t>(buffer_size, 64)) {}

bool XmlPullParser::fill() {
  // Keeps the unread tail, then tops the buffer up.
  if (eof_) return end_ > pos_;
  const std::size_t remaining = end_ - pos_;
  if (pos_ > 0) {
    std::memmove(buffer_.data(), buffer_.data() + pos_, remaining);
    consumed_ += pos_;
    pos_ = 0;
    end_ = remaining;
  }
  while (end_ < buffer_.size() && !eof_) {
    in_.read(buffer_.data() + end_, static_cast<std::streamsize>(buffer_.size() - end_));
    const auto got = in_.gcount();
    end_ += static_cast<std::size_t>(got);
    if (got == 0 || !in_) eof_ = true;
    if (got > 0) break;
  }
  return end_ > pos_;
}

int XmlPullParser::peek() {
  if (pos_ == end_ && !fill()) return -1;
  return static_cast<unsigned char>(buffer_[pos_]);
}

int XmlPullParser::get() {
  const int c = peek();
  if (c >= 0) ++pos_;
  return c;
}

bool XmlPullParser::starts_with(std::string_view s) {
  while (end_ - pos_ < s.size() && !eof_) fill();
  if (end_ - pos_ < s.size()) return false;
  return std::string_view(buffer_.data() + pos_, s.size()) == s;
}

void XmlPullParser::expect(std::string_view s) {
  if (!starts_with(s)) fail("expected '" + std::string(s) + "'");
  pos_ += s.size();
}

void XmlPullParser::fail(const std::string& what) const { fail_at(what, offset()); }

void XmlPullParser::fail_at(const std::string& what, std::size_t offset) const {
  throw XmlError(what, offset);
}

void XmlPullParser::skip_space() {
  for (int c = peek(); c >= 0 && text::is_xml_space(static_cast<char>(c)); c = peek()) ++pos_;
}

std::string XmlPullParser::read_name() {
  std::string name;
  int c = peek();
  if (!is_name_start(c)) fail("expected a name");
  while (c >= 0 && is_name_char(c)) {
    name.push_back(static_cast<char>(c));
    ++pos_;
    c = peek();
  }
  return name;
}

void XmlPullParser::append_char(std::string& out, int byte) {
  if (byte == '\r') {
    if (peek() == '\n') ++pos_;
    out.push_back('\n');
    return;
  }
  if (byte >= 0x80 && encoding_ == SourceEncoding::Latin1) {
    text::append_utf8(out, static_cast<char32_t>(byte));
    return;
  }
  out.push_back(static_cast<char>(byte));
}

void XmlPullParser::read_reference(std::string& out) {
  const std::size_t start = offset();
  ++pos_;  // '&'
  std::string name;
  for (int c = peek();; c = peek()) {
    if (c == ';') {
      ++pos_;
      break;
    }
    if (c < 0 || name.size() > kMaxEntityName || !(is_name_char(c) || c == '#')) {
      fail_at("malformed entity reference", start);
    }
    name.push_back(static_cast<char>(c));
    ++pos_;
  }
  if (name.empty()) fail_at("empty entity reference", start);
  if (name[0] == '#') {
    char32_t cp = 0;
    const bool hex = name.size() > 1 && (name[1] == 'x' || name[1] == 'X');
    const std::string_view digits = std::string_view(name).substr(hex ? 2 : 1);
    if (digits.empty()) fail_at("malformed character reference", start);
    for (char d : digits) {
      int v = -1;
      if (d >= '0' && d <= '9') v = d - '0';
      else if (hex && d >= 'a' && d <= 'f') v = d - 'a' + 10;
      else if (hex && d >= 'A' && d <= 'F') v = d - 'A' + 10;
      if (v < 0) fail_at("malformed character reference", start);
      cp = cp * (hex ? 16 : 10) + static_cast<char32_t>(v);
      if (cp > 0x10FFFF) fail_at("character reference out of range", start);
    }
    if (cp == 0 || (cp >= 0xD800 && cp <= 0xDFFF)) fail_at("invalid character reference", start);
    text::append_utf8(out, cp);
    return;
  }
  if (auto cp = lookup_entity(name)) {
    text::append_utf8(out, *cp);
    return;
  }
  out.push_back('&');
  out.append(name);
  out.push_back(';');
  unresolved_.push_back(std::move(name));
}

void XmlPullParser::read_start_tag() {
  const std::size_t start = event_offset_;
  if (root_closed_) fail_at("content after the root element", start);
  name_ = read_name();
  attributes_.clear();
  for (;;) {
    const bool had_space = text::is_xml_space(static_cast<char>(peek()));
    skip_space();
    const int c = peek();
    if (c < 0) fail("unexpected end of input in start tag <" + name_ + ">");
    if (c == '/') {
      ++pos_;
      expect(">");
      pending_end_ = true;
      break;
    }
    if (c == '>') {
      ++pos_;
      break;
    }
    if (!had_space) fail("expected whitespace before attribute");
    Attribute attr;
    attr.name = read_name();
    skip_space();
    expect("=");
    skip_space();
    const int quote = peek();
    if (quote != '"' && quote != '\'') fail("expected quoted attribute value");
    ++pos_;
    for (int v = peek();; v = peek()) {
      if (v < 0) fail("unexpected end of input in attribute value");
      if (v == quote) {
        ++pos_;
        break;
      }
      if (v == '<') fail("'<' in attribute value");
      if (v == '&') {
        read_reference(attr.value);
      } else {
        ++pos_;
        append_char(attr.value, v);
      }
    }
    for (const auto& a : attributes_) {
      if (a.name == attr.name) fail("duplicate attribute '" + attr.name + "'");
    }
    attributes_.push_back(std::move(attr));
  }
  open_.push_back(name_);
  seen_root_ = true;
}

void XmlPullParser::read_end_tag() {
  const std::size_t start = event_offset_;
  name_ = read_name();
  skip_space();
  expect(">");
  if (open_.empty()) fail_at("unexpected end tag </" + name_ + ">", start);
  if (open_.back() != name_) {
    fail_at("mismatched end tag </" + name_ + ">, expected </" + open_.back() + ">", start);
  }
  open_.pop_back();
  if (open_.empty()) root_closed_ = true;
}

void XmlPullParser::read_text() {
  text_.clear();
  for (int c = peek(); c >= 0 && c != '<'; c = peek()) {
    if (c == '&') {
      read_reference(text_);
    } else {
      ++pos_;
      append_char(text_, c);
    }
  }
}

void XmlPullParser::read_cdata() {
  text_.clear();
  for (;;) {
    if (starts_with("]]>")) {
      pos_ += 3;
      return;
    }
    const int c = get();
    if (c < 0) fail("unterminated CDATA section");
    append_char(text_, c);
  }
}

void XmlPullParser::skip_comment() {
  for (;;) {
    if (starts_with("-->")) {
      pos_ += 3;
      return;
    }
    if (get() < 0) fail("unterminated comment");
  }
}

void XmlPullParser::read_processing_instruction() {
  const std::size_t start = event_offset_;
  ++pos_;  // '?'
  const std::string target = read_name();
  std::string body;
  for (;;) {
    if (starts_with("?>")) {
      pos_ += 2;
      break;
    }
    const int c = get();
    if (c < 0) fail("unterminated processing instruction");
    body.push_back(static_cast<char>(c));
    if (body.size() > 4096) fail_at("processing instruction too long", start);
  }
  if (text::to_lower_ascii(target) != "xml") return;
  if (start != 0 && !(start == 3 && seen_anything_)) {
    fail_at("XML declaration must start the document", start);
  }
  const auto at = body.find("encoding");
  if (at == std::string::npos) return;
  const auto q = body.find_first_of("\"'", at);
  if (q == std::string::npos) fail_at("malformed encoding declaration", start);
  const auto close = body.find(body[q], q + 1);
  if (close == std::string::npos) fail_at("malformed encoding declaration", start);
  const std::string enc = text::to_lower_ascii(body.substr(q + 1, close - q - 1));
  if (enc == "utf-8" || enc == "utf8" || enc == "us-ascii" || enc == "ascii") {
    encoding_ = SourceEncoding::Utf8;
  } else if (enc == "iso-8859-1" || enc == "iso8859-1" || enc == "latin1" || enc == "latin-1" ||
             enc == "iso_8859-1") {
    encoding_ = SourceEncoding::Latin1;
  } else {
    fail_at("unsupported encoding '" + enc + "'", start);
  }
}

void XmlPullParser::skip_doctype() {
  int brackets = 0;
  int quote = 0;
  for (;;) {
    const int c = get();
    if (c < 0) fail("unterminated DOCTYPE");
    if (quote != 0) {
      if (c == quote) quote = 0;
    } else if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '[') {
      ++brackets;
    } else if (c == ']') {
      --brackets;
    } else if (c == '>' && brackets <= 0) {
      return;
    }
  }
}

std::optional<std::string_view> XmlPullParser::attribute(std::string_view name) const {
  for (const auto& a : attributes_) {
    if (a.name == name) return a.value;
  }
  return std::nullopt;
}

Event XmlPullParser::next() {
  unresolved_.clear();
  if (pending_end_) {
    pending_end_ = false;
    name_ = open_.back();
    open_.pop_back();
    if (open_.empty()) root_closed_ = true;
    return Event::EndElement;
  }
  if (!seen_anything_ && starts_with("\xEF\xBB\xBF")) {
    pos_ += 3;
    seen_anything_ = true;
  }
  for (;;) {
    event_offset_ = offset();
    const int c = peek();
    if (c < 0) {
      if (!open_.empty()) fail("unexpected end of input inside <" + open_.back() + ">");
      if (seen_anything_ && !seen_root_) fail("no root element");
      return Event::EndDocument;
    }
    if (c == '<') {
      seen_anything_ = true;
      ++pos_;
      const int c2 = peek();
      if (c2 == '?') {
        read_processing_instruction();
        continue;
      }
      if (c2 == '!') {
        if (starts_with("!--")) {
          pos_ += 3;
          skip_comment();
          continue;
        }
        if (starts_with("![CDATA[")) {
          if (open_.empty()) fail("CDATA outside the root element");
          pos_ += 8;
          read_cdata();
          if (text_.empty()) continue;
          return Event::Text;
        }
        if (starts_with("!DOCTYPE")) {
          if (seen_root_) fail("DOCTYPE after the root element");
          pos_ += 8;
          skip_doctype();
          continue;
        }
        fail("unrecognized markup declaration");
      }
      if (c2 == '/') {
        ++pos_;
        read_end_tag();
        return Event::EndElement;
      }
      read_start_tag();
      return Event::StartElement;
    }
    if (open_.empty()) {
      if (!text::is_xml_space(static_cast<char>(c))) fail("text outside the root element");
      ++pos_;
      continue;
    }
    read_text();
    return Event::Text;
  }
}

}  // namespace pubindex::xml
