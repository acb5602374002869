#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pubindex::xml {

/// Malformed input. Not recoverable; the stream position is lost.
class XmlError : public std::runtime_error {
 public:
  XmlError(const std::string& what, std::size_t offset);
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

enum class Event { StartElement, EndElement, Text, EndDocument };

struct Attribute {
  std::string name;
  std::string value;
};

enum class SourceEncoding { Utf8, Latin1 };

/// Pull parser over a byte stream. Holds one fixed-size read buffer plus the
/// text of the current event, so memory does not depend on document size.
///
/// Character references and the predefined and DBLP Latin-1 entities are
/// resolved. An unknown entity is kept literally in the text and reported via
/// unresolved_entities() for the event that contained it; parsing continues.
/// DOCTYPE declarations, comments and processing instructions are skipped.
class XmlPullParser {
 public:
  explicit XmlPullParser(std::istream& in, std::size_t buffer_size = 64 * 1024);

  XmlPullParser(const XmlPullParser&) = delete;
  XmlPullParser& operator=(const XmlPullParser&) = delete;

  Event next();

  /// Element name for StartElement/EndElement.
  const std::string& name() const { return name_; }
  /// Decoded character data for Text.
  const std::string& text() const { return text_; }
  const std::vector<Attribute>& attributes() const { return attributes_; }
  std::optional<std::string_view> attribute(std::string_view name) const;

  /// Entity names that could not be resolved in the current event.
  const std::vector<std::string>& unresolved_entities() const { return unresolved_; }

  /// Depth of the current element; 1 for the root element.
  std::size_t depth() const { return open_.size(); }
  /// Byte offset of the start of the current event.
  std::size_t event_offset() const { return event_offset_; }
  /// Byte offset of the next unread byte.
  std::size_t offset() const { return consumed_ + pos_; }

  SourceEncoding encoding() const { return encoding_; }
  std::size_t buffer_capacity() const { return buffer_.size(); }

 private:
  int peek();
  int get();
  bool fill();
  bool starts_with(std::string_view s);
  void expect(std::string_view s);
  [[noreturn]] void fail(const std::string& what) const;
  [[noreturn]] void fail_at(const std::string& what, std::size_t offset) const;

  void skip_space();
  std::string read_name();
  void read_start_tag();
  void read_end_tag();
  void read_text();
  void read_cdata();
  void skip_comment();
  void read_processing_instruction();
  void skip_doctype();
  void append_char(std::string& out, int byte);
  void read_reference(std::string& out);

  std::istream& in_;
  std::vector<char> buffer_;
  std::size_t pos_ = 0;
  std::size_t end_ = 0;
  std::size_t consumed_ = 0;
  bool eof_ = false;

  std::string name_;
  std::string text_;
  std::vector<Attribute> attributes_;
  std::vector<std::string> unresolved_;
  std::vector<std::string> open_;
  std::size_t event_offset_ = 0;
  bool pending_end_ = false;
  bool seen_root_ = false;
  bool root_closed_ = false;
  bool seen_anything_ = false;
  SourceEncoding encoding_ = SourceEncoding::Utf8;
};

/// Resolves a named entity (without '&' and ';') to a code point.
std::optional<char32_t> lookup_entity(std::string_view name);

}  // namespace pubindex::xml
