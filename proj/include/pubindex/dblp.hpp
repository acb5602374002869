#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "pubindex/xml_pull_parser.hpp"

namespace pubindex {

enum class RecordKind { ConferencePaper, JournalArticle, Other };

std::string_view to_string(RecordKind kind);
std::optional<RecordKind> record_kind_from_string(std::string_view s);

struct PageInfo {
  std::string raw;
  std::optional<int> count;

  friend bool operator==(const PageInfo&, const PageInfo&) = default;
};

struct AuthorName {
  std::string display;
  std::optional<std::string> disambiguation_suffix;
  std::string normalized;

  /// Lookup key: normalized form plus "#suffix" when a suffix is present.
  std::string match_key() const;

  friend bool operator==(const AuthorName&, const AuthorName&) = default;
};

struct PublicationRecord {
  std::string record_key;
  RecordKind kind = RecordKind::Other;
  std::string title;
  std::vector<AuthorName> authors;
  std::string venue_key;
  std::optional<int> year;
  PageInfo pages;
  std::vector<std::string> ee_links;

  friend bool operator==(const PublicationRecord&, const PublicationRecord&) = default;
};

PageInfo parse_page_range(std::string_view raw);

AuthorName split_author_name(std::string_view raw);

/// Venue identity: second segment of the cross-reference key when present,
/// else the booktitle or journal name lowercased with non-alphanumerics and
/// any parenthesized qualifier removed. Empty when neither is available.
std::string extract_venue_key(std::string_view crossref, std::string_view booktitle_or_journal);

struct RecordError {
  std::string record_key;
  std::size_t offset = 0;
  std::string message;
};

struct IngestStats {
  std::size_t records = 0;
  std::map<std::string, std::size_t> skipped_by_kind;
  std::size_t record_errors = 0;
  /// First errors only; record_errors has the full count.
  std::vector<RecordError> errors;
};

struct ReaderOptions {
  /// Rejects a record whose key was already emitted. Keeps a set of all keys,
  /// so memory grows with the number of records.
  bool reject_duplicate_keys = true;
  std::size_t max_kept_errors = 100;
  std::size_t buffer_size = 64 * 1024;
};

/// Pulls PublicationRecords one at a time from a DBLP-style XML stream.
/// Throws xml::XmlError on malformed XML; record-level problems (unknown
/// entities, bad year, missing key) skip the record and are tallied.
class RecordReader {
 public:
  explicit RecordReader(std::istream& in, ReaderOptions options = {});

  std::optional<PublicationRecord> next();

  const IngestStats& stats() const { return stats_; }
  const xml::XmlPullParser& parser() const { return parser_; }

 private:
  std::optional<PublicationRecord> read_record(RecordKind kind, std::size_t start_offset);
  std::string read_field_text(bool& unresolved);
  void skip_element();
  void note_error(std::string key, std::size_t offset, std::string message);

  xml::XmlPullParser parser_;
  ReaderOptions options_;
  IngestStats stats_;
  std::unordered_set<std::string> seen_keys_;
  bool done_ = false;
};

/// Convenience: drains a RecordReader into a vector.
std::vector<PublicationRecord> parse_records(std::istream& in, IngestStats* stats = nullptr,
                                             ReaderOptions options = {});

/// One record of the canonical line format.
nlohmann::ordered_json record_to_json(const PublicationRecord& record);
PublicationRecord record_from_json(const nlohmann::json& j);

std::string record_to_line(const PublicationRecord& record);

/// Reads a file of canonical record lines. Blank lines are ignored.
std::vector<PublicationRecord> read_record_lines(std::istream& in);

}  // namespace pubindex
