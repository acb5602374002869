#include "pubindex/dblp.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

#include "pubindex/text.hpp"

namespace pubindex {

std::string_view to_string(RecordKind kind) {
  switch (kind) {
    case RecordKind::ConferencePaper:
      return "conference-paper";
    case RecordKind::JournalArticle:
      return "journal-article";
    case RecordKind::Other:
      return "other";
  }
  return "other";
}

std::optional<RecordKind> record_kind_from_string(std::string_view s) {
  if (s == "conference-paper") return RecordKind::ConferencePaper;
  if (s == "journal-article") return RecordKind::JournalArticle;
  if (s == "other") return RecordKind::Other;
  return std::nullopt;
}

std::string AuthorName::match_key() const {
  if (!disambiguation_suffix) return normalized;
  return normalized + "#" + *disambiguation_suffix;
}

namespace {

// Page numbers beyond this are treated as unparseable.
constexpr std::size_t kMaxPageDigits = 9;

std::optional<long> parse_page_number(std::string_view s) {
  if (!text::is_all_digits(s) || s.size() > kMaxPageDigits) return std::nullopt;
  long v = 0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

// Splits "n:a" into ("n", "a"); plain numbers have an empty article part.
std::pair<std::string_view, std::string_view> split_article(std::string_view s) {
  const auto colon = s.find(':');
  if (colon == std::string_view::npos) return {{}, s};
  return {s.substr(0, colon), s.substr(colon + 1)};
}

}  // namespace

PageInfo parse_page_range(std::string_view raw) {
  PageInfo info{std::string(raw), std::nullopt};
  const std::string trimmed = text::trim(raw);
  const std::string_view s = trimmed;
  if (s.empty()) return info;

  if (parse_page_number(s)) {
    info.count = 1;
    return info;
  }

  std::size_t dash = s.find("--");
  std::size_t dash_len = 2;
  if (dash == std::string_view::npos) {
    dash = s.find('-');
    dash_len = 1;
  }
  if (dash == std::string_view::npos) return info;

  const std::string head = text::trim(s.substr(0, dash));
  const std::string rest = text::trim(s.substr(dash + dash_len));
  const auto [first_article, first_page] = split_article(head);
  const auto [last_article, last_page] = split_article(rest);
  if (first_article != last_article) return info;
  if (!first_article.empty() && !text::is_all_digits(first_article)) return info;

  const auto first = parse_page_number(first_page);
  const auto last = parse_page_number(last_page);
  if (!first || !last || *first > *last) return info;
  info.count = static_cast<int>(*last - *first + 1);
  return info;
}

AuthorName split_author_name(std::string_view raw) {
  AuthorName name;
  std::string display = text::trim(raw);
  const auto space = display.find_last_of(" \t\n\r");
  if (space != std::string::npos) {
    const std::string_view tail = std::string_view(display).substr(space + 1);
    if (tail.size() == 4 && text::is_all_digits(tail)) {
      name.disambiguation_suffix = std::string(tail);
      display = text::trim(std::string_view(display).substr(0, space));
    }
  }
  name.normalized = text::fold_name(display);
  name.display = std::move(display);
  return name;
}

std::string extract_venue_key(std::string_view crossref, std::string_view booktitle_or_journal) {
  const std::string xref = text::trim(crossref);
  if (!xref.empty()) {
    const auto first = xref.find('/');
    if (first != std::string::npos) {
      const auto second = xref.find('/', first + 1);
      const std::string segment =
          xref.substr(first + 1, second == std::string::npos ? std::string::npos : second - first - 1);
      if (!segment.empty()) return text::to_lower_ascii(segment);
    }
  }
  std::string name(booktitle_or_journal);
  if (const auto paren = name.find('('); paren != std::string::npos) name.resize(paren);
  const std::string folded = text::fold_name(name);
  std::string key;
  for (char c : folded) {
    if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) key.push_back(c);
  }
  return key;
}

RecordReader::RecordReader(std::istream& in, ReaderOptions options)
    : parser_(in, options.buffer_size), options_(options) {}

void RecordReader::note_error(std::string key, std::size_t offset, std::string message) {
  ++stats_.record_errors;
  if (stats_.errors.size() < options_.max_kept_errors) {
    stats_.errors.push_back({std::move(key), offset, std::move(message)});
  }
}

void RecordReader::skip_element() {
  const std::size_t depth = parser_.depth();
  for (;;) {
    const auto e = parser_.next();
    if (e == xml::Event::EndElement && parser_.depth() < depth) return;
    if (e == xml::Event::EndDocument) return;
  }
}

std::string RecordReader::read_field_text(bool& unresolved) {
  const std::size_t depth = parser_.depth();
  std::string value;
  for (;;) {
    const auto e = parser_.next();
    if (!parser_.unresolved_entities().empty()) unresolved = true;
    if (e == xml::Event::Text) {
      value += parser_.text();
    } else if (e == xml::Event::EndElement && parser_.depth() < depth) {
      return value;
    } else if (e == xml::Event::EndDocument) {
      return value;
    }
  }
}

std::optional<PublicationRecord> RecordReader::read_record(RecordKind kind, std::size_t start_offset) {
  PublicationRecord rec;
  rec.kind = kind;
  rec.record_key = std::string(parser_.attribute("key").value_or(""));
  std::vector<std::string> unknown = parser_.unresolved_entities();
  const std::size_t depth = parser_.depth();

  std::string crossref, booktitle, journal, year;
  std::optional<std::string> pages;
  bool bad_entity = !unknown.empty();
  for (;;) {
    const auto e = parser_.next();
    if (e == xml::Event::EndElement && parser_.depth() < depth) break;
    if (e == xml::Event::EndDocument) break;
    if (e != xml::Event::StartElement) continue;
    const std::string field = parser_.name();
    bool field_bad = !parser_.unresolved_entities().empty();
    std::string value = read_field_text(field_bad);
    bad_entity = bad_entity || field_bad;
    if (field == "author") {
      if (!text::trim(value).empty()) rec.authors.push_back(split_author_name(value));
    } else if (field == "title") {
      rec.title = text::collapse_whitespace(value);
    } else if (field == "booktitle") {
      booktitle = text::collapse_whitespace(value);
    } else if (field == "journal") {
      journal = text::collapse_whitespace(value);
    } else if (field == "crossref") {
      crossref = text::trim(value);
    } else if (field == "year") {
      year = text::trim(value);
    } else if (field == "pages") {
      pages = std::move(value);
    } else if (field == "ee") {
      std::string link = text::trim(value);
      if (!link.empty()) rec.ee_links.push_back(std::move(link));
    }
  }

  if (rec.record_key.empty()) {
    note_error("", start_offset, "record without key");
    return std::nullopt;
  }
  if (bad_entity) {
    note_error(rec.record_key, start_offset, "unknown entity reference");
    return std::nullopt;
  }
  if (!year.empty()) {
    if (year.size() != 4 || !text::is_all_digits(year) || year[0] == '0') {
      note_error(rec.record_key, start_offset, "invalid year '" + year + "'");
      return std::nullopt;
    }
    rec.year = std::stoi(year);
  }
  if (pages) rec.pages = parse_page_range(*pages);
  rec.venue_key = extract_venue_key(crossref, booktitle.empty() ? journal : booktitle);
  if (options_.reject_duplicate_keys && !seen_keys_.insert(rec.record_key).second) {
    note_error(rec.record_key, start_offset, "duplicate record key");
    return std::nullopt;
  }
  ++stats_.records;
  return rec;
}

std::optional<PublicationRecord> RecordReader::next() {
  while (!done_) {
    const auto e = parser_.next();
    if (e == xml::Event::EndDocument) {
      done_ = true;
      break;
    }
    if (e != xml::Event::StartElement || parser_.depth() != 2) continue;
    const std::string& name = parser_.name();
    const std::size_t offset = parser_.event_offset();
    if (name == "inproceedings" || name == "article") {
      auto rec = read_record(name == "inproceedings" ? RecordKind::ConferencePaper
                                                     : RecordKind::JournalArticle,
                             offset);
      if (rec) return rec;
    } else {
      ++stats_.skipped_by_kind[name];
      skip_element();
    }
  }
  return std::nullopt;
}

std::vector<PublicationRecord> parse_records(std::istream& in, IngestStats* stats,
                                             ReaderOptions options) {
  RecordReader reader(in, options);
  std::vector<PublicationRecord> out;
  while (auto rec = reader.next()) out.push_back(std::move(*rec));
  if (stats) *stats = reader.stats();
  return out;
}

nlohmann::ordered_json record_to_json(const PublicationRecord& record) {
  nlohmann::ordered_json j;
  j["key"] = record.record_key;
  j["kind"] = to_string(record.kind);
  j["title"] = record.title;
  auto authors = nlohmann::ordered_json::array();
  for (const auto& a : record.authors) {
    nlohmann::ordered_json aj;
    aj["display"] = a.display;
    aj["suffix"] = a.disambiguation_suffix ? nlohmann::ordered_json(*a.disambiguation_suffix)
                                           : nlohmann::ordered_json(nullptr);
    authors.push_back(std::move(aj));
  }
  j["authors"] = std::move(authors);
  j["venue_key"] = record.venue_key;
  j["year"] = record.year ? nlohmann::ordered_json(*record.year) : nlohmann::ordered_json(nullptr);
  nlohmann::ordered_json pages;
  pages["raw"] = record.pages.raw;
  pages["count"] = record.pages.count ? nlohmann::ordered_json(*record.pages.count)
                                      : nlohmann::ordered_json(nullptr);
  j["pages"] = std::move(pages);
  j["ee"] = record.ee_links;
  return j;
}

PublicationRecord record_from_json(const nlohmann::json& j) {
  PublicationRecord rec;
  rec.record_key = j.at("key").get<std::string>();
  const auto kind = record_kind_from_string(j.at("kind").get<std::string>());
  if (!kind) throw std::invalid_argument("unknown record kind");
  rec.kind = *kind;
  rec.title = j.at("title").get<std::string>();
  for (const auto& a : j.at("authors")) {
    AuthorName name;
    name.display = a.at("display").get<std::string>();
    if (!a.at("suffix").is_null()) name.disambiguation_suffix = a.at("suffix").get<std::string>();
    name.normalized = text::fold_name(name.display);
    rec.authors.push_back(std::move(name));
  }
  rec.venue_key = j.at("venue_key").get<std::string>();
  if (!j.at("year").is_null()) rec.year = j.at("year").get<int>();
  rec.pages.raw = j.at("pages").at("raw").get<std::string>();
  if (!j.at("pages").at("count").is_null()) rec.pages.count = j.at("pages").at("count").get<int>();
  rec.ee_links = j.at("ee").get<std::vector<std::string>>();
  if (rec.record_key.empty()) throw std::invalid_argument("empty record key");
  return rec;
}

std::string record_to_line(const PublicationRecord& record) {
  return record_to_json(record).dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

std::vector<PublicationRecord> read_record_lines(std::istream& in) {
  std::vector<PublicationRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    try {
      out.push_back(record_from_json(nlohmann::json::parse(line)));
    } catch (const std::exception& e) {
      throw std::runtime_error("record line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace pubindex
