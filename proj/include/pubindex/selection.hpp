#pragma once

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pubindex/classifier.hpp"
#include "pubindex/dblp.hpp"
#include "pubindex/registry.hpp"

namespace pubindex {

struct YearWindow {
  int start_year = 2013;
  int end_year = 2018;

  /// Throws std::invalid_argument when start_year > end_year.
  static YearWindow make(int start_year, int end_year);
  friend bool operator==(const YearWindow&, const YearWindow&) = default;
};

struct AuthorMatch {
  std::string researcher_id;
  std::string dept_id;

  friend bool operator==(const AuthorMatch&, const AuthorMatch&) = default;
};

struct IndexedPaper {
  PublicationRecord record;
  std::string venue_key;
  std::string area_id;
  int year = 0;
  std::optional<std::string> doi;
  std::vector<AuthorMatch> matches;
  Tier tier = Tier::Standard;

  friend bool operator==(const IndexedPaper&, const IndexedPaper&) = default;
};

using AliasIndex = std::map<std::string, std::string>;

bool is_full_paper(const PublicationRecord& record, const Venue& venue);

bool in_window(int year, const YearWindow& window);

/// Registered researchers among the record's authors, in author order,
/// one entry per researcher. Suffixed and unsuffixed names never match
/// each other.
std::vector<AuthorMatch> match_authors(const PublicationRecord& record, const AliasIndex& aliases,
                                       const Registry& registry);

/// First ee link on a DOI resolver, with the resolver prefix stripped.
std::optional<std::string> extract_doi(const std::vector<std::string>& ee_links);

enum class DropReason { UnknownVenue, OutOfWindow, NotFullPaper, NoRegisteredAuthor };

std::string_view to_string(DropReason reason);

struct DropReport {
  std::size_t examined = 0;
  std::size_t kept = 0;
  std::map<DropReason, std::size_t> dropped;

  nlohmann::ordered_json to_json() const;
};

/// Keeps records at a tracked venue, inside the window, meeting the venue
/// page threshold, with at least one registered author. The first failing
/// check is the drop reason. Output is sorted by (year desc, venue_key,
/// record_key).
std::vector<IndexedPaper> select_papers(std::span<const PublicationRecord> records,
                                        const Registry& registry, const YearWindow& window,
                                        DropReport* report = nullptr);

nlohmann::ordered_json paper_to_json(const IndexedPaper& paper);
IndexedPaper paper_from_json(const nlohmann::json& j);
std::string paper_to_line(const IndexedPaper& paper);
std::vector<IndexedPaper> read_paper_lines(std::istream& in);

}  // namespace pubindex
