#include "pubindex/selection.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "pubindex/text.hpp"

namespace pubindex {

YearWindow YearWindow::make(int start_year, int end_year) {
  if (start_year > end_year) {
    throw std::invalid_argument("year window start " + std::to_string(start_year) + " is after end " +
                                std::to_string(end_year));
  }
  return YearWindow{start_year, end_year};
}

bool is_full_paper(const PublicationRecord& record, const Venue& venue) {
  return record.pages.count.has_value() && *record.pages.count >= venue.min_pages;
}

bool in_window(int year, const YearWindow& window) {
  return window.start_year <= year && year <= window.end_year;
}

std::vector<AuthorMatch> match_authors(const PublicationRecord& record, const AliasIndex& aliases,
                                       const Registry& registry) {
  std::vector<AuthorMatch> matches;
  for (const auto& author : record.authors) {
    const auto it = aliases.find(author.match_key());
    if (it == aliases.end()) continue;
    const bool seen = std::any_of(matches.begin(), matches.end(),
                                  [&](const AuthorMatch& m) { return m.researcher_id == it->second; });
    if (seen) continue;
    const Researcher* r = registry.find_researcher(it->second);
    if (r == nullptr) continue;
    matches.push_back({r->researcher_id, r->dept_id});
  }
  return matches;
}

std::optional<std::string> extract_doi(const std::vector<std::string>& ee_links) {
  static constexpr std::string_view kResolvers[] = {"https://doi.org/", "http://doi.org/",
                                                    "https://dx.doi.org/", "http://dx.doi.org/"};
  for (const auto& link : ee_links) {
    for (const auto prefix : kResolvers) {
      if (link.size() > prefix.size() && link.compare(0, prefix.size(), prefix) == 0) {
        std::string doi = link.substr(prefix.size());
        if (doi.rfind("10.", 0) == 0) return doi;
      }
    }
  }
  return std::nullopt;
}

std::string_view to_string(DropReason reason) {
  switch (reason) {
    case DropReason::UnknownVenue:
      return "unknown_venue";
    case DropReason::OutOfWindow:
      return "out_of_window";
    case DropReason::NotFullPaper:
      return "not_full_paper";
    case DropReason::NoRegisteredAuthor:
      return "no_registered_author";
  }
  return "unknown";
}

nlohmann::ordered_json DropReport::to_json() const {
  nlohmann::ordered_json j;
  j["examined"] = examined;
  j["kept"] = kept;
  nlohmann::ordered_json d;
  for (auto reason : {DropReason::UnknownVenue, DropReason::OutOfWindow, DropReason::NotFullPaper,
                      DropReason::NoRegisteredAuthor}) {
    const auto it = dropped.find(reason);
    d[std::string(to_string(reason))] = it == dropped.end() ? 0 : it->second;
  }
  j["dropped"] = std::move(d);
  j["note"] =
      "main-track papers are approximated by each venue's minimum page count; "
      "records without a page count are dropped";
  return j;
}

std::vector<IndexedPaper> select_papers(std::span<const PublicationRecord> records,
                                        const Registry& registry, const YearWindow& window,
                                        DropReport* report) {
  const AliasIndex aliases = alias_index(registry);
  std::unordered_map<std::string, Tier> tiers;
  for (const auto& v : registry.venues()) tiers.emplace(v.venue_key, classify_tier(v).tier);

  DropReport local;
  std::vector<IndexedPaper> out;
  for (const auto& rec : records) {
    ++local.examined;
    const Venue* venue = registry.find_venue(rec.venue_key);
    if (venue == nullptr) {
      ++local.dropped[DropReason::UnknownVenue];
      continue;
    }
    if (!rec.year || !in_window(*rec.year, window)) {
      ++local.dropped[DropReason::OutOfWindow];
      continue;
    }
    if (!is_full_paper(rec, *venue)) {
      ++local.dropped[DropReason::NotFullPaper];
      continue;
    }
    auto matches = match_authors(rec, aliases, registry);
    if (matches.empty()) {
      ++local.dropped[DropReason::NoRegisteredAuthor];
      continue;
    }
    IndexedPaper paper;
    paper.record = rec;
    paper.venue_key = venue->venue_key;
    paper.area_id = venue->area_id;
    paper.year = *rec.year;
    paper.doi = extract_doi(rec.ee_links);
    paper.matches = std::move(matches);
    paper.tier = tiers.at(venue->venue_key);
    out.push_back(std::move(paper));
  }
  std::sort(out.begin(), out.end(), [](const IndexedPaper& a, const IndexedPaper& b) {
    if (a.year != b.year) return a.year > b.year;
    if (a.venue_key != b.venue_key) return a.venue_key < b.venue_key;
    return a.record.record_key < b.record.record_key;
  });
  local.kept = out.size();
  if (report) *report = std::move(local);
  return out;
}

nlohmann::ordered_json paper_to_json(const IndexedPaper& paper) {
  nlohmann::ordered_json j;
  j["record"] = record_to_json(paper.record);
  j["venue_key"] = paper.venue_key;
  j["area_id"] = paper.area_id;
  j["year"] = paper.year;
  j["doi"] = paper.doi ? nlohmann::ordered_json(*paper.doi) : nlohmann::ordered_json(nullptr);
  auto matches = nlohmann::ordered_json::array();
  for (const auto& m : paper.matches) {
    matches.push_back({{"researcher_id", m.researcher_id}, {"dept_id", m.dept_id}});
  }
  j["matches"] = std::move(matches);
  j["tier"] = to_string(paper.tier);
  return j;
}

IndexedPaper paper_from_json(const nlohmann::json& j) {
  IndexedPaper p;
  p.record = record_from_json(j.at("record"));
  p.venue_key = j.at("venue_key").get<std::string>();
  p.area_id = j.at("area_id").get<std::string>();
  p.year = j.at("year").get<int>();
  if (!j.at("doi").is_null()) p.doi = j.at("doi").get<std::string>();
  for (const auto& m : j.at("matches")) {
    p.matches.push_back({m.at("researcher_id").get<std::string>(), m.at("dept_id").get<std::string>()});
  }
  const auto tier = tier_from_string(j.at("tier").get<std::string>());
  if (!tier) throw std::invalid_argument("unknown tier");
  p.tier = *tier;
  if (p.matches.empty()) throw std::invalid_argument("indexed paper without matches");
  return p;
}

std::string paper_to_line(const IndexedPaper& paper) {
  return paper_to_json(paper).dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

std::vector<IndexedPaper> read_paper_lines(std::istream& in) {
  std::vector<IndexedPaper> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    try {
      out.push_back(paper_from_json(nlohmann::json::parse(line)));
    } catch (const std::exception& e) {
      throw std::runtime_error("paper line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace pubindex
