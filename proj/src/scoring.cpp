#include "pubindex/scoring.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "pubindex/csv.hpp"

namespace pubindex {

std::string Score::str() const {
  const std::int64_t whole = hundredths / 100;
  const std::int64_t frac = hundredths % 100;
  return std::to_string(whole) + "." + (frac < 10 ? "0" : "") + std::to_string(frac);
}

Score department_score(const TierCounts& counts) {
  return Score{kTopWeight * counts.top + kNearTopWeight * counts.near_top +
               kStandardWeight * counts.standard};
}

namespace {

void add_tier(TierCounts& c, Tier tier) {
  switch (tier) {
    case Tier::Top:
      ++c.top;
      break;
    case Tier::NearTheTop:
      ++c.near_top;
      break;
    case Tier::Standard:
      ++c.standard;
      break;
  }
}

}  // namespace

std::map<DeptAreaKey, TierCounts> attribute_papers(std::span<const IndexedPaper> papers) {
  std::map<DeptAreaKey, TierCounts> cells;
  for (const auto& p : papers) {
    std::set<std::string> depts;
    for (const auto& m : p.matches) depts.insert(m.dept_id);
    for (const auto& d : depts) add_tier(cells[{d, p.area_id}], p.tier);
  }
  return cells;
}

void rank_departments(std::vector<DepartmentScore>& scores) {
  std::sort(scores.begin(), scores.end(), [](const DepartmentScore& a, const DepartmentScore& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.dept_id < b.dept_id;
  });
}

AreaStats area_stats(std::span<const IndexedPaper> papers, const Registry& registry,
                     const std::string& area_id) {
  if (registry.find_area(area_id) == nullptr) throw ScoringError("unknown area '" + area_id + "'");
  std::vector<IndexedPaper> in_area;
  std::set<std::string> keys;
  std::map<std::string, std::set<std::string>> professors;
  for (const auto& p : papers) {
    if (p.area_id != area_id) continue;
    keys.insert(p.record.record_key);
    in_area.push_back(p);
    for (const auto& m : p.matches) professors[m.dept_id].insert(m.researcher_id);
  }
  AreaStats stats;
  stats.area_id = area_id;
  stats.total_papers = static_cast<std::int64_t>(keys.size());
  for (const auto& [key, counts] : attribute_papers(in_area)) {
    stats.department_scores.push_back({key.first, key.second, counts, department_score(counts)});
  }
  rank_departments(stats.department_scores);
  for (const auto& [dept, people] : professors) {
    stats.professor_counts.emplace_back(dept, static_cast<std::int64_t>(people.size()));
  }
  return stats;
}

PaperView make_paper_view(const IndexedPaper& paper, const Registry& registry) {
  PaperView v;
  v.record_key = paper.record.record_key;
  v.title = paper.record.title;
  for (const auto& a : paper.record.authors) v.authors.push_back(a.display);
  for (const auto& m : paper.matches) {
    AffiliatedAuthor aff;
    aff.researcher_id = m.researcher_id;
    aff.dept_id = m.dept_id;
    if (const auto* r = registry.find_researcher(m.researcher_id)) aff.name = r->canonical_name;
    if (const auto* d = registry.find_department(m.dept_id)) aff.dept_name = d->name;
    v.affiliations.push_back(std::move(aff));
  }
  v.doi = paper.doi;
  v.venue_key = paper.venue_key;
  if (const auto* venue = registry.find_venue(paper.venue_key)) v.venue = venue->acronym;
  v.area_id = paper.area_id;
  v.year = paper.year;
  v.tier = paper.tier;
  return v;
}

std::vector<PaperView> professor_papers(std::span<const IndexedPaper> papers, const Registry& registry,
                                        const std::string& researcher_id) {
  if (registry.find_researcher(researcher_id) == nullptr) {
    throw ScoringError("unknown researcher '" + researcher_id + "'");
  }
  std::vector<const IndexedPaper*> mine;
  for (const auto& p : papers) {
    const bool match = std::any_of(p.matches.begin(), p.matches.end(),
                                   [&](const AuthorMatch& m) { return m.researcher_id == researcher_id; });
    if (match) mine.push_back(&p);
  }
  std::stable_sort(mine.begin(), mine.end(), [](const IndexedPaper* a, const IndexedPaper* b) {
    if (a->year != b->year) return a->year > b->year;
    if (a->venue_key != b->venue_key) return a->venue_key < b->venue_key;
    return a->record.record_key < b->record.record_key;
  });
  std::vector<PaperView> out;
  for (const auto* p : mine) out.push_back(make_paper_view(*p, registry));
  return out;
}

std::string department_scores_csv(std::span<const AreaStats> areas, const Registry& registry) {
  std::ostringstream out;
  csv::write_row(out, {"area_id", "rank", "dept_id", "name", "A", "B", "C", "score", "professors"});
  for (const auto& stats : areas) {
    std::size_t rank = 0;
    for (const auto& s : stats.department_scores) {
      std::int64_t professors = 0;
      for (const auto& [dept, n] : stats.professor_counts) {
        if (dept == s.dept_id) professors = n;
      }
      const auto* dept = registry.find_department(s.dept_id);
      csv::write_row(out, {stats.area_id, std::to_string(++rank), s.dept_id, dept ? dept->name : "",
                           std::to_string(s.counts.top), std::to_string(s.counts.near_top),
                           std::to_string(s.counts.standard), s.score.str(), std::to_string(professors)});
    }
  }
  return out.str();
}

nlohmann::ordered_json to_json(const TierCounts& counts) {
  return {{"A", counts.top}, {"B", counts.near_top}, {"C", counts.standard}};
}

nlohmann::ordered_json to_json(const DepartmentScore& score, const Registry& registry) {
  nlohmann::ordered_json j;
  j["dept_id"] = score.dept_id;
  const auto* dept = registry.find_department(score.dept_id);
  j["name"] = dept ? dept->name : std::string();
  j["area_id"] = score.area_id;
  j["counts"] = to_json(score.counts);
  j["score"] = score.score.value();
  j["score_text"] = score.score.str();
  return j;
}

nlohmann::ordered_json to_json(const AreaStats& stats, const Registry& registry) {
  nlohmann::ordered_json j;
  j["area_id"] = stats.area_id;
  const auto* area = registry.find_area(stats.area_id);
  j["name"] = area ? area->name : std::string();
  j["total_papers"] = stats.total_papers;
  auto scores = nlohmann::ordered_json::array();
  for (const auto& s : stats.department_scores) scores.push_back(to_json(s, registry));
  j["department_scores"] = std::move(scores);
  auto profs = nlohmann::ordered_json::array();
  for (const auto& [dept, n] : stats.professor_counts) {
    profs.push_back({{"dept_id", dept}, {"professors", n}});
  }
  j["professor_counts"] = std::move(profs);
  return j;
}

nlohmann::ordered_json to_json(const PaperView& view) {
  nlohmann::ordered_json j;
  j["key"] = view.record_key;
  j["title"] = view.title;
  j["authors"] = view.authors;
  auto affs = nlohmann::ordered_json::array();
  for (const auto& a : view.affiliations) {
    affs.push_back({{"researcher_id", a.researcher_id},
                    {"name", a.name},
                    {"dept_id", a.dept_id},
                    {"department", a.dept_name}});
  }
  j["affiliations"] = std::move(affs);
  j["doi"] = view.doi ? nlohmann::ordered_json(*view.doi) : nlohmann::ordered_json(nullptr);
  j["venue_key"] = view.venue_key;
  j["venue"] = view.venue;
  j["area_id"] = view.area_id;
  j["year"] = view.year;
  j["tier"] = to_string(view.tier);
  return j;
}

}  // namespace pubindex
