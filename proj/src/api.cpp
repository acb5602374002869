#include "pubindex/api.hpp"

#include <algorithm>
#include <charconv>
#include <vector>

#include "pubindex/text.hpp"

namespace pubindex::api {

namespace {

using ojson = nlohmann::ordered_json;

std::string dump(const ojson& j) { return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace); }

Response ok(const ojson& j) { return Response{200, "application/json; charset=utf-8", dump(j)}; }

Response problem(int status, std::string_view title, const std::string& detail) {
  ojson j;
  j["type"] = "about:blank";
  j["title"] = title;
  j["status"] = status;
  j["detail"] = detail;
  return Response{status, "application/problem+json; charset=utf-8", dump(j)};
}

Response not_found(const std::string& detail) { return problem(404, "Not Found", detail); }

std::vector<std::string_view> split_path(std::string_view path) {
  std::vector<std::string_view> parts;
  if (path.empty() || path.front() != '/') return parts;
  path.remove_prefix(1);
  while (true) {
    const auto slash = path.find('/');
    parts.push_back(path.substr(0, slash));
    if (slash == std::string_view::npos) break;
    path.remove_prefix(slash + 1);
  }
  return parts;
}

struct Page {
  std::size_t offset = 0;
  std::size_t limit = kDefaultLimit;
};

std::optional<std::size_t> parse_size(const std::string& s) {
  if (!text::is_all_digits(s) || s.size() > 9) return std::nullopt;
  std::size_t v = 0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

// Returns an error message for malformed pagination.
std::optional<std::string> parse_page(const Query& query, Page& page) {
  for (const auto& [key, value] : query) {
    if (key == "offset") {
      const auto v = parse_size(value);
      if (!v) return "offset must be a non-negative integer";
      page.offset = *v;
    } else if (key == "limit") {
      const auto v = parse_size(value);
      if (!v || *v == 0 || *v > kMaxLimit) {
        return "limit must be an integer between 1 and " + std::to_string(kMaxLimit);
      }
      page.limit = *v;
    }
  }
  if (query.count("offset") > 1 || query.count("limit") > 1) return "repeated pagination parameter";
  return std::nullopt;
}

ojson paginate(const std::vector<const IndexedPaper*>& papers, const Page& page, const Registry& registry) {
  ojson j;
  j["total"] = papers.size();
  j["offset"] = page.offset;
  j["limit"] = page.limit;
  auto items = ojson::array();
  for (std::size_t i = page.offset; i < papers.size() && i < page.offset + page.limit; ++i) {
    items.push_back(to_json(make_paper_view(*papers[i], registry)));
  }
  j["items"] = std::move(items);
  return j;
}

Response areas(const Snapshot& s) {
  auto arr = ojson::array();
  for (std::size_t i = 0; i < s.registry.areas().size(); ++i) {
    const auto& area = s.registry.areas()[i];
    std::size_t venues = 0;
    for (const auto& v : s.registry.venues()) venues += v.area_id == area.area_id ? 1 : 0;
    arr.push_back({{"area_id", area.area_id},
                   {"name", area.name},
                   {"venues", venues},
                   {"total_papers", s.areas[i].total_papers}});
  }
  return ok(arr);
}

const AreaStats* find_stats(const Snapshot& s, std::string_view area_id) {
  for (const auto& a : s.areas) {
    if (a.area_id == area_id) return &a;
  }
  return nullptr;
}

Response area_route(const Snapshot& s, const std::string& area_id, std::string_view what, const Query& q) {
  const AreaStats* stats = find_stats(s, area_id);
  if (stats == nullptr) return not_found("unknown area '" + area_id + "'");
  if (what == "conferences") {
    auto arr = ojson::array();
    for (const auto& row : s.classification) {
      if (row.area_id == area_id) arr.push_back(row_to_json(row));
    }
    return ok(arr);
  }
  if (what == "departments") return ok(to_json(*stats, s.registry));
  if (what == "papers") {
    Page page;
    if (auto err = parse_page(q, page)) return problem(400, "Bad Request", *err);
    std::vector<const IndexedPaper*> list;
    for (const auto& p : s.papers) {
      if (p.area_id == area_id) list.push_back(&p);
    }
    ojson j;
    j["area_id"] = area_id;
    const ojson body = paginate(list, page, s.registry);
  for (const auto& [k, v] : body.items()) j[k] = v;
    return ok(j);
  }
  return not_found("unknown resource '" + std::string(what) + "'");
}

Response department(const Snapshot& s, const std::string& dept_id) {
  const auto* dept = s.registry.find_department(dept_id);
  if (dept == nullptr) return not_found("unknown department '" + dept_id + "'");
  ojson j;
  j["dept_id"] = dept->dept_id;
  j["name"] = dept->name;
  j["institution_kind"] = to_string(dept->institution_kind);
  auto areas = ojson::array();
  for (const auto& stats : s.areas) {
    for (std::size_t rank = 0; rank < stats.department_scores.size(); ++rank) {
      const auto& ds = stats.department_scores[rank];
      if (ds.dept_id != dept_id) continue;
      std::int64_t professors = 0;
      for (const auto& [d, n] : stats.professor_counts) {
        if (d == dept_id) professors = n;
      }
      areas.push_back({{"area_id", stats.area_id},
                       {"rank", rank + 1},
                       {"counts", to_json(ds.counts)},
                       {"score", ds.score.value()},
                       {"score_text", ds.score.str()},
                       {"professors", professors}});
    }
  }
  j["areas"] = std::move(areas);
  auto people = ojson::array();
  for (const auto& r : s.registry.researchers()) {
    if (r.dept_id != dept_id) continue;
    std::size_t papers = 0;
    for (const auto& p : s.papers) {
      for (const auto& m : p.matches) papers += m.researcher_id == r.researcher_id ? 1 : 0;
    }
    people.push_back({{"researcher_id", r.researcher_id}, {"name", r.canonical_name}, {"papers", papers}});
  }
  j["professors"] = std::move(people);
  return ok(j);
}

Response professor(const Snapshot& s, const std::string& researcher_id, const Query& q) {
  const auto* r = s.registry.find_researcher(researcher_id);
  if (r == nullptr) return not_found("unknown researcher '" + researcher_id + "'");
  Page page;
  if (auto err = parse_page(q, page)) return problem(400, "Bad Request", *err);
  std::vector<const IndexedPaper*> list;
  for (const auto& p : s.papers) {
    for (const auto& m : p.matches) {
      if (m.researcher_id == researcher_id) {
        list.push_back(&p);
        break;
      }
    }
  }
  std::stable_sort(list.begin(), list.end(), [](const IndexedPaper* a, const IndexedPaper* b) {
    if (a->year != b->year) return a->year > b->year;
    if (a->venue_key != b->venue_key) return a->venue_key < b->venue_key;
    return a->record.record_key < b->record.record_key;
  });
  ojson j;
  j["researcher_id"] = r->researcher_id;
  j["name"] = r->canonical_name;
  j["dept_id"] = r->dept_id;
  const ojson body = paginate(list, page, s.registry);
  for (const auto& [k, v] : body.items()) j[k] = v;
  return ok(j);
}

Response meta(const Snapshot& s) {
  ojson j;
  j["window"] = {{"start_year", s.window.start_year}, {"end_year", s.window.end_year}};
  j["generated_at"] = s.generated_at;
  j["registry_digest"] = s.registry_digest;
  j["counts"] = {{"areas", s.registry.areas().size()},
                 {"venues", s.registry.venues().size()},
                 {"departments", s.registry.departments().size()},
                 {"researchers", s.registry.researchers().size()},
                 {"papers", s.papers.size()}};
  return ok(j);
}

}  // namespace

Response handle_get(const Snapshot& snapshot, std::string_view path, const Query& query) {
  const auto parts = split_path(path);
  if (parts.size() == 1 && parts[0] == "areas") return areas(snapshot);
  if (parts.size() == 1 && parts[0] == "meta") return meta(snapshot);
  if (parts.size() == 3 && parts[0] == "areas") {
    return area_route(snapshot, std::string(parts[1]), parts[2], query);
  }
  if (parts.size() == 2 && parts[0] == "departments") return department(snapshot, std::string(parts[1]));
  if (parts.size() == 3 && parts[0] == "professors" && parts[2] == "papers") {
    return professor(snapshot, std::string(parts[1]), query);
  }
  return not_found("no resource at '" + std::string(path) + "'");
}

}  // namespace pubindex::api
