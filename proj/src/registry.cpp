#include "pubindex/registry.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "pubindex/csv.hpp"
#include "pubindex/dblp.hpp"
#include "pubindex/text.hpp"

namespace pubindex {

namespace {

std::string describe(const std::string& file, std::size_t line, const std::string& rule) {
  std::string out = file;
  if (line > 0) out += ":" + std::to_string(line);
  return out + ": " + rule;
}

}  // namespace

RegistryError::RegistryError(std::string file, std::size_t line, std::string rule)
    : std::runtime_error(describe(file, line, rule)),
      file_(std::move(file)),
      line_(line),
      rule_(std::move(rule)) {}

std::string Percent1::str() const {
  const int whole = tenths / 10;
  const int frac = tenths % 10;
  return std::to_string(whole) + "." + std::to_string(frac < 0 ? -frac : frac);
}

std::optional<Percent1> parse_percent1(std::string_view s) {
  const auto dot = s.find('.');
  const std::string_view whole = s.substr(0, dot);
  const std::string_view frac = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
  if (!text::is_all_digits(whole) || whole.size() > 3) return std::nullopt;
  if (dot != std::string_view::npos && (frac.size() != 1 || !text::is_all_digits(frac))) {
    return std::nullopt;
  }
  int w = 0;
  std::from_chars(whole.data(), whole.data() + whole.size(), w);
  const int f = frac.empty() ? 0 : frac[0] - '0';
  return Percent1{w * 10 + f};
}

std::string_view to_string(ManualRank rank) {
  switch (rank) {
    case ManualRank::None:
      return "none";
    case ManualRank::Top:
      return "top";
    case ManualRank::NearTheTop:
      return "near-the-top";
  }
  return "none";
}

std::string_view to_string(InstitutionKind kind) {
  switch (kind) {
    case InstitutionKind::Federal:
      return "federal";
    case InstitutionKind::State:
      return "state";
    case InstitutionKind::Private:
      return "private";
    case InstitutionKind::Institute:
      return "institute";
  }
  return "federal";
}

Registry::Registry(std::vector<Area> areas, std::vector<Venue> venues,
                   std::vector<Department> departments, std::vector<Researcher> researchers)
    : areas_(std::move(areas)),
      venues_(std::move(venues)),
      departments_(std::move(departments)),
      researchers_(std::move(researchers)) {
  for (std::size_t i = 0; i < areas_.size(); ++i) area_index_.emplace(areas_[i].area_id, i);
  for (std::size_t i = 0; i < venues_.size(); ++i) venue_index_.emplace(venues_[i].venue_key, i);
  for (std::size_t i = 0; i < departments_.size(); ++i) {
    department_index_.emplace(departments_[i].dept_id, i);
  }
  for (std::size_t i = 0; i < researchers_.size(); ++i) {
    researcher_index_.emplace(researchers_[i].researcher_id, i);
  }
}

namespace {

template <typename T>
const T* find_in(const std::vector<T>& items, const std::unordered_map<std::string, std::size_t>& index,
                 std::string_view id) {
  const auto it = index.find(std::string(id));
  return it == index.end() ? nullptr : &items[it->second];
}

}  // namespace

const Area* Registry::find_area(std::string_view id) const { return find_in(areas_, area_index_, id); }
const Venue* Registry::find_venue(std::string_view key) const {
  return find_in(venues_, venue_index_, key);
}
const Department* Registry::find_department(std::string_view id) const {
  return find_in(departments_, department_index_, id);
}
const Researcher* Registry::find_researcher(std::string_view id) const {
  return find_in(researchers_, researcher_index_, id);
}

nlohmann::ordered_json Registry::to_json() const {
  nlohmann::ordered_json j;
  auto& areas = j["areas"] = nlohmann::ordered_json::array();
  for (const auto& a : areas_) areas.push_back({{"area_id", a.area_id}, {"name", a.name}});
  auto& venues = j["venues"] = nlohmann::ordered_json::array();
  for (const auto& v : venues_) {
    nlohmann::ordered_json vj;
    vj["venue_key"] = v.venue_key;
    vj["acronym"] = v.acronym;
    vj["area_id"] = v.area_id;
    vj["sponsor"] = v.sponsor;
    vj["submitted"] = v.metrics.submitted;
    vj["accepted"] = v.metrics.accepted;
    vj["h5_index"] = v.metrics.h5_index;
    vj["min_pages"] = v.min_pages;
    vj["manual_rank"] = to_string(v.manual_rank);
    vj["stated_acceptance_rate"] = v.stated_acceptance_rate
                                       ? nlohmann::ordered_json(v.stated_acceptance_rate->str())
                                       : nlohmann::ordered_json(nullptr);
    venues.push_back(std::move(vj));
  }
  auto& depts = j["departments"] = nlohmann::ordered_json::array();
  for (const auto& d : departments_) {
    depts.push_back(
        {{"dept_id", d.dept_id}, {"name", d.name}, {"institution_kind", to_string(d.institution_kind)}});
  }
  auto& people = j["researchers"] = nlohmann::ordered_json::array();
  for (const auto& r : researchers_) {
    people.push_back({{"researcher_id", r.researcher_id},
                      {"canonical_name", r.canonical_name},
                      {"dept_id", r.dept_id},
                      {"aliases", r.dblp_aliases}});
  }
  return j;
}

RegistryPaths RegistryPaths::in_directory(const std::filesystem::path& dir) {
  return {dir / "areas.csv", dir / "venues.csv", dir / "departments.csv", dir / "researchers.csv"};
}

namespace {

class Table {
 public:
  Table(const std::filesystem::path& path, const std::vector<std::string>& header)
      : file_(path.filename().string()) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw RegistryError(file_, 0, "cannot open " + path.string());
    try {
      rows_ = csv::read_all(in);
    } catch (const csv::ParseError& e) {
      throw RegistryError(file_, e.line(), e.what());
    }
    if (rows_.empty()) throw RegistryError(file_, 1, "missing header row");
    std::vector<std::string> got;
    for (const auto& f : rows_.front().fields) got.push_back(text::trim(f));
    if (got != header) {
      std::string expected;
      for (const auto& h : header) expected += (expected.empty() ? "" : ",") + h;
      throw RegistryError(file_, rows_.front().line, "header must be '" + expected + "'");
    }
    for (std::size_t i = 1; i < rows_.size(); ++i) {
      if (rows_[i].fields.size() != header.size()) {
        throw RegistryError(file_, rows_[i].line,
                            "expected " + std::to_string(header.size()) + " fields, found " +
                                std::to_string(rows_[i].fields.size()));
      }
      for (auto& f : rows_[i].fields) f = text::trim(f);
    }
  }

  const std::string& file() const { return file_; }
  std::size_t size() const { return rows_.size() - 1; }
  const csv::Row& row(std::size_t i) const { return rows_[i + 1]; }

  [[noreturn]] void fail(std::size_t i, const std::string& rule) const {
    throw RegistryError(file_, row(i).line, rule);
  }

  const std::string& required(std::size_t i, std::size_t col, const char* name) const {
    const auto& v = row(i).fields[col];
    if (v.empty()) fail(i, std::string("missing ") + name);
    return v;
  }

  int count(std::size_t i, std::size_t col, const char* name) const {
    const auto& v = row(i).fields[col];
    if (v.empty()) fail(i, std::string("missing metric '") + name + "'");
    if (!text::is_all_digits(v) || v.size() > 9) {
      fail(i, std::string("'") + name + "' must be a non-negative integer");
    }
    return std::stoi(v);
  }

 private:
  std::string file_;
  std::vector<csv::Row> rows_;
};

void check_slug(const Table& t, std::size_t i, const std::string& id, const char* what) {
  for (char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' || c == '_' || c == '.';
    if (!ok) t.fail(i, std::string(what) + " '" + id + "' must be a lowercase slug");
  }
}

}  // namespace

Registry load_registry(const RegistryPaths& paths) {
  std::vector<Area> areas;
  {
    Table t(paths.areas, {"area_id", "name"});
    std::set<std::string> ids;
    for (std::size_t i = 0; i < t.size(); ++i) {
      Area a{t.required(i, 0, "area_id"), t.required(i, 1, "name")};
      check_slug(t, i, a.area_id, "area_id");
      if (!ids.insert(a.area_id).second) t.fail(i, "duplicate area_id '" + a.area_id + "'");
      areas.push_back(std::move(a));
    }
  }
  std::set<std::string> area_ids;
  for (const auto& a : areas) area_ids.insert(a.area_id);

  std::vector<Venue> venues;
  {
    Table t(paths.venues, {"venue_key", "acronym", "area_id", "sponsor", "submitted", "accepted",
                           "h5_index", "min_pages", "manual_rank", "stated_acceptance_rate"});
    std::set<std::string> keys;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const auto& f = t.row(i).fields;
      Venue v;
      v.venue_key = t.required(i, 0, "venue_key");
      v.acronym = t.required(i, 1, "acronym");
      v.area_id = t.required(i, 2, "area_id");
      v.sponsor = t.required(i, 3, "sponsor");
      v.metrics.submitted = t.count(i, 4, "submitted");
      v.metrics.accepted = t.count(i, 5, "accepted");
      v.metrics.h5_index = t.count(i, 6, "h5_index");
      if (f[7].empty() || !text::is_all_digits(f[7]) || f[7].size() > 6 || std::stoi(f[7]) < 1) {
        t.fail(i, "min_pages must be a positive integer");
      }
      v.min_pages = std::stoi(f[7]);
      if (f[8].empty() || f[8] == "none") {
        v.manual_rank = ManualRank::None;
      } else if (f[8] == "top") {
        v.manual_rank = ManualRank::Top;
      } else if (f[8] == "near-the-top") {
        v.manual_rank = ManualRank::NearTheTop;
      } else {
        t.fail(i, "manual_rank must be one of none, top, near-the-top");
      }
      if (!f[9].empty()) {
        v.stated_acceptance_rate = parse_percent1(f[9]);
        if (!v.stated_acceptance_rate) t.fail(i, "stated_acceptance_rate must be a percent with one decimal");
      }
      check_slug(t, i, v.venue_key, "venue_key");
      if (!keys.insert(v.venue_key).second) t.fail(i, "duplicate venue_key '" + v.venue_key + "'");
      if (!area_ids.count(v.area_id)) t.fail(i, "unknown area_id '" + v.area_id + "'");
      if (v.metrics.accepted > v.metrics.submitted) t.fail(i, "accepted exceeds submitted");
      venues.push_back(std::move(v));
    }
  }

  std::vector<Department> departments;
  {
    Table t(paths.departments, {"dept_id", "name", "institution_kind"});
    std::set<std::string> ids;
    for (std::size_t i = 0; i < t.size(); ++i) {
      Department d{t.required(i, 0, "dept_id"), t.required(i, 1, "name"), InstitutionKind::Federal};
      const auto& kind = t.required(i, 2, "institution_kind");
      if (kind == "federal") d.institution_kind = InstitutionKind::Federal;
      else if (kind == "state") d.institution_kind = InstitutionKind::State;
      else if (kind == "private") d.institution_kind = InstitutionKind::Private;
      else if (kind == "institute") d.institution_kind = InstitutionKind::Institute;
      else t.fail(i, "institution_kind must be one of federal, state, private, institute");
      check_slug(t, i, d.dept_id, "dept_id");
      if (!ids.insert(d.dept_id).second) t.fail(i, "duplicate dept_id '" + d.dept_id + "'");
      departments.push_back(std::move(d));
    }
  }
  std::set<std::string> dept_ids;
  for (const auto& d : departments) dept_ids.insert(d.dept_id);

  std::vector<Researcher> researchers;
  {
    Table t(paths.researchers, {"researcher_id", "canonical_name", "dept_id", "aliases"});
    std::set<std::string> ids;
    std::map<std::string, std::string> alias_owner;
    for (std::size_t i = 0; i < t.size(); ++i) {
      Researcher r;
      r.researcher_id = t.required(i, 0, "researcher_id");
      r.canonical_name = t.required(i, 1, "canonical_name");
      r.dept_id = t.required(i, 2, "dept_id");
      check_slug(t, i, r.researcher_id, "researcher_id");
      if (!ids.insert(r.researcher_id).second) {
        t.fail(i, "duplicate researcher_id '" + r.researcher_id + "'");
      }
      if (!dept_ids.count(r.dept_id)) t.fail(i, "unknown dept_id '" + r.dept_id + "'");
      std::string_view rest = t.row(i).fields[3];
      for (;;) {
        const auto bar = rest.find('|');
        std::string alias = text::trim(rest.substr(0, bar));
        if (!alias.empty()) r.dblp_aliases.push_back(std::move(alias));
        if (bar == std::string_view::npos) break;
        rest.remove_prefix(bar + 1);
      }
      if (r.dblp_aliases.empty()) t.fail(i, "researcher needs at least one alias");
      for (const auto& alias : r.dblp_aliases) {
        const std::string key = split_author_name(alias).match_key();
        const auto [it, inserted] = alias_owner.emplace(key, r.researcher_id);
        if (!inserted) {
          t.fail(i, "alias '" + key + "' shared by researchers '" + it->second + "' and '" +
                        r.researcher_id + "'");
        }
      }
      researchers.push_back(std::move(r));
    }
  }

  return Registry(std::move(areas), std::move(venues), std::move(departments), std::move(researchers));
}

Registry load_registry(const std::filesystem::path& config_dir) {
  if (!std::filesystem::is_directory(config_dir)) {
    throw RegistryError(config_dir.string(), 0, "config directory does not exist");
  }
  return load_registry(RegistryPaths::in_directory(config_dir));
}

std::map<std::string, std::string> alias_index(const Registry& registry) {
  std::map<std::string, std::string> index;
  for (const auto& r : registry.researchers()) {
    for (const auto& alias : r.dblp_aliases) {
      const std::string key = split_author_name(alias).match_key();
      const auto [it, inserted] = index.emplace(key, r.researcher_id);
      if (!inserted) {
        throw RegistryError("researchers.csv", 0,
                            "alias '" + key + "' shared by researchers '" + it->second + "' and '" +
                                r.researcher_id + "'");
      }
    }
  }
  return index;
}

std::string registry_digest(const RegistryPaths& paths) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
  for (const auto* path : {&paths.areas, &paths.venues, &paths.departments, &paths.researchers}) {
    std::ifstream in(*path, std::ios::binary);
    if (!in) throw RegistryError(path->filename().string(), 0, "cannot open " + path->string());
    std::ostringstream content;
    content << in.rdbuf();
    const std::string name = path->filename().string();
    const std::string bytes = content.str();
    const std::string size = std::to_string(bytes.size());
    EVP_DigestUpdate(ctx.get(), name.data(), name.size() + 1);
    EVP_DigestUpdate(ctx.get(), size.data(), size.size() + 1);
    EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size());
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md, &len);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex.push_back(kHex[md[i] >> 4]);
    hex.push_back(kHex[md[i] & 0xF]);
  }
  return hex;
}

}  // namespace pubindex
