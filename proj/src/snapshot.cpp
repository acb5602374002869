#include "pubindex/snapshot.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include "pubindex/csv.hpp"
#include "pubindex/input.hpp"

namespace pubindex {

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<PublicationRecord> load_records(const std::filesystem::path& path, IngestStats* stats) {
  auto in = open_input(path.string());
  int c = in->peek();
  while (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
    in->get();
    c = in->peek();
  }
  if (c == std::char_traits<char>::eof()) {
    if (stats) *stats = IngestStats{};
    return {};
  }
  if (c == '{') {
    auto records = read_record_lines(*in);
    if (stats) {
      *stats = IngestStats{};
      stats->records = records.size();
    }
    return records;
  }
  return parse_records(*in, stats);
}

Snapshot build_snapshot(Registry registry, std::string registry_digest,
                        std::span<const PublicationRecord> records, const YearWindow& window,
                        const Clock& clock) {
  Snapshot snap;
  snap.window = window;
  snap.registry_digest = std::move(registry_digest);
  snap.classification = classification_report(registry);
  snap.papers = select_papers(records, registry, window, &snap.drops);
  for (const auto& area : registry.areas()) {
    snap.areas.push_back(area_stats(snap.papers, registry, area.area_id));
  }
  snap.registry = std::move(registry);
  snap.generated_at = clock ? clock() : utc_now();
  return snap;
}

Snapshot build_snapshot(const std::filesystem::path& config_dir, const std::filesystem::path& records_path,
                        const YearWindow& window, const Clock& clock) {
  Registry registry = load_registry(config_dir);
  std::string digest = registry_digest(RegistryPaths::in_directory(config_dir));
  IngestStats ingest;
  const auto records = load_records(records_path, &ingest);
  Snapshot snap = build_snapshot(std::move(registry), std::move(digest), records, window, clock);
  snap.ingest = std::move(ingest);
  return snap;
}

std::string export_areas_json(const Snapshot& snapshot) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& stats : snapshot.areas) arr.push_back(to_json(stats, snapshot.registry));
  return arr.dump(2, ' ', false, nlohmann::json::error_handler_t::replace) + "\n";
}

std::string export_conferences_csv(const Snapshot& snapshot) {
  std::ostringstream out;
  csv::write_row(out, report_csv_header());
  for (const auto& row : snapshot.classification) csv::write_row(out, report_csv_fields(row));
  return out.str();
}

std::string export_departments_csv(const Snapshot& snapshot) {
  return department_scores_csv(snapshot.areas, snapshot.registry);
}

std::string export_papers_jsonl(const Snapshot& snapshot) {
  std::string out;
  for (const auto& p : snapshot.papers) {
    out += paper_to_line(p);
    out += '\n';
  }
  return out;
}

void write_exports(const Snapshot& snapshot, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  const std::pair<const char*, std::string> files[] = {
      {"areas.json", export_areas_json(snapshot)},
      {"conferences.csv", export_conferences_csv(snapshot)},
      {"departments.csv", export_departments_csv(snapshot)},
      {"papers.jsonl", export_papers_jsonl(snapshot)},
  };
  for (const auto& [name, content] : files) {
    std::ofstream out(out_dir / name, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + (out_dir / name).string());
    out << content;
  }
}

}  // namespace pubindex
