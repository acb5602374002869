#pragma once

#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "pubindex/classifier.hpp"
#include "pubindex/dblp.hpp"
#include "pubindex/registry.hpp"
#include "pubindex/scoring.hpp"
#include "pubindex/selection.hpp"

namespace pubindex {

/// One internally consistent build of every published statistic.
struct Snapshot {
  std::string generated_at;
  YearWindow window;
  Registry registry;
  std::string registry_digest;
  std::vector<ClassificationRow> classification;
  std::vector<IndexedPaper> papers;
  /// One entry per registry area, in registry order.
  std::vector<AreaStats> areas;
  IngestStats ingest;
  DropReport drops;
};

using Clock = std::function<std::string()>;

/// Current UTC time as "YYYY-MM-DDTHH:MM:SSZ".
std::string utc_now();

/// Reads publication records from `path`: DBLP XML (optionally gzip) or the
/// canonical one-record-per-line JSON format, detected from the content.
std::vector<PublicationRecord> load_records(const std::filesystem::path& path,
                                            IngestStats* stats = nullptr);

/// ingest -> registry -> classify -> select -> score.
Snapshot build_snapshot(const std::filesystem::path& config_dir, const std::filesystem::path& records_path,
                        const YearWindow& window, const Clock& clock = utc_now);

/// Same pipeline over already-loaded inputs.
Snapshot build_snapshot(Registry registry, std::string registry_digest,
                        std::span<const PublicationRecord> records, const YearWindow& window,
                        const Clock& clock = utc_now);

/// Holder for the currently published snapshot. Readers take a reference
/// and keep using it even if a newer snapshot is installed meanwhile.
class SnapshotStore {
 public:
  explicit SnapshotStore(std::shared_ptr<const Snapshot> initial = nullptr)
      : current_(std::move(initial)) {}

  std::shared_ptr<const Snapshot> get() const {
    std::lock_guard lock(mutex_);
    return current_;
  }

  void replace(std::shared_ptr<const Snapshot> next) {
    std::lock_guard lock(mutex_);
    current_.swap(next);
  }

 private:
  mutable std::mutex mutex_;
  std::shared_ptr<const Snapshot> current_;
};

/// Writes areas.json, conferences.csv, departments.csv and papers.jsonl.
/// Output bytes depend only on snapshot content, never on generated_at.
void write_exports(const Snapshot& snapshot, const std::filesystem::path& out_dir);

std::string export_areas_json(const Snapshot& snapshot);
std::string export_conferences_csv(const Snapshot& snapshot);
std::string export_departments_csv(const Snapshot& snapshot);
std::string export_papers_jsonl(const Snapshot& snapshot);

}  // namespace pubindex
