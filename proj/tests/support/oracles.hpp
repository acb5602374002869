#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pubindex/dblp.hpp"
#include "pubindex/registry.hpp"
#include "pubindex/selection.hpp"

namespace pubindex::testing {

std::filesystem::path source_dir();
std::filesystem::path fixture_config_dir();
std::filesystem::path fixture_records();
std::filesystem::path schema_dir();
std::filesystem::path golden_dir();

/// Expected selection outcome for one record, derived without the
/// selection module.
struct ExpectedPaper {
  std::string record_key;
  std::string venue_key;
  std::string area_id;
  int year = 0;
  std::string tier;
  std::vector<std::string> researcher_ids;
  std::optional<std::string> doi;

  friend bool operator==(const ExpectedPaper&, const ExpectedPaper&) = default;
};

/// Brute force: every record against every predicate by linear scans over
/// the registry tables. Author matching uses its own ASCII normalization, so
/// it is only valid for corpora with ASCII names (the synthetic one).
std::vector<ExpectedPaper> selection_oracle(const std::vector<PublicationRecord>& records,
                                            const Registry& registry, int start_year, int end_year);

ExpectedPaper to_expected(const IndexedPaper& paper);

struct SyntheticCorpus {
  Registry registry;
  std::vector<PublicationRecord> records;
};

/// Deterministic mix of wrong-venue, short, unpaged, out-of-window,
/// unmatched, suffix-confusable and valid records.
SyntheticCorpus make_synthetic_corpus(std::size_t records, std::uint32_t seed);

}  // namespace pubindex::testing
