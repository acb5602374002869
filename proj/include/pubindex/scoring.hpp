#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "pubindex/registry.hpp"
#include "pubindex/selection.hpp"

namespace pubindex {

// Department score weights, in hundredths.
inline constexpr std::int64_t kTopWeight = 100;
inline constexpr std::int64_t kNearTopWeight = 66;
inline constexpr std::int64_t kStandardWeight = 33;

/// Non-negative decimal with two fractional digits, held as hundredths.
struct Score {
  std::int64_t hundredths = 0;

  std::string str() const;
  double value() const { return static_cast<double>(hundredths) / 100.0; }
  friend auto operator<=>(const Score&, const Score&) = default;
};

struct TierCounts {
  std::int64_t top = 0;       // A
  std::int64_t near_top = 0;  // B
  std::int64_t standard = 0;  // C

  std::int64_t total() const { return top + near_top + standard; }
  TierCounts operator+(const TierCounts& o) const {
    return {top + o.top, near_top + o.near_top, standard + o.standard};
  }
  friend bool operator==(const TierCounts&, const TierCounts&) = default;
};

/// A + 0.66 B + 0.33 C, exactly.
Score department_score(const TierCounts& counts);

struct DepartmentScore {
  std::string dept_id;
  std::string area_id;
  TierCounts counts;
  Score score;
};

struct AreaStats {
  std::string area_id;
  std::int64_t total_papers = 0;
  /// Descending score, ties by dept_id ascending.
  std::vector<DepartmentScore> department_scores;
  /// dept_id -> distinct professors with at least one paper, by dept_id.
  std::vector<std::pair<std::string, std::int64_t>> professor_counts;
};

class ScoringError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using DeptAreaKey = std::pair<std::string, std::string>;  // (dept_id, area_id)

/// Each paper counts once per department among its matches, in the bucket of
/// its venue tier.
std::map<DeptAreaKey, TierCounts> attribute_papers(std::span<const IndexedPaper> papers);

/// Orders departments by descending score, ties by dept_id ascending.
void rank_departments(std::vector<DepartmentScore>& scores);

AreaStats area_stats(std::span<const IndexedPaper> papers, const Registry& registry,
                     const std::string& area_id);

struct AffiliatedAuthor {
  std::string researcher_id;
  std::string name;
  std::string dept_id;
  std::string dept_name;
};

struct PaperView {
  std::string record_key;
  std::string title;
  std::vector<std::string> authors;
  std::vector<AffiliatedAuthor> affiliations;
  std::optional<std::string> doi;
  std::string venue_key;
  std::string venue;
  std::string area_id;
  int year = 0;
  Tier tier = Tier::Standard;
};

PaperView make_paper_view(const IndexedPaper& paper, const Registry& registry);

/// Papers matched to `researcher_id`, newest first then by venue_key.
/// Throws ScoringError for an unknown researcher.
std::vector<PaperView> professor_papers(std::span<const IndexedPaper> papers, const Registry& registry,
                                        const std::string& researcher_id);

/// area_id,rank,dept_id,name,A,B,C,score,professors; one row per ranked
/// department, areas in the given order.
std::string department_scores_csv(std::span<const AreaStats> areas, const Registry& registry);

nlohmann::ordered_json to_json(const TierCounts& counts);
nlohmann::ordered_json to_json(const DepartmentScore& score, const Registry& registry);
nlohmann::ordered_json to_json(const AreaStats& stats, const Registry& registry);
nlohmann::ordered_json to_json(const PaperView& view);

}  // namespace pubindex
