#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pubindex/registry.hpp"

namespace pubindex {

// Tracked-venue gate: every comparison is strict.
inline constexpr int kMinSubmitted = 100;     // submitted > 100
inline constexpr int kMaxAcceptancePct = 30;  // rate < 30%
inline constexpr int kMinH5 = 20;             // h5-index > 20
// Top-conference gate.
inline constexpr int kTopMinSubmitted = 180;  // submitted > 180
inline constexpr int kTopMinH5 = 40;          // h5-index > 40

class ClassificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Tier { Top, NearTheTop, Standard };

std::string_view to_string(Tier tier);
std::optional<Tier> tier_from_string(std::string_view s);

struct ComplianceFlags {
  bool submitted_ok = false;
  bool acceptance_ok = false;
  bool h5_ok = false;

  bool all() const { return submitted_ok && acceptance_ok && h5_ok; }
  friend bool operator==(const ComplianceFlags&, const ComplianceFlags&) = default;
};

/// 100 * accepted / submitted, rounded half-up to one decimal, exactly.
/// Throws ClassificationError when submitted is zero or accepted exceeds it.
Percent1 acceptance_rate(int submitted, int accepted);

/// Exact comparison of the unrounded rate against the 30% threshold.
bool acceptance_below_threshold(int submitted, int accepted);

ComplianceFlags check_compliance(const Venue& venue);

struct TierDecision {
  Tier tier = Tier::Standard;
  std::optional<std::string> warning;
};

/// Manual rank is authoritative for near-the-top and must be confirmed by
/// the metric gate for top. Throws ClassificationError when a manual top
/// fails the gate.
TierDecision classify_tier(const Venue& venue);

struct ClassificationRow {
  std::string venue_key;
  std::string acronym;
  std::string area_id;
  std::string sponsor;
  VenueMetrics metrics;
  Percent1 acceptance_rate;
  std::optional<Percent1> stated_acceptance_rate;
  /// Stated rate differs from the recomputed one by more than 0.05.
  bool rate_discrepancy = false;
  ComplianceFlags flags;
  Tier tier = Tier::Standard;
  int min_pages = 1;
  std::optional<std::string> warning;
};

/// One row per registry venue, in registry order.
std::vector<ClassificationRow> classification_report(const Registry& registry);

nlohmann::ordered_json row_to_json(const ClassificationRow& row);

/// Column names for the CSV rendering (metrics layout followed by flags).
std::vector<std::string> report_csv_header();
std::vector<std::string> report_csv_fields(const ClassificationRow& row);

/// Fixed-width text table; non-compliant cells are marked with '*'.
std::string render_report_table(const std::vector<ClassificationRow>& rows);

}  // namespace pubindex
