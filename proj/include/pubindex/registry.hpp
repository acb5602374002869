#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

namespace pubindex {

/// A decimal percentage with one fractional digit, held as tenths.
struct Percent1 {
  int tenths = 0;

  std::string str() const;
  double value() const { return tenths / 10.0; }
  friend auto operator<=>(const Percent1&, const Percent1&) = default;
};

/// Parses "16.4", "28", "0.5". Rejects more than one fractional digit.
std::optional<Percent1> parse_percent1(std::string_view s);

enum class ManualRank { None, Top, NearTheTop };
enum class InstitutionKind { Federal, State, Private, Institute };

std::string_view to_string(ManualRank rank);
std::string_view to_string(InstitutionKind kind);

struct Area {
  std::string area_id;
  std::string name;
};

struct VenueMetrics {
  int submitted = 0;
  int accepted = 0;
  int h5_index = 0;
};

struct Venue {
  std::string venue_key;
  std::string acronym;
  std::string area_id;
  std::string sponsor;
  VenueMetrics metrics;
  int min_pages = 1;
  ManualRank manual_rank = ManualRank::None;
  std::optional<Percent1> stated_acceptance_rate;
};

struct Department {
  std::string dept_id;
  std::string name;
  InstitutionKind institution_kind = InstitutionKind::Federal;
};

struct Researcher {
  std::string researcher_id;
  std::string canonical_name;
  std::vector<std::string> dblp_aliases;
  std::string dept_id;
};

/// Rule violation found while loading configuration.
class RegistryError : public std::runtime_error {
 public:
  RegistryError(std::string file, std::size_t line, std::string rule);

  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }
  const std::string& rule() const noexcept { return rule_; }

 private:
  std::string file_;
  std::size_t line_;
  std::string rule_;
};

/// Immutable after loading. Entities keep file order.
class Registry {
 public:
  Registry() = default;
  Registry(std::vector<Area> areas, std::vector<Venue> venues, std::vector<Department> departments,
           std::vector<Researcher> researchers);

  const std::vector<Area>& areas() const { return areas_; }
  const std::vector<Venue>& venues() const { return venues_; }
  const std::vector<Department>& departments() const { return departments_; }
  const std::vector<Researcher>& researchers() const { return researchers_; }

  const Area* find_area(std::string_view id) const;
  const Venue* find_venue(std::string_view venue_key) const;
  const Department* find_department(std::string_view id) const;
  const Researcher* find_researcher(std::string_view id) const;

  /// Canonical serialization; equal registries serialize byte-identically.
  nlohmann::ordered_json to_json() const;

 private:
  std::vector<Area> areas_;
  std::vector<Venue> venues_;
  std::vector<Department> departments_;
  std::vector<Researcher> researchers_;
  std::unordered_map<std::string, std::size_t> area_index_;
  std::unordered_map<std::string, std::size_t> venue_index_;
  std::unordered_map<std::string, std::size_t> department_index_;
  std::unordered_map<std::string, std::size_t> researcher_index_;
};

struct RegistryPaths {
  std::filesystem::path areas;
  std::filesystem::path venues;
  std::filesystem::path departments;
  std::filesystem::path researchers;

  /// The four standard file names inside `dir`.
  static RegistryPaths in_directory(const std::filesystem::path& dir);
};

/// Loads and cross-validates the four tables. Throws RegistryError.
Registry load_registry(const RegistryPaths& paths);
Registry load_registry(const std::filesystem::path& config_dir);

/// Normalized alias key (see AuthorName::match_key) to researcher_id.
/// Throws RegistryError naming both researchers on a collision.
std::map<std::string, std::string> alias_index(const Registry& registry);

/// SHA-256 hex digest over the bytes of the four config files.
std::string registry_digest(const RegistryPaths& paths);

}  // namespace pubindex
