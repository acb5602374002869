#include "pubindex/classifier.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace pubindex {

std::string_view to_string(Tier tier) {
  switch (tier) {
    case Tier::Top:
      return "top";
    case Tier::NearTheTop:
      return "near-the-top";
    case Tier::Standard:
      return "standard";
  }
  return "standard";
}

std::optional<Tier> tier_from_string(std::string_view s) {
  if (s == "top") return Tier::Top;
  if (s == "near-the-top") return Tier::NearTheTop;
  if (s == "standard") return Tier::Standard;
  return std::nullopt;
}

Percent1 acceptance_rate(int submitted, int accepted) {
  if (submitted <= 0) throw ClassificationError("acceptance rate undefined for zero submissions");
  if (accepted < 0 || accepted > submitted) {
    throw ClassificationError("accepted must be between 0 and submitted");
  }
  // round(1000a/s) half-up == floor((2000a + s) / 2s)
  const long long a = accepted;
  const long long s = submitted;
  return Percent1{static_cast<int>((2000 * a + s) / (2 * s))};
}

bool acceptance_below_threshold(int submitted, int accepted) {
  // 100a/s < 30  <=>  100a < 30s
  return 100LL * accepted < static_cast<long long>(kMaxAcceptancePct) * submitted;
}

ComplianceFlags check_compliance(const Venue& venue) {
  const auto& m = venue.metrics;
  acceptance_rate(m.submitted, m.accepted);  // validates the pair
  return ComplianceFlags{m.submitted > kMinSubmitted, acceptance_below_threshold(m.submitted, m.accepted),
                         m.h5_index > kMinH5};
}

TierDecision classify_tier(const Venue& venue) {
  const bool gate = venue.metrics.submitted > kTopMinSubmitted && venue.metrics.h5_index > kTopMinH5;
  switch (venue.manual_rank) {
    case ManualRank::Top:
      if (!gate) {
        throw ClassificationError("venue '" + venue.venue_key +
                                  "' is ranked top but fails submitted > 180 and h5-index > 40");
      }
      return {Tier::Top, std::nullopt};
    case ManualRank::NearTheTop:
      return {Tier::NearTheTop, std::nullopt};
    case ManualRank::None:
      break;
  }
  if (gate) {
    return {Tier::Standard, "venue '" + venue.venue_key +
                                "' passes the top-conference metric gate but has no manual rank"};
  }
  return {Tier::Standard, std::nullopt};
}

std::vector<ClassificationRow> classification_report(const Registry& registry) {
  std::vector<ClassificationRow> rows;
  rows.reserve(registry.venues().size());
  for (const auto& v : registry.venues()) {
    ClassificationRow row;
    row.venue_key = v.venue_key;
    row.acronym = v.acronym;
    row.area_id = v.area_id;
    row.sponsor = v.sponsor;
    row.metrics = v.metrics;
    row.acceptance_rate = acceptance_rate(v.metrics.submitted, v.metrics.accepted);
    row.stated_acceptance_rate = v.stated_acceptance_rate;
    if (v.stated_acceptance_rate) {
      // |100a/s - t/10| > 0.05  <=>  |2000a - 2ts| > s
      const long long a = v.metrics.accepted;
      const long long s = v.metrics.submitted;
      const long long t = v.stated_acceptance_rate->tenths;
      row.rate_discrepancy = std::llabs(2000 * a - 2 * t * s) > s;
    }
    row.flags = check_compliance(v);
    const auto decision = classify_tier(v);
    row.tier = decision.tier;
    row.warning = decision.warning;
    row.min_pages = v.min_pages;
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::ordered_json row_to_json(const ClassificationRow& row) {
  nlohmann::ordered_json j;
  j["venue_key"] = row.venue_key;
  j["acronym"] = row.acronym;
  j["area_id"] = row.area_id;
  j["sponsor"] = row.sponsor;
  j["submitted"] = row.metrics.submitted;
  j["accepted"] = row.metrics.accepted;
  j["acceptance_rate"] = row.acceptance_rate.value();
  j["stated_acceptance_rate"] = row.stated_acceptance_rate
                                    ? nlohmann::ordered_json(row.stated_acceptance_rate->value())
                                    : nlohmann::ordered_json(nullptr);
  j["rate_discrepancy"] = row.rate_discrepancy;
  j["h5_index"] = row.metrics.h5_index;
  j["tier"] = to_string(row.tier);
  j["min_pages"] = row.min_pages;
  j["flags"] = {{"submitted_ok", row.flags.submitted_ok},
                {"acceptance_ok", row.flags.acceptance_ok},
                {"h5_ok", row.flags.h5_ok}};
  j["warning"] = row.warning ? nlohmann::ordered_json(*row.warning) : nlohmann::ordered_json(nullptr);
  return j;
}

std::vector<std::string> report_csv_header() {
  return {"conference",    "sponsor",       "submitted", "accepted",        "accept_rate",
          "h5_index",      "rank",          "pages",     "submitted_ok",    "acceptance_ok",
          "h5_ok",         "stated_accept_rate", "rate_discrepancy", "venue_key", "area_id"};
}

std::vector<std::string> report_csv_fields(const ClassificationRow& row) {
  auto b = [](bool v) { return std::string(v ? "true" : "false"); };
  return {row.acronym,
          row.sponsor,
          std::to_string(row.metrics.submitted),
          std::to_string(row.metrics.accepted),
          row.acceptance_rate.str(),
          std::to_string(row.metrics.h5_index),
          std::string(to_string(row.tier)),
          std::to_string(row.min_pages),
          b(row.flags.submitted_ok),
          b(row.flags.acceptance_ok),
          b(row.flags.h5_ok),
          row.stated_acceptance_rate ? row.stated_acceptance_rate->str() : std::string(),
          b(row.rate_discrepancy),
          row.venue_key,
          row.area_id};
}

std::string render_report_table(const std::vector<ClassificationRow>& rows) {
  const std::vector<std::string> header = {"#",        "Conference", "Sponsor", "Submitted",
                                           "Accepted", "Accept. Rate", "h5-index", "Rank", "Pages"};
  std::vector<std::vector<std::string>> cells;
  std::size_t index = 0;
  for (const auto& r : rows) {
    auto mark = [](std::string s, bool ok) { return ok ? s : s + "*"; };
    cells.push_back({std::to_string(++index), r.acronym, r.sponsor,
                     mark(std::to_string(r.metrics.submitted), r.flags.submitted_ok),
                     std::to_string(r.metrics.accepted),
                     mark(r.acceptance_rate.str(), r.flags.acceptance_ok),
                     mark(std::to_string(r.metrics.h5_index), r.flags.h5_ok),
                     r.tier == Tier::Standard ? "" : std::string(to_string(r.tier)),
                     std::to_string(r.min_pages)});
  }
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    width[c] = header[c].size();
    for (const auto& row : cells) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream out;
  auto emit = [&](const std::vector<std::string>& row) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) line += "  ";
      line += row[c] + std::string(width[c] - row[c].size(), ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << '\n';
  };
  emit(header);
  for (const auto& row : cells) emit(row);
  out << "(* = outside threshold: submitted > 100, acceptance < 30%, h5-index > 20)\n";
  for (const auto& r : rows) {
    if (r.rate_discrepancy) {
      out << "note: " << r.acronym << " stated acceptance rate " << r.stated_acceptance_rate->str()
          << " differs from computed " << r.acceptance_rate.str() << "\n";
    }
    if (r.warning) out << "warning: " << *r.warning << "\n";
  }
  return out.str();
}

}  // namespace pubindex
