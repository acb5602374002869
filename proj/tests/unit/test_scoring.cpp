#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <set>

#include "pubindex/scoring.hpp"
#include "support/oracles.hpp"

using namespace pubindex;

namespace {

const Registry& fixture() {
  static const Registry reg = load_registry(pubindex::testing::fixture_config_dir());
  return reg;
}

const std::vector<IndexedPaper>& fixture_papers() {
  static const std::vector<IndexedPaper> papers = [] {
    std::ifstream in(pubindex::testing::fixture_records(), std::ios::binary);
    return select_papers(parse_records(in), fixture(), YearWindow{2013, 2018});
  }();
  return papers;
}

IndexedPaper paper(std::string key, int year, Tier tier, std::vector<AuthorMatch> matches,
                   std::string venue = "icse", std::string area = "se") {
  IndexedPaper p;
  p.record.record_key = key;
  p.record.title = "T " + key;
  p.venue_key = std::move(venue);
  p.area_id = std::move(area);
  p.year = year;
  p.tier = tier;
  p.matches = std::move(matches);
  return p;
}

// Score with all weights multiplied by k, as an exact integer.
std::int64_t scaled(const TierCounts& c, std::int64_t k) {
  return k * (100 * c.top + 66 * c.near_top + 33 * c.standard);
}

}  // namespace

TEST_CASE("department_score examples") {
  CHECK(department_score({0, 0, 0}).str() == "0.00");
  CHECK(department_score({0, 1, 0}).str() == "0.66");
  CHECK(department_score({3, 2, 3}).str() == "5.31");
  CHECK(department_score({0, 0, 1}).str() == "0.33");
  CHECK(department_score({1, 0, 1}).str() == "1.33");
  CHECK(department_score({0, 2, 0}).str() == "1.32");
  CHECK(department_score({12, 0, 0}).str() == "12.00");
}

TEST_CASE("score properties over [0,10]^3") {
  for (int a = 0; a <= 10; ++a)
    for (int b = 0; b <= 10; ++b)
      for (int c = 0; c <= 10; ++c) {
        const TierCounts t{a, b, c};
        const auto s = department_score(t).hundredths;
        // bounds: 0.33 n <= score <= n
        REQUIRE(33 * t.total() <= s);
        REQUIRE(s <= 100 * t.total());
        // ordering: moving one paper up a tier strictly increases the score
        if (c > 0) REQUIRE(department_score({a, b + 1, c - 1}).hundredths > s);
        if (b > 0) REQUIRE(department_score({a + 1, b - 1, c}).hundredths > s);
        // linearity against every other grid point with a small stride
        for (int a2 = 0; a2 <= 10; a2 += 3)
          for (int b2 = 0; b2 <= 10; b2 += 3)
            for (int c2 = 0; c2 <= 10; c2 += 3) {
              const TierCounts u{a2, b2, c2};
              REQUIRE(department_score(t + u).hundredths == s + department_score(u).hundredths);
            }
      }
}

TEST_CASE("ranking is invariant under positive weight scaling") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<DepartmentScore> scores;
    const int n = 1 + static_cast<int>(rng() % 12);
    for (int i = 0; i < n; ++i) {
      const auto draw = [&](int n) { return static_cast<std::int64_t>(rng() % n); };
      TierCounts c{draw(4), draw(4), draw(6)};
      scores.push_back({"d" + std::to_string(rng() % 100), "se", c, department_score(c)});
    }
    rank_departments(scores);
    for (std::int64_t k : {1, 2, 7, 1000}) {
      auto by_scaled = scores;
      std::stable_sort(by_scaled.begin(), by_scaled.end(), [&](const auto& x, const auto& y) {
        const auto sx = scaled(x.counts, k), sy = scaled(y.counts, k);
        return sx != sy ? sx > sy : x.dept_id < y.dept_id;
      });
      for (std::size_t i = 0; i < scores.size(); ++i) {
        REQUIRE(by_scaled[i].dept_id == scores[i].dept_id);
        REQUIRE(by_scaled[i].counts == scores[i].counts);
      }
    }
  }
}

TEST_CASE("attribute_papers examples") {
  CHECK(attribute_papers(std::vector<IndexedPaper>{}).empty());

  const auto same_dept = attribute_papers(std::vector{paper("p", 2017, Tier::Top, {{"r1", "x"}, {"r2", "x"}})});
  REQUIRE(same_dept.size() == 1);
  CHECK(same_dept.at({"x", "se"}) == TierCounts{1, 0, 0});

  const auto cross = attribute_papers(std::vector{paper("p", 2017, Tier::Standard, {{"r1", "x"}, {"r2", "y"}})});
  CHECK(cross.at({"x", "se"}) == TierCounts{0, 0, 1});
  CHECK(cross.at({"y", "se"}) == TierCounts{0, 0, 1});
}

TEST_CASE("area_stats: tie-adjacent ordering") {
  Registry reg({{"se", "SE"}, {"pl", "PL"}}, {},
               {{"x", "X", InstitutionKind::Federal}, {"y", "Y", InstitutionKind::State}},
               {{"rx", "RX", {"R X"}, "x"}, {"ry", "RY", {"R Y"}, "y"}});
  const std::vector<IndexedPaper> papers = {
      paper("p1", 2017, Tier::Top, {{"rx", "x"}}),
      paper("p2", 2016, Tier::Standard, {{"rx", "x"}}),
      paper("p3", 2016, Tier::NearTheTop, {{"ry", "y"}}),
      paper("p4", 2015, Tier::NearTheTop, {{"ry", "y"}}),
  };
  const auto stats = area_stats(papers, reg, "se");
  CHECK(stats.total_papers == 4);
  REQUIRE(stats.department_scores.size() == 2);
  CHECK(stats.department_scores[0].dept_id == "x");
  CHECK(stats.department_scores[0].score.str() == "1.33");
  CHECK(stats.department_scores[1].dept_id == "y");
  CHECK(stats.department_scores[1].score.str() == "1.32");

  const auto empty = area_stats(papers, reg, "pl");
  CHECK(empty.total_papers == 0);
  CHECK(empty.department_scores.empty());
  CHECK(empty.professor_counts.empty());

  CHECK_THROWS_AS(area_stats(papers, reg, "nope"), ScoringError);
}

TEST_CASE("one professor with three papers counts once") {
  Registry reg({{"se", "SE"}}, {}, {{"x", "X", InstitutionKind::Federal}}, {{"rx", "RX", {"R X"}, "x"}});
  const std::vector<IndexedPaper> papers = {paper("a", 2017, Tier::Top, {{"rx", "x"}}),
                                            paper("b", 2016, Tier::Top, {{"rx", "x"}}),
                                            paper("c", 2015, Tier::Top, {{"rx", "x"}})};
  const auto stats = area_stats(papers, reg, "se");
  REQUIRE(stats.professor_counts.size() == 1);
  CHECK(stats.professor_counts[0] == std::pair<std::string, std::int64_t>{"x", 1});
}

TEST_CASE("sample corpus statistics, hand-computed") {
  const auto stats = area_stats(fixture_papers(), fixture(), "se");
  CHECK(stats.total_papers == 12);
  struct Expected { const char* dept; TierCounts counts; const char* score; };
  const Expected expected[] = {{"ufmg", {1, 2, 2}, "2.98"},
                               {"usp", {2, 1, 0}, "2.66"},
                               {"pucrio", {1, 0, 3}, "1.99"},
                               {"ifsp", {1, 0, 1}, "1.33"},
                               {"ufu", {1, 0, 1}, "1.33"}};
  REQUIRE(stats.department_scores.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CAPTURE(expected[i].dept);
    CHECK(stats.department_scores[i].dept_id == expected[i].dept);
    CHECK(stats.department_scores[i].counts == expected[i].counts);
    CHECK(stats.department_scores[i].score.str() == expected[i].score);
  }
  const std::vector<std::pair<std::string, std::int64_t>> profs = {
      {"ifsp", 1}, {"pucrio", 2}, {"ufmg", 2}, {"ufu", 2}, {"usp", 2}};
  CHECK(stats.professor_counts == profs);
}

TEST_CASE("conservation: summed counts vs distinct papers") {
  auto conserve = [](const std::vector<IndexedPaper>& papers) {
    std::int64_t summed = 0;
    for (const auto& [key, c] : attribute_papers(papers)) summed += c.total();
    bool spans = false;
    std::int64_t distinct = 0;
    for (const auto& p : papers) {
      ++distinct;
      std::set<std::string> depts;
      for (const auto& m : p.matches) depts.insert(m.dept_id);
      spans = spans || depts.size() > 1;
    }
    REQUIRE(summed >= distinct);
    REQUIRE((summed == distinct) == !spans);
    return summed - distinct;
  };
  CHECK(conserve(fixture_papers()) == 4);
  const auto corpus = pubindex::testing::make_synthetic_corpus(1000, 21);
  conserve(select_papers(corpus.records, corpus.registry, YearWindow{}));
  std::vector<IndexedPaper> single;
  for (const auto& p : fixture_papers()) {
    if (p.matches.size() == 1) single.push_back(p);
  }
  CHECK(conserve(single) == 0);
}

TEST_CASE("professor_papers examples") {
  const auto& papers = fixture_papers();
  const auto bn = professor_papers(papers, fixture(), "bnogueira");
  REQUIRE(bn.size() == 2);
  CHECK(bn[0].year == 2014);
  CHECK(bn[1].year == 2013);
  CHECK(bn[0].doi == "10.1109/ICSME.2014.30");
  REQUIRE(bn[0].affiliations.size() == 2);
  CHECK(bn[0].affiliations[1].dept_id == "pucrio");

  const auto pa = professor_papers(papers, fixture(), "palbuquerque");
  REQUIRE(pa.size() == 2);
  CHECK(pa[0].year == 2018);
  CHECK(pa[1].year == 2017);

  // shared paper shows up for both authors
  const auto rt = professor_papers(papers, fixture(), "rteixeira");
  CHECK(std::any_of(rt.begin(), rt.end(), [](const auto& v) { return v.record_key == "conf/sigsoft/AlbuquerqueT17"; }));

  CHECK(professor_papers(papers, fixture(), "hcastro").empty());
  CHECK_THROWS_AS(professor_papers(papers, fixture(), "nobody"), ScoringError);
}

TEST_CASE("professor_papers sorted by year desc then venue") {
  const auto mt = professor_papers(fixture_papers(), fixture(), "mtvieira");
  REQUIRE(mt.size() == 3);
  for (std::size_t i = 1; i < mt.size(); ++i) {
    CHECK((mt[i - 1].year > mt[i].year || (mt[i - 1].year == mt[i].year && mt[i - 1].venue_key <= mt[i].venue_key)));
  }
}

TEST_CASE("json shapes") {
  CHECK(to_json(TierCounts{1, 2, 3}).dump() == R"({"A":1,"B":2,"C":3})");
  const auto stats = area_stats(fixture_papers(), fixture(), "se");
  const auto j = to_json(stats, fixture());
  CHECK(j["total_papers"] == 12);
  CHECK(j["department_scores"][0]["score_text"] == "2.98");
}
