#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "pubindex/selection.hpp"
#include "support/oracles.hpp"

using namespace pubindex;

namespace {

const Registry& fixture() {
  static const Registry reg = load_registry(pubindex::testing::fixture_config_dir());
  return reg;
}

std::vector<PublicationRecord> fixture_records() {
  std::ifstream in(pubindex::testing::fixture_records(), std::ios::binary);
  return parse_records(in);
}

PublicationRecord record(std::string key, std::string venue, int year, std::string pages,
                         std::vector<std::string> authors) {
  PublicationRecord r;
  r.record_key = std::move(key);
  r.kind = RecordKind::ConferencePaper;
  r.venue_key = std::move(venue);
  r.year = year;
  r.pages = parse_page_range(pages);
  for (const auto& a : authors) r.authors.push_back(split_author_name(a));
  return r;
}

}  // namespace

TEST_CASE("is_full_paper examples") {
  const Venue& icse = *fixture().find_venue("icse");
  CHECK(is_full_paper(record("k", "icse", 2017, "1-12", {}), icse));
  CHECK_FALSE(is_full_paper(record("k", "icse", 2017, "1-11", {}), icse));
  CHECK_FALSE(is_full_paper(record("k", "icse", 2017, "400-403", {}), icse));
  CHECK_FALSE(is_full_paper(record("k", "icse", 2017, "", {}), icse));
  CHECK_FALSE(is_full_paper(record("k", "icse", 2017, "xii", {}), icse));
}

TEST_CASE("in_window examples") {
  const YearWindow w{2013, 2018};
  CHECK(in_window(2013, w));
  CHECK(in_window(2018, w));
  CHECK_FALSE(in_window(2012, w));
  CHECK_FALSE(in_window(2019, w));
  CHECK(in_window(2020, YearWindow::make(2020, 2020)));
  CHECK_THROWS_AS(YearWindow::make(2019, 2018), std::invalid_argument);
}

TEST_CASE("match_authors examples") {
  const auto& reg = fixture();
  const auto idx = alias_index(reg);
  const auto one = match_authors(record("k", "icse", 2017, "1-12", {"Marcos Tadeu Vieira", "Unknown Person"}), idx, reg);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == AuthorMatch{"mtvieira", "ufmg"});

  CHECK(match_authors(record("k", "icse", 2017, "1-12", {"Unknown Person"}), idx, reg).empty());

  const auto two = match_authors(record("k", "icse", 2017, "1-12", {"Marcos Tadeu Vieira", "Ana Souza"}), idx, reg);
  CHECK(two == std::vector<AuthorMatch>{{"mtvieira", "ufmg"}, {"asouza", "ufmg"}});

  // same researcher under two aliases is one match
  const auto dup = match_authors(record("k", "icse", 2017, "1-12", {"M. T. Vieira", "Marcos Tadeu Vieira"}), idx, reg);
  CHECK(dup.size() == 1);
}

TEST_CASE("match_authors is suffix-aware in both directions") {
  const auto& reg = fixture();
  const auto idx = alias_index(reg);
  CHECK(match_authors(record("k", "icse", 2017, "1-12", {"João Silva 0002"}), idx, reg).size() == 1);
  CHECK(match_authors(record("k", "icse", 2017, "1-12", {"João Silva"}), idx, reg).empty());
  CHECK(match_authors(record("k", "icse", 2017, "1-12", {"João Silva 0003"}), idx, reg).empty());
  CHECK(match_authors(record("k", "icse", 2017, "1-12", {"Ana Souza 0001"}), idx, reg).empty());
  // accent folding
  CHECK(match_authors(record("k", "icse", 2017, "1-12", {"Luiza Ramos"}), idx, reg).size() == 1);
}

TEST_CASE("extract_doi") {
  CHECK(extract_doi({"https://doi.org/10.1109/X.2017.1"}) == "10.1109/X.2017.1");
  CHECK(extract_doi({"http://dx.doi.org/10.1/a"}) == "10.1/a");
  CHECK(extract_doi({"https://dl.acm.org/x", "https://doi.org/10.1/b", "https://doi.org/10.1/c"}) == "10.1/b");
  CHECK_FALSE(extract_doi({}));
  CHECK_FALSE(extract_doi({"https://example.org/10.1/x"}));
  CHECK_FALSE(extract_doi({"https://doi.org/abc"}));
}

TEST_CASE("six-record fixture: one per drop reason plus two kept") {
  std::vector<PublicationRecord> recs = {
      record("r1", "xyz", 2017, "1-12", {"Ana Souza"}),                 // wrong venue
      record("r2", "icse", 2017, "1-4", {"Ana Souza"}),                 // short
      record("r3", "icse", 2010, "1-12", {"Ana Souza"}),                // outside window
      record("r4", "icse", 2017, "1-12", {"Nobody Known"}),             // no registered author
      record("r5", "icse", 2015, "1-12", {"Ana Souza"}),                // kept
      record("r6", "kbse", 2016, "1-12", {"Carla Mendes", "Someone"}),  // kept
  };
  recs[4].ee_links = {"https://doi.org/10.1109/X.2017.1"};
  DropReport report;
  const auto out = select_papers(recs, fixture(), YearWindow{2013, 2018}, &report);
  REQUIRE(out.size() == 2);
  CHECK(out[0].record.record_key == "r6");
  CHECK(out[0].tier == Tier::NearTheTop);
  CHECK(out[0].matches == std::vector<AuthorMatch>{{"cmendes", "ufu"}});
  CHECK(out[1].record.record_key == "r5");
  CHECK(out[1].doi == "10.1109/X.2017.1");
  CHECK(out[1].tier == Tier::Top);
  CHECK(out[1].area_id == "se");
  CHECK(report.examined == 6);
  CHECK(report.kept == 2);
  CHECK(report.dropped.at(DropReason::UnknownVenue) == 1);
  CHECK(report.dropped.at(DropReason::NotFullPaper) == 1);
  CHECK(report.dropped.at(DropReason::OutOfWindow) == 1);
  CHECK(report.dropped.at(DropReason::NoRegisteredAuthor) == 1);
}

TEST_CASE("first failing check names the drop") {
  DropReport report;
  // unknown venue and out of window: venue wins
  const std::vector<PublicationRecord> recs = {record("a", "xyz", 1990, "", {}),
                                               record("b", "icse", 1990, "", {}),
                                               record("c", "icse", 2015, "", {})};
  CHECK(select_papers(recs, fixture(), YearWindow{}, &report).empty());
  CHECK(report.dropped.at(DropReason::UnknownVenue) == 1);
  CHECK(report.dropped.at(DropReason::OutOfWindow) == 1);
  CHECK(report.dropped.at(DropReason::NotFullPaper) == 1);
  CHECK(report.to_json()["dropped"]["unknown_venue"] == 1);
}

TEST_CASE("record without year is out of window") {
  auto r = record("k", "icse", 2015, "1-12", {"Ana Souza"});
  r.year.reset();
  DropReport report;
  CHECK(select_papers(std::vector{r}, fixture(), YearWindow{}, &report).empty());
  CHECK(report.dropped.at(DropReason::OutOfWindow) == 1);
}

TEST_CASE("empty stream") {
  DropReport report;
  CHECK(select_papers(std::vector<PublicationRecord>{}, fixture(), YearWindow{}, &report).empty());
  CHECK(report.examined == 0);
}

TEST_CASE("sample corpus selection, hand-enumerated") {
  const auto recs = fixture_records();
  DropReport report;
  const auto out = select_papers(recs, fixture(), YearWindow{2013, 2018}, &report);
  std::vector<std::string> keys;
  for (const auto& p : out) keys.push_back(p.record.record_key);
  CHECK(keys == std::vector<std::string>{
                    "conf/esem/Mendes18", "conf/icse/AlbuquerqueF18", "conf/msr/Fonseca18",
                    "conf/icse/VieiraS17", "conf/sigsoft/AlbuquerqueT17", "conf/icse/MendesS16",
                    "conf/issta/Souza16", "conf/models/Teixeira16", "conf/kbse/RamosV15",
                    "conf/icsm/SouzaN14", "conf/fase/NogueiraT13", "conf/kbse/Vieira13"});
  CHECK(report.examined == 19);
  CHECK(report.dropped.at(DropReason::UnknownVenue) == 2);
  CHECK(report.dropped.at(DropReason::OutOfWindow) == 2);
  CHECK(report.dropped.at(DropReason::NotFullPaper) == 2);
  CHECK(report.dropped.at(DropReason::NoRegisteredAuthor) == 1);

  auto find = [&](std::string_view key) {
    return *std::find_if(out.begin(), out.end(), [&](const auto& p) { return p.record.record_key == key; });
  };
  CHECK(find("conf/sigsoft/AlbuquerqueT17").doi == "10.1145/3106237.3106250");
  CHECK(find("conf/icsm/SouzaN14").doi == "10.1109/ICSME.2014.30");
  CHECK_FALSE(find("conf/models/Teixeira16").doi);
  CHECK(find("conf/issta/Souza16").venue_key == "issta");
  CHECK(find("conf/kbse/RamosV15").matches ==
        std::vector<AuthorMatch>{{"lramos", "usp"}, {"mtvieira", "ufmg"}});
  CHECK(find("conf/icse/MendesS16").matches ==
        std::vector<AuthorMatch>{{"cmendes", "ufu"}, {"jsilva", "ufu"}});
}

TEST_CASE("output invariants over the synthetic corpus") {
  const auto corpus = pubindex::testing::make_synthetic_corpus(1000, 42);
  const YearWindow w{2013, 2018};
  const auto out = select_papers(corpus.records, corpus.registry, w);
  CHECK_FALSE(out.empty());
  for (const auto& p : out) {
    const Venue* v = corpus.registry.find_venue(p.venue_key);
    REQUIRE(v);
    CHECK(p.area_id == v->area_id);
    CHECK(in_window(p.year, w));
    REQUIRE(p.record.pages.count);
    CHECK(*p.record.pages.count >= v->min_pages);
    CHECK_FALSE(p.matches.empty());
    std::set<std::string> ids;
    for (const auto& m : p.matches) CHECK(ids.insert(m.researcher_id).second);
    if (p.doi) CHECK(p.doi->rfind("10.", 0) == 0);
  }
}

TEST_CASE("selection equals the brute-force oracle") {
  for (std::uint32_t seed : {1u, 2u, 3u, 99u}) {
    const auto corpus = pubindex::testing::make_synthetic_corpus(1000, seed);
    const auto out = select_papers(corpus.records, corpus.registry, YearWindow{2014, 2017});
    std::vector<pubindex::testing::ExpectedPaper> got;
    for (const auto& p : out) got.push_back(pubindex::testing::to_expected(p));
    CHECK(got == pubindex::testing::selection_oracle(corpus.records, corpus.registry, 2014, 2017));
  }
}

TEST_CASE("output order does not depend on input order") {
  auto corpus = pubindex::testing::make_synthetic_corpus(500, 5);
  const auto first = select_papers(corpus.records, corpus.registry, YearWindow{});
  std::mt19937 rng(8);
  std::shuffle(corpus.records.begin(), corpus.records.end(), rng);
  CHECK(select_papers(corpus.records, corpus.registry, YearWindow{}) == first);
}

TEST_CASE("indexed paper lines round-trip") {
  const auto out = select_papers(fixture_records(), fixture(), YearWindow{});
  std::stringstream lines;
  for (const auto& p : out) lines << paper_to_line(p) << '\n';
  CHECK(read_paper_lines(lines) == out);
}
