// pubindex: command-line front end for the indexing pipeline.

#include <CLI11.hpp>

#include <csignal>
#include <fstream>
#include <iostream>
#include <thread>

#include "pubindex/api.hpp"
#include "pubindex/classifier.hpp"
#include "pubindex/csv.hpp"
#include "pubindex/dblp.hpp"
#include "pubindex/input.hpp"
#include "pubindex/registry.hpp"
#include "pubindex/scoring.hpp"
#include "pubindex/selection.hpp"
#include "pubindex/snapshot.hpp"

using namespace pubindex;

namespace {

struct WindowArgs {
  int from = 2013;
  int to = 2018;
};

void add_window(CLI::App* cmd, WindowArgs& w) {
  cmd->add_option("--from", w.from, "First year of the window (inclusive)")->capture_default_str();
  cmd->add_option("--to", w.to, "Last year of the window (inclusive)")->capture_default_str();
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path == "-") return std::cout;
  file.open(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot write '" + path + "'");
  return file;
}

int run_ingest(const std::string& input, const std::string& output, bool print_stats) {
  auto in = open_input(input);
  std::ofstream file;
  std::ostream& out = open_output(output, file);
  RecordReader reader(*in);
  while (auto rec = reader.next()) out << record_to_line(*rec) << '\n';
  const auto& stats = reader.stats();
  for (const auto& e : stats.errors) {
    std::cerr << "warning: record '" << e.record_key << "' at byte " << e.offset
              << " skipped: " << e.message << '\n';
  }
  if (print_stats) {
    std::cerr << "records: " << stats.records << '\n';
    std::cerr << "record errors: " << stats.record_errors << '\n';
    for (const auto& [kind, n] : stats.skipped_by_kind) {
      std::cerr << "skipped " << kind << ": " << n << '\n';
    }
  }
  return 0;
}

int run_validate(const std::string& config_dir) {
  const Registry registry = load_registry(config_dir);
  alias_index(registry);
  for (const auto& row : classification_report(registry)) {
    if (row.warning) std::cerr << "warning: " << *row.warning << '\n';
  }
  std::cout << "ok: " << registry.areas().size() << " areas, " << registry.venues().size() << " venues, "
            << registry.departments().size() << " departments, " << registry.researchers().size()
            << " researchers\n";
  return 0;
}

int run_classify(const std::string& config_dir, const std::string& format) {
  const Registry registry = load_registry(config_dir);
  const auto rows = classification_report(registry);
  if (format == "json") {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) arr.push_back(row_to_json(r));
    std::cout << arr.dump(2) << '\n';
  } else if (format == "csv") {
    csv::write_row(std::cout, report_csv_header());
    for (const auto& r : rows) csv::write_row(std::cout, report_csv_fields(r));
  } else {
    std::cout << render_report_table(rows);
  }
  for (const auto& r : rows) {
    if (r.rate_discrepancy) {
      std::cerr << "note: " << r.acronym << " stated acceptance rate " << r.stated_acceptance_rate->str()
                << " differs from computed " << r.acceptance_rate.str() << '\n';
    }
  }
  return 0;
}

int run_select(const std::string& records_path, const std::string& config_dir, const WindowArgs& w,
               const std::string& output, const std::string& drop_report) {
  const Registry registry = load_registry(config_dir);
  const auto records = load_records(records_path);
  DropReport report;
  const auto papers = select_papers(records, registry, YearWindow::make(w.from, w.to), &report);
  std::ofstream file;
  std::ostream& out = open_output(output, file);
  for (const auto& p : papers) out << paper_to_line(p) << '\n';
  if (!drop_report.empty()) {
    std::ofstream rf;
    open_output(drop_report, rf) << report.to_json().dump(2) << '\n';
  }
  return 0;
}

int run_score(const std::string& papers_path, const std::string& config_dir, const std::string& area,
              const std::string& format) {
  const Registry registry = load_registry(config_dir);
  auto in = open_input(papers_path);
  const auto papers = read_paper_lines(*in);
  std::vector<AreaStats> stats;
  if (area == "all") {
    for (const auto& a : registry.areas()) stats.push_back(area_stats(papers, registry, a.area_id));
  } else {
    stats.push_back(area_stats(papers, registry, area));
  }
  if (format == "csv") {
    std::cout << department_scores_csv(stats, registry);
  } else {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& s : stats) arr.push_back(to_json(s, registry));
    std::cout << arr.dump(2) << '\n';
  }
  return 0;
}

std::pair<std::string, int> parse_bind(const std::string& bind) {
  const auto colon = bind.rfind(':');
  if (colon == std::string::npos) throw std::runtime_error("--bind must be host:port");
  return {bind.substr(0, colon), std::stoi(bind.substr(colon + 1))};
}

int run_serve(const std::string& config_dir, const std::string& records, const std::string& bind,
              const WindowArgs& w, const std::string& ui_dir) {
  const YearWindow window = YearWindow::make(w.from, w.to);
  SnapshotStore store(std::make_shared<const Snapshot>(build_snapshot(config_dir, records, window)));
  const auto [host, port] = parse_bind(bind);

  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  sigaddset(&signals, SIGHUP);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  ApiServer server(store, ui_dir.empty() ? std::nullopt : std::optional<std::string>(ui_dir));
  std::thread watcher([&] {
    for (;;) {
      int sig = 0;
      sigwait(&signals, &sig);
      if (sig == SIGHUP) {
        try {
          store.replace(std::make_shared<const Snapshot>(build_snapshot(config_dir, records, window)));
          std::cerr << "re-indexed\n";
        } catch (const std::exception& e) {
          std::cerr << "re-index failed, keeping previous snapshot: " << e.what() << '\n';
        }
        continue;
      }
      server.stop();
      return;
    }
  });
  std::cerr << "serving on " << host << ':' << port << '\n';
  const bool ok = server.listen(host, port);
  if (!ok) {
    std::cerr << "error: cannot listen on " << bind << '\n';
    pthread_kill(watcher.native_handle(), SIGTERM);
  }
  watcher.join();
  return ok ? 0 : 1;
}

int run_export(const std::string& config_dir, const std::string& records, const WindowArgs& w,
               const std::string& out_dir) {
  const Snapshot snap = build_snapshot(config_dir, records, YearWindow::make(w.from, w.to));
  write_exports(snap, out_dir);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Index DBLP publications of tracked venues and publish department statistics"};
  app.require_subcommand(1);

  std::string input = "-", output = "-", config_dir, records, papers, format, area = "all";
  std::string drop_report, bind = "127.0.0.1:8080", out_dir, ui_dir;
  bool stats = false;
  WindowArgs window;

  auto* ingest = app.add_subcommand("ingest", "Parse a DBLP XML dump into canonical record lines");
  ingest->add_option("--input", input, "XML file, optionally gzip; '-' for stdin")->capture_default_str();
  ingest->add_option("--output", output, "Output file; '-' for stdout")->capture_default_str();
  ingest->add_flag("--stats", stats, "Print skipped and error counts to stderr");

  auto* validate = app.add_subcommand("validate", "Check the configuration tables");
  validate->add_option("--config-dir", config_dir)->required();

  auto* classify = app.add_subcommand("classify", "Venue compliance flags and tiers");
  classify->add_option("--config-dir", config_dir)->required();
  std::string classify_format = "table";
  classify->add_option("--format", classify_format)
      ->check(CLI::IsMember({"table", "csv", "json"}))
      ->capture_default_str();

  auto* select = app.add_subcommand("select", "Select indexed papers from records");
  select->add_option("--records", records, "Canonical record lines or DBLP XML")->required();
  select->add_option("--config-dir", config_dir)->required();
  add_window(select, window);
  select->add_option("--output", output)->capture_default_str();
  select->add_option("--drop-report", drop_report, "Write drop counts as JSON");

  auto* score = app.add_subcommand("score", "Department scores per area");
  score->add_option("--papers", papers, "Indexed paper lines from 'select'")->required();
  score->add_option("--config-dir", config_dir)->required();
  score->add_option("--area", area, "Area id or 'all'")->capture_default_str();
  std::string score_format = "json";
  score->add_option("--format", score_format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

  auto* serve = app.add_subcommand("serve", "Serve statistics over HTTP (SIGHUP re-indexes)");
  serve->add_option("--config-dir", config_dir)->required();
  serve->add_option("--records", records)->required();
  serve->add_option("--bind", bind)->capture_default_str();
  serve->add_option("--ui-dir", ui_dir, "Static dashboard assets served under /ui");
  add_window(serve, window);

  auto* exp = app.add_subcommand("export", "Write areas.json, conferences.csv, departments.csv, papers.jsonl");
  exp->add_option("--config-dir", config_dir)->required();
  exp->add_option("--records", records)->required();
  exp->add_option("--out-dir", out_dir)->required();
  add_window(exp, window);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest) return run_ingest(input, output, stats);
    if (*validate) return run_validate(config_dir);
    if (*classify) return run_classify(config_dir, classify_format);
    if (*select) return run_select(records, config_dir, window, output, drop_report);
    if (*score) return run_score(papers, config_dir, area, score_format);
    if (*serve) return run_serve(config_dir, records, bind, window, ui_dir);
    if (*exp) return run_export(config_dir, records, window, out_dir);
  } catch (const xml::XmlError& e) {
    std::cerr << "error: malformed XML: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
