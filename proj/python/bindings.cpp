#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

#include "pubindex/api.hpp"
#include "pubindex/classifier.hpp"
#include "pubindex/dblp.hpp"
#include "pubindex/registry.hpp"
#include "pubindex/scoring.hpp"
#include "pubindex/selection.hpp"
#include "pubindex/snapshot.hpp"

namespace py = pybind11;
using namespace pubindex;

namespace {

// Structured results cross the boundary as JSON text; the Python package
// decodes them.
std::string dumps(const nlohmann::ordered_json& j) { return j.dump(); }

std::string parse_records_json(const std::string& path) {
  auto records = load_records(path);
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : records) arr.push_back(record_to_json(r));
  return dumps(arr);
}

std::string parse_xml_string_json(const std::string& xml) {
  std::istringstream in(xml);
  IngestStats stats;
  auto records = parse_records(in, &stats);
  nlohmann::ordered_json j;
  j["records"] = nlohmann::ordered_json::array();
  for (const auto& r : records) j["records"].push_back(record_to_json(r));
  j["record_errors"] = stats.record_errors;
  j["skipped"] = stats.skipped_by_kind;
  return dumps(j);
}

std::string classify_json(const std::string& config_dir) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : classification_report(load_registry(config_dir))) arr.push_back(row_to_json(r));
  return dumps(arr);
}

class PySnapshot {
 public:
  PySnapshot(const std::string& config_dir, const std::string& records, int from, int to)
      : snap_(std::make_shared<const Snapshot>(
            build_snapshot(config_dir, records, YearWindow::make(from, to)))) {}

  py::tuple get(const std::string& path, const std::map<std::string, std::string>& query) const {
    api::Query q(query.begin(), query.end());
    const auto r = api::handle_get(*snap_, path, q);
    return py::make_tuple(r.status, r.body);
  }

  void export_to(const std::string& out_dir) const { write_exports(*snap_, out_dir); }
  std::string generated_at() const { return snap_->generated_at; }
  std::size_t paper_count() const { return snap_->papers.size(); }

 private:
  std::shared_ptr<const Snapshot> snap_;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bibliometric indexing core";

  py::register_exception<xml::XmlError>(m, "XmlError", PyExc_ValueError);
  py::register_exception<RegistryError>(m, "RegistryError", PyExc_ValueError);
  py::register_exception<ClassificationError>(m, "ClassificationError", PyExc_ValueError);

  m.def("parse_page_range", [](const std::string& raw) {
    const auto info = parse_page_range(raw);
    return py::make_tuple(info.raw, info.count ? py::cast(*info.count) : py::none());
  });
  m.def("split_author_name", [](const std::string& raw) {
    const auto name = split_author_name(raw);
    return py::make_tuple(name.display,
                          name.disambiguation_suffix ? py::cast(*name.disambiguation_suffix) : py::none(),
                          name.normalized);
  });
  m.def("extract_venue_key", &extract_venue_key, py::arg("crossref"), py::arg("booktitle") = "");
  m.def("acceptance_rate", [](int submitted, int accepted) {
    return acceptance_rate(submitted, accepted).value();
  });
  m.def("department_score", [](std::int64_t a, std::int64_t b, std::int64_t c) {
    return department_score(TierCounts{a, b, c}).str();
  });
  m.def("_parse_records_file", &parse_records_json);
  m.def("_parse_xml_string", &parse_xml_string_json);
  m.def("_classify", &classify_json);

  py::class_<PySnapshot>(m, "Snapshot")
      .def(py::init<const std::string&, const std::string&, int, int>(), py::arg("config_dir"),
           py::arg("records"), py::arg("start_year") = 2013, py::arg("end_year") = 2018)
      .def("_get", &PySnapshot::get, py::arg("path"), py::arg("query") = std::map<std::string, std::string>{})
      .def("export", &PySnapshot::export_to, py::arg("out_dir"))
      .def_property_readonly("generated_at", &PySnapshot::generated_at)
      .def_property_readonly("paper_count", &PySnapshot::paper_count);
}
