import json

import jsonschema
import pytest

import pubindex


def test_helpers():
    assert pubindex.parse_page_range("123--134") == ("123--134", 12)
    assert pubindex.parse_page_range("xii") == ("xii", None)
    assert pubindex.split_author_name("João Silva 0002") == ("João Silva", "0002", "joao silva")
    assert pubindex.extract_venue_key("conf/kbse/2017") == "kbse"
    assert pubindex.extract_venue_key("", "ICSE") == "icse"
    assert pubindex.acceptance_rate(415, 68) == pytest.approx(16.4)
    assert pubindex.department_score(3, 2, 3) == "5.31"
    with pytest.raises(pubindex.ClassificationError):
        pubindex.acceptance_rate(0, 0)


def test_parse_records(records):
    recs = pubindex.parse_records(records)
    assert len(recs) == 19
    first = recs[0]
    assert first["key"] == "conf/icse/VieiraS17"
    assert first["pages"] == {"raw": "100-111", "count": 12}


def test_parse_xml_errors():
    out = pubindex.parse_xml("<dblp><inproceedings key='a'><author>X &nope;</author></inproceedings></dblp>")
    assert out["records"] == []
    assert out["record_errors"] == 1
    with pytest.raises(pubindex.XmlError):
        pubindex.parse_xml("<dblp><a></b></dblp>")


def test_classify(config_dir):
    rows = pubindex.classify(config_dir)
    assert len(rows) == 16
    issre = next(r for r in rows if r["acronym"] == "ISSRE")
    assert issre["acceptance_rate"] == pytest.approx(31.2)
    assert issre["rate_discrepancy"] is True
    assert [r["tier"] for r in rows[:3]] == ["top", "top", "near-the-top"]


def test_registry_error(tmp_path):
    with pytest.raises(pubindex.RegistryError):
        pubindex.classify(tmp_path / "missing")


@pytest.mark.parametrize(
    "path,schema",
    [
        ("/areas", "areas"),
        ("/areas/se/conferences", "area_conferences"),
        ("/areas/se/departments", "area_departments"),
        ("/areas/se/papers", "area_papers"),
        ("/departments/ufmg", "department"),
        ("/professors/bnogueira/papers", "professor_papers"),
        ("/meta", "meta"),
        ("/professors/unknown-id/papers", "problem"),
    ],
)
def test_endpoints_match_schemas(snapshot, source_dir, path, schema):
    status, body = pubindex.get(snapshot, path)
    assert (status == 200) == (schema != "problem")
    schema_doc = json.loads((source_dir / "schemas" / f"{schema}.schema.json").read_text())
    jsonschema.Draft202012Validator(schema_doc).validate(body)


def test_area_list_and_paging(snapshot):
    status, areas = pubindex.get(snapshot, "/areas")
    assert status == 200 and len(areas) == 18
    status, page = pubindex.get(snapshot, "/areas/se/papers", offset=10, limit=5)
    assert status == 200 and page["total"] == 12 and len(page["items"]) == 2
    status, _ = pubindex.get(snapshot, "/areas/se/papers", limit=0)
    assert status == 400
    assert snapshot.paper_count == 12


def test_export_matches_golden(snapshot, source_dir, tmp_path):
    snapshot.export(str(tmp_path))
    for name in ["areas.json", "conferences.csv", "departments.csv", "papers.jsonl"]:
        assert (tmp_path / name).read_bytes() == (source_dir / "tests" / "golden" / name).read_bytes()
