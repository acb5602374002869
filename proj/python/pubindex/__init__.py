"""Python access to the pubindex pipeline."""

import json

from ._core import (
    ClassificationError,
    RegistryError,
    Snapshot,
    XmlError,
    acceptance_rate,
    department_score,
    extract_venue_key,
    parse_page_range,
    split_author_name,
)
from . import _core

__all__ = [
    "ClassificationError",
    "RegistryError",
    "Snapshot",
    "XmlError",
    "acceptance_rate",
    "classify",
    "department_score",
    "extract_venue_key",
    "get",
    "parse_page_range",
    "parse_records",
    "parse_xml",
    "split_author_name",
]


def parse_records(path):
    """Records from a DBLP XML file (plain or gzip) or canonical record lines."""
    return json.loads(_core._parse_records_file(str(path)))


def parse_xml(text):
    """Parses XML text; returns records plus error and skip counts."""
    return json.loads(_core._parse_xml_string(text))


def classify(config_dir):
    return json.loads(_core._classify(str(config_dir)))


def get(snapshot, path, **query):
    """(status, decoded JSON body) for a GET against the snapshot."""
    status, body = snapshot._get(path, {k: str(v) for k, v in query.items()})
    return status, json.loads(body)
