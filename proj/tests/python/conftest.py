import os
import pathlib

import pytest

SOURCE = pathlib.Path(os.environ.get("PUBINDEX_SOURCE_DIR", pathlib.Path(__file__).resolve().parents[2]))


@pytest.fixture(scope="session")
def source_dir():
    return SOURCE


@pytest.fixture(scope="session")
def config_dir():
    return SOURCE / "data" / "fixtures" / "config"


@pytest.fixture(scope="session")
def records():
    return SOURCE / "data" / "fixtures" / "dblp_sample.xml"


@pytest.fixture(scope="session")
def snapshot(config_dir, records):
    import pubindex

    return pubindex.Snapshot(str(config_dir), str(records))
