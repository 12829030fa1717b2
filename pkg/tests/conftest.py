import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from deprscan.depdb import DeprecationDb
from deprscan.extractor import build_alias_table, extract_library

FIXTURES = Path(__file__).parent / "fixtures"
MINILIB = FIXTURES / "minilib" / "lib"
MEGALIB = FIXTURES / "corpus" / "megalib"
CLIENT_PROJ = FIXTURES / "client_proj"
GOLDEN = FIXTURES / "golden"


@pytest.fixture(scope="session")
def minilib_records():
    return extract_library(MINILIB, "lib")


@pytest.fixture(scope="session")
def minilib_db(minilib_records):
    aliases = build_alias_table(MINILIB, minilib_records)
    return DeprecationDb.from_records(minilib_records, "lib", "0.2.0", aliases)


@pytest.fixture(scope="session")
def minilib_db_path(tmp_path_factory, minilib_db):
    from deprscan.depdb import save_db

    path = tmp_path_factory.mktemp("db") / "minilib.json"
    save_db(minilib_db, path)
    return path


def pytest_runtest_logreport(report):
    # one pass/fail line per acceptance criterion
    if report.when == "call" and "test_acceptance" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        print(f"\nACCEPTANCE {report.outcome.upper()}: {name}")
