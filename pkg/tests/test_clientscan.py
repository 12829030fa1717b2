import pytest

from conftest import CLIENT_PROJ
from deprscan.clientscan import AliasMap, build_alias_map, resolve_usage, scan_file
from deprscan.depdb import lookup
from deprscan.sourcetree import ParseError, parse_file, read_source


def alias_map(src):
    return build_alias_map(parse_file("client.py", src))


class TestBuildAliasMap:
    def test_import_as(self):
        m = alias_map("import numpy as np\n")
        assert m.bindings == {"np": "numpy"}

    def test_from_import_as(self):
        m = alias_map("from sklearn.utils import safe_indexing as si\n")
        assert m.bindings == {"si": "sklearn.utils.safe_indexing"}

    def test_empty(self):
        m = alias_map("")
        assert m.bindings == {} and m.star_modules == []

    def test_star_import(self):
        m = alias_map("from lib.b import *\n")
        assert m.star_modules == ["lib.b"]

    def test_later_binding_shadows(self):
        m = alias_map("import numpy as np\nimport numpy2 as np\n")
        assert m.bindings["np"] == "numpy2"

    def test_relative_imports_recorded_and_ignored(self):
        m = alias_map("from . import x\n")
        assert m.bindings == {}
        assert len(m.unresolved_relative) == 1

    def test_plain_import_binds_top_name(self):
        m = alias_map("import lib.a\n")
        assert m.bindings == {"lib": "lib"}


class TestResolveUsage:
    def test_prefix_substitution(self):
        m = AliasMap(bindings={"np": "numpy"})
        assert [c.fqn for c in resolve_usage("np.trapz", m)] == ["numpy.trapz"]

    def test_direct_alias(self):
        m = AliasMap(bindings={"si": "sklearn.utils.safe_indexing"})
        assert [c.fqn for c in resolve_usage("si", m)] == ["sklearn.utils.safe_indexing"]

    def test_unbound_name(self):
        assert resolve_usage("local_helper", AliasMap()) == []

    def test_longest_prefix_wins(self):
        m = AliasMap(bindings={"a": "liba", "a.b": "libab"})
        assert [c.fqn for c in resolve_usage("a.b.f", m)] == ["libab.f"]

    def test_star_candidates_after_direct(self):
        m = AliasMap(bindings={"g": "lib.b.g"}, star_modules=["other.mod"])
        cands = resolve_usage("g", m)
        assert [(c.fqn, c.from_star) for c in cands] == [
            ("lib.b.g", False),
            ("other.mod.g", True),
        ]


def scan_fixture(name, db):
    path = CLIENT_PROJ / name
    return scan_file(name, read_source(path), db)


class TestScanFile:
    def test_single_usage(self, minilib_db):
        diags = scan_file("file.py", "import lib.a\nlib.a.old_fn()\n", minilib_db)
        assert len(diags) == 1
        d = diags[0]
        assert (d.span.start_line, d.span.start_col) == (2, 0)
        assert d.rendered_message == "deprecated: lib.a.old_fn — use new_fn"

    def test_clean_file(self, minilib_db):
        assert scan_file("file.py", "import os\nos.getcwd()\n", minilib_db) == []

    def test_two_calls_two_diagnostics(self, minilib_db):
        src = "import lib.a\nlib.a.old_fn()\nlib.a.old_fn()\n"
        assert len(scan_file("file.py", src, minilib_db)) == 2

    def test_syntax_error_propagates(self, minilib_db):
        with pytest.raises(ParseError):
            scan_file("file.py", "def broken(:\n", minilib_db)

    def test_fixture_project_has_seven_hits(self, minilib_db):
        diags = []
        for name in ("usage1.py", "usage2.py", "usage3.py"):
            diags.extend(scan_fixture(name, minilib_db))
        assert len(diags) == 7
        assert sum(d.approximate for d in diags) == 2  # the star-import file

    def test_decoys_stay_clean(self, minilib_db):
        diags = scan_fixture("usage1.py", minilib_db)
        assert all(d.span.start_line != 6 for d in diags)  # other.old_fn()
        diags2 = scan_fixture("usage2.py", minilib_db)
        assert all(d.span.start_line < 9 for d in diags2)  # local g()

    def test_closure_property(self, minilib_db):
        for name in ("usage1.py", "usage2.py", "usage3.py"):
            for d in scan_fixture(name, minilib_db):
                assert any(
                    res.record == d.record for res in lookup(minilib_db, d.matched_fqn)
                )

    def test_shadowing_is_not_tracked(self, minilib_db):
        # known limitation: resolution uses only import bindings
        src = "import lib.a\nlib.a = 3\nlib.a.old_fn()\n"
        diags = scan_file("file.py", src, minilib_db)
        assert any(d.span.start_line == 3 for d in diags)

    def test_deterministic(self, minilib_db):
        a = scan_fixture("usage2.py", minilib_db)
        b = scan_fixture("usage2.py", minilib_db)
        assert [(d.span, d.rendered_message) for d in a] == [
            (d.span, d.rendered_message) for d in b
        ]

    def test_decorator_reference_is_flagged(self, minilib_db):
        src = "from lib.a import old_fn\n@old_fn\ndef mine():\n    pass\n"
        diags = scan_file("file.py", src, minilib_db)
        assert len(diags) == 1
        assert diags[0].span.start_line == 2
