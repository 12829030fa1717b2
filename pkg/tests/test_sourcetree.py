import ast

import pytest

from deprscan.sourcetree import (
    ArgKind,
    NodeKind,
    ParseError,
    decode_source,
    parse_file,
    walk_preorder,
)


def test_empty_file():
    mod = parse_file("m.py", "")
    assert mod.kind is NodeKind.Module
    assert mod.children == []


def test_decorated_function():
    mod = parse_file("m.py", "@deprecated\ndef f():\n    pass\n")
    fns = [c for c in mod.children if c.kind is NodeKind.FunctionDef]
    assert len(fns) == 1
    assert fns[0].name == "f"
    assert [d.dotted_name for d in fns[0].decorators] == ["deprecated"]
    assert fns[0].decorators[0].args == ()


def test_class_docstring():
    mod = parse_file("m.py", 'class C:\n    """Deprecated since 1.2"""\n')
    classes = [c for c in mod.children if c.kind is NodeKind.ClassDef]
    assert len(classes) == 1
    assert classes[0].name == "C"
    assert classes[0].docstring == "Deprecated since 1.2"


def test_decorator_call_args_and_dotted_name():
    src = '@pkg.mod.deprecated(reason="x")\ndef f():\n    pass\n'
    fn = parse_file("m.py", src).children[0]
    dec = fn.decorators[0]
    assert dec.dotted_name == "pkg.mod.deprecated"
    assert dec.args[0].keyword == "reason"
    assert dec.args[0].value_kind is ArgKind.StringLit
    assert dec.args[0].value_text == "x"


def test_call_args_classified():
    src = 'warnings.warn("gone", DeprecationWarning, category=exceptions.FutureWarning)\n'
    call = next(n for n in walk_preorder(parse_file("m.py", src)) if n.kind is NodeKind.Call)
    kinds = [(a.keyword, a.value_kind, a.value_text) for a in call.call_args]
    assert kinds == [
        (None, ArgKind.StringLit, "gone"),
        (None, ArgKind.NameRef, "DeprecationWarning"),
        ("category", ArgKind.AttributeRef, "exceptions.FutureWarning"),
    ]


def test_implicit_string_concat_docstring():
    mod = parse_file("m.py", 'def f():\n    "part one " "part two"\n')
    assert mod.children[0].docstring == "part one part two"


def test_fstring_docstring_literal_parts():
    mod = parse_file("m.py", 'def f():\n    f"deprecated since {1}"\n')
    assert "deprecated since " in mod.children[0].docstring


def test_comments_are_not_docstrings():
    mod = parse_file("m.py", "# deprecated\ndef f():\n    pass\n")
    assert mod.children[0].docstring is None


def test_docstring_only_when_first_statement():
    mod = parse_file("m.py", 'def f():\n    x = 1\n    "not a docstring"\n')
    assert mod.children[0].docstring is None


def test_syntax_error():
    with pytest.raises(ParseError) as exc:
        parse_file("m.py", "def broken(:\n")
    assert exc.value.file == "m.py"
    assert exc.value.line == 1


def test_walk_preorder_order():
    src = "def a():\n    def a1():\n        pass\nb = 2\n"
    mod = parse_file("m.py", src)
    kinds_names = [(n.kind, n.name) for n in walk_preorder(mod)]
    assert kinds_names[0] == (NodeKind.Module, None)
    a_idx = kinds_names.index((NodeKind.FunctionDef, "a"))
    a1_idx = kinds_names.index((NodeKind.FunctionDef, "a1"))
    assert a_idx < a1_idx  # parent before child


def test_walk_counts_match_recursive_size():
    src = "class C:\n    def m(self):\n        return self.x + f(1)\n"
    mod = parse_file("m.py", src)
    assert sum(1 for _ in walk_preorder(mod)) == mod.size()


def test_parse_is_pure():
    src = "@deprecated\ndef f():\n    pass\n"
    a = parse_file("m.py", src)
    b = parse_file("m.py", src)
    assert [(n.kind, n.name, n.span) for n in walk_preorder(a)] == [
        (n.kind, n.name, n.span) for n in walk_preorder(b)
    ]


def test_crlf_normalized_spans():
    mod = parse_file("m.py", "x = 1\r\ndef f():\r\n    pass\r\n")
    fn = next(n for n in walk_preorder(mod) if n.kind is NodeKind.FunctionDef)
    assert fn.span.start_line == 2


def test_span_roundtrip_reparses_to_same_kind():
    src = (
        "import warnings\n\n"
        "@deco\n"
        "def f(x):\n"
        '    warnings.warn("m", DeprecationWarning)\n'
        "    return x.attr\n"
    )
    text = src
    lines = text.split("\n")

    def slice_span(span):
        if span.start_line == span.end_line:
            return lines[span.start_line - 1][span.start_col : span.end_col]
        chunk = [lines[span.start_line - 1][span.start_col :]]
        chunk += lines[span.start_line : span.end_line - 1]
        chunk.append(lines[span.end_line - 1][: span.end_col])
        return "\n".join(chunk)

    reparseable = {
        NodeKind.FunctionDef,
        NodeKind.Call,
        NodeKind.Import,
        NodeKind.Attribute,
        NodeKind.Name,
    }
    mod = parse_file("m.py", text)
    for node in walk_preorder(mod):
        if node.kind not in reparseable:
            continue
        snippet = slice_span(node.span)
        tree = ast.parse(snippet)
        renode = tree.body[0]
        if isinstance(renode, ast.Expr):
            renode = renode.value
        expected = {
            NodeKind.FunctionDef: (ast.FunctionDef,),
            NodeKind.Call: (ast.Call,),
            NodeKind.Import: (ast.Import,),
            NodeKind.Attribute: (ast.Attribute,),
            NodeKind.Name: (ast.Name,),
        }[node.kind]
        assert isinstance(renode, expected), (node.kind, snippet)


def test_decode_source_honors_coding_cookie():
    data = "# -*- coding: latin-1 -*-\nx = '\u00e9'\n".encode("latin-1")
    assert "\u00e9" in decode_source("m.py", data)


def test_decode_source_rejects_undecodable():
    with pytest.raises(ParseError):
        decode_source("m.py", b"# -*- coding: utf-8 -*-\nx = '\xff\xfe'\n")


def test_import_bindings():
    src = (
        "import numpy as np\n"
        "import a.b\n"
        "from sklearn.utils import safe_indexing as si\n"
        "from lib.b import *\n"
        "from . import x\n"
    )
    mod = parse_file("m.py", src)
    bindings = [b for n in mod.children for b in n.imports]
    by_local = {b.local: b.target for b in bindings if not b.is_star and b.relative_level == 0}
    assert by_local == {"np": "numpy", "a": "a", "si": "sklearn.utils.safe_indexing"}
    stars = [b for b in bindings if b.is_star]
    assert [b.target for b in stars] == ["lib.b"]
    assert any(b.relative_level == 1 for b in bindings)
