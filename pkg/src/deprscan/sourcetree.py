"""Simplified syntax trees for Python source files.

Wraps the stdlib ``ast`` parser and exposes only the node kinds the
deprecation rules inspect (definitions, calls, imports, dotted names).
Everything else is preserved as an ``Other`` node so traversal order stays
faithful to the source.
"""

from __future__ import annotations

import ast
import io
import tokenize
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Optional


class ParseError(Exception):
    """Source could not be decoded or parsed."""

    def __init__(self, file: str, line: int, message: str):
        super().__init__(f"{file}:{line}: {message}")
        self.file = file
        self.line = line
        self.message = message


class NodeKind(str, Enum):
    Module = "Module"
    ClassDef = "ClassDef"
    FunctionDef = "FunctionDef"
    Call = "Call"
    Import = "Import"
    ImportFrom = "ImportFrom"
    Attribute = "Attribute"
    Name = "Name"
    StringLiteral = "StringLiteral"
    Other = "Other"


class ArgKind(str, Enum):
    NameRef = "NameRef"
    AttributeRef = "AttributeRef"
    StringLit = "StringLit"
    Other = "Other"


@dataclass(frozen=True, order=True)
class SourceSpan:
    """Half-open-ish region of a file; lines 1-based, columns 0-based."""

    file: str
    start_line: int
    start_col: int
    end_line: int
    end_col: int

    def contains(self, line: int, col: int) -> bool:
        """Whether a 1-based line / 0-based column position falls inside."""
        if (line, col) < (self.start_line, self.start_col):
            return False
        return (line, col) < (self.end_line, self.end_col) or (
            line == self.end_line and col == self.end_col
        )

    def sort_key(self) -> tuple:
        return (self.file, self.start_line, self.start_col, self.end_line, self.end_col)


@dataclass(frozen=True)
class ArgRef:
    """One argument of a call or decorator."""

    keyword: Optional[str]  # None for positional
    value_kind: ArgKind
    value_text: str

    @property
    def terminal_segment(self) -> str:
        return self.value_text.rsplit(".", 1)[-1]


@dataclass(frozen=True)
class DecoratorRef:
    dotted_name: str  # call parentheses stripped, e.g. "util.deprecate"
    args: tuple[ArgRef, ...]
    span: SourceSpan

    @property
    def terminal_segment(self) -> str:
        return self.dotted_name.rsplit(".", 1)[-1]


@dataclass(frozen=True)
class ImportBinding:
    """One name bound by an import statement."""

    local: str  # name visible in the importing module
    target: str  # dotted module/attribute path it refers to ("*" targets a whole module)
    is_star: bool
    relative_level: int  # 0 for absolute imports


@dataclass
class SyntaxNode:
    kind: NodeKind
    span: SourceSpan
    name: Optional[str] = None
    decorators: tuple[DecoratorRef, ...] = ()
    docstring: Optional[str] = None
    call_args: tuple[ArgRef, ...] = ()
    children: list["SyntaxNode"] = field(default_factory=list)
    # Extra per-kind payloads:
    dotted: Optional[str] = None  # Name/Attribute: full dotted text when the chain is pure
    imports: tuple[ImportBinding, ...] = ()  # Import/ImportFrom

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)


def walk_preorder(root: SyntaxNode) -> Iterator[SyntaxNode]:
    """Deterministic pre-order traversal: parent first, children in source order."""
    stack = [root]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children))


def decode_source(path: str, data: bytes) -> str:
    """Decode source bytes per the Python source-encoding rule (PEP 263)."""
    try:
        encoding, _ = tokenize.detect_encoding(io.BytesIO(data).readline)
        return data.decode(encoding)
    except (SyntaxError, UnicodeDecodeError, LookupError) as exc:
        raise ParseError(path, 1, f"cannot decode source: {exc}") from exc


def read_source(path) -> str:
    with open(path, "rb") as fh:
        return decode_source(str(path), fh.read())


def _normalize_newlines(text: str) -> str:
    return text.replace("\r\n", "\n").replace("\r", "\n")


def _dotted_name(expr: ast.expr) -> Optional[str]:
    """Dotted text of a pure Name/Attribute chain, else None."""
    parts: list[str] = []
    while isinstance(expr, ast.Attribute):
        parts.append(expr.attr)
        expr = expr.value
    if isinstance(expr, ast.Name):
        parts.append(expr.id)
        return ".".join(reversed(parts))
    return None


def _joined_str_text(node: ast.JoinedStr) -> str:
    return "".join(
        v.value for v in node.values if isinstance(v, ast.Constant) and isinstance(v.value, str)
    )


def _arg_ref(keyword: Optional[str], value: ast.expr) -> ArgRef:
    if isinstance(value, ast.Constant) and isinstance(value.value, str):
        return ArgRef(keyword, ArgKind.StringLit, value.value)
    if isinstance(value, ast.JoinedStr):
        return ArgRef(keyword, ArgKind.StringLit, _joined_str_text(value))
    if isinstance(value, ast.Name):
        return ArgRef(keyword, ArgKind.NameRef, value.id)
    if isinstance(value, ast.Attribute):
        dotted = _dotted_name(value)
        if dotted is not None:
            return ArgRef(keyword, ArgKind.AttributeRef, dotted)
    try:
        snippet = ast.unparse(value)
    except Exception:  # pragma: no cover - unparse failure on exotic nodes
        snippet = ""
    return ArgRef(keyword, ArgKind.Other, snippet)


def _call_args(node: ast.Call) -> tuple[ArgRef, ...]:
    refs = [_arg_ref(None, a) for a in node.args if not isinstance(a, ast.Starred)]
    refs += [_arg_ref(kw.arg, kw.value) for kw in node.keywords if kw.arg is not None]
    return tuple(refs)


def _node_span(path: str, node: ast.AST) -> Optional[SourceSpan]:
    lineno = getattr(node, "lineno", None)
    if lineno is None:
        return None
    end_lineno = getattr(node, "end_lineno", None) or lineno
    col = getattr(node, "col_offset", 0)
    end_col = getattr(node, "end_col_offset", None)
    if end_col is None:
        end_col = col
    return SourceSpan(path, lineno, col, end_lineno, end_col)


def _decorator_ref(path: str, dec: ast.expr) -> DecoratorRef:
    target = dec.func if isinstance(dec, ast.Call) else dec
    dotted = _dotted_name(target)
    if dotted is None:
        try:
            dotted = ast.unparse(target)
        except Exception:  # pragma: no cover
            dotted = "<decorator>"
    args = _call_args(dec) if isinstance(dec, ast.Call) else ()
    span = _node_span(path, dec) or SourceSpan(path, 1, 0, 1, 0)
    return DecoratorRef(dotted, args, span)


def _docstring(node: ast.AST) -> Optional[str]:
    body = getattr(node, "body", None)
    if not body or not isinstance(body[0], ast.Expr):
        return None
    value = body[0].value
    if isinstance(value, ast.Constant) and isinstance(value.value, str):
        return value.value
    if isinstance(value, ast.JoinedStr):
        return _joined_str_text(value)
    return None


def _import_bindings(node: ast.AST) -> tuple[ImportBinding, ...]:
    out: list[ImportBinding] = []
    if isinstance(node, ast.Import):
        for alias in node.names:
            if alias.asname:
                out.append(ImportBinding(alias.asname, alias.name, False, 0))
            else:
                # "import a.b" binds only the top-level name
                top = alias.name.split(".", 1)[0]
                out.append(ImportBinding(top, top, False, 0))
    elif isinstance(node, ast.ImportFrom):
        module = node.module or ""
        for alias in node.names:
            if alias.name == "*":
                out.append(ImportBinding("*", module, True, node.level))
            else:
                target = f"{module}.{alias.name}" if module else alias.name
                out.append(ImportBinding(alias.asname or alias.name, target, False, node.level))
    return tuple(out)


_KIND_MAP = {
    ast.ClassDef: NodeKind.ClassDef,
    ast.FunctionDef: NodeKind.FunctionDef,
    ast.AsyncFunctionDef: NodeKind.FunctionDef,
    ast.Call: NodeKind.Call,
    ast.Import: NodeKind.Import,
    ast.ImportFrom: NodeKind.ImportFrom,
    ast.Attribute: NodeKind.Attribute,
    ast.Name: NodeKind.Name,
}


def _convert(path: str, node: ast.AST, parent_span: SourceSpan) -> SyntaxNode:
    span = _node_span(path, node) or parent_span
    kind = _KIND_MAP.get(type(node), NodeKind.Other)
    if kind is NodeKind.Other and isinstance(node, ast.Constant) and isinstance(node.value, str):
        kind = NodeKind.StringLiteral

    out = SyntaxNode(kind=kind, span=span)
    if kind in (NodeKind.ClassDef, NodeKind.FunctionDef):
        out.name = node.name
        out.decorators = tuple(_decorator_ref(path, d) for d in node.decorator_list)
        out.docstring = _docstring(node)
    elif kind is NodeKind.Call:
        out.call_args = _call_args(node)
        out.dotted = _dotted_name(node.func)
    elif kind in (NodeKind.Name, NodeKind.Attribute):
        out.name = node.id if isinstance(node, ast.Name) else node.attr
        out.dotted = _dotted_name(node)
    elif kind in (NodeKind.Import, NodeKind.ImportFrom):
        out.imports = _import_bindings(node)
    elif kind is NodeKind.StringLiteral:
        out.name = node.value

    if kind in (NodeKind.Import, NodeKind.ImportFrom):
        children: list[SyntaxNode] = []  # alias payloads carry no expression nodes
    else:
        children = [_convert(path, c, span) for c in ast.iter_child_nodes(node)]
    out.children = children
    return out


def parse_file(path, source: str) -> SyntaxNode:
    """Parse decoded Python source into a Module SyntaxNode.

    Newlines are normalized to LF before parsing so spans refer to the
    normalized text. Raises ParseError on invalid syntax.
    """
    path = str(path)
    text = _normalize_newlines(source)
    try:
        tree = ast.parse(text, filename=path)
    except SyntaxError as exc:
        raise ParseError(path, exc.lineno or 1, exc.msg or "invalid syntax") from exc
    except ValueError as exc:  # e.g. null bytes
        raise ParseError(path, 1, str(exc)) from exc

    lines = text.split("\n")
    module_span = SourceSpan(path, 1, 0, max(len(lines), 1), len(lines[-1]) if lines else 0)
    module = SyntaxNode(kind=NodeKind.Module, span=module_span)
    module.docstring = _docstring(tree)
    module.children = [_convert(path, c, module_span) for c in ast.iter_child_nodes(tree)]
    return module


def parse_path(path) -> SyntaxNode:
    """Read, decode and parse a file from disk."""
    return parse_file(path, read_source(path))
