"""Mine deprecated API elements from a library source tree.

Three strategies are recognized: a deprecation decorator on a function or
class definition, a warning call inside a function body passing a
deprecation warning category, and a deprecation keyword in a class
docstring.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path, PurePosixPath
from typing import Optional

from .sourcetree import (
    ArgKind,
    DecoratorRef,
    NodeKind,
    ParseError,
    SourceSpan,
    SyntaxNode,
    parse_file,
    read_source,
)

log = logging.getLogger("deprscan.extractor")


class InvalidPath(ValueError):
    pass


class ElementKind(str, Enum):
    Function = "Function"
    Method = "Method"
    Class = "Class"
    Module = "Module"


class Strategy(str, Enum):
    Decorator = "Decorator"
    WarningCall = "WarningCall"
    Docstring = "Docstring"


DEFAULT_EXCLUDE_DIRS = ("tests", "test", "benchmarks", "examples")


@dataclass(frozen=True)
class ExtractorConfig:
    decorator_pattern: str = "deprecat"  # case-insensitive regex over the terminal segment
    warning_categories: frozenset[str] = frozenset({"DeprecationWarning", "FutureWarning"})
    docstring_keyword: str = "deprecat"
    check_function_docstrings: bool = False
    include_pending: bool = False
    include_module_level_warnings: bool = False
    exclude_dirs: tuple[str, ...] = DEFAULT_EXCLUDE_DIRS

    def __post_init__(self):
        if not self.warning_categories:
            raise ValueError("warning_categories must be non-empty")
        if not self.decorator_pattern or not self.docstring_keyword:
            raise ValueError("patterns must be non-empty")

    @property
    def effective_categories(self) -> frozenset[str]:
        if self.include_pending:
            return self.warning_categories | {"PendingDeprecationWarning"}
        return self.warning_categories


@dataclass(frozen=True)
class DeprecationRecord:
    fqn: str
    element_kind: ElementKind
    strategy: Strategy
    message: Optional[str]
    span: SourceSpan
    library: str = ""
    library_version: Optional[str] = None

    def sort_key(self) -> tuple:
        return (self.fqn, self.strategy.value, self.span.sort_key())


@dataclass
class SkippedFile:
    path: str
    error: str


def is_deprecated_decorator(decorators, cfg: ExtractorConfig) -> bool:
    """True iff any decorator's terminal name segment matches the pattern."""
    rx = re.compile(cfg.decorator_pattern, re.IGNORECASE)
    return any(rx.search(d.terminal_segment) for d in decorators)


def is_deprecation_warning_call(node: SyntaxNode, cfg: ExtractorConfig) -> bool:
    """True iff the node is a call passing a deprecation warning category.

    Only the arguments are inspected, never the callee name, so custom
    wrappers that still pass the category are caught while wrappers that
    hide it are not.
    """
    if node.kind is not NodeKind.Call:
        return False
    cats = cfg.effective_categories
    return any(
        a.value_kind in (ArgKind.NameRef, ArgKind.AttributeRef) and a.terminal_segment in cats
        for a in node.call_args
    )


def docstring_has_keyword(docstring: Optional[str], cfg: ExtractorConfig) -> bool:
    return docstring is not None and cfg.docstring_keyword.lower() in docstring.lower()


def module_fqn(module_path) -> list[str]:
    """Dotted segments for a library-root-relative module path."""
    p = PurePosixPath(str(module_path).replace("\\", "/"))
    if p.is_absolute() or ".." in p.parts:
        raise InvalidPath(f"module path not under library root: {module_path}")
    if p.suffix != ".py":
        raise InvalidPath(f"not a Python module path: {module_path}")
    segments = list(p.parts[:-1])
    if p.stem != "__init__":
        segments.append(p.stem)
    return segments


def fully_qualified_name(module_path, scope_stack, name: str) -> str:
    """Join module path segments, enclosing scopes and the element name."""
    return ".".join(module_fqn(module_path) + list(scope_stack) + [name])


_MESSAGE_KEYWORDS = ("message", "msg", "reason")


def _first_string_arg(args) -> Optional[str]:
    # positional strings first; fall back to conventional message keywords
    for a in args:
        if a.keyword is None and a.value_kind is ArgKind.StringLit:
            text = a.value_text.strip()
            if text:
                return text
    for kw in _MESSAGE_KEYWORDS:
        for a in args:
            if a.keyword == kw and a.value_kind is ArgKind.StringLit:
                text = a.value_text.strip()
                if text:
                    return text
    return None


def _collapse_ws(text: str) -> str:
    return " ".join(text.split())


def _keyword_lines(docstring: str, keyword: str) -> Optional[str]:
    """The docstring line(s) carrying the keyword, with indented continuations."""
    lines = docstring.split("\n")
    picked: list[str] = []
    i = 0
    kw = keyword.lower()
    while i < len(lines):
        if kw in lines[i].lower():
            indent = len(lines[i]) - len(lines[i].lstrip())
            picked.append(lines[i])
            i += 1
            while i < len(lines) and lines[i].strip():
                cont_indent = len(lines[i]) - len(lines[i].lstrip())
                if cont_indent <= indent and kw not in lines[i].lower():
                    break
                picked.append(lines[i])
                i += 1
        else:
            i += 1
    if not picked:
        return None
    text = _collapse_ws(" ".join(picked))
    return text or None


def extract_message(node: SyntaxNode, strategy: Strategy, cfg: ExtractorConfig) -> Optional[str]:
    """Deprecation message for a triggering node, when one is stated."""
    if strategy is Strategy.Decorator:
        for dec in node.decorators:
            if is_deprecated_decorator([dec], cfg):
                return _first_string_arg(dec.args)
        return None
    if strategy is Strategy.WarningCall:
        return _first_string_arg(node.call_args)
    if strategy is Strategy.Docstring:
        if node.docstring is None:
            return None
        return _keyword_lines(node.docstring, cfg.docstring_keyword)
    return None


class _FileExtractor:
    def __init__(self, module_path, cfg: ExtractorConfig):
        self.module_segments = module_fqn(module_path)
        self.cfg = cfg
        self.records: list[DeprecationRecord] = []
        self.seen: set[tuple[str, Strategy]] = set()

    def _fqn(self, scope: list[str], name: str) -> str:
        return ".".join(self.module_segments + scope + [name])

    def _emit(self, fqn: str, kind: ElementKind, strategy: Strategy, message, span: SourceSpan):
        key = (fqn, strategy)
        if key in self.seen:
            return
        self.seen.add(key)
        self.records.append(DeprecationRecord(fqn, kind, strategy, message, span))

    def run(self, root: SyntaxNode) -> list[DeprecationRecord]:
        for child in root.children:
            self._visit(child, [], [], enclosing_fn=None)
        return self.records

    def _visit(self, node: SyntaxNode, scope: list[str], scope_kinds: list[NodeKind], enclosing_fn):
        cfg = self.cfg
        if node.kind is NodeKind.FunctionDef:
            kind = (
                ElementKind.Method if NodeKind.ClassDef in scope_kinds else ElementKind.Function
            )
            fqn = self._fqn(scope, node.name)
            if is_deprecated_decorator(node.decorators, cfg):
                self._emit(fqn, kind, Strategy.Decorator,
                           extract_message(node, Strategy.Decorator, cfg), node.span)
            if cfg.check_function_docstrings and docstring_has_keyword(node.docstring, cfg):
                self._emit(fqn, kind, Strategy.Docstring,
                           extract_message(node, Strategy.Docstring, cfg), node.span)
            inner = (fqn, kind, node.span)
            for c in node.children:
                self._visit(c, scope + [node.name], scope_kinds + [node.kind], inner)
        elif node.kind is NodeKind.ClassDef:
            fqn = self._fqn(scope, node.name)
            if docstring_has_keyword(node.docstring, cfg):
                self._emit(fqn, ElementKind.Class, Strategy.Docstring,
                           extract_message(node, Strategy.Docstring, cfg), node.span)
            if is_deprecated_decorator(node.decorators, cfg):
                self._emit(fqn, ElementKind.Class, Strategy.Decorator,
                           extract_message(node, Strategy.Decorator, cfg), node.span)
            for c in node.children:
                self._visit(c, scope + [node.name], scope_kinds + [node.kind], enclosing_fn)
        else:
            if node.kind is NodeKind.Call and is_deprecation_warning_call(node, cfg):
                if enclosing_fn is not None:
                    fqn, kind, span = enclosing_fn
                    self._emit(fqn, kind, Strategy.WarningCall,
                               extract_message(node, Strategy.WarningCall, cfg), span)
                elif cfg.include_module_level_warnings:
                    fqn = ".".join(self.module_segments) or "<module>"
                    self._emit(fqn, ElementKind.Module, Strategy.WarningCall,
                               extract_message(node, Strategy.WarningCall, cfg), node.span)
            for c in node.children:
                self._visit(c, scope, scope_kinds, enclosing_fn)


def extract_file(module_path, root_node: SyntaxNode, cfg: ExtractorConfig = ExtractorConfig()):
    """Apply the detection rules to one parsed module.

    A warning call is attributed to its innermost enclosing function
    definition. At most one record is emitted per (fqn, strategy).
    """
    try:
        return _FileExtractor(module_path, cfg).run(root_node)
    except InvalidPath:
        raise
    except Exception as exc:  # pragma: no cover - defensive, contract says never propagate
        log.warning("extraction failed for %s: %s", module_path, exc)
        return []


def _iter_module_files(library_root: Path, cfg: ExtractorConfig):
    excluded = set(cfg.exclude_dirs)
    for path in sorted(library_root.rglob("*.py")):
        rel = path.relative_to(library_root)
        if any(part in excluded for part in rel.parts[:-1]):
            continue
        yield path, rel


def _module_path_for(library_root: Path, rel: Path) -> str:
    # When the root itself is a package, its directory name is the first
    # fqn segment; otherwise the root is a container (e.g. a repo checkout)
    # and relative paths already start at the package directory.
    if (library_root / "__init__.py").is_file():
        return str(PurePosixPath(library_root.name) / PurePosixPath(*rel.parts))
    return str(PurePosixPath(*rel.parts))


def detect_library_version(library_root: Path) -> Optional[str]:
    """Best-effort read of a __version__ constant in the root __init__.py."""
    init = library_root / "__init__.py"
    if not init.is_file():
        return None
    try:
        text = read_source(init)
    except (OSError, ParseError):
        return None
    m = re.search(r'^__version__\s*=\s*["\']([^"\']+)["\']', text, re.MULTILINE)
    return m.group(1) if m else None


def extract_library(
    library_root,
    library: str,
    version: Optional[str] = None,
    cfg: ExtractorConfig = ExtractorConfig(),
    skipped: Optional[list[SkippedFile]] = None,
) -> list[DeprecationRecord]:
    """Extract records from every module under library_root.

    Unparseable files are skipped (collected into `skipped` when given);
    an unreadable root raises OSError.
    """
    root = Path(library_root)
    if not root.is_dir():
        raise OSError(f"library root is not a readable directory: {root}")
    if version is None:
        version = detect_library_version(root)

    records: list[DeprecationRecord] = []
    for path, rel in _iter_module_files(root, cfg):
        module_path = _module_path_for(root, rel)
        try:
            tree = parse_file(module_path, read_source(path))
        except ParseError as exc:
            log.warning("skipping unparseable file %s: %s", path, exc)
            if skipped is not None:
                skipped.append(SkippedFile(str(path), exc.message))
            continue
        except OSError as exc:
            log.warning("skipping unreadable file %s: %s", path, exc)
            if skipped is not None:
                skipped.append(SkippedFile(str(path), str(exc)))
            continue
        records.extend(extract_file(module_path, tree, cfg))

    records = [replace(r, library=library, library_version=version) for r in records]
    records.sort(key=DeprecationRecord.sort_key)
    return records


def count_module_files(library_root, cfg: ExtractorConfig = ExtractorConfig()) -> int:
    return sum(1 for _ in _iter_module_files(Path(library_root), cfg))


def build_alias_table(library_root, records) -> dict[str, str]:
    """Map re-exported short names to defining-module fqns.

    Scans each package __init__.py for `from .mod import name` style
    re-exports and keeps aliases whose resolved target is a known record.
    """
    root = Path(library_root)
    edges: dict[str, str] = {}
    prefix = [root.name] if (root / "__init__.py").is_file() else []
    for init in sorted(root.rglob("__init__.py")):
        rel = init.relative_to(root)
        pkg_segments = prefix + list(rel.parts[:-1])
        pkg = ".".join(pkg_segments)
        if not pkg:
            continue
        try:
            tree = parse_file(str(init), read_source(init))
        except (ParseError, OSError):
            continue
        for node in tree.children:
            if node.kind is not NodeKind.ImportFrom:
                continue
            for b in node.imports:
                if b.is_star:
                    continue
                if b.relative_level > 0:
                    if b.relative_level - 1 >= len(pkg_segments):
                        continue
                    base = pkg_segments[: len(pkg_segments) - (b.relative_level - 1)]
                    target = ".".join(base + b.target.split("."))
                elif b.target.split(".", 1)[0] == (prefix[0] if prefix else pkg_segments[0]):
                    target = b.target
                else:
                    continue  # re-export of a foreign library
                edges[f"{pkg}.{b.local}"] = target

    record_fqns = {r.fqn for r in records}
    aliases: dict[str, str] = {}
    for short, target in edges.items():
        seen = {short}
        while target in edges and target not in record_fqns and target not in seen:
            seen.add(target)
            target = edges[target]
        if target in record_fqns and short != target:
            aliases[short] = target
    return aliases
