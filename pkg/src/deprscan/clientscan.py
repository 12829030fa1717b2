"""Scan client code for usages of deprecated APIs.

Imports are resolved into an alias map; every dotted usage expression is
substituted through it and looked up in the deprecation database.
Resolution is purely syntactic: assignments are not tracked and object
method calls are out of scope.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .depdb import DeprecationDb, lookup
from .extractor import DeprecationRecord
from .sourcetree import NodeKind, SourceSpan, SyntaxNode, parse_file, walk_preorder

log = logging.getLogger("deprscan.clientscan")


@dataclass
class AliasMap:
    bindings: dict[str, str] = field(default_factory=dict)
    binding_spans: dict[str, SourceSpan] = field(default_factory=dict)
    star_modules: list[str] = field(default_factory=list)
    unresolved_relative: list[SourceSpan] = field(default_factory=list)


class Candidate(NamedTuple):
    fqn: str
    from_star: bool


@dataclass
class Diagnostic:
    span: SourceSpan
    matched_fqn: str
    record: DeprecationRecord
    approximate: bool
    rendered_message: str


def build_alias_map(module: SyntaxNode) -> AliasMap:
    """Collect import bindings; later bindings shadow earlier ones."""
    out = AliasMap()
    for node in walk_preorder(module):
        if node.kind not in (NodeKind.Import, NodeKind.ImportFrom):
            continue
        for b in node.imports:
            if b.relative_level > 0:
                out.unresolved_relative.append(node.span)
                log.debug("ignoring relative import at %s:%d", node.span.file,
                          node.span.start_line)
                continue
            if b.is_star:
                if b.target:
                    out.star_modules.append(b.target)
                continue
            out.bindings[b.local] = b.target
            out.binding_spans[b.local] = node.span
    return out


def resolve_usage(expr: str, aliases: AliasMap) -> list[Candidate]:
    """Candidate library fqns for a dotted usage expression, direct-first."""
    parts = expr.split(".")
    out: list[Candidate] = []
    for i in range(len(parts), 0, -1):
        prefix = ".".join(parts[:i])
        target = aliases.bindings.get(prefix)
        if target is not None:
            rest = parts[i:]
            out.append(Candidate(".".join([target] + rest), False))
            break
    for m in aliases.star_modules:
        out.append(Candidate(f"{m}.{expr}", True))
    return out


def _iter_usages(node: SyntaxNode):
    """Maximal dotted Name/Attribute expressions, in source order."""
    if node.kind in (NodeKind.Name, NodeKind.Attribute) and node.dotted:
        yield node.dotted, node.span
        return  # children form the same chain
    for c in node.children:
        yield from _iter_usages(c)


def render_message(fqn: str, record: DeprecationRecord, approximate: bool) -> str:
    msg = f"deprecated: {fqn}"
    if record.message:
        msg += f" — {record.message}"
    if approximate:
        msg += " [approximate match]"
    return msg


def scan_tree(module: SyntaxNode, db: DeprecationDb) -> list[Diagnostic]:
    aliases = build_alias_map(module)
    diagnostics: list[Diagnostic] = []
    for expr, span in _iter_usages(module):
        for cand in resolve_usage(expr, aliases):
            results = lookup(db, cand.fqn)
            if not results:
                continue
            record, approx = results[0]
            approx = approx or cand.from_star
            diagnostics.append(
                Diagnostic(
                    span=span,
                    matched_fqn=cand.fqn,
                    record=record,
                    approximate=approx,
                    rendered_message=render_message(cand.fqn, record, approx),
                )
            )
            break  # one diagnostic per usage occurrence
    diagnostics.sort(key=lambda d: d.span.sort_key())
    return diagnostics


def scan_file(path, source: str, db: DeprecationDb) -> list[Diagnostic]:
    """Diagnostics for one client file. ParseError propagates to the caller."""
    return scan_tree(parse_file(path, source), db)
