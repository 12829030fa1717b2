"""deprscan: find deprecated API elements in Python libraries and flag their use."""

__version__ = "0.1.0"

from .sourcetree import NodeKind, ParseError, SourceSpan, SyntaxNode, parse_file, walk_preorder
from .extractor import DeprecationRecord, ExtractorConfig, extract_file, extract_library
from .depdb import DeprecationDb, load_db, merge, save_db
from .clientscan import Diagnostic, build_alias_map, resolve_usage, scan_file

__all__ = [
    "NodeKind",
    "ParseError",
    "SourceSpan",
    "SyntaxNode",
    "parse_file",
    "walk_preorder",
    "DeprecationRecord",
    "ExtractorConfig",
    "extract_file",
    "extract_library",
    "DeprecationDb",
    "load_db",
    "merge",
    "save_db",
    "Diagnostic",
    "build_alias_map",
    "resolve_usage",
    "scan_file",
]
