"""Best-effort extraction of a class dependency graph from a Java source tree.

This is pattern matching, not parsing. Comments and string literals are
blanked out, then package/import statements and top-level type declarations
are picked up with regular expressions and a brace-depth counter.

Rules:

* one vertex per top-level type; nested types fold into their enclosing type
* a class's module is the nearest directory below the root holding a build
  manifest, otherwise the first directory level under the root
* an import of a project class (single-type, static, or of a nested type)
  is an edge from every top-level type in the importing file
* a simple name used inside a type's body is an edge when it names a class
  of the same package or of a wildcard-imported project package
* imports into a project package that match no class are reported as
  unresolved; all other external imports are ignored
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from pathlib import Path

from .graph import ModulePartition, ProjectState

log = logging.getLogger(__name__)

MANIFESTS = ("pom.xml", "build.gradle", "build.gradle.kts", "build.xml")
IGNORED_DIRS = {".git", ".svn", ".hg", "target", "build", "out", "node_modules", ".gradle", ".idea"}

_NOISE = re.compile(
    r'"""[\s\S]*?"""'
    r'|"(?:\\.|[^"\\\n])*"'
    r"|'(?:\\.|[^'\\\n])*'"
    r"|//[^\n]*"
    r"|/\*[\s\S]*?\*/"
)
_PACKAGE = re.compile(r"^\s*package\s+([\w$.]+)\s*;", re.MULTILINE)
_IMPORT = re.compile(r"(?:^|(?<=;))\s*import\s+(static\s+)?([\w$]+(?:\s*\.\s*[\w$]+)*)(\s*\.\s*\*)?\s*;", re.MULTILINE)
_DECL_OR_BRACE = re.compile(r"[{}]|(?<![\w$.])(?:class|interface|enum|record)\s+([A-Za-z_$][\w$]*)")
_IDENT = re.compile(r"(?<![\w$.])[A-Za-z_$][\w$]*")


class IngestError(ValueError):
    """Unusable input tree."""


class EmptyProjectError(IngestError):
    """The tree holds no Java type declarations."""


@dataclass
class ExtractionReport:
    classes_found: int = 0
    modules_found: int = 0
    dependencies_found: int = 0
    unresolved_references: list[tuple[str, str]] = field(default_factory=list)
    skipped_files: list[str] = field(default_factory=list)


@dataclass
class _TypeDecl:
    name: str
    body: str


@dataclass
class _SourceFile:
    path: Path
    rel: str
    module: str
    package: str
    imports: list[tuple[str, bool]]  # (dotted name, is wildcard)
    types: list[_TypeDecl]


def _strip_noise(text: str) -> str:
    def blank(match: re.Match) -> str:
        token = match.group(0)
        if token.startswith(("//", "/*")):
            return " " if "\n" not in token else "\n" * token.count("\n")
        return '""'

    return _NOISE.sub(blank, text)


def _top_level_types(code: str) -> list[_TypeDecl]:
    types: list[_TypeDecl] = []
    depth = 0
    current: tuple[str, int] | None = None
    for match in _DECL_OR_BRACE.finditer(code):
        token = match.group(0)
        if token == "{":
            depth += 1
        elif token == "}":
            depth = max(0, depth - 1)
            if depth == 0 and current is not None:
                name, start = current
                types.append(_TypeDecl(name, code[start:match.end()]))
                current = None
        elif depth == 0 and current is None:
            current = (match.group(1), match.start())
    if current is not None:
        name, start = current
        types.append(_TypeDecl(name, code[start:]))
    return types


def _module_for(path: Path, root: Path) -> str:
    rel_parent = path.parent.relative_to(root)
    parts = rel_parent.parts
    for depth in range(len(parts), 0, -1):
        candidate = root.joinpath(*parts[:depth])
        if any((candidate / m).is_file() for m in MANIFESTS):
            return "/".join(parts[:depth])
    return parts[0] if parts else "."


def _java_files(root: Path) -> list[Path]:
    found = []
    for path in root.rglob("*.java"):
        rel = path.relative_to(root).parts
        if any(part in IGNORED_DIRS for part in rel[:-1]):
            continue
        if path.is_file():
            found.append(path)
    return sorted(found, key=lambda p: p.relative_to(root).as_posix())


def _read_source(path: Path, root: Path, report: ExtractionReport) -> _SourceFile | None:
    rel = path.relative_to(root).as_posix()
    try:
        text = path.read_text(encoding="utf-8", errors="replace")
    except OSError as exc:
        report.skipped_files.append(f"{rel}: {exc.strerror}")
        return None
    code = _strip_noise(text)
    pkg = _PACKAGE.search(code)
    package = pkg.group(1) if pkg else ""
    imports = [
        (re.sub(r"\s+", "", m.group(2)), bool(m.group(3)))
        for m in _IMPORT.finditer(code)
    ]
    types = _top_level_types(code)
    if not types:
        report.skipped_files.append(f"{rel}: no type declaration")
        return None
    return _SourceFile(path, rel, _module_for(path, root), package, imports, types)


def _qualify(package: str, name: str) -> str:
    return f"{package}.{name}" if package else name


def scan_project(root_path: str | Path) -> tuple[ProjectState, ExtractionReport]:
    root = Path(root_path)
    if not root.is_dir():
        raise IngestError(f"{root}: not a directory")
    report = ExtractionReport()
    sources = []
    for path in _java_files(root):
        src = _read_source(path, root, report)
        if src is not None:
            sources.append(src)

    owner: dict[str, _SourceFile] = {}
    by_package: dict[str, dict[str, str]] = {}
    for src in sources:
        for decl in src.types:
            fqn = _qualify(src.package, decl.name)
            if fqn in owner:
                report.skipped_files.append(f"{src.rel}: duplicate type {fqn} (first in {owner[fqn].rel})")
                continue
            owner[fqn] = src
            by_package.setdefault(src.package, {})[decl.name] = fqn
    if not owner:
        raise EmptyProjectError(f"{root}: no Java classes found")

    def resolve(dotted: str) -> str | None:
        # longest prefix naming a project class; covers nested types and static members
        parts = dotted.split(".")
        for end in range(len(parts), 0, -1):
            candidate = ".".join(parts[:end])
            if candidate in owner:
                return candidate
        return None

    def in_project_package(dotted: str) -> bool:
        parts = dotted.split(".")
        return any(".".join(parts[:end]) in by_package for end in range(len(parts), 0, -1))

    deps: set[tuple[str, str]] = set()
    for src in sources:
        own = [_qualify(src.package, d.name) for d in src.types if owner.get(_qualify(src.package, d.name)) is src]
        if not own:
            continue
        imported: set[str] = set()
        visible: dict[str, str] = dict(by_package.get(src.package, {}))
        for dotted, wildcard in src.imports:
            if wildcard and dotted in by_package:
                for simple, fqn in by_package[dotted].items():
                    visible.setdefault(simple, fqn)
                continue
            target = resolve(dotted)
            if target is not None:
                imported.add(target)
            elif in_project_package(dotted):
                report.unresolved_references.append((src.rel, dotted))
        for fqn in own:
            for target in imported:
                if target != fqn:
                    deps.add((fqn, target))
        for decl in src.types:
            fqn = _qualify(src.package, decl.name)
            if owner.get(fqn) is not src:
                continue
            for ident in set(_IDENT.findall(decl.body)):
                target = visible.get(ident)
                if target is not None and target != fqn:
                    deps.add((fqn, target))

    names = sorted(owner)
    index = {name: i for i, name in enumerate(names)}
    module_names = sorted({owner[name].module for name in names})
    module_index = {m: i for i, m in enumerate(module_names)}
    partition = ModulePartition(
        tuple(module_index[owner[name].module] for name in names), len(module_names), tuple(module_names)
    )
    state = ProjectState.from_edges(partition, sorted((index[a], index[b]) for a, b in deps), names)
    report.classes_found = len(names)
    report.modules_found = len(module_names)
    report.dependencies_found = state.edge_count
    for rel, ident in report.unresolved_references:
        log.info("unresolved reference %s in %s", ident, rel)
    return state, report
