"""Project-graph files.

JSON layout::

    {
      "modules": [{"name": "core", "classes": ["a.Foo", "a.Bar"]}, ...],
      "dependencies": [["a.Foo", "a.Bar"], ...],
      "meta": {...}                      # optional, free-form
    }

Class names are unique across modules. On load, vertex indices follow the
sorted class names and module indices follow list order.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .graph import ModulePartition, ProjectState

log = logging.getLogger(__name__)

FORMAT = "refactorsearch-project/1"


class ProjectFileError(ValueError):
    """Malformed project file; the message names the offending location."""


class UnknownClassError(ProjectFileError):
    """A dependency names a class that no module declares."""


@dataclass
class LoadedProject:
    state: ProjectState
    meta: dict[str, Any] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)


def project_to_dict(state: ProjectState, meta: dict[str, Any] | None = None) -> dict[str, Any]:
    names = state.names
    modules = [
        {"name": state.partition.module_names[m], "classes": [names[v] for v in members]}
        for m, members in enumerate(state.partition.members)
    ]
    doc: dict[str, Any] = {
        "format": FORMAT,
        "modules": modules,
        "dependencies": [[names[u], names[v]] for u, v in state.edges()],
    }
    if meta:
        doc["meta"] = meta
    return doc


def emit_project_file(state: ProjectState, path: str | Path, meta: dict[str, Any] | None = None) -> None:
    if list(state.names) != sorted(state.names):
        # loading re-indexes by sorted name, so anything else would not round-trip
        raise ProjectFileError("class names must sort in vertex-index order to be written")
    text = json.dumps(project_to_dict(state, meta), indent=1)
    Path(path).write_text(text + "\n", encoding="utf-8")


def _expect(cond: bool, where: str, what: str) -> None:
    if not cond:
        raise ProjectFileError(f"{where}: {what}")


def project_from_dict(doc: Any, source: str = "<project>") -> LoadedProject:
    _expect(isinstance(doc, dict), source, "top level must be an object")
    modules = doc.get("modules")
    deps = doc.get("dependencies", [])
    _expect(isinstance(modules, list), f"{source}: modules", "expected a list")
    _expect(isinstance(deps, list), f"{source}: dependencies", "expected a list")
    fmt = doc.get("format", FORMAT)
    _expect(fmt == FORMAT, f"{source}: format", f"unsupported format {fmt!r}, expected {FORMAT!r}")

    module_names: list[str] = []
    owner: dict[str, int] = {}
    for m, entry in enumerate(modules):
        where = f"{source}: modules[{m}]"
        _expect(isinstance(entry, dict), where, "expected an object")
        name = entry.get("name")
        _expect(isinstance(name, str), f"{where}.name", "expected a string")
        classes = entry.get("classes", [])
        _expect(isinstance(classes, list), f"{where}.classes", "expected a list")
        module_names.append(name)
        for c, cls in enumerate(classes):
            _expect(isinstance(cls, str) and cls != "", f"{where}.classes[{c}]", "expected a non-empty string")
            _expect(cls not in owner, f"{where}.classes[{c}]", f"class {cls!r} already declared in module {owner.get(cls)}")
            owner[cls] = m
    _expect(len(set(module_names)) == len(module_names), f"{source}: modules", "module names must be unique")

    names = sorted(owner)
    index = {name: i for i, name in enumerate(names)}
    partition = ModulePartition(tuple(owner[name] for name in names), len(module_names), tuple(module_names))

    warnings: list[str] = []
    edges: set[tuple[int, int]] = set()
    for d, pair in enumerate(deps):
        where = f"{source}: dependencies[{d}]"
        _expect(isinstance(pair, list) and len(pair) == 2 and all(isinstance(p, str) for p in pair),
                where, "expected [fromClass, toClass]")
        src, dst = pair
        for cls in (src, dst):
            if cls not in index:
                raise UnknownClassError(f"{where}: unknown class {cls!r}")
        _expect(src != dst, where, f"self-dependency on {src!r}")
        edge = (index[src], index[dst])
        if edge in edges:
            warnings.append(f"{where}: duplicate dependency {src} -> {dst} collapsed")
            continue
        edges.add(edge)
    for w in warnings:
        log.warning(w)
    meta = doc.get("meta") or {}
    _expect(isinstance(meta, dict), f"{source}: meta", "expected an object")
    return LoadedProject(ProjectState.from_edges(partition, sorted(edges), names), meta, warnings)


def read_project_file(path: str | Path) -> LoadedProject:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ProjectFileError(f"{path}: cannot read ({exc.strerror})") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProjectFileError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    return project_from_dict(doc, str(path))


def load_project_file(path: str | Path) -> ProjectState:
    return read_project_file(path).state
