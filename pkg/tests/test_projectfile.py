import json

import pytest

from refactorsearch.generate import InstanceSpec, generate
from refactorsearch.graph import ModulePartition, ProjectState
from refactorsearch.projectfile import (
    FORMAT,
    ProjectFileError,
    UnknownClassError,
    emit_project_file,
    load_project_file,
    project_from_dict,
    project_to_dict,
    read_project_file,
)


def test_round_trip(tmp_path):
    state = generate(InstanceSpec(12, 4), 3)
    path = tmp_path / "p.json"
    emit_project_file(state, path, meta={"seed": 3})
    loaded = read_project_file(path)
    assert loaded.state == state
    assert loaded.state.names == state.names
    assert loaded.state.partition.module_names == state.partition.module_names
    assert loaded.meta == {"seed": 3}
    assert json.loads(path.read_text())["format"] == FORMAT


def test_indices_follow_sorted_names():
    doc = {
        "modules": [{"name": "m1", "classes": ["z.Z", "a.A"]}, {"name": "m0", "classes": ["b.B"]}],
        "dependencies": [["z.Z", "b.B"], ["a.A", "z.Z"]],
    }
    state = project_from_dict(doc).state
    assert state.names == ("a.A", "b.B", "z.Z")
    assert state.partition.module_of == (0, 1, 0)
    assert set(state.edges()) == {(2, 1), (0, 2)}


def test_duplicates_collapse_with_warning():
    doc = {"modules": [{"name": "m", "classes": ["A", "B"]}], "dependencies": [["A", "B"], ["A", "B"]]}
    loaded = project_from_dict(doc)
    assert loaded.state.edge_count == 1
    assert len(loaded.warnings) == 1 and "dependencies[1]" in loaded.warnings[0]


@pytest.mark.parametrize(
    "doc, where",
    [
        ([], "top level"),
        ({"modules": {}}, "modules"),
        ({"modules": [{"classes": []}]}, "modules[0].name"),
        ({"modules": [{"name": "m", "classes": ["A", 3]}]}, "modules[0].classes[1]"),
        ({"modules": [{"name": "m", "classes": ["A"]}, {"name": "n", "classes": ["A"]}]}, "modules[1].classes[0]"),
        ({"modules": [{"name": "m"}, {"name": "m"}]}, "module names must be unique"),
        ({"modules": [{"name": "m", "classes": ["A"]}], "dependencies": [["A"]]}, "dependencies[0]"),
        ({"modules": [{"name": "m", "classes": ["A"]}], "dependencies": [["A", "A"]]}, "self-dependency"),
        ({"format": "other/9", "modules": []}, "format"),
    ],
)
def test_malformed_documents(doc, where):
    with pytest.raises(ProjectFileError, match=__import__("re").escape(where)):
        project_from_dict(doc)


def test_unknown_class():
    doc = {"modules": [{"name": "m", "classes": ["A"]}], "dependencies": [["A", "Ghost"]]}
    with pytest.raises(UnknownClassError, match="Ghost"):
        project_from_dict(doc)


def test_json_error_reports_position(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"modules": [\n  {"name": }\n]}')
    with pytest.raises(ProjectFileError, match=r"bad\.json:2:"):
        load_project_file(path)
    with pytest.raises(ProjectFileError, match="cannot read"):
        load_project_file(tmp_path / "missing.json")


def test_emit_refuses_unsorted_names(tmp_path):
    state = ProjectState.from_edges(ModulePartition((0, 0), 1), [(0, 1)], ("b", "a"))
    with pytest.raises(ProjectFileError):
        emit_project_file(state, tmp_path / "x.json")
    assert project_to_dict(state)["dependencies"] == [["b", "a"]]
