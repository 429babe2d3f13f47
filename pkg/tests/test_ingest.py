import pytest

from conftest import FIXTURES

from refactorsearch.ingest import EmptyProjectError, IngestError, scan_project
from refactorsearch.projectfile import emit_project_file, load_project_file

INV = "com.acme.inventory."


def _edges(state):
    return {(state.names[u][len(INV):], state.names[v][len(INV):]) for u, v in state.edges()}


def test_inventory_fixture():
    state, report = scan_project(FIXTURES / "inventory")
    assert report.classes_found == 12 and report.modules_found == 6
    assert state.partition.module_names == ("cli", "core", "model", "service", "storage", "web")
    assert report.unresolved_references == [] and report.skipped_files == []
    assert _edges(state) == {
        ("cli.Main", "cli.Args"),
        ("cli.Main", "service.InventoryService"),
        ("core.Ids", "core.Clock"),
        ("model.Item", "model.Sku"),
        ("service.InventoryService", "core.Clock"),
        ("service.InventoryService", "service.PricingRule"),
        ("service.InventoryService", "storage.ItemStore"),
        ("storage.ItemStore", "model.Item"),
        ("storage.ItemStore", "storage.StoreConfig"),
        ("web.ItemController", "service.InventoryService"),
        ("web.ItemController", "web.JsonView"),
        ("web.JsonView", "model.Sku"),
    }
    assert state.coupling_excess == 0


def test_round_trip_through_project_file(tmp_path):
    state, _ = scan_project(FIXTURES / "inventory")
    emit_project_file(state, tmp_path / "inv.json")
    assert load_project_file(tmp_path / "inv.json") == state


def _write(root, rel, text):
    path = root / rel
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def test_first_level_modules_and_noise(tmp_path):
    _write(tmp_path, "alpha/p/A.java", 'package p;\nclass A { String s = "B"; /* B */ }\n')
    _write(tmp_path, "beta/p/B.java", "package p;\n// uses A? no\nclass B { A a; }\n")
    _write(tmp_path, "target/p/Gen.java", "package p; class Gen { A a; }")
    state, report = scan_project(tmp_path)
    assert state.names == ("p.A", "p.B")
    assert state.partition.module_names == ("alpha", "beta")
    assert list(state.edges()) == [(1, 0)]


def test_nested_manifest_wins(tmp_path):
    _write(tmp_path, "pom.xml", "<project/>")
    _write(tmp_path, "apps/web/build.gradle", "")
    _write(tmp_path, "apps/web/src/w/W.java", "package w; import q.Q; public class W { Q q; }")
    _write(tmp_path, "lib/src/q/Q.java", "package q; public class Q { static class Inner {} }")
    state, report = scan_project(tmp_path)
    assert state.partition.module_names == ("apps/web", "lib")
    assert list(state.edges()) == [(1, 0)]


def test_unresolved_and_nested_imports(tmp_path):
    _write(tmp_path, "m/a/A.java", "package a; import b.B.Inner; import b.Missing; import java.util.List; class A {}")
    _write(tmp_path, "n/b/B.java", "package b; public class B { public static class Inner {} }")
    state, report = scan_project(tmp_path)
    assert list(state.edges()) == [(0, 1)]
    assert report.unresolved_references == [("m/a/A.java", "b.Missing")]


def test_multiple_top_level_types_share_imports(tmp_path):
    _write(tmp_path, "m/a/A.java", "package a; import b.B; class A {} class A2 {}")
    _write(tmp_path, "n/b/B.java", "package b; public class B {}")
    state, _ = scan_project(tmp_path)
    assert state.names == ("a.A", "a.A2", "b.B")
    assert set(state.edges()) == {(0, 2), (1, 2)}


def test_duplicate_types_and_errors(tmp_path):
    _write(tmp_path, "m/a/A.java", "package a; class A {}")
    _write(tmp_path, "n/a/A.java", "package a; class A {}")
    state, report = scan_project(tmp_path)
    assert state.n == 1 and len(report.skipped_files) == 1
    empty = tmp_path / "empty"
    empty.mkdir()
    with pytest.raises(EmptyProjectError):
        scan_project(empty)
    with pytest.raises(IngestError):
        scan_project(tmp_path / "nope")
