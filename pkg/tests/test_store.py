from __future__ import annotations

import os
import threading

import pytest

import holoviz.store as store_mod
from holoviz.store import DocumentStore, namespace_for_token, new_id, valid_id


@pytest.fixture()
def store(tmp_path) -> DocumentStore:
    return DocumentStore(tmp_path / "data")


class TestBasics:
    def test_read_after_write(self, store):
        store.put("ns", "datasets", "abc", b"{}")
        assert store.get("ns", "datasets", "abc") == b"{}"

    def test_missing_returns_none(self, store):
        assert store.get("ns", "datasets", "nope") is None

    def test_overwrite_replaces(self, store):
        store.put("ns", "scenes", "x", b"one")
        store.put("ns", "scenes", "x", b"two")
        assert store.get("ns", "scenes", "x") == b"two"

    def test_list_ids_sorted(self, store):
        for rid in ("b", "a", "c"):
            store.put("ns", "viz", rid, b"{}")
        assert store.list_ids("ns", "viz") == ["a", "b", "c"]

    def test_namespaces_isolated(self, store):
        store.put("ns_a", "datasets", "shared", b"A")
        assert store.get("ns_b", "datasets", "shared") is None
        assert store.list_ids("ns_b", "datasets") == []

    def test_unknown_collection_rejected(self, store):
        with pytest.raises(ValueError):
            store.put("ns", "other", "x", b"")

    def test_traversal_ids_rejected(self, store):
        for bad in ("../evil", "a/b", "", "x" * 65, ".hidden"):
            assert not valid_id(bad) or "/" not in bad and ".." not in bad
        with pytest.raises(ValueError):
            store.get("ns", "datasets", "../../etc/passwd")

    def test_new_id_shape(self):
        rid = new_id()
        assert len(rid) == 32 and valid_id(rid)

    def test_namespace_for_token_opaque(self):
        ns = namespace_for_token("secret-token")
        assert "secret-token" not in ns
        assert ns == namespace_for_token("secret-token")
        assert ns != namespace_for_token("other-token")


class TestAtomicity:
    def test_crash_before_rename_leaves_no_resource(self, store, monkeypatch):
        real_replace = os.replace

        def exploding_replace(src, dst):
            raise RuntimeError("simulated crash")

        monkeypatch.setattr(store_mod.os, "replace", exploding_replace)
        with pytest.raises(RuntimeError):
            store.put("ns", "datasets", "doomed", b"partial")
        monkeypatch.setattr(store_mod.os, "replace", real_replace)
        assert store.get("ns", "datasets", "doomed") is None
        assert store.list_ids("ns", "datasets") == []
        # The interrupted write must not leave a temp file behind either.
        leftovers = list((store.root / "ns" / "datasets").glob("*"))
        assert leftovers == []

    def test_partial_temp_file_invisible(self, store):
        store.put("ns", "scenes", "ok", b"good")
        directory = store.root / "ns" / "scenes"
        (directory / ".wip.deadbeef.tmp").write_bytes(b"torn write")
        assert store.list_ids("ns", "scenes") == ["ok"]
        assert store.get("ns", "scenes", "ok") == b"good"

    def test_crash_preserves_previous_version(self, store, monkeypatch):
        store.put("ns", "viz", "doc", b"v1")

        def exploding_replace(src, dst):
            raise RuntimeError("simulated crash")

        monkeypatch.setattr(store_mod.os, "replace", exploding_replace)
        with pytest.raises(RuntimeError):
            store.put("ns", "viz", "doc", b"v2")
        monkeypatch.undo()
        assert store.get("ns", "viz", "doc") == b"v1"

    def test_concurrent_writers_single_winner(self, store):
        errors = []

        def writer(i: int) -> None:
            try:
                for _ in range(20):
                    store.put("ns", "datasets", "contended", f"writer-{i}".encode() * 100)
            except Exception as exc:  # noqa: BLE001
                errors.append(exc)

        threads = [threading.Thread(target=writer, args=(i,)) for i in range(8)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert not errors
        data = store.get("ns", "datasets", "contended")
        assert data is not None
        # Whole-document atomicity: the winner is one writer's payload.
        assert len(set(data.decode().replace("writer-", "").replace("-", ""))) <= 2
