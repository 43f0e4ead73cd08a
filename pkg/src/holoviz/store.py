"""File-backed document store with atomic writes and token namespaces.

Layout: <data_dir>/<namespace>/<collection>/<id>.json. Every write lands
in a temp file first and is published with os.replace, so readers never
observe a partially written document; a crash mid-write leaves only a
stray .tmp file that reads ignore.
"""

from __future__ import annotations

import hashlib
import os
import secrets
import threading
from pathlib import Path

__all__ = ["COLLECTIONS", "DocumentStore", "new_id", "namespace_for_token"]

COLLECTIONS = ("datasets", "scenes", "viz")

DEFAULT_NAMESPACE = "default"

_ID_ALLOWED = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_-")


def new_id() -> str:
    return secrets.token_hex(16)


def valid_id(resource_id: str) -> bool:
    return 0 < len(resource_id) <= 64 and set(resource_id) <= _ID_ALLOWED


def namespace_for_token(token: str) -> str:
    """Opaque directory name for a bearer token; never stores the secret."""
    return hashlib.sha256(token.encode("utf-8")).hexdigest()[:32]


class DocumentStore:
    """Single-process store; writes per resource are serialized by a lock."""

    def __init__(self, data_dir: str | os.PathLike[str]) -> None:
        self.root = Path(data_dir)
        self.root.mkdir(parents=True, exist_ok=True)
        self._locks: dict[tuple[str, str, str], threading.Lock] = {}
        self._locks_guard = threading.Lock()

    def _lock(self, namespace: str, collection: str, resource_id: str) -> threading.Lock:
        key = (namespace, collection, resource_id)
        with self._locks_guard:
            lock = self._locks.get(key)
            if lock is None:
                lock = self._locks[key] = threading.Lock()
            return lock

    def _path(self, namespace: str, collection: str, resource_id: str) -> Path:
        if collection not in COLLECTIONS:
            raise ValueError(f"unknown collection {collection!r}")
        if not valid_id(resource_id):
            raise ValueError(f"invalid resource id {resource_id!r}")
        return self.root / namespace / collection / f"{resource_id}.json"

    def namespace_exists(self, namespace: str) -> bool:
        return (self.root / namespace).is_dir()

    def create_namespace(self, namespace: str) -> None:
        (self.root / namespace).mkdir(parents=True, exist_ok=True)

    def put(self, namespace: str, collection: str, resource_id: str, data: bytes) -> None:
        """Atomic write: temp file in the target directory, then rename."""
        path = self._path(namespace, collection, resource_id)
        with self._lock(namespace, collection, resource_id):
            path.parent.mkdir(parents=True, exist_ok=True)
            tmp = path.parent / f".{resource_id}.{secrets.token_hex(8)}.tmp"
            try:
                with open(tmp, "wb") as fh:
                    fh.write(data)
                    fh.flush()
                    os.fsync(fh.fileno())
                os.replace(tmp, path)
            finally:
                if tmp.exists():
                    tmp.unlink()

    def get(self, namespace: str, collection: str, resource_id: str) -> bytes | None:
        path = self._path(namespace, collection, resource_id)
        try:
            return path.read_bytes()
        except FileNotFoundError:
            return None

    def exists(self, namespace: str, collection: str, resource_id: str) -> bool:
        return self._path(namespace, collection, resource_id).is_file()

    def list_ids(self, namespace: str, collection: str) -> list[str]:
        directory = self.root / namespace / collection
        if not directory.is_dir():
            return []
        return sorted(
            p.stem for p in directory.iterdir() if p.suffix == ".json" and not p.name.startswith(".")
        )
