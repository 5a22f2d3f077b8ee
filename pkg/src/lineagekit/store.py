"""Plain-file store for graphs, profiles, eval records, queues and audit.

One directory tree is the single source of truth shared by the CLI and
the review service. Files over a database: the data volumes involved
(thousands of nodes at most) never justify one, and files diff cleanly
in review. Every write lands via write-temp-then-rename, so a reader
never observes a half-written document. Writers serialize on a lock
file; readers never take it.
"""

from __future__ import annotations

import dataclasses
import json
import os
import re
import threading
import time
import uuid
from contextlib import contextmanager
from hashlib import sha256
from pathlib import Path

from lineagekit import SCHEMA_VERSION
from lineagekit.analysis.records import EvalRecord
from lineagekit.errors import (
    ConfigError,
    CorruptAudit,
    NotFound,
    SchemaMismatch,
    StoreLocked,
)
from lineagekit.graph.export import export_graph, export_review_queue, import_graph
from lineagekit.graph.graph import LineageGraph
from lineagekit.scoring.profile import ScoreProfile

SUBDIRS = ("graphs", "profiles", "records", "queue", "audit")
META_FILE = "meta.json"
LOCK_FILE = "store.lock"
AUDIT_FILE = "audit.jsonl"

# stored names become file names, so no separators or dotfiles
_NAME_RE = re.compile(r"^[A-Za-z0-9][A-Za-z0-9._-]*$")


def slugify(dataset_id: str) -> str:
    """A store-safe name for a hub-style ``owner/name`` id."""
    return dataset_id.replace("/", "__")


def _check_name(name: str) -> str:
    if not _NAME_RE.match(name):
        raise ConfigError(
            f"invalid store name {name!r}: use letters, digits, '.', '_', '-'")
    return name


def _atomic_write(path: Path, data: bytes) -> None:
    tmp = path.parent / f".tmp-{uuid.uuid4().hex}"
    with open(tmp, "wb") as fh:
        fh.write(data)
        fh.flush()
        os.fsync(fh.fileno())
    os.replace(tmp, path)


class Store:
    """A store root. Opening creates the layout or validates an
    existing one; a root written by another schema version is refused,
    not migrated."""

    def __init__(self, root: str | Path, holder: str = "local", create: bool = True):
        self.root = Path(root)
        self.holder = holder
        self._lock_depth = threading.local()
        meta_path = self.root / META_FILE
        if meta_path.exists():
            try:
                meta = json.loads(meta_path.read_text(encoding="utf-8"))
            except json.JSONDecodeError as exc:
                raise SchemaMismatch(f"unreadable store metadata: {exc}")
            version = meta.get("schema_version") if isinstance(meta, dict) else None
            if version != SCHEMA_VERSION:
                raise SchemaMismatch(
                    f"store schema version {version!r}, this build uses {SCHEMA_VERSION}")
        elif create:
            self.root.mkdir(parents=True, exist_ok=True)
            _atomic_write(meta_path, (json.dumps(
                {"schema_version": SCHEMA_VERSION}, sort_keys=True) + "\n").encode("utf-8"))
        else:
            raise NotFound(f"no store at {self.root}")
        for subdir in SUBDIRS:
            (self.root / subdir).mkdir(exist_ok=True)

    # -- locking ---------------------------------------------------------

    @contextmanager
    def lock(self, timeout: float = 10.0):
        """Exclusive writer lock, reentrant within one thread.

        A crash can leave the lock file behind; the holder id inside
        tells an operator what died so they can remove it by hand.
        """
        depth = getattr(self._lock_depth, "value", 0)
        if depth > 0:
            self._lock_depth.value = depth + 1
            try:
                yield
            finally:
                self._lock_depth.value -= 1
            return

        lock_path = self.root / LOCK_FILE
        deadline = time.monotonic() + timeout
        while True:
            try:
                fd = os.open(lock_path, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
                break
            except FileExistsError:
                if time.monotonic() >= deadline:
                    try:
                        held_by = lock_path.read_text(encoding="utf-8").strip()
                    except OSError:
                        held_by = "unknown"
                    raise StoreLocked(
                        f"store {self.root} is locked by {held_by or 'unknown'}")
                time.sleep(0.002)
        try:
            os.write(fd, f"{self.holder}:{os.getpid()}\n".encode("utf-8"))
        finally:
            os.close(fd)
        self._lock_depth.value = 1
        try:
            yield
        finally:
            self._lock_depth.value = 0
            try:
                os.unlink(lock_path)
            except FileNotFoundError:
                pass

    # -- shared document plumbing ----------------------------------------

    def _doc_path(self, subdir: str, name: str) -> Path:
        return self.root / subdir / f"{_check_name(name)}.json"

    def _write_doc(self, subdir: str, name: str, payload: bytes) -> None:
        with self.lock():
            _atomic_write(self._doc_path(subdir, name), payload)

    def _read_doc(self, subdir: str, name: str) -> dict:
        path = self._doc_path(subdir, name)
        try:
            text = path.read_text(encoding="utf-8")
        except FileNotFoundError:
            raise NotFound(f"no {subdir[:-1] if subdir.endswith('s') else subdir} "
                           f"named {name!r} in {self.root}")
        return json.loads(text)

    def _list(self, subdir: str) -> list[str]:
        return sorted(p.stem for p in (self.root / subdir).glob("*.json"))

    # -- graphs ------------------------------------------------------------

    def save_graph(self, name: str, graph: LineageGraph) -> None:
        self._write_doc("graphs", name, export_graph(graph))

    def load_graph(self, name: str) -> LineageGraph:
        return import_graph(self._read_doc("graphs", name))

    def list_graphs(self) -> list[str]:
        return self._list("graphs")

    # -- review queues -----------------------------------------------------

    def save_queue(self, name: str, graph: LineageGraph) -> None:
        """Snapshot the graph's flagged edges as the review queue."""
        self._write_doc("queue", name, export_review_queue(graph))

    def load_queue(self, name: str) -> dict:
        doc = self._read_doc("queue", name)
        if doc.get("version") != SCHEMA_VERSION:
            raise SchemaMismatch(
                f"queue document version {doc.get('version')!r}, "
                f"this build reads version {SCHEMA_VERSION}")
        return doc

    def list_queues(self) -> list[str]:
        return self._list("queue")

    # -- score profiles ------------------------------------------------------

    def save_profile(self, name: str, profile: ScoreProfile) -> None:
        doc = {"version": SCHEMA_VERSION, "profile": profile.to_dict()}
        payload = (json.dumps(doc, indent=2, sort_keys=True,
                              ensure_ascii=False) + "\n").encode("utf-8")
        self._write_doc("profiles", name, payload)

    def load_profile(self, name: str) -> ScoreProfile:
        doc = self._read_doc("profiles", name)
        if doc.get("version") != SCHEMA_VERSION:
            raise SchemaMismatch(
                f"profile document version {doc.get('version')!r}, "
                f"this build reads version {SCHEMA_VERSION}")
        return ScoreProfile.from_dict(doc["profile"])

    def list_profiles(self) -> list[str]:
        return self._list("profiles")

    # -- eval records ---------------------------------------------------------

    def save_records(self, name: str, records: list[EvalRecord]) -> None:
        doc = {
            "version": SCHEMA_VERSION,
            "records": [dataclasses.asdict(record) for record in records],
        }
        payload = (json.dumps(doc, indent=2, sort_keys=True,
                              ensure_ascii=False) + "\n").encode("utf-8")
        self._write_doc("records", name, payload)

    def load_records(self, name: str) -> list[EvalRecord]:
        doc = self._read_doc("records", name)
        if doc.get("version") != SCHEMA_VERSION:
            raise SchemaMismatch(
                f"records document version {doc.get('version')!r}, "
                f"this build reads version {SCHEMA_VERSION}")
        return [EvalRecord(**row) for row in doc["records"]]

    def list_records(self) -> list[str]:
        return self._list("records")

    # -- audit log ------------------------------------------------------------

    @property
    def _audit_path(self) -> Path:
        return self.root / "audit" / AUDIT_FILE

    def append_audit(self, entry: dict) -> None:
        if not isinstance(entry, dict):
            raise ConfigError("audit entries must be dicts")
        line = json.dumps(entry, sort_keys=True, ensure_ascii=False)
        with self.lock():
            with open(self._audit_path, "a", encoding="utf-8") as fh:
                fh.write(line + "\n")
                fh.flush()
                os.fsync(fh.fileno())

    def read_audit(self) -> list[dict]:
        """All audit entries in insertion order.

        Every entry the writer produces ends with a newline, so a final
        line without one is a truncated write, corrupt even if its text
        happens to parse.
        """
        try:
            text = self._audit_path.read_text(encoding="utf-8")
        except FileNotFoundError:
            return []
        if not text:
            return []
        complete = text.endswith("\n")
        lines = text.split("\n")
        if complete:
            lines = lines[:-1]
        entries = []
        for line_no, line in enumerate(lines, start=1):
            if line_no == len(lines) and not complete:
                raise CorruptAudit(f"audit line {line_no} is truncated", line_no)
            try:
                entry = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorruptAudit(f"audit line {line_no}: {exc}", line_no)
            if not isinstance(entry, dict):
                raise CorruptAudit(f"audit line {line_no}: not an object", line_no)
            entries.append(entry)
        return entries

    # -- integrity --------------------------------------------------------------

    def fingerprint(self) -> str:
        """Hash over every stored byte; the lock file is transient and
        excluded. Lets tests prove read paths never mutate the store."""
        digest = sha256()
        for path in sorted(self.root.rglob("*")):
            if path.name == LOCK_FILE or path.is_dir():
                continue
            digest.update(str(path.relative_to(self.root)).encode("utf-8"))
            digest.update(b"\x00")
            digest.update(path.read_bytes())
            digest.update(b"\x01")
        return digest.hexdigest()
