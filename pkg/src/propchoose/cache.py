"""Append-only result cache: one ``key=value`` record per line."""

from __future__ import annotations

import os
import time
from dataclasses import asdict, dataclass, fields
from pathlib import Path

from . import __version__
from .solver import CHOOSABLE, NOT_CHOOSABLE, Verdict

ENV_VAR = "PROPCHOOSE_CACHE"
DECISIVE = (CHOOSABLE, NOT_CHOOSABLE)


class CacheConflict(RuntimeError):
    """A new result contradicts one already on record."""


@dataclass(frozen=True)
class CacheRecord:
    graph: str
    k: int
    outcome: str
    witness_hash: str = "-"
    classes: int = 0
    elapsed_ms: int = 0
    version: str = __version__
    timestamp: str = ""

    def line(self) -> str:
        return " ".join(f"{key}={value}" for key, value in asdict(self).items()) + "\n"

    @classmethod
    def parse(cls, line: str) -> "CacheRecord":
        raw = dict(item.split("=", 1) for item in line.split())
        kinds = {f.name: f.type for f in fields(cls)}
        values = {key: int(v) if kinds[key] == "int" else v for key, v in raw.items() if key in kinds}
        return cls(**values)

    @classmethod
    def from_verdict(cls, v: Verdict) -> "CacheRecord":
        return cls(v.graph, v.k, v.outcome, v.witness_hash or "-", v.classes_checked,
                   int(v.elapsed * 1000), __version__, time.strftime("%Y-%m-%dT%H:%M:%S"))


def default_path() -> Path | None:
    value = os.environ.get(ENV_VAR)
    return Path(value) if value else None


class ResultCache:
    def __init__(self, path: str | Path):
        self.path = Path(path)
        self.records: list[CacheRecord] = []
        if self.path.exists():
            for line in self.path.read_text().splitlines():
                if line.strip() and not line.startswith("#"):
                    self.records.append(CacheRecord.parse(line))

    def lookup(self, graph: str, k: int) -> CacheRecord | None:
        for rec in self.records:
            if rec.graph == graph and rec.k == k and rec.outcome in DECISIVE:
                return rec
        return None

    def check(self, rec: CacheRecord) -> None:
        old = self.lookup(rec.graph, rec.k)
        if old is None or rec.outcome not in DECISIVE:
            return
        if old.outcome != rec.outcome or old.witness_hash != rec.witness_hash:
            raise CacheConflict(
                f"{rec.graph} k={rec.k}: cached {old.outcome} (witness {old.witness_hash}) "
                f"but this run gave {rec.outcome} (witness {rec.witness_hash})"
            )

    def add(self, rec: CacheRecord) -> None:
        self.check(rec)
        self.records.append(rec)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a") as fh:
            fh.write(rec.line())

    def add_verdict(self, v: Verdict) -> CacheRecord:
        rec = CacheRecord.from_verdict(v)
        self.add(rec)
        return rec
