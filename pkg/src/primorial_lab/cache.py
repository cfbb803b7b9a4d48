"""Append-only line-delimited JSON cache for search verdicts.

Each line: {"n": int, "form": "minus"|"plus", "classification": str,
"method": str, "elapsed_ms": int, "digest": sha256-hex-of-decimal-candidate}.

The digest ties a record to the exact candidate value; a mismatch (or any
malformed line) raises :class:`CacheIntegrityError` rather than silently
recomputing over bad data. The default path comes from the
``PRIMORIAL_LAB_CACHE`` environment variable; CLI flags override it.
"""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Iterator, Optional

from primorial_lab.errors import CacheIntegrityError

ENV_VAR = "PRIMORIAL_LAB_CACHE"

_REQUIRED_FIELDS = {"n", "form", "classification", "method", "elapsed_ms", "digest"}
_FORMS = ("minus", "plus")
_CLASSIFICATIONS = ("prime", "composite", "probable_prime")


@dataclass(frozen=True)
class CachedVerdict:
    n: int
    form: str
    classification: str
    method: str
    elapsed_ms: int
    digest: str


def default_cache_path(flag_value: Optional[str] = None) -> Optional[Path]:
    """Resolve the cache path: explicit flag wins over the environment."""
    if flag_value:
        return Path(flag_value)
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else None


class SearchCache:
    """In-memory index over an append-only JSONL file keyed by (n, form)."""

    def __init__(self, path: Optional[Path]):
        self.path = Path(path) if path is not None else None
        self._index: dict[tuple[int, str], CachedVerdict] = {}
        if self.path is not None and self.path.exists():
            self._load()

    def _load(self) -> None:
        assert self.path is not None
        with self.path.open("r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line:
                    continue
                try:
                    obj = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise CacheIntegrityError(f"{self.path}:{lineno}: malformed JSON ({exc})") from exc
                key = self._validated_key(obj, lineno)
                self._index[key] = CachedVerdict(
                    n=obj["n"],
                    form=obj["form"],
                    classification=obj["classification"],
                    method=obj["method"],
                    elapsed_ms=obj["elapsed_ms"],
                    digest=obj["digest"],
                )

    def _validated_key(self, obj: object, lineno: int) -> tuple[int, str]:
        assert self.path is not None
        if not isinstance(obj, dict) or not _REQUIRED_FIELDS.issubset(obj):
            raise CacheIntegrityError(f"{self.path}:{lineno}: record missing required fields")
        if (
            not isinstance(obj["n"], int)
            or obj["n"] < 1
            or obj["form"] not in _FORMS
            or obj["classification"] not in _CLASSIFICATIONS
            or not isinstance(obj["digest"], str)
            or len(obj["digest"]) != 64
        ):
            raise CacheIntegrityError(f"{self.path}:{lineno}: record fields out of range")
        return (obj["n"], obj["form"])

    def get(self, n: int, form: str, expected_digest: str) -> Optional[CachedVerdict]:
        """The cached verdict, verified against the candidate digest."""
        rec = self._index.get((n, form))
        if rec is None:
            return None
        if rec.digest != expected_digest:
            raise CacheIntegrityError(
                f"cache digest mismatch for n={n} form={form}: "
                f"stored {rec.digest[:12]}..., candidate {expected_digest[:12]}..."
            )
        return rec

    def put(self, record: CachedVerdict) -> None:
        self._index[(record.n, record.form)] = record
        if self.path is not None:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self.path.open("a", encoding="utf-8") as fh:
                fh.write(json.dumps(asdict(record), sort_keys=True) + "\n")

    def records(self) -> Iterator[CachedVerdict]:
        for key in sorted(self._index, key=lambda t: (t[0], t[1])):
            yield self._index[key]

    def __len__(self) -> int:
        return len(self._index)
