"""Gzip-backed on-disk cache for enumerated diagram bases.

File layout: a gzip text stream whose first line is a JSON header
``{"count", "hash", "n", "version"}`` followed by one canonical diagram
encoding per line.  The hash is the sha256 digest of the concatenated
encodings, so a load always detects truncation or edits.  Loads are
strict: a file that fails any header or content check raises CacheError
rather than silently re-enumerating, since a corrupt cache usually
means something else went wrong.
"""

from __future__ import annotations

import gzip
import hashlib
import json
import os
from pathlib import Path

from .basis import DEFAULT_MAX_N, enumerate_basis
from .diagram import Diagram

CACHE_VERSION = 1
ENV_CACHE_DIR = "BUBBLE_CACHE_DIR"


class CacheError(RuntimeError):
    """A cache file is unreadable or inconsistent with its header."""


def default_cache_dir() -> Path | None:
    """Directory named by the environment override, if set."""
    value = os.environ.get(ENV_CACHE_DIR)
    return Path(value) if value else None


def cache_path(cache_dir: str | Path, n: int) -> Path:
    return Path(cache_dir) / f"basis_n{n}.txt.gz"


def basis_digest(encodings: list[str]) -> str:
    return hashlib.sha256("".join(encodings).encode("ascii")).hexdigest()


def save_basis(path: str | Path, n: int, diagrams: list[Diagram]) -> None:
    """Write a basis list; the parent directory is created if needed."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    encodings = [d.encode() for d in diagrams]
    header = {
        "count": len(encodings),
        "hash": basis_digest(encodings),
        "n": n,
        "version": CACHE_VERSION,
    }
    with gzip.open(path, "wt", encoding="ascii") as fh:
        fh.write(json.dumps(header, sort_keys=True) + "\n")
        for enc in encodings:
            fh.write(enc + "\n")


def load_basis(path: str | Path) -> list[Diagram]:
    """Read a basis list back, verifying header, hash, and sizes."""
    path = Path(path)
    try:
        with gzip.open(path, "rt", encoding="ascii") as fh:
            header_line = fh.readline()
            lines = fh.read().splitlines()
    except (OSError, UnicodeDecodeError) as exc:
        raise CacheError(f"cannot read cache file {path}: {exc}") from exc
    try:
        header = json.loads(header_line)
    except json.JSONDecodeError as exc:
        raise CacheError(f"bad cache header in {path}") from exc
    if not isinstance(header, dict) or header.get("version") != CACHE_VERSION:
        raise CacheError(f"unsupported cache version in {path}")
    if header.get("count") != len(lines):
        raise CacheError(
            f"cache {path} holds {len(lines)} entries, header says {header.get('count')}"
        )
    if header.get("hash") != basis_digest(lines):
        raise CacheError(f"cache {path} fails its content digest")
    n = header.get("n")
    out = []
    for enc in lines:
        try:
            d = Diagram.decode(enc)
        except ValueError as exc:
            raise CacheError(f"cache {path} holds invalid encoding {enc!r}") from exc
        if d.n_north != n or d.n_south != n:
            raise CacheError(f"cache {path} entry {enc!r} is not a size-{n} diagram")
        out.append(d)
    return out


def cached_basis(
    n: int, cache_dir: str | Path | None = None, max_n: int = DEFAULT_MAX_N
) -> list[Diagram]:
    """Load the basis of the size-n algebra from cache, enumerating on a miss.

    With no directory (argument or environment), enumerate directly.
    """
    if cache_dir is None:
        cache_dir = default_cache_dir()
    if cache_dir is None:
        return enumerate_basis(n, max_n=max_n)
    path = cache_path(cache_dir, n)
    if path.exists():
        return load_basis(path)
    diagrams = enumerate_basis(n, max_n=max_n)
    save_basis(path, n, diagrams)
    return diagrams
