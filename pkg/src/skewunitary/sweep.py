"""Sweep files: a list of ring specifications, each with the ranks to check.

A block is a run of ``key=value`` lines in the ring-spec format plus one or
more ``m=`` lines (``m=1,2`` is also accepted).  Blocks are separated by blank
lines or a line ``---``; ``#`` starts a comment.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import InvalidSpec
from .ring import RingSpec

BUNDLED = {"desk-suite": "desk-suite.sweep"}


@dataclass(frozen=True)
class SweepEntry:
    spec: RingSpec
    ms: tuple[int, ...]
    line: int


def _parse_block(block: list[tuple[int, str, str]]) -> SweepEntry:
    ms: list[int] = []
    items = []
    for lineno, key, value in block:
        if key == "m":
            for part in value.split(","):
                try:
                    m = int(part)
                except ValueError:
                    raise InvalidSpec(f"line {lineno}: m must be a positive integer, got {part!r}") from None
                if m < 1:
                    raise InvalidSpec(f"line {lineno}: m must be a positive integer, got {m}")
                ms.append(m)
        else:
            items.append((lineno, key, value))
    first = block[0][0]
    if not ms:
        raise InvalidSpec(f"line {first}: ring block has no m= line")
    try:
        spec = RingSpec.from_items(items)
    except InvalidSpec as exc:
        raise InvalidSpec(f"block starting at line {first}: {exc}") from None
    return SweepEntry(spec, tuple(ms), first)


def parse_sweep(text: str) -> list[SweepEntry]:
    entries: list[SweepEntry] = []
    block: list[tuple[int, str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line or line == "---":
            if block:
                entries.append(_parse_block(block))
                block = []
            continue
        if "=" not in line:
            raise InvalidSpec(f"line {lineno}: expected key=value, got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        block.append((lineno, key, value))
    if block:
        entries.append(_parse_block(block))
    return entries


def load_sweep(source: str) -> list[SweepEntry]:
    """Parse a sweep file by path, or a bundled sweep by name."""
    if source in BUNDLED:
        text = resources.files("skewunitary.data").joinpath(BUNDLED[source]).read_text()
    else:
        path = Path(source)
        if not path.is_file():
            raise InvalidSpec(f"sweep file {source!r} not found")
        text = path.read_text()
    return parse_sweep(text)
