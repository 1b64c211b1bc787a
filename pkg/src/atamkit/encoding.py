"""String encoding of a tile set's binding relation, plus closed-form size bounds.

At temperature 1 a glue is fully described by which tiles it can bind to,
so a tile set is encoded by listing, for every tile and side, the tiles whose
opposite side binds there.  Each candidate is prefixed by a marker: ``y``
(binds), ``f`` (binds, and is the last binder on that side) or ``n``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .core import OPPOSITE, TileAssemblyError, TileSystem

SIDES = ("N", "E", "S", "W")


class EncodingError(TileAssemblyError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


@dataclass(frozen=True)
class BindingRelation:
    """``binds[i][k]`` is the set of tiles whose opposite side binds side ``SIDES[k]`` of tile ``i``."""

    binds: tuple[tuple[frozenset[int], ...], ...]

    def __post_init__(self):
        n = len(self.binds)
        for i, row in enumerate(self.binds):
            if len(row) != 4:
                raise ValueError(f"tile {i} must list exactly four sides")
            for s in row:
                if any(not 0 <= j < n for j in s):
                    raise ValueError(f"tile {i} refers to a tile outside 0..{n - 1}")

    @classmethod
    def from_lists(cls, rows: Sequence[dict[str, Sequence[int]]]) -> "BindingRelation":
        return cls(tuple(tuple(frozenset(row.get(d, ())) for d in SIDES) for row in rows))

    @classmethod
    def from_system(cls, system: TileSystem) -> "BindingRelation":
        """Binding relation of a 2D system's tiles, enumerated in declaration order."""
        if system.dimension != 2:
            raise ValueError("the encoding covers 2D tile sets")
        tiles = system.tiles
        rows = []
        for t in tiles:
            rows.append(tuple(
                frozenset(j for j, u in enumerate(tiles) if t.glue(d).binds(u.glue(OPPOSITE[d])))
                for d in SIDES))
        return cls(tuple(rows))

    def __len__(self):
        return len(self.binds)

    def side(self, i: int, d: str) -> frozenset[int]:
        return self.binds[i][SIDES.index(d)]

    def asymmetries(self) -> list[tuple[int, str, int]]:
        """Entries ``(i, d, j)`` where ``j`` binds side ``d`` of ``i`` but not conversely."""
        out = []
        for i in range(len(self)):
            for d in SIDES:
                for j in sorted(self.side(i, d)):
                    if i not in self.side(j, OPPOSITE[d]):
                        out.append((i, d, j))
        return out

    def is_symmetric(self) -> bool:
        return not self.asymmetries()


def index_width(n: int) -> int:
    """Digits used for candidate indices; tile headers use one more."""
    return max(1, math.ceil(math.log2(n))) if n > 0 else 1


def _binary(i: int, width: int) -> str:
    return format(i, "b").zfill(width)


def encode_tileset(relation: BindingRelation | TileSystem, mode: str = "binary") -> str:
    """Encode the relation; ``mode`` is ``"binary"`` or ``"display"``.

    Display mode writes indices in decimal and separates tokens with single
    spaces; binary mode pads indices and uses no separators.
    """
    if isinstance(relation, TileSystem):
        relation = BindingRelation.from_system(relation)
    if mode not in ("binary", "display"):
        raise ValueError(f"unknown mode {mode!r}")
    n = len(relation)
    w = index_width(n)
    num = (lambda i, width: str(i)) if mode == "display" else _binary
    tokens = ["B"]
    for i in range(n):
        tokens.append(num(i, w + 1))
        for d in SIDES:
            binders = relation.side(i, d)
            last = max(binders) if binders else None
            parts = [d]
            for j in range(n):
                marker = "f" if j == last else ("y" if j in binders else "n")
                parts.append(marker + num(j, w))
            tokens.append("".join(parts))
        tokens.append("D")
    tokens.append("F")
    return " ".join(tokens) if mode == "display" else "".join(tokens)


def normalize_display(s: str) -> str:
    return " ".join(s.split())


class _Reader:
    def __init__(self, s: str, display: bool):
        self.s = s
        self.pos = 0
        self.display = display

    def skip(self):
        if self.display:
            while self.pos < len(self.s) and self.s[self.pos].isspace():
                self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.s[self.pos] if self.pos < len(self.s) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            found = self.peek() or "end of input"
            raise EncodingError(f"expected {ch!r}, found {found!r}", self.pos)
        self.pos += 1

    def number(self, width: int | None) -> int:
        self.skip()
        start = self.pos
        if self.display:
            while self.pos < len(self.s) and self.s[self.pos].isdigit():
                self.pos += 1
        else:
            while self.pos < len(self.s) and self.s[self.pos] in "01" and (
                    width is None or self.pos - start < width):
                self.pos += 1
        text = self.s[start:self.pos]
        if not text:
            raise EncodingError("expected a number", start)
        if width is not None and not self.display and len(text) != width:
            raise EncodingError(f"expected {width} binary digits", start)
        return int(text, 10 if self.display else 2)


def decode_tileset(s: str) -> BindingRelation:
    """Inverse of ``encode_tileset`` for either mode (display mode is detected by whitespace)."""
    display = any(c.isspace() for c in s.strip()) or any(c in "23456789" for c in s)
    r = _Reader(s.strip(), display)
    r.expect("B")
    if r.peek() == "F":
        r.pos += 1
        if r.peek():
            raise EncodingError("trailing characters", r.pos)
        return BindingRelation(())
    r.skip()
    header_start = r.pos
    first = r.number(None)
    header_len = r.pos - header_start
    if first != 0:
        raise EncodingError("the first tile must have index 0", header_start)
    if not display and header_len < 2:
        raise EncodingError("tile headers need at least two binary digits", header_start)
    # The first side list tells us how many tiles there are.
    rows: list[tuple[frozenset[int], ...]] = []
    n = None
    w = None if display else header_len - 1
    i = 0
    while True:
        if i > 0:
            at = r.pos
            idx = r.number(None if w is None else w + 1)
            if idx != i:
                raise EncodingError(f"expected tile index {i}, found {idx}", at)
        sides = []
        for d in SIDES:
            r.expect(d)
            binders = set()
            last_seen = False
            j = 0
            while r.peek() in ("y", "f", "n") and r.peek() != "":
                at = r.pos
                marker = r.peek()
                r.pos += 1
                jj = r.number(w)
                if jj != j:
                    raise EncodingError(f"expected candidate {j}, found {jj}", at)
                if marker != "n":
                    if last_seen:
                        raise EncodingError("binder listed after the final binder", at)
                    binders.add(j)
                    last_seen = marker == "f"
                j += 1
                if n is not None and j == n:
                    break
            if n is None:
                n = j
                if n == 0:
                    raise EncodingError("empty side list", r.pos)
                if not display and w != index_width(n):
                    raise EncodingError(f"index width {w} does not fit {n} tiles", header_start)
            elif j != n:
                raise EncodingError(f"side list has {j} entries, expected {n}", r.pos)
            if binders and not last_seen:
                raise EncodingError(f"side {d} of tile {i} has binders but no final marker", r.pos)
            sides.append(frozenset(binders))
        r.expect("D")
        rows.append(tuple(sides))
        i += 1
        if i == n:
            break
    r.expect("F")
    if r.peek():
        raise EncodingError("trailing characters", r.pos)
    return BindingRelation(tuple(rows))


def encoding_length(size: int) -> int:
    """Length of the binary encoding of any relation on ``size`` tiles."""
    if size < 1:
        raise ValueError("size must be at least 1")
    w = index_width(size)
    per_tile = (w + 1) + 4 * (1 + size * (1 + w)) + 1
    return 2 + size * per_tile


def arm_length_bound(g: int, m: int) -> int:
    """Arm length ``((g+1)^(6m) (6m)! + 1) * 3 + 6`` past which two arms must share a movie."""
    if g < 0:
        raise ValueError("glue count must be non-negative")
    if m < 1:
        raise ValueError("scale must be at least 1")
    return ((g + 1) ** (6 * m) * math.factorial(6 * m) + 1) * 3 + 6


def example_relation() -> BindingRelation:
    """The five-tile relation behind the golden example encoding."""
    return BindingRelation.from_lists([
        {"N": (1, 2, 4)},
        {"N": (1, 2, 4), "E": (4,), "S": (0, 1)},
        {"E": (3,), "S": (4,)},
        {"S": (4,), "W": (2,)},
        {"N": (3,), "S": (0, 1), "W": (1,)},
    ])
