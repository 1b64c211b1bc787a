"""Temperature-1 read/write bit gadgets in 3D and superside layout arithmetic.

A writer path runs east along row ``y = 0``.  Each bit takes four columns.
To write a bit the path places a blocking tile at the read site of that bit:
a 1 puts it in the plane ``z = 0`` and then steps up over the site, a 0
steps up first and puts it in ``z = 1``.  After the last bit a turnaround
climbs to row ``y = 2`` and a reader path comes back west.  At every bit the
reader dips to row ``y = 1`` and forks: one branch continues in ``z = 0``, the
other climbs to ``z = 1``.  The writer has blocked exactly one of them, and
the surviving branch appends the bit to the history carried in the glue
labels.  The reader's last tile is named ``READ_<bits>``.

Bit ``i`` (columns ``4i .. 4i + 3``) uses these cells::

    writer 1: (4i,0,0) (4i+1,0,0) [4i+1,1,0] (4i+1,2,0) (4i+1,2,1) (4i+2,2,1) (4i+3,2,1) (4i+3,1,1) (4i+3,0,1) (4i+3,0,0)
    writer 0: (4i,0,0) (4i+1,0,0) (4i+1,0,1) [4i+1,1,1] (4i+1,2,1) (4i+2,2,1) (4i+3,2,1) (4i+3,1,1) (4i+3,0,1) (4i+3,0,0)
    reader:   (4i+3,2,0) (4i+2,2,0) (4i+2,1,0)=fork
              z=0 branch: (4i+1,1,0) (4i,1,0)
              z=1 branch: (4i+2,1,1) (4i+1,1,1) (4i,1,1) (4i,1,0)
              then (4i,2,0) and on to (4i-1,2,0)

Bracketed cells are the blocking tiles.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .core import (
    Assembly,
    Configuration,
    TileAssemblyError,
    TileSystem,
    TileType,
    direction_between,
    explore,
    tile,
)
from .encoding import encoding_length, index_width

MAX_BITS = 8
EMPTY = "ε"

_WRITER_OFFSETS = {
    1: [(0, 0, 0), (1, 0, 0), (1, 1, 0), (1, 2, 0), (1, 2, 1), (2, 2, 1), (3, 2, 1), (3, 1, 1),
        (3, 0, 1), (3, 0, 0)],
    0: [(0, 0, 0), (1, 0, 0), (1, 0, 1), (1, 1, 1), (1, 2, 1), (2, 2, 1), (3, 2, 1), (3, 1, 1),
        (3, 0, 1), (3, 0, 0)],
}
_BLOCK = {1: (1, 1, 0), 0: (1, 1, 1)}


class GadgetError(TileAssemblyError):
    pass


def _shift(offset, x0):
    return (offset[0] + x0, offset[1], offset[2])


@dataclass(frozen=True)
class BitGadget:
    """A gadget system together with the geometry needed to check it."""

    bits: str
    system: TileSystem
    blocking: dict[int, tuple[int, int, int]] = field(default_factory=dict)
    zero_branch: dict[int, tuple[int, int, int]] = field(default_factory=dict)
    one_branch: dict[int, tuple[tuple[int, int, int], ...]] = field(default_factory=dict)

    @property
    def expected_reader(self) -> str:
        return "READ_" + (self.bits or EMPTY)

    def max_tiles(self) -> int:
        """Upper bound on the size of any producible assembly."""
        n = len(self.bits)
        return 1 + 10 * n + 3 + 9 * n + 1 + 2


def _chain(cells: list, names: list[str], prev_cell, in_label: str, next_cell, out_label: str,
           label_prefix: str) -> list[tuple[tuple[int, int, int], TileType]]:
    """Tiles along ``cells`` joined by fresh labels, entered from ``prev_cell`` and leaving to ``next_cell``."""
    out = []
    full = [prev_cell] + list(cells) + [next_cell]
    for k, p in enumerate(cells):
        before, after = full[k], full[k + 2]
        sides = {}
        d_in = direction_between(p, before)
        sides[d_in] = in_label if k == 0 else f"{label_prefix}{k - 1}"
        if after is not None:
            d_out = direction_between(p, after)
            sides[d_out] = out_label if k == len(cells) - 1 else f"{label_prefix}{k}"
        out.append((p, tile(names[k], dim=3, **sides)))
    return out


def _writer(bits: str) -> tuple[list[TileType], dict]:
    tiles = []
    blocking = {}
    prev = (-1, 0, 0)
    for i, b in enumerate(bits):
        bit = int(b)
        x0 = 4 * i
        cells = [_shift(o, x0) for o in _WRITER_OFFSETS[bit]]
        nxt = (x0 + 4, 0, 0)
        out = f"w{i + 1}in" if i + 1 < len(bits) else "turn"
        names = [f"w{i}b{bit}k{k}" for k in range(len(cells))]
        placed = _chain(cells, names, prev, f"w{i}in", nxt, out, f"w{i}b{bit}k")
        tiles += [t for _, t in placed]
        blocking[i] = _shift(_BLOCK[bit], x0)
        prev = cells[-1]
    return tiles, blocking


def _reader(length: int) -> list[TileType]:
    """Reader tiles for every possible history, so the reader itself knows nothing in advance."""
    n = length
    x_turn = 4 * n
    tiles = []
    turn_cells = [(x_turn, 0, 0), (x_turn, 1, 0), (x_turn, 2, 0)]
    first_out = f"rd{n - 1}[]" if n else "read[]"
    prev_writer = (x_turn - 1, 0, 0)
    tiles += [t for _, t in _chain(turn_cells, ["turn0", "turn1", "turn2"], prev_writer,
                                   "turn" if n else "w0in", (x_turn - 1, 2, 0), first_out, "turn")]
    for i in reversed(range(n)):
        x0 = 4 * i
        for hist in map("".join, itertools.product("01", repeat=n - 1 - i)):
            h = f"[{hist}]"
            enter = f"rd{i}{h}"
            tiles.append(tile(f"r{i}a{h}", dim=3, E=enter, W=f"r{i}a{h}"))
            tiles.append(tile(f"r{i}R{h}", dim=3, E=f"r{i}a{h}", S=f"r{i}R{h}"))
            tiles.append(tile(f"r{i}P{h}", dim=3, N=f"r{i}R{h}", W=f"r{i}z{h}", U=f"r{i}o{h}"))
            # z = 0 branch, open only when the bit is 0
            tiles.append(tile(f"r{i}z{h}", dim=3, E=f"r{i}z{h}", W=f"r{i}M0{h}"))
            tiles.append(tile(f"r{i}M0{h}", dim=3, E=f"r{i}M0{h}", N=f"r{i}up[0{hist}]"))
            # z = 1 branch, open only when the bit is 1
            tiles.append(tile(f"r{i}o1{h}", dim=3, D=f"r{i}o{h}", W=f"r{i}o1{h}"))
            tiles.append(tile(f"r{i}o2{h}", dim=3, E=f"r{i}o1{h}", W=f"r{i}o2{h}"))
            tiles.append(tile(f"r{i}o3{h}", dim=3, E=f"r{i}o2{h}", D=f"r{i}o3{h}"))
            tiles.append(tile(f"r{i}M1{h}", dim=3, U=f"r{i}o3{h}", N=f"r{i}up[1{hist}]"))
        for hist in map("".join, itertools.product("01", repeat=n - i)):
            h = f"[{hist}]"
            out = f"rd{i - 1}{h}" if i else f"read{h}"
            tiles.append(tile(f"r{i}up{h}", dim=3, S=f"r{i}up{h}", W=out))
    for hist in map("".join, itertools.product("01", repeat=n)):
        tiles.append(tile(f"READ_{hist or EMPTY}", dim=3, E=f"read[{hist}]"))
    return tiles


def bit_string_gadget(bits, max_bits: int = MAX_BITS) -> BitGadget:
    """Writer for ``bits`` chained to a generic reader."""
    bits = "".join(str(b) for b in bits)
    if any(b not in "01" for b in bits):
        raise GadgetError("bits must be 0 or 1")
    if len(bits) > max_bits:
        raise GadgetError(f"at most {max_bits} bits are supported, got {len(bits)}")
    seed_tile = tile("seed", dim=3, E="w0in")
    writer, blocking = _writer(bits)
    reader = _reader(len(bits))
    system = TileSystem((seed_tile, *writer, *reader), Assembly({(-1, 0, 0): seed_tile}), 1,
                        name=f"bits_{bits or EMPTY}")
    zero = {i: (4 * i + 1, 1, 0) for i in range(len(bits))}
    one = {i: ((4 * i + 2, 1, 1), (4 * i + 1, 1, 1)) for i in range(len(bits))}
    return BitGadget(bits, system, blocking, zero, one)


def build_bit_string_gadget(bits, max_bits: int = MAX_BITS) -> TileSystem:
    return bit_string_gadget(bits, max_bits).system


def build_bit_gadget(bit: int) -> TileSystem:
    if bit not in (0, 1):
        raise GadgetError("bit must be 0 or 1")
    return build_bit_string_gadget([bit])


def reader_outcome(assembly: Configuration) -> str | None:
    """Name of the reader's final tile, if it has been placed."""
    for t in assembly.values():
        if t.name.startswith("READ_"):
            return t.name
    return None


@dataclass(frozen=True)
class GadgetCheck:
    terminals: tuple[str | None, ...]
    assemblies: int
    max_stub: int
    planes: frozenset[int]
    write_before_read: bool
    both_branches: int

    @property
    def deterministic(self) -> bool:
        return len(self.terminals) == 1 and self.terminals[0] is not None


def _reader_core(assembly: Configuration) -> set:
    """Cells on the path from the seed to the furthest tile, following glue bonds."""
    bonded = {}
    for p, q, _ in assembly.bonds():
        bonded.setdefault(p, []).append(q)
        bonded.setdefault(q, []).append(p)
    start = next(iter(p for p, t in assembly.items() if t.name == "seed"))
    # a tree: longest path from the seed is the main path, everything else is a stub
    parent = {start: None}
    order = [start]
    for p in order:
        for q in bonded.get(p, ()):
            if q not in parent:
                parent[q] = p
                order.append(q)
    depth = {start: 0}
    for p in order[1:]:
        depth[p] = depth[parent[p]] + 1
    tip = max(order, key=lambda p: depth[p])
    core = set()
    while tip is not None:
        core.add(tip)
        tip = parent[tip]
    return core


def stub_lengths(assembly: Configuration) -> list[int]:
    """Lengths of dead branches hanging off the main path."""
    core = _reader_core(assembly)
    rest = set(assembly.positions) - core
    lengths = []
    seen = set()
    for p in sorted(rest):
        if p in seen:
            continue
        comp = {p}
        todo = [p]
        while todo:
            a = todo.pop()
            for b in rest:
                if b not in comp and sum(abs(x - y) for x, y in zip(a, b)) == 1:
                    comp.add(b)
                    todo.append(b)
        seen |= comp
        lengths.append(len(comp))
    return lengths


def check_gadget(gadget: BitGadget, budget: int = 200_000) -> GadgetCheck:
    """Exhaustively explore a gadget and check determinism, geometry and write-before-read."""
    ex = explore(gadget.system, gadget.max_tiles(), budget=budget, strict=True)
    terminals = tuple(sorted({reader_outcome(a) for a in ex.terminals()}, key=str))
    planes = frozenset(p[2] for a in ex.assemblies for p in a)
    max_stub = 0
    for a in ex.terminals():
        max_stub = max([max_stub, *stub_lengths(a)])
    ordered = True
    both = 0
    for a in ex.assemblies:
        for i, block in gadget.blocking.items():
            z_cell = gadget.zero_branch[i]
            o_cells = gadget.one_branch[i]
            fork = (4 * i + 2, 1, 0)
            if fork in a and block not in a:
                ordered = False
            z_done = z_cell in a and a[z_cell].name.startswith(f"r{i}z")
            o_done = o_cells[1] in a and a[o_cells[1]].name.startswith(f"r{i}o2")
            if z_done and o_done:
                both += 1
    return GadgetCheck(terminals, len(ex), max_stub, planes, ordered, both)


# Superside layout -----------------------------------------------------------------

CORNER_GAP = 1


@dataclass(frozen=True)
class SupersideLayout:
    """Widths, in read/write gadget units, of the regions along one superside."""

    tile_count: int
    gap: int
    h_width: int
    s_width: int
    t_width: int
    pad: int

    def regions(self) -> list[tuple[str, int]]:
        return [("gap", self.gap), ("h", self.h_width), ("S", self.s_width), ("T", self.t_width),
                ("pad", self.pad), ("T", self.t_width), ("S", self.s_width), ("h", self.h_width),
                ("gap", self.gap)]

    @property
    def side_length(self) -> int:
        return sum(w for _, w in self.regions())

    def offsets(self) -> list[tuple[str, int, int]]:
        """``(name, start, end)`` for each region, end exclusive."""
        out, pos = [], 0
        for name, w in self.regions():
            out.append((name, pos, pos + w))
            pos += w
        return out

    def h_lsb_positions(self) -> tuple[int, int]:
        """Positions of the least significant digit of both copies of ``h``.

        The first copy is written most significant digit first, the second
        mirrored, so the two least significant digits sit next to the central
        regions.  Seen from the neighbouring supertile, whose side runs in the
        opposite direction, the mirrored copy lands on the same cells.
        """
        regions = self.offsets()
        first = regions[1]
        second = regions[7]
        return first[2] - 1, second[1]


def _log2_ceil(x: int) -> int:
    return max(0, math.ceil(math.log2(x))) if x > 0 else 0


def _heights(t_width: int, s_width: int) -> tuple[int, int]:
    h_prime = (2 * t_width + 2 * s_width) // 2
    return h_prime, h_prime + _log2_ceil(h_prime)


def superside_layout(tile_count: int) -> SupersideLayout:
    """Layout for simulating a tile set of ``tile_count`` tiles.

    The padding is the smallest width, at most ``ceil(log2 h)``, that puts the
    probe tip exactly one gadget short of the centre.  When no such width
    exists the padding only makes the side length odd, so a centre exists,
    and ``probe_reach`` reports the actual shortfall.
    """
    if tile_count < 1:
        raise ValueError("tile_count must be at least 1")
    t_width = encoding_length(tile_count)
    s_width = 1 + tile_count * (1 + index_width(tile_count))
    _, h = _heights(t_width, s_width)
    h_width = h.bit_length()
    base = SupersideLayout(tile_count, CORNER_GAP, h_width, s_width, t_width, 0)
    limit = _log2_ceil(h)
    for pad in range(limit + 1):
        layout = SupersideLayout(tile_count, CORNER_GAP, h_width, s_width, t_width, pad)
        if probe_reach(layout) == 1:
            return layout
    pad = 0 if base.side_length % 2 else 1
    return SupersideLayout(tile_count, CORNER_GAP, h_width, s_width, t_width, pad)


def probe_height(layout: SupersideLayout) -> tuple[int, int]:
    """``(h', h)``: half the width of a side holding only the T and S encodings, and ``h' + ceil(log2 h')``."""
    h_prime, h = _heights(layout.t_width, layout.s_width)
    if h < 1:
        raise ValueError("degenerate layout")
    return h_prime, h


def probe_reach(layout: SupersideLayout) -> int:
    """Gadgets left between the probe tip and the supertile centre.

    Rows are counted inward from the side's own row 0; the probe fills rows
    ``1..h`` and the centre row is ``(c - 1) / 2`` for an odd side ``c``.
    A negative value means the probe would overshoot, and an even side has
    no central row, which is reported as ``None``.
    """
    c = layout.side_length
    if c % 2 == 0:
        return None
    _, h = probe_height(layout)
    return (c - 1) // 2 - h
