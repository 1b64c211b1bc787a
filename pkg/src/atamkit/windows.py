"""Windows, window movies and splicing of assembly sequences.

A window is a set of lattice edges that cuts an assembly into the part
containing the seed and the rest.  The window movie records, in placement
order, every glue that shows up on a window edge.  Two sequences whose
(bond-forming) movies agree across a pair of translated windows can be
spliced into a new valid sequence.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import (
    OPPOSITE,
    AssemblySequence,
    Configuration,
    Glue,
    Point,
    TileAssemblyError,
    add,
    directions,
    neighbors,
    sub,
    unit,
)

Edge = tuple[Point, Point]


class WindowError(TileAssemblyError):
    pass


class SpliceError(TileAssemblyError):
    def __init__(self, message: str, step: int | None = None):
        super().__init__(message)
        self.step = step


def _edge(p: Point, q: Point) -> Edge:
    p, q = tuple(p), tuple(q)
    if sum(abs(a - b) for a, b in zip(p, q)) != 1:
        raise WindowError(f"{p} and {q} are not adjacent")
    return (p, q) if p < q else (q, p)


@dataclass(frozen=True)
class Window:
    edges: frozenset[Edge]

    def __init__(self, edges: Iterable[tuple[Sequence[int], Sequence[int]]]):
        object.__setattr__(self, "edges", frozenset(_edge(p, q) for p, q in edges))

    def __contains__(self, edge) -> bool:
        p, q = edge
        return ((p, q) if p < q else (q, p)) in self.edges

    def __len__(self):
        return len(self.edges)

    def translate(self, v: Point) -> "Window":
        return Window((add(p, v), add(q, v)) for p, q in self.edges)

    def offset_to(self, other: "Window") -> Point | None:
        """The vector ``c`` with ``other == self + c``, if there is one."""
        if len(self) != len(other) or not self.edges:
            return None
        c = sub(min(other.edges)[0], min(self.edges)[0])
        return c if self.translate(c) == other else None

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def seed_region(self, seed: Iterable[Point], points: Iterable[Point]) -> frozenset[Point]:
        """Cells reachable from the seed without crossing the window.

        The search is confined to the bounding box of ``points`` and the seed
        grown by one cell, so windows only need to cut that box.
        """
        seed = [tuple(p) for p in seed]
        if not seed:
            raise WindowError("no seed positions given")
        pts = list(points) + seed
        dim = len(seed[0])
        lo = tuple(min(p[i] for p in pts) - 1 for i in range(dim))
        hi = tuple(max(p[i] for p in pts) + 1 for i in range(dim))

        def inside(p):
            return all(a <= x <= b for a, x, b in zip(lo, p, hi))

        start = seed[0]
        seen = {start}
        todo = deque([start])
        while todo:
            p = todo.popleft()
            for _, q in neighbors(p):
                if q in seen or not inside(q) or (p, q) in self:
                    continue
                seen.add(q)
                todo.append(q)
        stray = [p for p in seed if p not in seen]
        if stray:
            raise WindowError(f"the window splits the seed; {stray[0]} is cut off from {start}")
        return frozenset(seen)

    @classmethod
    def boundary(cls, region: Iterable[Point], box: tuple[Point, Point]) -> "Window":
        """All box edges with exactly one endpoint in ``region``."""
        region = set(map(tuple, region))
        lo, hi = box
        edges = []
        for p in region:
            for _, q in neighbors(p):
                if q not in region and all(a <= x <= b for a, x, b in zip(lo, q, hi)):
                    edges.append((p, q))
        return cls(edges)


def vertical_window(x: int, lo: int, hi: int, dim: int = 2, z: Iterable[int] = (0,)) -> Window:
    """Edges between column ``x`` and ``x + 1`` for rows ``lo..hi`` (and planes ``z`` in 3D)."""
    if dim == 2:
        return Window(((x, y), (x + 1, y)) for y in range(lo, hi + 1))
    return Window(((x, y, zz), (x + 1, y, zz)) for y in range(lo, hi + 1) for zz in z)


def cut(assembly: Configuration, window: Window, seed: Iterable[Point]
        ) -> tuple[Configuration, Configuration]:
    """Split ``assembly`` into its seed-side and far-side configurations."""
    seed = [tuple(p) for p in seed]
    missing = [p for p in seed if p not in assembly]
    if missing:
        raise WindowError(f"seed position {missing[0]} is not in the assembly")
    region = window.seed_region(seed, assembly.positions)
    near = assembly.restrict(p for p in assembly if p in region)
    far = assembly.restrict(p for p in assembly if p not in region)
    if not far:
        raise WindowError("the window does not separate the assembly")
    return near, far


@dataclass(frozen=True)
class MovieStep:
    """A glue showing up on a window edge: the tile at ``pos`` shows ``glue`` toward ``direction``."""

    pos: Point
    direction: str
    glue: Glue

    @property
    def edge(self) -> Edge:
        return _edge(self.pos, self.target)

    @property
    def target(self) -> Point:
        return add(self.pos, unit(self.direction, len(self.pos)))

    def translate(self, v: Point) -> "MovieStep":
        return MovieStep(add(self.pos, v), self.direction, self.glue)


@dataclass(frozen=True)
class WindowMovie:
    steps: tuple[MovieStep, ...]

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def __getitem__(self, k):
        return self.steps[k]

    def translate(self, v: Point) -> "WindowMovie":
        return WindowMovie(tuple(s.translate(v) for s in self.steps))

    def first_difference(self, other: "WindowMovie") -> int | None:
        for k, (a, b) in enumerate(zip(self.steps, other.steps)):
            if a != b:
                return k
        if len(self) != len(other):
            return min(len(self), len(other))
        return None


def _by_unit_vector(dim: int) -> list[str]:
    return sorted(directions(dim), key=lambda d: unit(d, dim))


def window_movie(seq: AssemblySequence, window: Window) -> WindowMovie:
    """Glues on window edges in placement order.

    Seed tiles come first in position order; the glues of one placement are
    listed in lexicographic order of their unit vectors.
    """
    dim = seq.system.dimension
    order = _by_unit_vector(dim)
    steps = []
    for p, t in seq.steps:
        for d in order:
            if (p, add(p, unit(d, dim))) in window:
                steps.append(MovieStep(p, d, t.glue(d)))
    return WindowMovie(tuple(steps))


def bond_forming_submovie(movie: WindowMovie, result: Configuration) -> WindowMovie:
    """Steps whose glue ends up in a positive-strength bond across the window in ``result``."""
    keep = []
    for s in movie:
        here = result.get(s.pos)
        there = result.get(s.target)
        if here is None or there is None:
            continue
        if s.glue.binds(there.glue(OPPOSITE[s.direction])):
            keep.append(s)
    return WindowMovie(tuple(keep))


def translate_sequence(seq: AssemblySequence, v: Point) -> tuple[tuple[Point, object], ...]:
    return tuple((add(p, v), t) for p, t in seq.steps)


@dataclass(frozen=True)
class Splice:
    sequence: AssemblySequence
    seed_side: Configuration
    far_side: Configuration
    movie: WindowMovie


def splice(seq_a: AssemblySequence, w: Window, seq_b: AssemblySequence,
           w_translated: Window, offset: Point, exact: bool = False) -> AssemblySequence:
    """Merge ``seq_a`` on the seed side of ``w`` with ``seq_b`` beyond ``w_translated``.

    ``w_translated`` must equal ``w + offset``.  The result assembles the
    seed side of ``seq_a`` together with the far side of ``seq_b`` moved back
    by ``-offset``.  With ``exact`` the full window movies must agree,
    otherwise only their bond-forming submovies.
    """
    return splice_details(seq_a, w, seq_b, w_translated, offset, exact).sequence


def splice_details(seq_a: AssemblySequence, w: Window, seq_b: AssemblySequence,
                   w_translated: Window, offset: Point, exact: bool = False) -> Splice:
    offset = tuple(offset)
    if w.translate(offset) != w_translated:
        raise SpliceError("the second window is not the first one translated by the offset")
    back = tuple(-c for c in offset)
    a_steps = seq_a.steps
    b_steps = translate_sequence(seq_b, back)

    a_result = seq_a.result()
    b_result = seq_b.result()
    b_moved = b_result.translate(back)
    a_seed = [p for p, _ in a_steps[:seq_a.seed_length]]
    b_seed = [p for p, _ in b_steps[:seq_b.seed_length]]
    region = w.seed_region(a_seed, list(a_result) + list(b_moved))
    if any(p not in region for p in b_seed):
        raise WindowError("the second sequence's seed is not on the seed side of its window")
    a_left = a_result.restrict(p for p in a_result if p in region)
    b_right = b_moved.restrict(p for p in b_moved if p not in region)

    movie_a = window_movie(seq_a, w)
    movie_b = window_movie(seq_b, w_translated).translate(back)
    if not exact:
        movie_a = bond_forming_submovie(movie_a, a_result)
        movie_b = bond_forming_submovie(window_movie(seq_b, w_translated), b_result).translate(back)
    k = movie_a.first_difference(movie_b)
    if k is not None:
        kind = "window movies" if exact else "bond-forming submovies"
        raise SpliceError(f"{kind} differ at step {k}", step=k)

    movie = movie_a
    gamma: list = []
    placed: set = set()

    def emit(step):
        gamma.append(step)
        placed.add(step[0])

    la, lb = len(a_steps), len(b_steps)
    i = j = k = 0
    while i < la or j < lb:
        if k < len(movie):
            pos = movie[k].pos
            if pos in placed:
                pass
            elif pos in a_left:
                while i < la and a_steps[i][0] != pos:
                    if a_steps[i][0] in a_left:
                        emit(a_steps[i])
                    i += 1
                if i < la:
                    emit(a_steps[i])
                    i += 1
            elif pos in b_right:
                while j < lb and b_steps[j][0] != pos:
                    if b_steps[j][0] in b_right:
                        emit(b_steps[j])
                    j += 1
                if j < lb:
                    emit(b_steps[j])
                    j += 1
            else:
                raise SpliceError(f"movie step {k} at {pos} lies on neither side of the window", step=k)
        else:
            if i < la:
                if a_steps[i][0] in a_left:
                    emit(a_steps[i])
                i += 1
            if j < lb:
                if b_steps[j][0] in b_right:
                    emit(b_steps[j])
                j += 1
        k += 1

    seq = AssemblySequence(seq_a.system, tuple(gamma))
    return Splice(seq, a_left, b_right, movie)


def find_matching_window_pair(seq: AssemblySequence, windows: Sequence[Window]
                              ) -> tuple[int, int] | None:
    """First ``(i, j)`` whose bond-forming submovies agree up to the windows' offset."""
    result = seq.result()
    movies = [bond_forming_submovie(window_movie(seq, w), result) for w in windows]
    for i in range(len(windows)):
        for j in range(i + 1, len(windows)):
            c = windows[i].offset_to(windows[j])
            if c is None:
                continue
            back = tuple(-x for x in c)
            if movies[i] == movies[j].translate(back):
                return i, j
    return None


def line_pump_fixture(swap: bool = False):
    """Inputs for pumping the line system down to four tiles.

    A five-tile line cut after column 2 is spliced with a three-tile line cut
    after column 1.  Returns ``(seq_a, w, seq_b, w_translated, offset)``;
    with ``swap`` the roles of the two lines are exchanged.
    """
    from .systems import line_system

    system = line_system()
    rep = system.tile_named("repeat")
    five = AssemblySequence.from_placements(system, [((x, 0), rep) for x in range(1, 5)])
    three = AssemblySequence.from_placements(system, [((x, 0), rep) for x in range(1, 3)])
    w5 = vertical_window(2, -1, 1)
    w3 = vertical_window(1, -1, 1)
    if swap:
        return three, w3, five, w5, (1, 0)
    return five, w5, three, w3, (-1, 0)
