"""The abstract Tile Assembly Model in two and three dimensions.

Tiles are unit squares (or cubes) whose sides carry glues.  An assembly is a
finite partial map from lattice points to tile types, and a tile system grows
assemblies from a seed by single-tile attachments whose total matching glue
strength reaches the system temperature.
"""
from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping, Sequence

Point = tuple[int, ...]

DIRECTIONS_2D = ("N", "E", "S", "W")
DIRECTIONS_3D = ("N", "E", "S", "W", "U", "D")

_UNIT_3D = {
    "N": (0, 1, 0),
    "E": (1, 0, 0),
    "S": (0, -1, 0),
    "W": (-1, 0, 0),
    "U": (0, 0, 1),
    "D": (0, 0, -1),
}

OPPOSITE = {"N": "S", "S": "N", "E": "W", "W": "E", "U": "D", "D": "U"}


class TileAssemblyError(ValueError):
    """Raised when an operation's precondition on the model is violated."""


def directions(dim: int) -> tuple[str, ...]:
    if dim == 2:
        return DIRECTIONS_2D
    if dim == 3:
        return DIRECTIONS_3D
    raise TileAssemblyError(f"dimension must be 2 or 3, got {dim}")


def unit(direction: str, dim: int) -> Point:
    return _UNIT_3D[direction][:dim]


def add(p: Point, q: Point) -> Point:
    return tuple(a + b for a, b in zip(p, q))


def sub(p: Point, q: Point) -> Point:
    return tuple(a - b for a, b in zip(p, q))


def neighbors(p: Point) -> Iterator[tuple[str, Point]]:
    for d in directions(len(p)):
        yield d, add(p, unit(d, len(p)))


def direction_between(p: Point, q: Point) -> str:
    """Direction of the unit step from ``p`` to the adjacent point ``q``."""
    delta = sub(q, p)
    for d in directions(len(p)):
        if unit(d, len(p)) == delta:
            return d
    raise TileAssemblyError(f"{p} and {q} are not adjacent")


@dataclass(frozen=True)
class Glue:
    label: str = ""
    strength: int = 0

    def __post_init__(self):
        if self.strength < 0:
            raise TileAssemblyError("negative glue strengths are not supported")

    @property
    def is_null(self) -> bool:
        return self.strength == 0 and self.label == ""

    def binds(self, other: "Glue") -> bool:
        return self.strength > 0 and self == other


NULL_GLUE = Glue()


@dataclass(frozen=True)
class TileType:
    """A tile type: a name plus one glue per side in canonical direction order."""

    name: str
    glues: tuple[Glue, ...]

    def __post_init__(self):
        if len(self.glues) not in (4, 6):
            raise TileAssemblyError(
                f"tile {self.name!r} needs 4 or 6 sides, got {len(self.glues)}")

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return f"TileType({self.name!r})"

    @property
    def dimension(self) -> int:
        return len(self.glues) // 2

    def glue(self, direction: str) -> Glue:
        return self.glues[directions(self.dimension).index(direction)]

    def sides(self) -> dict[str, Glue]:
        return dict(zip(directions(self.dimension), self.glues))

    def clipped(self, temperature: int) -> "TileType":
        if all(g.strength <= temperature for g in self.glues):
            return self
        return TileType(self.name, tuple(
            Glue(g.label, min(g.strength, temperature)) for g in self.glues))


def tile(name: str, dim: int = 2, **sides) -> TileType:
    """Build a tile type from keyword sides, e.g. ``tile("a", E=("x", 1))``.

    A side may be given as a ``Glue``, a ``(label, strength)`` pair, or a bare
    label (strength 1).  Omitted sides get the null glue.
    """
    glues = []
    for d in directions(dim):
        spec = sides.pop(d, None)
        if spec is None:
            glues.append(NULL_GLUE)
        elif isinstance(spec, Glue):
            glues.append(spec)
        elif isinstance(spec, str):
            glues.append(Glue(spec, 1))
        else:
            label, strength = spec
            glues.append(Glue(label, strength))
    if sides:
        raise TileAssemblyError(f"unknown sides for dimension {dim}: {sorted(sides)}")
    return TileType(name, tuple(glues))


class Configuration(Mapping):
    """An immutable finite partial map from lattice points to tile types.

    Configurations may be empty or disconnected; ``Assembly`` adds the
    nonempty-and-connected requirement.
    """

    __slots__ = ("_tiles", "_hash", "dimension")

    def __init__(self, placements: Mapping[Point, TileType] | Iterable[tuple[Point, TileType]] = (),
                 dimension: int | None = None):
        tiles = dict(placements.items() if isinstance(placements, Mapping) else placements)
        tiles = {tuple(p): t for p, t in tiles.items()}
        dims = {len(p) for p in tiles}
        if dimension is None:
            if len(dims) > 1:
                raise TileAssemblyError("mixed point dimensions")
            dimension = dims.pop() if dims else 2
        elif dims - {dimension}:
            raise TileAssemblyError(f"points do not match dimension {dimension}")
        self._tiles = tiles
        self._hash = None
        self.dimension = dimension

    @classmethod
    def _trusted(cls, tiles: dict, dimension: int):
        obj = cls.__new__(cls)
        obj._tiles = tiles
        obj._hash = None
        obj.dimension = dimension
        return obj

    def __getitem__(self, p):
        return self._tiles[p]

    def __iter__(self):
        return iter(self._tiles)

    def __len__(self):
        return len(self._tiles)

    def __contains__(self, p):
        return p in self._tiles

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._tiles.items()))
        return self._hash

    def __eq__(self, other):
        if not isinstance(other, Configuration):
            return NotImplemented
        return self._tiles == other._tiles

    def __repr__(self):
        body = ", ".join(f"{p}: {t.name}" for p, t in sorted(self._tiles.items()))
        return f"{type(self).__name__}({{{body}}})"

    @property
    def positions(self) -> frozenset[Point]:
        return frozenset(self._tiles)

    def sorted_items(self) -> list[tuple[Point, TileType]]:
        return sorted(self._tiles.items())

    def place(self, p: Point, t: TileType) -> "Configuration":
        if p in self._tiles:
            raise TileAssemblyError(f"position {p} is occupied")
        tiles = dict(self._tiles)
        tiles[p] = t
        return type(self)._trusted(tiles, self.dimension)

    def restrict(self, points: Iterable[Point]) -> "Configuration":
        keep = set(points)
        return Configuration._trusted(
            {p: t for p, t in self._tiles.items() if p in keep}, self.dimension)

    def union(self, other: "Configuration") -> "Configuration":
        tiles = dict(self._tiles)
        for p, t in other.items():
            if tiles.get(p, t) != t:
                raise TileAssemblyError(f"conflicting tiles at {p}")
            tiles[p] = t
        return Configuration._trusted(tiles, self.dimension)

    def translate(self, v: Point) -> "Configuration":
        return type(self)._trusted(
            {add(p, v): t for p, t in self._tiles.items()}, self.dimension)

    def is_subconfiguration(self, other: "Configuration") -> bool:
        """The subassembly relation: domain inclusion with pointwise equality."""
        if len(self) > len(other):
            return False
        get = other._tiles.get
        return all(get(p) == t for p, t in self._tiles.items())

    def is_connected(self) -> bool:
        if not self._tiles:
            return False
        start = next(iter(self._tiles))
        seen = {start}
        todo = [start]
        while todo:
            p = todo.pop()
            for _, q in neighbors(p):
                if q in self._tiles and q not in seen:
                    seen.add(q)
                    todo.append(q)
        return len(seen) == len(self._tiles)

    def bonds(self) -> list[tuple[Point, Point, int]]:
        """Edges of the binding graph as ``(p, q, strength)`` with ``p < q``."""
        out = []
        dim = self.dimension
        for p, t in self._tiles.items():
            for d in directions(dim):
                q = add(p, unit(d, dim))
                if q in self._tiles and p < q:
                    g = t.glue(d)
                    if g.binds(self._tiles[q].glue(OPPOSITE[d])):
                        out.append((p, q, g.strength))
        return out

    def is_stable(self, temperature: int) -> bool:
        """Every cut of the binding graph has weight at least ``temperature``.

        Uses a global minimum cut so it scales past brute-force partition
        enumeration.
        """
        if len(self._tiles) <= 1:
            return bool(self._tiles)
        return min_cut_weight(self.positions, self.bonds()) >= temperature

    def bounding_box(self) -> tuple[Point, Point]:
        pts = list(self._tiles)
        lo = tuple(min(c) for c in zip(*pts))
        hi = tuple(max(c) for c in zip(*pts))
        return lo, hi


class Assembly(Configuration):
    """A nonempty configuration connected in the full grid graph."""

    __slots__ = ()

    def __init__(self, placements=(), dimension: int | None = None):
        super().__init__(placements, dimension)
        if not self.is_connected():
            raise TileAssemblyError("an assembly must be nonempty and connected")


def min_cut_weight(nodes: Iterable[Point], edges: Sequence[tuple[Point, Point, int]]) -> int:
    """Global minimum cut of a weighted undirected graph (Stoer-Wagner)."""
    nodes = list(nodes)
    if len(nodes) < 2:
        return 0
    index = {p: i for i, p in enumerate(nodes)}
    n = len(nodes)
    w = [dict() for _ in range(n)]
    for p, q, s in edges:
        i, j = index[p], index[q]
        w[i][j] = w[i].get(j, 0) + s
        w[j][i] = w[j].get(i, 0) + s
    active = set(range(n))
    best = None
    while len(active) > 1:
        start = next(iter(active))
        added = [start]
        weights = {v: w[start].get(v, 0) for v in active if v != start}
        prev = start
        while weights:
            v = max(weights, key=weights.get)
            cut = weights.pop(v)
            added.append(v)
            for u, x in w[v].items():
                if u in weights:
                    weights[u] += x
            if not weights:
                best = cut if best is None else min(best, cut)
                # merge v into prev
                for u, x in w[v].items():
                    if u == prev:
                        continue
                    w[prev][u] = w[prev].get(u, 0) + x
                    w[u][prev] = w[u].get(prev, 0) + x
                    del w[u][v]
                w[prev].pop(v, None)
                active.discard(v)
            prev = v
    return best if best is not None else 0


@dataclass(frozen=True)
class TileSystem:
    """A tile set, a seed assembly and a temperature.

    Glue strengths above the temperature are clipped on construction.
    """

    tiles: tuple[TileType, ...]
    seed: Assembly
    temperature: int
    name: str = ""
    _by_side: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.temperature < 1:
            raise TileAssemblyError("temperature must be positive")
        tiles = tuple(t.clipped(self.temperature) for t in self.tiles)
        names = [t.name for t in tiles]
        if len(set(names)) != len(names):
            raise TileAssemblyError("tile names must be unique")
        dims = {t.dimension for t in tiles}
        if len(dims) > 1:
            raise TileAssemblyError("all tiles must share one dimension")
        dim = dims.pop() if dims else self.seed.dimension
        by_name = {t.name: t for t in tiles}
        seed = self.seed
        if not isinstance(seed, Assembly):
            seed = Assembly(seed)
        placed = {}
        for p, t in seed.items():
            if t.name not in by_name:
                raise TileAssemblyError(f"seed tile {t.name!r} is not in the tile set")
            placed[p] = by_name[t.name]
        seed = Assembly(placed, seed.dimension)
        if seed.dimension != dim:
            raise TileAssemblyError("seed dimension differs from the tile set")
        if not seed.is_stable(self.temperature):
            raise TileAssemblyError("seed assembly is not stable at the system temperature")
        object.__setattr__(self, "tiles", tiles)
        object.__setattr__(self, "seed", seed)
        by_side: dict[tuple[str, Glue], list[TileType]] = {}
        for t in tiles:
            for d, g in t.sides().items():
                if g.strength > 0:
                    by_side.setdefault((d, g), []).append(t)
        object.__setattr__(self, "_by_side", by_side)

    @property
    def dimension(self) -> int:
        return self.seed.dimension

    def tile_named(self, name: str) -> TileType:
        for t in self.tiles:
            if t.name == name:
                return t
        raise KeyError(name)

    def glues(self) -> set[Glue]:
        return {g for t in self.tiles for g in t.glues if not g.is_null}

    def candidates(self, assembly: Configuration, p: Point) -> dict[TileType, int]:
        """Attachment strength at empty ``p`` for every tile with some positive bond."""
        totals: dict[TileType, int] = {}
        get = assembly._tiles.get
        for d, q in neighbors(p):
            nb = get(q)
            if nb is None:
                continue
            g = nb.glue(OPPOSITE[d])
            if g.strength == 0:
                continue
            for t in self._by_side.get((d, g), ()):
                totals[t] = totals.get(t, 0) + g.strength
        return totals


def attachment_strength(assembly: Configuration, pos: Point, t: TileType) -> int:
    """Total strength of the bonds ``t`` would form if placed at ``pos``."""
    pos = tuple(pos)
    if pos in assembly:
        raise TileAssemblyError(f"position {pos} is occupied")
    total = 0
    adjacent = False
    for d, q in neighbors(pos):
        nb = assembly.get(q)
        if nb is None:
            continue
        adjacent = True
        g = t.glue(d)
        if g.binds(nb.glue(OPPOSITE[d])):
            total += g.strength
    if not adjacent:
        raise TileAssemblyError(f"position {pos} is not adjacent to the assembly")
    return total


def empty_neighbors(assembly: Configuration) -> set[Point]:
    out = set()
    for p in assembly:
        for _, q in neighbors(p):
            if q not in assembly:
                out.add(q)
    return out


def frontier(system: TileSystem, assembly: Configuration) -> frozenset[tuple[Point, TileType]]:
    """All ``(position, tile)`` pairs that can stably attach to ``assembly``."""
    tau = system.temperature
    out = set()
    for p in empty_neighbors(assembly):
        for t, s in system.candidates(assembly, p).items():
            if s >= tau:
                out.add((p, t))
    return frozenset(out)


def frontier_positions(system: TileSystem, assembly: Configuration) -> frozenset[Point]:
    return frozenset(p for p, _ in frontier(system, assembly))


def is_terminal(system: TileSystem, assembly: Configuration) -> bool:
    return not frontier(system, assembly)


def sorted_frontier(system: TileSystem, assembly: Configuration) -> list[tuple[Point, TileType]]:
    return sorted(frontier(system, assembly), key=lambda pt: (pt[0], pt[1].name))


def produces(system: TileSystem, alpha: Configuration, beta: Configuration) -> bool:
    """Whether ``alpha`` grows into ``beta`` by attachments inside ``beta``.

    Attachment only gets easier as tiles are added, so greedily placing any
    attachable tile of ``beta`` decides reachability.
    """
    if not alpha.is_subconfiguration(beta):
        return False
    current = dict(alpha.items())
    todo = set(beta.positions) - set(current)
    conf = Configuration._trusted(current, beta.dimension)
    progress = True
    while todo and progress:
        progress = False
        for p in sorted(todo):
            if not any(q in current for _, q in neighbors(p)):
                continue
            if attachment_strength(conf, p, beta[p]) >= system.temperature:
                current[p] = beta[p]
                todo.discard(p)
                progress = True
    return not todo


@dataclass(frozen=True)
class AssemblySequence:
    """A seed followed by single-tile placements.

    ``steps`` lists the seed tiles first (in lexicographic position order),
    then every attachment in order, so ``steps[i]`` is ``(position, tile)``.
    """

    system: TileSystem
    steps: tuple[tuple[Point, TileType], ...]

    @classmethod
    def from_placements(cls, system: TileSystem, placements: Iterable[tuple[Point, TileType]]):
        return cls(system, tuple(system.seed.sorted_items()) + tuple(
            (tuple(p), t) for p, t in placements))

    @property
    def seed_length(self) -> int:
        return len(self.system.seed)

    @property
    def placements(self) -> tuple[tuple[Point, TileType], ...]:
        return self.steps[self.seed_length:]

    def __len__(self):
        return len(self.steps)

    def result(self) -> Configuration:
        return Configuration(self.steps, self.system.dimension)

    def prefix(self, n: int) -> Configuration:
        return Configuration(self.steps[:n], self.system.dimension)

    def append(self, p: Point, t: TileType) -> "AssemblySequence":
        return AssemblySequence(self.system, self.steps + ((tuple(p), t),))

    def assemblies(self) -> Iterator[Configuration]:
        current = Configuration(self.steps[:self.seed_length], self.system.dimension)
        yield current
        for p, t in self.placements:
            current = current.place(p, t)
            yield current


@dataclass(frozen=True)
class SequenceCheck:
    valid: bool
    first_violation: int | None = None
    reason: str = ""

    def __bool__(self):
        return self.valid


def is_valid_sequence(seq: AssemblySequence) -> SequenceCheck:
    """Replay ``seq`` from scratch, checking each step against the attachment rule."""
    system = seq.system
    k = seq.seed_length
    if tuple(seq.steps[:k]) != tuple(system.seed.sorted_items()):
        return SequenceCheck(False, 0, "sequence does not start with the seed")
    current = dict(seq.steps[:k])
    dim = system.dimension
    names = {t.name: t for t in system.tiles}
    for i, (p, t) in enumerate(seq.steps[k:], start=k):
        if len(p) != dim:
            return SequenceCheck(False, i, f"position {p} has the wrong dimension")
        if names.get(t.name) != t:
            return SequenceCheck(False, i, f"tile {t.name!r} is not in the tile set")
        if p in current:
            return SequenceCheck(False, i, f"position {p} is occupied")
        strength = 0
        for d, q in neighbors(p):
            nb = current.get(q)
            if nb is not None and t.glue(d).binds(nb.glue(OPPOSITE[d])):
                strength += t.glue(d).strength
        if strength < system.temperature:
            return SequenceCheck(False, i, f"tile {t.name!r} at {p} binds with strength {strength}")
        current[p] = t
    return SequenceCheck(True)


def random_sequence(system: TileSystem, max_tiles: int, rng_seed: int = 0) -> AssemblySequence:
    """Grow by attaching a uniformly chosen frontier pair until terminal or ``max_tiles``."""
    rng = random.Random(rng_seed)
    current = Configuration._trusted(dict(system.seed.items()), system.dimension)
    placements = []
    while len(current) < max_tiles:
        options = sorted_frontier(system, current)
        if not options:
            break
        p, t = options[rng.randrange(len(options))]
        current = current.place(p, t)
        placements.append((p, t))
    return AssemblySequence.from_placements(system, placements)


@dataclass
class Exploration:
    """Producible assemblies of a system up to a size bound.

    ``assemblies[i]`` is reached from its parents by a single attachment;
    ``successors[i]`` lists the one-step extensions that were recorded.
    ``expanded[i]`` is false for assemblies at the size bound (their
    extensions were not generated) and for those cut off by the node budget.
    """

    system: TileSystem
    max_tiles: int
    assemblies: list[Configuration]
    index: dict[Configuration, int]
    terminal: list[bool]
    expanded: list[bool]
    successors: list[list[int]]
    truncated: bool = False
    pruned: int = 0
    _desc: list[int] | None = field(default=None, repr=False)
    _anc: list[int] | None = field(default=None, repr=False)

    def __len__(self):
        return len(self.assemblies)

    def __iter__(self):
        return iter(self.assemblies)

    def terminals(self) -> list[Configuration]:
        return [a for a, t in zip(self.assemblies, self.terminal) if t]

    def is_terminal(self, assembly: Configuration) -> bool:
        return self.terminal[self.index[assembly]]

    @property
    def complete(self) -> bool:
        return not self.truncated

    def descendants(self) -> list[int]:
        """Bitsets of explored descendants (each includes itself)."""
        if self._desc is None:
            order = sorted(range(len(self)), key=lambda i: -len(self.assemblies[i]))
            desc = [0] * len(self)
            for i in order:
                bits = 1 << i
                for j in self.successors[i]:
                    bits |= desc[j]
                desc[i] = bits
            self._desc = desc
        return self._desc

    def ancestors(self) -> list[int]:
        if self._anc is None:
            order = sorted(range(len(self)), key=lambda i: len(self.assemblies[i]))
            parents: list[list[int]] = [[] for _ in range(len(self))]
            for i, succ in enumerate(self.successors):
                for j in succ:
                    parents[j].append(i)
            anc = [0] * len(self)
            for i in order:
                bits = 1 << i
                for j in parents[i]:
                    bits |= anc[j]
                anc[i] = bits
            self._anc = anc
        return self._anc

    def open_below(self) -> list[bool]:
        """Whether some explored descendant was left unexpanded (growth cut off)."""
        unexpanded = 0
        for i, e in enumerate(self.expanded):
            if not e and not self.terminal[i]:
                unexpanded |= 1 << i
        return [bool(d & unexpanded) for d in self.descendants()]


class ExplorationBudgetExceeded(RuntimeError):
    pass


def explore(system: TileSystem, max_tiles: int, budget: int | None = 200_000,
            prune: Callable[[Configuration], bool] | None = None,
            strict: bool = False) -> Exploration:
    """Breadth-first enumeration of producible assemblies with at most ``max_tiles`` tiles.

    ``prune`` drops assemblies (and everything grown from them) for which it
    returns true.  When more than ``budget`` assemblies would be stored the
    search stops and the result is flagged ``truncated``; with ``strict`` an
    ``ExplorationBudgetExceeded`` is raised instead.
    """
    if max_tiles < 1:
        raise TileAssemblyError("max_tiles must be positive")
    seed = Configuration._trusted(dict(system.seed.items()), system.dimension)
    assemblies = [seed]
    index = {seed: 0}
    successors: list[list[int]] = [[]]
    terminal = [False]
    expanded = [False]
    truncated = False
    pruned = 0
    queue = deque([0])
    while queue:
        i = queue.popleft()
        alpha = assemblies[i]
        moves = frontier(system, alpha)
        terminal[i] = not moves
        if len(alpha) >= max_tiles or not moves:
            continue
        if truncated:
            continue
        succ = []
        for p, t in sorted(moves, key=lambda pt: (pt[0], pt[1].name)):
            beta = alpha.place(p, t)
            j = index.get(beta)
            if j is None:
                if prune is not None and prune(beta):
                    pruned += 1
                    continue
                if budget is not None and len(assemblies) >= budget:
                    if strict:
                        raise ExplorationBudgetExceeded(
                            f"more than {budget} assemblies within {max_tiles} tiles")
                    truncated = True
                    break
                j = len(assemblies)
                assemblies.append(beta)
                index[beta] = j
                successors.append([])
                terminal.append(False)
                expanded.append(False)
                queue.append(j)
            succ.append(j)
        successors[i] = succ
        expanded[i] = not truncated
    return Exploration(system, max_tiles, assemblies, index, terminal, expanded,
                       successors, truncated, pruned)


def enumerate_sequences(system: TileSystem, max_tiles: int, limit: int = 1_000_000
                        ) -> Iterator[AssemblySequence]:
    """Every assembly sequence that ends terminal or at ``max_tiles`` tiles.

    Yields at most ``limit`` sequences and raises ``ExplorationBudgetExceeded``
    when there are more.
    """
    count = 0
    seed = Configuration._trusted(dict(system.seed.items()), system.dimension)
    stack = [(seed, ())]
    while stack:
        alpha, placed = stack.pop()
        moves = sorted_frontier(system, alpha) if len(alpha) < max_tiles else []
        if not moves:
            count += 1
            if count > limit:
                raise ExplorationBudgetExceeded(f"more than {limit} sequences")
            yield AssemblySequence.from_placements(system, placed)
            continue
        for p, t in reversed(moves):
            stack.append((alpha.place(p, t), placed + ((p, t),)))


def stable_cuts_bruteforce(assembly: Configuration) -> int:
    """Minimum cut weight by enumerating all 2-partitions (small assemblies only)."""
    pts = sorted(assembly.positions)
    if len(pts) < 2:
        return 0
    bonds = assembly.bonds()
    best = None
    first, rest = pts[0], pts[1:]
    for r in range(len(rest)):
        for combo in itertools.combinations(rest, r):
            side = {first, *combo}
            w = sum(s for p, q, s in bonds if (p in side) != (q in side))
            best = w if best is None else min(best, w)
    return best
