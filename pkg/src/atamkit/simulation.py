"""Block-rescaled simulation of one tile system by another.

A representation maps m-block supertiles of the simulator to tiles of the
simulated system.  The checks below confirm or refute, up to an exploration
bound, that the simulator has equivalent productions, is followed by the
simulated system, and models it.  A passing report always means "pass up to
the explored bound".
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .core import (
    Configuration,
    Exploration,
    Point,
    TileAssemblyError,
    TileSystem,
    TileType,
    explore,
    frontier,
    neighbors,
    produces,
)

Block = frozenset  # of (local position, tile) pairs


class RepresentationError(TileAssemblyError):
    pass


def _floordiv(p: Point, m: int) -> Point:
    return tuple(c // m for c in p)


class BlockRepresentation:
    """A valid m-block supertile representation given as an explicit table.

    A block that is not itself a table key represents the image of any key
    it contains; validity guarantees all such keys agree.  Blocks that
    contain no key represent empty space.
    """

    def __init__(self, scale: int, table: Mapping[Block, TileType], source_dim: int = 2,
                 target_dim: int | None = None):
        if scale < 1:
            raise RepresentationError("scale must be positive")
        target_dim = source_dim if target_dim is None else target_dim
        if target_dim not in (source_dim, source_dim - 1):
            raise RepresentationError("target dimension must equal the source or be one less")
        self.scale = scale
        self.source_dim = source_dim
        self.target_dim = target_dim
        self.table = {frozenset(k): v for k, v in table.items()}
        if frozenset() in self.table:
            raise RepresentationError("the empty block cannot represent a tile")
        for key in self.table:
            for p, _ in key:
                if len(p) != source_dim or not all(0 <= c < scale for c in p):
                    raise RepresentationError(f"block position {p} is outside the {scale}-block")
        self._check_valid()
        self._cache: dict[Block, TileType | None] = {}

    @classmethod
    def from_pairs(cls, scale: int, table: Mapping[Iterable[tuple[Point, TileType]], TileType],
                   source_dim: int = 2, target_dim: int | None = None) -> "BlockRepresentation":
        return cls(scale, {frozenset((tuple(p), t) for p, t in k): v for k, v in table.items()},
                   source_dim, target_dim)

    def _check_valid(self):
        keys = sorted(self.table, key=len)
        for i, a in enumerate(keys):
            for b in keys[i + 1:]:
                if a < b and self.table[a] != self.table[b]:
                    raise RepresentationError(
                        f"invalid representation: a block maps to {self.table[a].name} "
                        f"but a larger block containing it maps to {self.table[b].name}")

    def __call__(self, block: Block) -> TileType | None:
        block = frozenset(block)
        if block in self._cache:
            return self._cache[block]
        image = self.table.get(block)
        if image is None and block:
            found = {v for k, v in self.table.items() if k <= block}
            if len(found) > 1:
                raise RepresentationError(
                    f"block {sorted((p, t.name) for p, t in block)} contains keys with different images")
            image = found.pop() if found else None
        self._cache[block] = image
        return image

    def target_coords(self, block_coords: Point) -> Point | None:
        """Simulated position for a block, or ``None`` off the simulated plane."""
        if self.target_dim == self.source_dim:
            return block_coords
        if block_coords[-1] != 0:
            return None
        return block_coords[:-1]

    def flatten(self, block_coords: Point) -> Point:
        return block_coords[:self.target_dim]


def block_at(assembly: Configuration, rep: BlockRepresentation, coords: Point) -> Block:
    """The m-block of ``assembly`` at block coordinates ``coords``, re-indexed to ``[0, m)``."""
    m = rep.scale
    coords = tuple(coords) + (0,) * (rep.source_dim - len(coords))
    origin = tuple(m * c for c in coords)
    out = []
    for p, t in assembly.items():
        local = tuple(a - b for a, b in zip(p, origin))
        if all(0 <= c < m for c in local):
            out.append((local, t))
    return frozenset(out)


def blocks(assembly: Configuration, rep: BlockRepresentation) -> dict[Point, Block]:
    """All nonempty blocks keyed by block coordinates."""
    m = rep.scale
    grouped: dict[Point, list] = {}
    for p, t in assembly.items():
        key = _floordiv(p, m)
        local = tuple(c - m * k for c, k in zip(p, key))
        grouped.setdefault(key, []).append((local, t))
    return {k: frozenset(v) for k, v in grouped.items()}


def represent(assembly: Configuration, rep: BlockRepresentation) -> Configuration:
    out = {}
    for coords, block in blocks(assembly, rep).items():
        target = rep.target_coords(coords)
        if target is None:
            continue
        image = rep(block)
        if image is not None:
            out[target] = image
    return Configuration(out, rep.target_dim)


@dataclass(frozen=True)
class CleanCheck:
    clean: bool
    offending_block: Point | None = None

    def __bool__(self):
        return self.clean


def maps_cleanly(assembly: Configuration, rep: BlockRepresentation) -> CleanCheck:
    """Every nonempty block represents a tile or sits edge-adjacent to one."""
    nonempty = blocks(assembly, rep)
    if len(nonempty) <= 1:
        return CleanCheck(True)
    image = represent(assembly, rep)
    for coords in sorted(nonempty):
        flat = rep.flatten(coords)
        if flat in image:
            continue
        if any(rep.flatten(q) in image for _, q in neighbors(coords)):
            continue
        return CleanCheck(False, coords)
    return CleanCheck(True)


@dataclass
class SimReport:
    """Outcome of a bounded simulation check.

    ``verdict`` is ``"pass"`` (up to ``depth``) or ``"fail"``; failing
    reports name the violated ``clause`` and carry at least one witness.
    """

    verdict: str
    check: str
    depth: int
    clause: str = ""
    witnesses: list = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    indeterminate: int = 0
    bounded: bool = True

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def __bool__(self):
        return self.passed

    def merge(self, other: "SimReport") -> "SimReport":
        verdict = "pass" if self.passed and other.passed else "fail"
        failing = [r for r in (self, other) if not r.passed]
        clause = "; ".join(r.clause for r in failing if r.clause)
        return SimReport(
            verdict, "+".join(sorted({*self.check.split("+"), *other.check.split("+")})),
            min(self.depth, other.depth), clause,
            self.witnesses + other.witnesses, self.notes + other.notes,
            self.indeterminate + other.indeterminate, self.bounded or other.bounded)


def _fail(check, depth, clause, witness, notes=()):
    return SimReport("fail", check, depth, clause, [witness], list(notes))


def _default_target_bound(bound: int, rep: BlockRepresentation) -> int:
    return max(1, bound // rep.scale ** rep.source_dim)


@dataclass
class _Context:
    simulated: TileSystem
    simulator: TileSystem
    rep: BlockRepresentation
    bound: int
    target_bound: int
    sim_ex: Exploration
    target_ex: Exploration
    images: list[Configuration]

    def notes(self):
        out = [f"simulator explored to {self.bound} tiles ({len(self.sim_ex)} assemblies)",
               f"simulated system explored to {self.target_bound} tiles ({len(self.target_ex)} assemblies)"]
        if self.sim_ex.truncated:
            out.append("simulator exploration hit the node budget")
        if self.target_ex.truncated:
            out.append("simulated exploration hit the node budget")
        return out


def _context(simulated, simulator, rep, bound, target_bound, budget) -> _Context:
    target_bound = target_bound or _default_target_bound(bound, rep)
    sim_ex = explore(simulator, bound, budget=budget)
    target_ex = explore(simulated, target_bound, budget=budget)
    images = [represent(a, rep) for a in sim_ex.assemblies]
    return _Context(simulated, simulator, rep, bound, target_bound, sim_ex, target_ex, images)


def _equivalent_productions(ctx: _Context) -> SimReport:
    check = "equivalent_productions"
    T, S = ctx.simulated, ctx.simulator
    notes = ctx.notes()
    for a, image in zip(ctx.sim_ex.assemblies, ctx.images):
        clean = maps_cleanly(a, ctx.rep)
        if not clean:
            return _fail(check, ctx.bound, "clean mapping",
                         {"simulator_assembly": a, "block": clean.offending_block}, notes)
    producible_cache: dict[Configuration, bool] = {}

    def producible(alpha):
        if alpha not in producible_cache:
            producible_cache[alpha] = bool(alpha) and alpha.is_connected() and produces(T, T.seed, alpha)
        return producible_cache[alpha]

    for a, image in zip(ctx.sim_ex.assemblies, ctx.images):
        if not producible(image):
            return _fail(check, ctx.bound, "productions: represented assembly is not producible",
                         {"simulator_assembly": a, "represented": image}, notes)
    image_set = set(ctx.images)
    indeterminate = 0
    for alpha in ctx.target_ex.assemblies:
        if alpha not in image_set:
            if ctx.sim_ex.truncated:
                indeterminate += 1
                continue
            return _fail(check, ctx.bound, "productions: producible assembly is never represented",
                         {"simulated_assembly": alpha}, notes)
    for i, a in enumerate(ctx.sim_ex.assemblies):
        if ctx.sim_ex.terminal[i] and frontier(T, ctx.images[i]):
            return _fail(check, ctx.bound, "terminals: terminal simulator assembly represents a non-terminal",
                         {"simulator_assembly": a, "represented": ctx.images[i]}, notes)
    terminal_images = {ctx.images[i] for i in range(len(ctx.images)) if ctx.sim_ex.terminal[i]}
    open_below = ctx.sim_ex.open_below()
    for j, alpha in enumerate(ctx.target_ex.assemblies):
        if not ctx.target_ex.terminal[j] or alpha in terminal_images:
            continue
        pre = [i for i, im in enumerate(ctx.images) if im == alpha]
        if ctx.sim_ex.truncated or any(open_below[i] for i in pre):
            indeterminate += 1
            continue
        return _fail(check, ctx.bound, "terminals: terminal assembly has no terminal representative",
                     {"simulated_assembly": alpha}, notes)
    report = SimReport("pass", check, ctx.bound, notes=notes, indeterminate=indeterminate)
    if indeterminate:
        report.notes.append(f"{indeterminate} comparisons left undecided by the bound")
    return report


def _follows(ctx: _Context, samples: int, rng_seed: int) -> SimReport:
    check = "follows"
    T = ctx.simulated
    notes = ctx.notes()
    ex = ctx.sim_ex
    for i, succ in enumerate(ex.successors):
        for j in succ:
            if not produces(T, ctx.images[i], ctx.images[j]):
                return _fail(check, ctx.bound, "follows",
                             {"alpha": ex.assemblies[i], "beta": ex.assemblies[j],
                              "represented_alpha": ctx.images[i], "represented_beta": ctx.images[j]},
                             notes)
    rng = random.Random(rng_seed)
    for _ in range(samples if len(ex) else 0):
        i = rng.randrange(len(ex))
        j = i
        while ex.successors[j] and rng.random() < 0.85:
            j = rng.choice(ex.successors[j])
        if not produces(T, ctx.images[i], ctx.images[j]):
            return _fail(check, ctx.bound, "follows",
                         {"alpha": ex.assemblies[i], "beta": ex.assemblies[j],
                          "represented_alpha": ctx.images[i], "represented_beta": ctx.images[j]},
                         notes)
    return SimReport("pass", check, ctx.bound, notes=notes)


def _models(ctx: _Context) -> SimReport:
    check = "models"
    notes = ctx.notes() + ["witness families are drawn from explored simulator assemblies only"]
    S_ex, T_ex = ctx.sim_ex, ctx.target_ex
    pre = {}
    for i, image in enumerate(ctx.images):
        pre[image] = pre.get(image, 0) | (1 << i)
    s_desc = S_ex.descendants()
    s_anc = S_ex.ancestors()
    s_open = S_ex.open_below()
    t_desc = T_ex.descendants()
    pre_t = [pre.get(alpha, 0) for alpha in T_ex.assemblies]
    indeterminate = 0
    families = 0
    for a, alpha in enumerate(T_ex.assemblies):
        P = pre_t[a]
        if not P:
            continue
        members = _bits(P)
        betas = _bits(t_desc[a])
        family = 0
        for i in members:
            ok = True
            for b in betas:
                if not (pre_t[b] & s_desc[i]):
                    if s_open[i] or S_ex.truncated:
                        indeterminate += 1
                    else:
                        ok = False
                        break
            if ok:
                family |= 1 << i
        for b in betas:
            for i in members:
                if s_desc[i] & pre_t[b] and not (s_anc[i] & family):
                    return _fail(check, ctx.bound, "models: no family member leads to this assembly",
                                 {"simulated_alpha": alpha, "simulated_beta": T_ex.assemblies[b],
                                  "simulator_alpha": S_ex.assemblies[i],
                                  "family": [S_ex.assemblies[k] for k in _bits(family)]}, notes)
        families += bool(family)
    notes.append(f"witness families found for {families} simulated assemblies")
    return SimReport("pass", check, ctx.bound, notes=notes, indeterminate=indeterminate)


def _bits(x: int) -> list[int]:
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


def check_equivalent_productions(simulated: TileSystem, simulator: TileSystem,
                                 rep: BlockRepresentation, bound: int,
                                 target_bound: int | None = None,
                                 budget: int | None = 200_000) -> SimReport:
    ctx = _context(simulated, simulator, rep, bound, target_bound, budget)
    return _equivalent_productions(ctx)


def check_follows(simulated: TileSystem, simulator: TileSystem, rep: BlockRepresentation,
                  bound: int, samples: int = 200, rng_seed: int = 0,
                  target_bound: int | None = None, budget: int | None = 200_000) -> SimReport:
    """Every explored simulator step is matched by growth of the simulated system.

    All explored one-step pairs are checked (which covers every pair by
    transitivity), plus ``samples`` random multi-step pairs.
    """
    ctx = _context(simulated, simulator, rep, bound, target_bound, budget)
    return _follows(ctx, samples, rng_seed)


def check_models(simulated: TileSystem, simulator: TileSystem, rep: BlockRepresentation,
                 bound: int, target_bound: int | None = None,
                 budget: int | None = 200_000) -> SimReport:
    """Search, for each explored simulated assembly, for a witness family.

    The family is the largest set of representing assemblies that can still
    reach every simulated successor; the check then asks that every
    representing assembly on the way to some successor grows from a family
    member.
    """
    ctx = _context(simulated, simulator, rep, bound, target_bound, budget)
    return _models(ctx)


def check_simulates(simulated: TileSystem, simulator: TileSystem, rep: BlockRepresentation,
                    bound: int, samples: int = 200, rng_seed: int = 0,
                    target_bound: int | None = None, budget: int | None = 200_000) -> SimReport:
    ctx = _context(simulated, simulator, rep, bound, target_bound, budget)
    report = _equivalent_productions(ctx)
    report = report.merge(_follows(ctx, samples, rng_seed))
    report = report.merge(_models(ctx))
    report.check = "simulates"
    return report
