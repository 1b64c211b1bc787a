"""Reference tile systems and test-corpus generators."""
from __future__ import annotations

import random

from .core import (
    OPPOSITE,
    Assembly,
    Glue,
    TileSystem,
    TileType,
    directions,
    tile,
)

# Roles of the keystone system's tiles, used for rendering and tests.
KEYSTONE_ROLES = {
    "seed": "seed",
    "top_conn1": "arm", "top_conn2": "arm", "top_repeat": "arm", "top_branch": "arm",
    "bot_conn1": "arm", "bot_conn2": "arm", "bot_repeat": "arm", "bot_branch": "arm",
    "top_finger1": "finger", "top_finger2": "finger", "top_tip": "finger",
    "bot_finger1": "finger", "bot_finger2": "finger", "bot_tip": "finger",
    "keystone": "keystone", "flagpole": "flagpole", "flag": "flag",
}


def keystone_glues() -> dict[str, Glue]:
    strong = {f"g{i}": Glue(f"g{i}", 2) for i in range(15)}
    strong["g11"] = Glue("g11", 1)
    strong["g14"] = Glue("g14", 1)
    return strong


def keystone_system() -> TileSystem:
    """Two arms of nondeterministic length whose fingers may meet at a keystone.

    Layout: seed at the origin; connectors at (0, +-1) and (0, +-2); arms grow
    east along rows y = +-2.  An arm ending at column a turns into a finger
    through (a+1, +-2), (a+2, +-2) down (up) to the tip at (a+2, +-1).  The
    keystone at (a+2, 0) needs both tips, then the flagpole attaches west of
    it and the flag on top of the flagpole.
    """
    g = keystone_glues()
    tiles = [
        tile("seed", N=g["g0"], S=g["g6"]),
        tile("top_conn1", S=g["g0"], N=g["g1"]),
        tile("top_conn2", S=g["g1"], E=g["g2"]),
        tile("top_repeat", W=g["g2"], E=g["g2"]),
        tile("top_branch", W=g["g2"], E=g["g3"]),
        tile("top_finger1", W=g["g3"], E=g["g4"]),
        tile("top_finger2", W=g["g4"], S=g["g5"]),
        tile("top_tip", N=g["g5"], S=g["g11"]),
        tile("bot_conn1", N=g["g6"], S=g["g7"]),
        tile("bot_conn2", N=g["g7"], E=g["g8"]),
        tile("bot_repeat", W=g["g8"], E=g["g8"]),
        tile("bot_branch", W=g["g8"], E=g["g9"]),
        tile("bot_finger1", W=g["g9"], E=g["g10"]),
        tile("bot_finger2", W=g["g10"], N=g["g12"]),
        tile("bot_tip", S=g["g12"], N=g["g14"]),
        tile("keystone", N=g["g11"], S=g["g14"], W=g["g13"]),
        tile("flagpole", E=g["g13"], N=g["g13"]),
        tile("flag", S=g["g13"]),
    ]
    return TileSystem(tuple(tiles), Assembly({(0, 0): tiles[0]}), 2, name="keystone")


def keystone_arm_lengths(assembly) -> tuple[int | None, int | None]:
    """Columns of the top and bottom branch tiles, if placed."""
    top = bot = None
    for p, t in assembly.items():
        if t.name == "top_branch":
            top = p[0]
        elif t.name == "bot_branch":
            bot = p[0]
    return top, bot


def line_system() -> TileSystem:
    """A seed and one repeater tile growing east forever at temperature 1."""
    seed = tile("seed", E=("e", 1))
    rep = tile("repeat", W=("e", 1), E=("e", 1))
    return TileSystem((seed, rep), Assembly({(0, 0): seed}), 1, name="line")


def single_tile_system() -> TileSystem:
    seed = tile("seed")
    return TileSystem((seed,), Assembly({(0, 0): seed}), 1, name="single")


def branch_system() -> TileSystem:
    """Temperature 1: the seed's east neighbour is one of two competing tiles."""
    seed = tile("seed", E=("x", 1))
    a = tile("a", W=("x", 1), E=("ya", 1))
    b = tile("b", W=("x", 1), N=("yb", 1))
    a2 = tile("a2", W=("ya", 1))
    b2 = tile("b2", S=("yb", 1))
    return TileSystem((seed, a, b, a2, b2), Assembly({(0, 0): seed}), 1, name="branch")


def cooperative_system() -> TileSystem:
    """Temperature 2: a corner tile needs both of its strength-1 neighbours."""
    seed = tile("seed", E=("h", 2), N=("v", 2))
    east = tile("east", W=("h", 2), N=("c1", 1))
    north = tile("north", S=("v", 2), E=("c2", 1))
    corner = tile("corner", S=("c1", 1), W=("c2", 1))
    return TileSystem((seed, east, north, corner), Assembly({(0, 0): seed}), 2,
                      name="cooperative")


def corpus() -> list[TileSystem]:
    """Small systems used across the test suite."""
    return [single_tile_system(), line_system(), branch_system(), cooperative_system(),
            keystone_system()]


def committing_target() -> TileSystem:
    """Temperature 1: seed, then a middle tile, then one of two competing ends."""
    seed = tile("seed", E=("m", 1))
    mid = tile("mid", W=("m", 1), E=("e", 1))
    end_a = tile("end_a", W=("e", 1))
    end_b = tile("end_b", W=("e", 1), N=("fl", 1))
    return TileSystem((seed, mid, end_a, end_b), Assembly({(0, 0): seed}), 1,
                      name="committing_target")


def committing_simulator_fixture():
    """A scale-1 simulator of ``committing_target`` that decides the end too early.

    The middle tile comes in two flavours, each of which only admits one of the
    two ends, so no simulator assembly for ``seed + mid`` can still reach both
    outcomes.  Returns ``(simulated, simulator, representation)``.
    """
    from .simulation import BlockRepresentation

    target = committing_target()
    seed = tile("seed", E=("m", 1))
    mid_a = tile("mid_a", W=("m", 1), E=("ea", 1))
    mid_b = tile("mid_b", W=("m", 1), E=("eb", 1))
    end_a = tile("end_a", W=("ea", 1))
    end_b = tile("end_b", W=("eb", 1), N=("fl", 1))
    sim = TileSystem((seed, mid_a, mid_b, end_a, end_b), Assembly({(0, 0): seed}), 1,
                     name="committing_simulator")
    tt = {t.name: t for t in target.tiles}
    table = {
        ((((0, 0), seed),)): tt["seed"],
        ((((0, 0), mid_a),)): tt["mid"],
        ((((0, 0), mid_b),)): tt["mid"],
        ((((0, 0), end_a),)): tt["end_a"],
        ((((0, 0), end_b),)): tt["end_b"],
    }
    return target, sim, BlockRepresentation.from_pairs(1, table, 2, 2)


def identity_representation(system: TileSystem):
    from .simulation import BlockRepresentation

    origin = (0,) * system.dimension
    return BlockRepresentation.from_pairs(
        1, {(((origin, t),)): t for t in system.tiles}, system.dimension, system.dimension)


def corrupted_table_fixture(system: TileSystem | None = None):
    """Identity simulation whose table sends every block to the seed tile."""
    from .simulation import BlockRepresentation

    system = system or line_system()
    seed_tile = system.seed[(0,) * system.dimension]
    origin = (0,) * system.dimension
    rep = BlockRepresentation.from_pairs(
        1, {(((origin, t),)): seed_tile for t in system.tiles}, system.dimension, system.dimension)
    return system, system, rep


def diagonal_fuzz_fixture():
    """A line simulator with two extra unmapped tiles that grow into a diagonal block."""
    from .simulation import BlockRepresentation

    target = line_system()
    seed = tile("seed", E=("e", 1), N=("f", 1))
    rep = tile("repeat", W=("e", 1), E=("e", 1))
    fuzz1 = tile("fuzz1", S=("f", 1), E=("f2", 1))
    fuzz2 = tile("fuzz2", W=("f2", 1))
    sim = TileSystem((seed, rep, fuzz1, fuzz2), Assembly({(0, 0): seed}), 1,
                     name="diagonal_fuzz")
    tt = {t.name: t for t in target.tiles}
    table = {
        ((((0, 0), seed),)): tt["seed"],
        ((((0, 0), rep),)): tt["repeat"],
    }
    return target, sim, BlockRepresentation.from_pairs(1, table, 2, 2)


def premature_simulator_fixture():
    """Runs ``cooperative_system``'s tiles at temperature 1.

    The corner tile then attaches next to a single arm, before the simulated
    system could place it.
    """
    from .simulation import BlockRepresentation

    target = cooperative_system()
    loose = TileSystem(target.tiles, target.seed, 1, name="premature")
    by_name = {t.name: t for t in target.tiles}
    table = {((((0, 0), t),)): by_name[t.name] for t in loose.tiles}
    return target, loose, BlockRepresentation.from_pairs(1, table, 2, 2)


def scaled_system(system: TileSystem, emitters: dict[tuple[str, str], None] | set = frozenset(),
                  name: str = ""):
    """A scale-2 simulator of a 2D system, with bridge tiles between supertiles.

    Each simulated tile ``t`` at ``(x, y)`` becomes a tile at ``(2x, 2y)``;
    the odd cells between such tiles are filled by bridge tiles that relay
    one glue.  Glues weaker than the temperature cannot hold a bridge, so for
    every ``(tile name, direction)`` in ``emitters`` the tile grabs a private
    bridge with a full-strength glue, and the bridge presents the weak glue
    on its far side.  Returns ``(simulator, representation)``.
    """
    from .simulation import BlockRepresentation

    if system.dimension != 2:
        raise ValueError("scaled_system handles 2D systems only")
    tau = system.temperature
    fwd = {"E": "a", "N": "a", "W": "b", "S": "b"}

    def relabel(g: Glue, d: str) -> Glue:
        return g if g.strength == 0 else Glue(f"{g.label}|{fwd[d]}", g.strength)

    mains = {}
    bridges = {}
    for t in system.tiles:
        sides = {}
        for d, g in t.sides().items():
            if (t.name, d) in emitters:
                private = Glue(f"{t.name}.{d}", tau)
                sides[d] = private
                far = relabel(g, OPPOSITE[d])
                bname = f"bridge[{t.name}.{d}]"
                bridges[bname] = tile(bname, **{OPPOSITE[d]: private, d: far})
            else:
                sides[d] = relabel(g, d)
                if g.strength >= tau:
                    axis = "h" if d in "EW" else "v"
                    lo, hi = ("W", "E") if axis == "h" else ("S", "N")
                    bname = f"bridge[{g.label}:{g.strength}:{axis}]"
                    bridges[bname] = tile(bname, **{lo: relabel(g, hi), hi: relabel(g, lo)})
        mains[t.name] = tile(t.name, **sides)
    seed = Assembly({(2 * p[0], 2 * p[1]): mains[t.name] for p, t in system.seed.items()})
    sim = TileSystem(tuple(mains.values()) + tuple(bridges[k] for k in sorted(bridges)),
                     seed, tau, name=name or f"{system.name}_x2")
    table = {((((0, 0), mains[t.name]),)): t for t in system.tiles}
    return sim, BlockRepresentation.from_pairs(2, table, 2, 2)


def scaled_keystone_fixture(m: int = 2):
    """``(keystone_system, scale-2 simulator, representation)``."""
    if m != 2:
        raise ValueError("only the scale-2 mockup is provided")
    ks = keystone_system()
    sim, rep = scaled_system(ks, {("top_tip", "S"), ("bot_tip", "N")}, name="keystone_x2")
    return ks, sim, rep


def scaled_line_fixture():
    line = line_system()
    sim, rep = scaled_system(line, name="line_x2")
    return line, sim, rep


def random_system(rng: random.Random, max_tiles: int = 6, temperature: int | None = None,
                  labels: int = 3) -> TileSystem:
    """A random 2D system with a single seed tile.

    Each side gets the null glue with probability one half, otherwise a label
    from a small pool and a strength between 1 and the temperature.
    """
    tau = temperature if temperature is not None else rng.choice((1, 2))
    n = rng.randint(2, max_tiles)
    pool = [chr(ord("a") + i) for i in range(labels)]
    tiles = []
    for i in range(n):
        sides = {}
        for d in directions(2):
            if rng.random() < 0.5:
                sides[d] = (rng.choice(pool), rng.randint(1, tau))
        tiles.append(tile(f"t{i}", **sides))
    return TileSystem(tuple(tiles), Assembly({(0, 0): tiles[0]}), tau, name="random")
