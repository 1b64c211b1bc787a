"""Randomised splice trials shared by the window tests and the acceptance suite."""
from __future__ import annotations

import random
from dataclasses import dataclass

from atamkit.core import AssemblySequence, is_valid_sequence, random_sequence
from atamkit.systems import random_system
from atamkit.windows import (
    SpliceError,
    Window,
    WindowError,
    bond_forming_submovie,
    splice_details,
    window_movie,
)


def staircase_window(rng: random.Random, points, seed=(0, 0)) -> tuple[Window, frozenset]:
    """A random monotone cut of the bounding box (plus a one-cell margin).

    The seed side is ``{p : s * p[axis] <= f(p[other])}`` for a random sign
    ``s`` and a random walk ``f >= 0``; every row of it contains the seed's
    column, so it is connected inside the box.
    """
    pts = list(points) + [seed]
    lo = tuple(min(p[i] for p in pts) - 1 for i in range(2))
    hi = tuple(max(p[i] for p in pts) + 1 for i in range(2))
    axis = rng.randrange(2)
    other = 1 - axis
    s = rng.choice((1, -1))
    extent = max(abs(lo[axis]), abs(hi[axis]))
    f = {}
    level = rng.randint(0, max(0, extent - 1))
    for v in range(lo[other], hi[other] + 1):
        f[v] = level
        level = max(0, level + rng.choice((-1, 0, 0, 1)))
    region = frozenset(
        (x, y) for x in range(lo[0], hi[0] + 1) for y in range(lo[1], hi[1] + 1)
        if s * (x, y)[axis] <= f[(x, y)[other]])
    return Window.boundary(region, (lo, hi)), region


@dataclass
class TrialStats:
    systems: int = 0
    attempts: int = 0
    matched: int = 0
    valid: int = 0
    failures: list = None

    def __post_init__(self):
        self.failures = []


def _translate(points, v):
    return [(p[0] + v[0], p[1] + v[1]) for p in points]


def _composition_ok(seq_a: AssemblySequence, seq_b: AssemblySequence, w: Window, offset) -> str | None:
    """Splice one way round and check validity and the declared domains; ``None`` when fine."""
    back = (-offset[0], -offset[1])
    w2 = w.translate(offset)
    result = splice_details(seq_a, w, seq_b, w2, offset)
    check = is_valid_sequence(result.sequence)
    if not check:
        return f"invalid splice: {check.reason}"
    a_res = seq_a.result()
    b_moved = seq_b.result().translate(back)
    region = w.seed_region([p for p, _ in seq_a.steps[:seq_a.seed_length]],
                           list(a_res) + list(b_moved))
    want = {p: t for p, t in a_res.items() if p in region}
    want.update({p: t for p, t in b_moved.items() if p not in region})
    got = dict(result.sequence.result().items())
    if got != want:
        return "spliced domain differs from the near side of one and the far side of the other"
    return None


def _prefix(seq: AssemblySequence, rng: random.Random) -> AssemblySequence:
    k = rng.randint(min(len(seq), seq.seed_length + 2), len(seq))
    return AssemblySequence(seq.system, seq.steps[:k])


def run_trials(n_systems: int = 24, per_system: int = 400, max_tiles: int = 40,
               rng_seed: int = 7) -> TrialStats:
    """Splice random sequence pairs across random windows whenever their submovies agree.

    Pairs come from two sources: two random sequences of the same system with
    a zero offset, and one sequence against itself with a random offset (the
    pumping situation).  Both compositions are spliced.
    """
    rng = random.Random(rng_seed)
    stats = TrialStats()
    while stats.systems < n_systems:
        system = random_system(rng, max_tiles=6)
        probe = random_sequence(system, max_tiles, rng_seed=rng.randrange(1 << 30))
        if len(probe) < 4:
            continue
        stats.systems += 1
        pool = [random_sequence(system, max_tiles, rng_seed=rng.randrange(1 << 30))
                for _ in range(8)]
        for _ in range(per_system):
            seq_a = _prefix(rng.choice(pool), rng)
            if rng.random() < 0.5:
                seq_b = _prefix(rng.choice(pool), rng)
                offset = (0, 0)
            else:
                seq_b = seq_a
                offset = (rng.randint(-3, 3), rng.randint(-3, 3))
            back = (-offset[0], -offset[1])
            pts = list(seq_a.result()) + _translate(seq_b.result(), back)
            w, region = staircase_window(rng, pts)
            stats.attempts += 1
            a_res, b_moved = seq_a.result(), seq_b.result().translate(back)
            if (0, 0) not in region or tuple(back) not in region:
                continue
            if all(p in region for p in a_res) or all(p in region for p in b_moved):
                continue
            w2 = w.translate(offset)
            ma = bond_forming_submovie(window_movie(seq_a, w), a_res)
            mb = bond_forming_submovie(window_movie(seq_b, w2), seq_b.result()).translate(back)
            if ma != mb:
                continue
            stats.matched += 1
            try:
                err = _composition_ok(seq_a, seq_b, w, offset)
                if err is None:
                    err = _composition_ok(seq_b, seq_a, w2, back)
            except (SpliceError, WindowError) as exc:
                err = f"{type(exc).__name__}: {exc}"
            if err is None:
                stats.valid += 1
            else:
                stats.failures.append((system, seq_a, seq_b, w, offset, err))
    return stats
