"""Command-line entry point: ``atamkit <subcommand> ...``.

Exit codes: 0 on success, 1 on a domain error (bad input file, failed
splice, failed check with ``--strict``), 2 on a usage error.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import encoding, gadgets, serialize, simulation, systems, windows
from .core import (
    ExplorationBudgetExceeded,
    TileAssemblyError,
    TileSystem,
    explore,
    is_valid_sequence,
    random_sequence,
)
from .render import render_svg

DEFAULT_RNG_SEED = 1729
DEFAULT_BUDGET = 200_000

BUILTIN_SYSTEMS = {
    "keystone": systems.keystone_system,
    "line": systems.line_system,
    "single": systems.single_tile_system,
    "branch": systems.branch_system,
    "cooperative": systems.cooperative_system,
    "committing-target": systems.committing_target,
}

SIM_FIXTURES = {
    "committing": systems.committing_simulator_fixture,
    "corrupted": systems.corrupted_table_fixture,
    "diagonal-fuzz": systems.diagonal_fuzz_fixture,
    "premature": systems.premature_simulator_fixture,
    "scaled-keystone": systems.scaled_keystone_fixture,
    "scaled-line": systems.scaled_line_fixture,
}


class UsageError(Exception):
    pass


def load_system(spec: str) -> TileSystem:
    """A built-in system name or a path to a system JSON file."""
    if spec in BUILTIN_SYSTEMS:
        return BUILTIN_SYSTEMS[spec]()
    path = Path(spec)
    if not path.exists():
        raise UsageError(f"unknown system {spec!r}: not a built-in name or an existing file")
    return serialize.system_from_json(serialize.load(path))


def _budget(args) -> int:
    if args.budget is not None:
        return args.budget
    env = os.environ.get("ATAM_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"ATAM_BUDGET must be an integer, got {env!r}") from None
    return DEFAULT_BUDGET


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def cmd_run(args) -> int:
    system = load_system(args.system)
    seq = random_sequence(system, args.max_tiles, rng_seed=args.rng_seed)
    doc = {"rng_seed": args.rng_seed, "sequence": serialize.sequence_to_json(seq),
           "terminal": len(seq.result()) < args.max_tiles}
    _emit(serialize.dump(doc), args.out)
    return 0


def cmd_explore(args) -> int:
    system = load_system(args.system)
    ex = explore(system, args.max_tiles, budget=_budget(args))
    doc = {
        "system": system.name,
        "max_tiles": args.max_tiles,
        "truncated": ex.truncated,
        "assemblies": [dict(serialize.configuration_to_json(a), terminal=ex.terminal[i])
                       for i, a in enumerate(ex.assemblies)],
    }
    _emit(serialize.dump(doc), args.out)
    return 0


def windows_from(path: str):
    return serialize.window_from_json(serialize.load(path))


def cmd_splice(args) -> int:
    if args.fixture:
        seq_a, w, seq_b, w2, offset = windows.line_pump_fixture(swap=args.fixture == "line-pump-up")
    else:
        if not (args.seq_a and args.seq_b and args.window and args.offset):
            raise UsageError("splice needs --fixture or all of --a, --b, --wa, --offset")
        seq_a = serialize.sequence_from_json(serialize.load(args.seq_a))
        seq_b = serialize.sequence_from_json(serialize.load(args.seq_b))
        w = serialize.window_from_json(serialize.load(args.window))
        try:
            offset = tuple(int(c) for c in args.offset.split(","))
        except ValueError:
            raise UsageError(f"--offset must be comma-separated integers, got {args.offset!r}") from None
        w2 = (windows_from(args.window_b) if args.window_b else w.translate(offset))
        if w2 != w.translate(offset):
            raise UsageError("--wb must equal --wa translated by --offset")
    result = windows.splice(seq_a, w, seq_b, w2, offset, exact=args.exact)
    check = is_valid_sequence(result)
    doc = {"valid": check.valid, "sequence": serialize.sequence_to_json(result)}
    if not check.valid:
        doc["violation"] = {"step": check.first_violation, "reason": check.reason}
    _emit(serialize.dump(doc), args.out)
    return 0 if check.valid else 1


def cmd_check_sim(args) -> int:
    if args.fixture:
        if args.fixture.startswith("identity:"):
            simulated = load_system(args.fixture.split(":", 1)[1])
            simulator, rep = simulated, systems.identity_representation(simulated)
        elif args.fixture in SIM_FIXTURES:
            simulated, simulator, rep = SIM_FIXTURES[args.fixture]()
        else:
            raise UsageError(f"unknown fixture {args.fixture!r}")
    else:
        if not (args.simulated and args.simulator and args.representation):
            raise UsageError("check-sim needs --fixture or --simulated, --simulator and --rep")
        simulated = load_system(args.simulated)
        simulator = load_system(args.simulator)
        rep = serialize.representation_from_json(serialize.load(args.representation),
                                                 simulated, simulator)
    kw = dict(target_bound=args.target_bound, budget=_budget(args))
    if args.check == "all":
        report = simulation.check_simulates(simulated, simulator, rep, args.bound,
                                            samples=args.samples, rng_seed=args.rng_seed, **kw)
    elif args.check == "follows":
        report = simulation.check_follows(simulated, simulator, rep, args.bound,
                                          samples=args.samples, rng_seed=args.rng_seed, **kw)
    elif args.check == "models":
        report = simulation.check_models(simulated, simulator, rep, args.bound, **kw)
    else:
        report = simulation.check_equivalent_productions(simulated, simulator, rep, args.bound, **kw)
    doc = dict(serialize.to_jsonable(report), rng_seed=args.rng_seed)
    _emit(serialize.dump(doc), args.out)
    return 1 if args.strict and not report.passed else 0


def cmd_encode(args) -> int:
    if args.tiles:
        relation = encoding.BindingRelation.from_system(load_system(args.tiles))
    elif args.fixture == "example":
        relation = encoding.example_relation()
    elif args.fixture in BUILTIN_SYSTEMS:
        relation = encoding.BindingRelation.from_system(BUILTIN_SYSTEMS[args.fixture]())
    else:
        raise UsageError(f"unknown fixture {args.fixture!r}")
    _emit(encoding.encode_tileset(relation, args.mode), args.out)
    return 0


def cmd_gadget(args) -> int:
    if any(c not in "01" for c in args.bits):
        raise UsageError("--bits must be a string of 0s and 1s")
    gadget = gadgets.bit_string_gadget(args.bits)
    if args.emit:
        serialize.dump(serialize.system_to_json(gadget.system), args.emit)
    check = gadgets.check_gadget(gadget, budget=_budget(args))
    doc = {"bits": args.bits, "readback": list(check.terminals), "deterministic": check.deterministic,
           "assemblies": check.assemblies, "write_before_read": check.write_before_read,
           "max_stub": check.max_stub, "planes": sorted(check.planes)}
    _emit(serialize.dump(doc), args.out)
    ok = check.deterministic and check.terminals[0] == gadget.expected_reader
    return 0 if ok else 1


def cmd_layout(args) -> int:
    layout = gadgets.superside_layout(args.tiles)
    h_prime, h = gadgets.probe_height(layout)
    lines = [f"tiles {layout.tile_count}", f"{'region':<6} {'start':>8} {'width':>8}"]
    for name, start, end in layout.offsets():
        lines.append(f"{name:<6} {start:>8} {end - start:>8}")
    lines += [f"side length {layout.side_length}", f"h' {h_prime}", f"h {h}",
              f"probe stops {gadgets.probe_reach(layout)} gadget(s) short of the centre"]
    _emit("\n".join(lines), args.out)
    return 0


def cmd_render(args) -> int:
    if args.assembly:
        system = load_system(args.system) if args.system else None
        assembly = serialize.configuration_from_json(serialize.load(args.assembly), system)
    elif args.system:
        system = load_system(args.system)
        assembly = random_sequence(system, args.max_tiles, rng_seed=args.rng_seed).result()
    else:
        raise UsageError("render needs --assembly or --system")
    svg = render_svg(assembly, cell=args.cell, planes=args.plane, labels=not args.no_labels)
    _emit(svg, args.out)
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="atamkit", description="Abstract Tile Assembly Model workbench.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, tiles=True):
        p.add_argument("--rng-seed", type=int, default=DEFAULT_RNG_SEED,
                       help=f"random seed (default {DEFAULT_RNG_SEED})")
        p.add_argument("--budget", type=int, default=None,
                       help="cap on stored assemblies; falls back to $ATAM_BUDGET")
        p.add_argument("--out", help="write to this file instead of stdout")
        if tiles:
            p.add_argument("--max-tiles", type=_positive, default=30)

    p = sub.add_parser("run", help="a random assembly sequence")
    p.add_argument("--system", required=True, help="built-in name or system JSON file")
    common(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("explore", help="all producible assemblies up to a size")
    p.add_argument("--system", required=True)
    common(p)
    p.set_defaults(func=cmd_explore)

    p = sub.add_parser("splice", help="splice two sequences across matching windows")
    p.add_argument("--fixture", choices=["line-pump-down", "line-pump-up"])
    p.add_argument("--a", "--seq-a", dest="seq_a", help="first sequence JSON")
    p.add_argument("--wa", "--window", dest="window", help="window JSON for the first sequence")
    p.add_argument("--b", "--seq-b", dest="seq_b", help="second sequence JSON")
    p.add_argument("--wb", dest="window_b",
                   help="window JSON for the second sequence (default: --wa translated by --offset)")
    p.add_argument("--offset", help="translation from the first window to the second, e.g. -1,0")
    p.add_argument("--exact", action="store_true", help="require full window movies to agree")
    common(p, tiles=False)
    p.set_defaults(func=cmd_splice)

    p = sub.add_parser("check-sim", help="bounded simulation checks")
    p.add_argument("--fixture", help="identity:<system>, " + ", ".join(SIM_FIXTURES))
    p.add_argument("--simulated")
    p.add_argument("--simulator")
    p.add_argument("--rep", "--representation", dest="representation")
    p.add_argument("--check", choices=["all", "productions", "follows", "models"], default="all")
    p.add_argument("--bound", type=_positive, default=25)
    p.add_argument("--target-bound", type=_positive, default=None)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--strict", action="store_true", help="exit 1 when the check fails")
    common(p, tiles=False)
    p.set_defaults(func=cmd_check_sim)

    p = sub.add_parser("encode", help="string encoding of a tile set's binding relation")
    p.add_argument("--tiles", help="built-in name or system JSON file")
    p.add_argument("--fixture", "--fixtures", dest="fixture", default="example",
                   help="'example' (the five-tile example relation) or a built-in system name")
    p.add_argument("--mode", choices=["binary", "display"], default="display")
    p.add_argument("--out")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("gadget", help="build and check a bit read/write gadget")
    p.add_argument("--bits", required=True)
    p.add_argument("--emit", help="write the gadget system JSON here")
    common(p, tiles=False)
    p.set_defaults(func=cmd_gadget)

    p = sub.add_parser("layout", help="superside region widths for a tile-set size")
    p.add_argument("--tiles", type=_positive, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_layout)

    p = sub.add_parser("render", help="SVG picture of an assembly")
    p.add_argument("--assembly", help="configuration JSON")
    p.add_argument("--system", help="resolves tile names, or grows a random assembly")
    p.add_argument("--cell", type=_positive, default=24)
    p.add_argument("--plane", type=int, action="append", help="z plane to draw (repeatable)")
    p.add_argument("--no-labels", action="store_true")
    common(p)
    p.set_defaults(func=cmd_render)
    return parser


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (TileAssemblyError, ExplorationBudgetExceeded, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
