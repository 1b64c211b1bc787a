"""JSON round-tripping for systems, assemblies, sequences, windows and representations."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .core import (
    Assembly,
    AssemblySequence,
    Configuration,
    Glue,
    TileAssemblyError,
    TileSystem,
    TileType,
    directions,
)
from .windows import MovieStep, Window, WindowMovie


class FormatError(TileAssemblyError):
    pass


def tile_to_json(t: TileType) -> dict:
    return {"name": t.name,
            "glues": {d: [g.label, g.strength] for d, g in t.sides().items() if not g.is_null}}


def tile_from_json(obj: dict, dim: int) -> TileType:
    try:
        glues = obj.get("glues", {})
        unknown = set(glues) - set(directions(dim))
        if unknown:
            raise FormatError(f"tile {obj['name']!r} has unknown sides {sorted(unknown)}")
        return TileType(obj["name"], tuple(
            Glue(*glues[d]) if d in glues else Glue() for d in directions(dim)))
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed tile entry: {obj!r}") from exc


def _record(p, t: TileType) -> dict:
    return {"pos": list(p), "tile": t.name}


def _placements(conf: Configuration) -> list:
    return [_record(p, t) for p, t in conf.sorted_items()]


def _read_records(records: list, types: dict) -> list:
    try:
        return [(tuple(r["pos"]), types[r["tile"]]) for r in records]
    except KeyError as exc:
        raise FormatError(f"unknown tile or missing field {exc}") from exc
    except TypeError as exc:
        raise FormatError(f"placement records need 'pos' and 'tile': {exc}") from exc


def system_to_json(system: TileSystem) -> dict:
    return {
        "name": system.name,
        "temperature": system.temperature,
        "dimension": system.dimension,
        "tiles": [tile_to_json(t) for t in system.tiles],
        "seed": _placements(system.seed),
    }


def system_from_json(obj: dict) -> TileSystem:
    try:
        dim = int(obj.get("dimension", 2))
        tiles = tuple(tile_from_json(t, dim) for t in obj["tiles"])
        by_name = {t.name: t for t in tiles}
        seed = Assembly(dict(_read_records(obj["seed"], by_name)), dim)
        return TileSystem(tiles, seed, int(obj["temperature"]), name=obj.get("name", ""))
    except KeyError as exc:
        raise FormatError(f"missing or unknown entry {exc}") from exc


def configuration_to_json(conf: Configuration) -> dict:
    types = {t.name: t for t in conf.values()}
    return {"dimension": conf.dimension,
            "tile_types": [tile_to_json(types[k]) for k in sorted(types)],
            "placements": _placements(conf)}


def configuration_from_json(obj: dict, system: TileSystem | None = None) -> Configuration:
    dim = int(obj.get("dimension", system.dimension if system else 2))
    if system is not None:
        types = {t.name: t for t in system.tiles}
    else:
        types = {}
    for t in obj.get("tile_types", []):
        types.setdefault(t["name"], tile_from_json(t, dim))
    if "placements" not in obj:
        raise FormatError("configuration needs a 'placements' list")
    return Configuration(dict(_read_records(obj["placements"], types)), dim)


def sequence_to_json(seq: AssemblySequence) -> dict:
    return {"system": system_to_json(seq.system),
            "steps": [dict(_record(p, t), step=i) for i, (p, t) in enumerate(seq.steps)]}


def sequence_from_json(obj: dict) -> AssemblySequence:
    system = system_from_json(obj["system"])
    by_name = {t.name: t for t in system.tiles}
    steps = tuple(_read_records(obj["steps"], by_name))
    return AssemblySequence(system, steps)


def window_to_json(w: Window) -> dict:
    return {"edges": [[list(p), list(q)] for p, q in w.sorted_edges()]}


def window_from_json(obj: dict) -> Window:
    return Window((tuple(p), tuple(q)) for p, q in obj["edges"])


def movie_to_json(movie: WindowMovie) -> list:
    return [{"edge": [list(s.pos), list(s.target)], "from_side": s.direction,
             "glue": [s.glue.label, s.glue.strength]} for s in movie]


def movie_from_json(obj: list) -> WindowMovie:
    """Each record names the edge as ``[placed tile position, neighbour]``."""
    try:
        return WindowMovie(tuple(MovieStep(tuple(s["edge"][0]), s["from_side"], Glue(*s["glue"]))
                                 for s in obj))
    except (KeyError, TypeError, IndexError) as exc:
        raise FormatError(f"malformed movie step: {exc}") from exc


def representation_to_json(rep) -> dict:
    return {"scale": rep.scale, "source_dim": rep.source_dim, "target_dim": rep.target_dim,
            "entries": [{"block": [_record(p, t) for p, t in sorted(block, key=lambda e: e[0])],
                         "tile": image.name}
                        for block, image in sorted(rep.table.items(),
                                                   key=lambda kv: sorted((p, t.name) for p, t in kv[0]))]}


def representation_from_json(obj: dict, simulated: TileSystem, simulator: TileSystem):
    from .simulation import BlockRepresentation

    src = {t.name: t for t in simulator.tiles}
    dst = {t.name: t for t in simulated.tiles}
    try:
        table = {tuple(_read_records(e["block"], src)): dst[e["tile"]] for e in obj["entries"]}
        scale = int(obj["scale"])
    except KeyError as exc:
        raise FormatError(f"unknown tile or missing field {exc}") from exc
    source_dim = int(obj.get("source_dim", simulator.dimension))
    target_dim = int(obj.get("target_dim", simulated.dimension))
    return BlockRepresentation.from_pairs(scale, table, source_dim, target_dim)


def dump(obj: Any, path: str | Path | None = None) -> str:
    text = json.dumps(obj, indent=2, sort_keys=True)
    if path is not None:
        Path(path).write_text(text + "\n")
    return text


def load(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: {exc}") from exc


def to_jsonable(obj: Any) -> Any:
    """Best-effort conversion of reports and their witnesses to plain JSON values."""
    from .simulation import SimReport

    if isinstance(obj, Configuration):
        return configuration_to_json(obj)
    if isinstance(obj, AssemblySequence):
        return sequence_to_json(obj)
    if isinstance(obj, TileSystem):
        return system_to_json(obj)
    if isinstance(obj, Window):
        return window_to_json(obj)
    if isinstance(obj, WindowMovie):
        return movie_to_json(obj)
    if isinstance(obj, TileType):
        return tile_to_json(obj)
    if isinstance(obj, SimReport):
        return {"verdict": obj.verdict, "check": obj.check, "depth": obj.depth,
                "clause": obj.clause, "bounded": obj.bounded,
                "indeterminate": obj.indeterminate, "notes": obj.notes,
                "witnesses": to_jsonable(obj.witnesses)}
    if isinstance(obj, dict):
        if all(isinstance(k, str) for k in obj):
            return {k: to_jsonable(v) for k, v in obj.items()}
        return [{"key": to_jsonable(k), "value": to_jsonable(v)} for k, v in obj.items()]
    if isinstance(obj, (list, tuple, set, frozenset)):
        return [to_jsonable(v) for v in obj]
    return obj
