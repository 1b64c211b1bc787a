"""A workbench for the abstract Tile Assembly Model.

Submodules: ``core`` (tiles, assemblies, growth), ``windows`` (window movies
and splicing), ``simulation`` (block-rescaled simulation checks),
``systems`` (reference systems), ``encoding`` (tile-set strings),
``gadgets`` (3D bit gadgets and layout arithmetic), ``serialize``,
``render`` and ``cli``.
"""
from .core import (
    Assembly,
    AssemblySequence,
    Configuration,
    Glue,
    TileSystem,
    TileType,
    explore,
    frontier,
    is_valid_sequence,
    produces,
    random_sequence,
    tile,
)

__all__ = [
    "Assembly", "AssemblySequence", "Configuration", "Glue", "TileSystem", "TileType",
    "explore", "frontier", "is_valid_sequence", "produces", "random_sequence", "tile",
]
__version__ = "0.1.0"
