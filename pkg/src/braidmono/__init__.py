"""Exact braid monodromy for real curves made of lines and conics."""

from .braid import Band, BraidWord, band_halftwist, block_halftwist, compose, equal, invert, power
from .engine import (
    Factor,
    SingularityRow,
    SingularityTable,
    braid_monodromy,
    lvc,
    parse_table,
    reversed_monodromy,
    rotate_half,
    run_file,
)
from .moves import Model, MoveKind, realize_move
from .notation import LabelMap, parse, render, to_band

__all__ = [
    "Band",
    "BraidWord",
    "band_halftwist",
    "block_halftwist",
    "compose",
    "equal",
    "invert",
    "power",
    "Factor",
    "SingularityRow",
    "SingularityTable",
    "braid_monodromy",
    "lvc",
    "parse_table",
    "reversed_monodromy",
    "rotate_half",
    "run_file",
    "Model",
    "MoveKind",
    "realize_move",
    "LabelMap",
    "parse",
    "render",
    "to_band",
]
