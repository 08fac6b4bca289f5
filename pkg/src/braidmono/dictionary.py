"""Reference table of how each move carries a decorated path.

Each entry says: the path ``lhs`` in the source model, pushed forward by the
move's braid, has the same halftwist as the path ``rhs`` in the target model.
Templates use ``{k}``-style fields (``k``, ``n`` and simple sums such as
``{k+1}`` or ``{n-3}``) and are checked for any admissible ``n`` and ``k``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .braid import band_halftwist, equal
from .engine import model_labels
from .moves import Model, MoveKind, format_move, realize_move
from .notation import parse, to_band

__all__ = ["DictionaryEntry", "DictionaryResult", "ENTRIES", "check_entry", "check_dictionary"]


@dataclass(frozen=True)
class DictionaryEntry:
    kind: str  # move kind, or "block" for D<k,k+1>
    source_pairs: int
    lhs: str
    rhs: str
    derived: bool = False  # right-hand side reconstructed, not transcribed
    note: str = ""


ENTRIES: tuple[DictionaryEntry, ...] = (
    DictionaryEntry("block", 0, "~z[{k-2},{k}]", "~z({k})[{k-2},{k+1}]"),
    DictionaryEntry("I4I2", 2, "_z[{k-2},{k+1}]", "_z({k+1})[{k-2},{k+3}]"),
    DictionaryEntry(
        "I4I2'", 2, "z({k+1})[{k-1},{k+2}]", "_z({k+1})({k+3})[{k-1},{k+4}]", derived=True,
        note="right-hand side found by search over detour sets",
    ),
    DictionaryEntry("I2I4", 1, "z[{k+2},{k+3}] ^ Z2[{k+1},{k+2}]", "z[{k},{k+1}] ^ ~Z-2[{k+1},{n-3}+i/2]"),
    DictionaryEntry("RI2", 0, "z({k})[{k-1},{k+2}]", "z[{k-1},{k}]"),
    DictionaryEntry("I2R", 1, "z[{k-1},{k}]", "_z({k+1})[{k-1},{k+2}]"),
    DictionaryEntry(
        "I6I4", 3, "z[{k-1},{k}]", "~z({k})[{k-1},{k+2}]", derived=True,
        note="endpoints agree with the surviving subscripts",
    ),
    DictionaryEntry("I4I6", 2, "z[{k+1},{k+2}]", "~z({n-5}+i/2)({n-4}+i)[{k},{n-3}+2i]"),
)

_FIELD = re.compile(r"\{([kn])([+-]\d+)?\}")


def _fill(template: str, n: int, k: int) -> str:
    def sub(m: re.Match) -> str:
        base = k if m.group(1) == "k" else n
        return str(base + int(m.group(2) or 0))

    return _FIELD.sub(sub, template)


@dataclass(frozen=True)
class DictionaryResult:
    entry: DictionaryEntry
    n: int
    k: int
    move: str
    ok: bool


def check_entry(entry: DictionaryEntry, n: int, k: int) -> DictionaryResult:
    """Push ``lhs`` through the move and compare halftwists with ``rhs``."""
    mv = MoveKind("block", k, k + 1) if entry.kind == "block" else MoveKind(entry.kind, k)
    src = Model(n, entry.source_pairs)
    word, tgt = realize_move(mv, src)
    src_labels, tgt_labels = model_labels(src), model_labels(tgt)
    lhs, _ = to_band(parse(_fill(entry.lhs, n, k), src_labels), src_labels)
    rhs, _ = to_band(parse(_fill(entry.rhs, n, k), tgt_labels), tgt_labels)
    ok = equal(band_halftwist(lhs.moved(word)), band_halftwist(rhs))
    return DictionaryResult(entry, n, k, format_move(mv), ok)


def check_dictionary(ns=(10, 12), ks=(3, 4)) -> list[DictionaryResult]:
    return [check_entry(e, n, k) for e in ENTRIES for n in ns for k in ks]
