"""Model disks and the Lefschetz moves between them."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .braid import Band, BraidError, BraidWord, block_halftwist, compose, invert, power, sigma
from .motion import Motion, Point, pt

__all__ = [
    "RAISE_OWN_TURN",
    "Model",
    "MoveKind",
    "MoveError",
    "flatten",
    "model_points",
    "realize_move",
    "apply_move",
    "parse_move",
    "format_move",
]

# When True a level-raising move makes its own quarter turn in the same
# rotational sense as the lowering moves, so raise-after-lower leaves a
# halftwist of the pair behind.  When False raising is the exact reverse of
# lowering and round trips are trivial.
RAISE_OWN_TURN = True

HALF = Fraction(1, 2)


class MoveError(BraidError):
    """Move applied at the wrong complex level or with bad parameters."""


@dataclass(frozen=True)
class Model:
    """Standard disk with ``n`` punctures, ``complex_pairs`` of them conjugate pairs."""

    n: int
    complex_pairs: int = 0

    def __post_init__(self):
        if self.complex_pairs not in (0, 1, 2, 3):
            raise MoveError(f"complex level {2 * self.complex_pairs} unsupported")
        if self.n < 2 * self.complex_pairs:
            raise MoveError(f"{self.n} punctures cannot hold {self.complex_pairs} pairs")

    @property
    def level(self) -> int:
        return 2 * self.complex_pairs

    @property
    def real_count(self) -> int:
        return self.n - 2 * self.complex_pairs

    @property
    def name(self) -> str:
        return f"K{max(1, self.level)}"

    @property
    def pair_anchors(self) -> tuple[Point, ...]:
        """``(real part, imaginary part)`` of the upper member of each pair."""
        n = self.n
        table = {
            0: (),
            1: ((n - 1, 1),),
            2: ((n - 3, HALF), (n - 2, 1)),
            3: ((n - 5, HALF), (n - 4, 1), (n - 3, 2)),
        }
        return tuple(pt(*a) for a in table[self.complex_pairs])

    def with_level(self, level: int) -> Model:
        return Model(self.n, level // 2)

    @classmethod
    def from_name(cls, name: str, n: int) -> Model:
        m = re.fullmatch(r"K([1246])", name)
        if not m:
            raise MoveError(f"unknown model {name!r}")
        return cls(n, {1: 0, 2: 1, 4: 2, 6: 3}[int(m.group(1))])


def model_points(model: Model) -> list[Point]:
    """Puncture coordinates in slot order: reals, then each pair upper-first."""
    pts = [pt(x) for x in range(1, model.real_count + 1)]
    for x, h in model.pair_anchors:
        pts += [(x, h), (x, -h)]
    return pts


def flatten(model: Model) -> list[tuple[int, Point]]:
    """Slot assigned to each model puncture (the tilt puts ``+i`` first)."""
    return list(enumerate(model_points(model), start=1))


@dataclass(frozen=True)
class MoveKind:
    """One δ-move.  ``kind`` is one of the keys of ``_SYNTAX``."""

    kind: str
    k: int
    l: int = 0
    r: int = 1

    def __post_init__(self):
        if self.kind not in _SYNTAX:
            raise MoveError(f"unknown move kind {self.kind!r}")
        if self.kind == "block" and not 1 <= self.k < self.l:
            raise MoveError(f"bad block <{self.k},{self.l}>")

    @property
    def source_pairs(self) -> int | None:
        return _LEVELS[self.kind][0]

    @property
    def target_pairs(self) -> int | None:
        return _LEVELS[self.kind][1]

    def __str__(self):
        return format_move(self)


# kind -> (source pairs, target pairs); None for level-preserving
_LEVELS = {
    "block": (None, None),
    "I2R": (1, 0),
    "RI2": (0, 1),
    "I4I2": (2, 1),
    "I4I2'": (2, 1),
    "I2I4": (1, 2),
    "I6I4": (3, 2),
    "I4I6": (2, 3),
}

_SYNTAX = {
    "I2R": "D12R",
    "RI2": "DR12",
    "I4I2": "D1412",
    "I4I2'": "D1412'",
    "I2I4": "D1214",
    "I6I4": "D1614",
    "I4I6": "D1416",
    "block": "D",
}
_FROM_SYNTAX = {v: k for k, v in _SYNTAX.items() if k != "block"}


def format_move(mv: MoveKind) -> str:
    if mv.kind == "block":
        return f"D<{mv.k},{mv.l}>^{mv.r}"
    return f"{_SYNTAX[mv.kind]}<{mv.k}>"


def parse_move(text: str) -> MoveKind:
    text = text.strip()
    m = re.fullmatch(r"D<(\d+),(\d+)>(?:\^(-?\d+))?", text)
    if m:
        return MoveKind("block", int(m.group(1)), int(m.group(2)), int(m.group(3) or 1))
    m = re.fullmatch(r"(D\w+'?)<(\d+)>", text)
    if m and m.group(1) in _FROM_SYNTAX:
        return MoveKind(_FROM_SYNTAX[m.group(1)], int(m.group(2)))
    raise MoveError(f"bad move syntax {text!r}")


# ------------------------------------------------------------ realisation


def _lowering_motion(kind: str, k: int, source: Model, clockwise: bool = False) -> Motion:
    """Motion of a level-lowering move, from ``source`` to the target model."""
    n, R = source.n, source.real_count
    if not 1 <= k <= R + 1:
        raise MoveError(f"{kind}<{k}> needs 1 <= k <= {R + 1}")
    m = Motion(model_points(source))
    up = lambda j: R + 2 * j  # noqa: E731  index of the upper member of pair j
    lo = lambda j: R + 2 * j + 1  # noqa: E731
    low_pair = {"I2R": 0, "I4I2": 0, "I4I2'": 1, "I6I4": 2}[kind]

    # first stage: bring the pair that turns real next to slot k
    if kind == "I4I2'":
        m.step({up(1): (n - 2, HALF), lo(1): (n - 2, -HALF), up(0): (n - 3, 1), lo(0): (n - 3, -1)})
    elif kind == "I6I4":
        m.step({up(0): (n - 5, 1), lo(0): (n - 5, -1), up(2): (n - 3, HALF), lo(2): (n - 3, -HALF)})
    m.step({up(low_pair): (k + HALF, HALF), lo(low_pair): (k + HALF, -HALF)})

    # second stage: make room, park the remaining pairs on the target anchors
    shift = {i: (x + 2, y) for i, (x, y) in enumerate(m.current[:R]) if x >= k}
    if kind == "I4I2":
        shift.update({up(1): (n - 1, 1), lo(1): (n - 1, -1)})
    elif kind == "I4I2'":
        shift.update({up(0): (n - 1, 1), lo(0): (n - 1, -1)})
    elif kind == "I6I4":
        shift.update({up(1): (n - 2, 1), lo(1): (n - 2, -1), up(0): (n - 3, HALF), lo(0): (n - 3, -HALF)})
    if shift:
        m.step(shift)

    # third stage: quarter turn onto slots k, k+1
    a, b = (k + 1, k) if clockwise else (k, k + 1)
    m.step({up(low_pair): (a, HALF), lo(low_pair): (b, -HALF)})
    m.step({up(low_pair): (a, 0), lo(low_pair): (b, 0)})
    return m


_LOWER_OF = {"RI2": "I2R", "I2I4": "I4I2", "I4I6": "I6I4"}


def _check(mv: MoveKind, model: Model):
    src = mv.source_pairs
    if src is not None and src != model.complex_pairs:
        raise MoveError(
            f"{format_move(mv)} expects complex level {2 * src}, model is {model.name}"
        )
    if mv.kind == "block" and mv.l > model.real_count:
        raise MoveError(f"{format_move(mv)} reaches past the real punctures of {model.name}")


@lru_cache(maxsize=None)
def realize_move(mv: MoveKind, model: Model, clockwise: bool = False) -> tuple[BraidWord, Model]:
    """Braid word (in flattened slots) of ``mv`` and the model it lands in.

    ``clockwise`` selects the mirrored rotations used when the base point
    sits to the left of every singular fiber.
    """
    _check(mv, model)
    n = model.n
    sign = -1 if clockwise else 1
    if mv.kind == "block":
        return power(block_halftwist(mv.k, mv.l, n), sign * mv.r), model
    target = Model(n, mv.target_pairs)
    if mv.kind in _LOWER_OF:
        word, _ = realize_move(MoveKind(_LOWER_OF[mv.kind], mv.k), target, clockwise)
        word = invert(word)
        if RAISE_OWN_TURN:
            word = compose(sigma(mv.k, n, sign), word)
        return word, target
    return _lowering_motion(mv.kind, mv.k, model, clockwise).word(), target


def apply_move(mv: MoveKind, model: Model, b: Band, clockwise: bool = False) -> tuple[Band, Model]:
    word, target = realize_move(mv, model, clockwise)
    return b.moved(word), target
