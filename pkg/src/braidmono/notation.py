"""Decorated path and halftwist expressions.

ASCII grammar (one expression)::

    expr     := atom ( '^' atom+ )?  |  '(' expr ',' expr ')'
    atom     := side? letter detour* exponent? '[' label ',' label ']'
    side     := '_'  (below the real line)  |  '~'  (above)
    letter   := 'z' (path)  |  'Z' (halftwist)
    detour   := '(' label ')'   the arc crosses to the other side at label
    exponent := signed integer, halftwists only

``b ^ C1 C2`` is ``b`` moved by ``C1`` and then by ``C2``.  A parenthesised
pair is a two-arc skeleton sharing its middle puncture; its braid is the
halftwist of the disk around the skeleton.

Labels are resolved through a :class:`LabelMap`, which also fixes the plane
coordinates of every puncture so arcs can be drawn and turned into braids.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .braid import (
    Band,
    BraidError,
    BraidWord,
    band_halftwist,
    compose,
    power,
)
from .motion import Point, pt, path_band, slot_order

__all__ = [
    "NotationError",
    "LabelMap",
    "DecoratedExpr",
    "Skeleton",
    "parse",
    "render",
    "to_band",
    "expr_braid",
    "expr_skeleton_word",
]


class NotationError(BraidError):
    def __init__(self, message: str, position: int | None = None):
        super().__init__(message if position is None else f"{message} (at column {position})")
        self.position = position


# ----------------------------------------------------------------- labels


@dataclass(frozen=True)
class LabelMap:
    """Puncture labels with plane coordinates; slots follow the tilted order."""

    labels: tuple[str, ...]
    coords: tuple[Point, ...]

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise NotationError("duplicate label in label map")
        if len(self.labels) != len(self.coords):
            raise NotationError("labels and coordinates differ in length")
        order = slot_order(self.coords)
        object.__setattr__(self, "_slot", {self.labels[p]: s + 1 for s, p in enumerate(order)})

    @classmethod
    def real(cls, labels: Iterable) -> LabelMap:
        labels = tuple(str(x) for x in labels)
        return cls(labels, tuple(pt(i) for i in range(1, len(labels) + 1)))

    @classmethod
    def from_points(cls, items: Sequence[tuple[str, Point]]) -> LabelMap:
        return cls(tuple(str(a) for a, _ in items), tuple(pt(*z) for _, z in items))

    @property
    def n(self) -> int:
        return len(self.labels)

    def slot(self, label: str) -> int:
        try:
            return self._slot[label]  # type: ignore[attr-defined]
        except KeyError:
            raise NotationError(f"unknown label {label!r}") from None

    def coord(self, label: str) -> Point:
        self.slot(label)
        return self.coords[self.labels.index(label)]

    def index(self, label: str) -> int:
        self.slot(label)
        return self.labels.index(label)

    def ordered(self) -> list[str]:
        return sorted(self.labels, key=self.slot)


# -------------------------------------------------------------------- AST


@dataclass(frozen=True)
class DecoratedExpr:
    kind: str  # "path" or "halftwist"
    left: str
    right: str
    side: str = "plain"  # "below", "above" or "plain"
    detours: tuple[str, ...] = ()
    exponent: int = 1
    conjugators: tuple[DecoratedExpr, ...] = field(default=())

    def __post_init__(self):
        if self.kind not in ("path", "halftwist"):
            raise NotationError(f"bad kind {self.kind!r}")
        if self.side not in ("below", "above", "plain"):
            raise NotationError(f"bad side {self.side!r}")
        if self.kind == "path" and self.exponent != 1:
            raise NotationError("paths carry no exponent")
        if self.left == self.right:
            raise NotationError("an arc needs two distinct endpoints")

    def plain_defaulted(self, labels: LabelMap) -> bool:
        """True when the unbarred arc is non-adjacent and had to pick a side."""
        if self.side != "plain":
            return False
        return bool(self.detours) or bool(_between(labels, self.left, self.right))


@dataclass(frozen=True)
class Skeleton:
    """Two arcs sharing an endpoint, printed as a parenthesised pair."""

    arcs: tuple[DecoratedExpr, DecoratedExpr]

    @property
    def exponent(self) -> int:
        return self.arcs[0].exponent

    @property
    def kind(self) -> str:
        return self.arcs[0].kind


Expr = DecoratedExpr | Skeleton

# ----------------------------------------------------------------- parser

_LABEL = r"[^\s,\[\]()^]+"
_ATOM = re.compile(
    r"(?P<side>[_~]?)(?P<letter>[zZ])(?P<detours>(?:\(" + _LABEL + r"\))*)"
    r"(?P<exp>-?\d+)?\[\s*(?P<a>" + _LABEL + r")\s*,\s*(?P<b>" + _LABEL + r")\s*\]"
)
_SIDES = {"": "plain", "_": "below", "~": "above"}
_PREFIX = {v: k for k, v in _SIDES.items()}


class _Parser:
    def __init__(self, text: str, labels: LabelMap | None):
        self.text, self.pos, self.labels = text, 0, labels

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            raise NotationError(f"expected {ch!r}", self.pos)
        self.pos += 1

    def atom(self) -> DecoratedExpr:
        self.skip()
        m = _ATOM.match(self.text, self.pos)
        if not m:
            raise NotationError("expected an arc like _z[3,5] or ~Z2[4,6]", self.pos)
        start = self.pos
        self.pos = m.end()
        kind = "path" if m["letter"] == "z" else "halftwist"
        if kind == "path" and m["exp"] is not None:
            raise NotationError("paths (lowercase z) take no exponent", start)
        detours = tuple(re.findall(r"\((" + _LABEL + r")\)", m["detours"]))
        a, b = m["a"], m["b"]
        if self.labels is not None:
            for lab in (a, b, *detours):
                self.labels.slot(lab)
        exponent = int(m["exp"]) if m["exp"] is not None else 1
        if exponent == 0:
            raise NotationError("zero exponent", start)
        return DecoratedExpr(kind, a, b, _SIDES[m["side"]], detours, exponent)

    def conjugated(self) -> DecoratedExpr:
        base = self.atom()
        if self.peek() != "^":
            return base
        self.pos += 1
        conj = [self.atom()]
        while self.peek() in ("_", "~", "z", "Z"):
            conj.append(self.atom())
        for c in conj:
            if c.kind != "halftwist":
                raise NotationError("conjugators must be halftwists (capital Z)", self.pos)
        return DecoratedExpr(
            base.kind, base.left, base.right, base.side, base.detours, base.exponent, tuple(conj)
        )

    def expr(self) -> Expr:
        if self.peek() == "(":
            self.pos += 1
            first = self.conjugated()
            self.expect(",")
            second = self.conjugated()
            self.expect(")")
            if first.kind != second.kind:
                raise NotationError("skeleton arcs mix paths and halftwists", self.pos)
            if first.exponent != second.exponent:
                raise NotationError("skeleton arcs carry different exponents", self.pos)
            return Skeleton((first, second))
        return self.conjugated()


def parse(text: str, labels: LabelMap | None = None) -> Expr:
    p = _Parser(text, labels)
    e = p.expr()
    if p.peek():
        raise NotationError("trailing text", p.pos)
    return e


def _render_atom(e: DecoratedExpr) -> str:
    letter = "z" if e.kind == "path" else "Z"
    exp = "" if e.exponent == 1 else str(e.exponent)
    det = "".join(f"({d})" for d in e.detours)
    return f"{_PREFIX[e.side]}{letter}{det}{exp}[{e.left},{e.right}]"


def render(e: Expr) -> str:
    if isinstance(e, Skeleton):
        return "(" + ", ".join(render(a) for a in e.arcs) + ")"
    out = _render_atom(e)
    if e.conjugators:
        out += " ^ " + " ".join(_render_atom(c) for c in e.conjugators)
    return out


# --------------------------------------------------------------- geometry


def _between(labels: LabelMap, a: str, b: str) -> list[str]:
    xa, xb = sorted((labels.coord(a)[0], labels.coord(b)[0]))
    return [x for x in labels.labels if x not in (a, b) and xa < labels.coord(x)[0] < xb]


def _route(labels: LabelMap, a: str, b: str, side: str, detours: Sequence[str]) -> list[Point]:
    za, zb = labels.coord(a), labels.coord(b)
    if side == "plain" and not detours:
        return []
    if side == "plain":
        side = "below"
    xs = sorted({z[0] for z in labels.coords})
    gap = min((q - p for p, q in zip(xs, xs[1:])), default=Fraction(1))
    eps = gap / 4
    top = max(abs(z[1]) for z in labels.coords) + 1
    lane = top if side == "above" else -top
    dip_real = -gap / 4 if side == "above" else gap / 4
    span = sorted(_between(labels, a, b), key=lambda x: labels.coord(x)[0])
    for d in detours:
        if d not in span:
            raise NotationError(f"detour label {d} is not strictly between {a} and {b}")
    route = [(za[0] + eps, za[1]), (za[0] + eps, lane)]
    done: set[Fraction] = set()
    for d in span:
        if d not in detours:
            continue
        x, y = labels.coord(d)
        if y == 0:
            dip = dip_real
        elif (y > 0) == (side == "above"):
            dip = y / 2
        else:
            raise NotationError(f"cannot pass {d} on the far side of the real line")
        if x in done:
            raise NotationError(f"two detours at the same abscissa near {d}")
        done.add(x)
        route += [(x - eps, lane), (x - eps, dip), (x + eps, dip), (x + eps, lane)]
    route += [(zb[0] - eps, lane), (zb[0] - eps, zb[1])]
    return route


def _arc_band(e: DecoratedExpr, labels: LabelMap) -> Band:
    a, b = e.left, e.right
    if labels.coord(a)[0] > labels.coord(b)[0]:
        a, b = b, a
    route = _route(labels, a, b, e.side, e.detours)
    return path_band(labels.coords, labels.index(a), labels.index(b), route)


def to_band(e: DecoratedExpr, labels: LabelMap) -> tuple[Band, int]:
    """Band realising ``e`` in ``labels``' configuration, and its exponent."""
    band = _arc_band(e, labels)
    for c in e.conjugators:
        cb, ce = to_band(c, labels)
        band = band.moved(band_halftwist(cb, ce))
    return band, e.exponent


def _skeleton_halftwist(sk: Skeleton, labels: LabelMap) -> BraidWord:
    h = []
    for arc in sk.arcs:
        band, _ = to_band(arc, labels)
        h.append(band_halftwist(band))
    ends = [set(labels.index(x) for x in (arc.left, arc.right)) for arc in sk.arcs]
    if len(ends[0] & ends[1]) != 1:
        raise NotationError("skeleton arcs must share exactly one endpoint")
    return compose(h[0], h[1], h[0])


def expr_braid(e: Expr, labels: LabelMap) -> BraidWord:
    """The braid an expression denotes (halftwist power or skeleton twist)."""
    if isinstance(e, Skeleton):
        return power(_skeleton_halftwist(e, labels), e.exponent)
    band, exp = to_band(e, labels)
    return band_halftwist(band, exp)


def expr_skeleton_word(e: Expr, labels: LabelMap, exponent: int) -> BraidWord:
    """Halftwist of the arc or skeleton ``e`` raised to ``exponent``.

    Used to compare a printed path (lowercase) against a computed skeleton.
    """
    if isinstance(e, Skeleton):
        return power(_skeleton_halftwist(e, labels), exponent)
    band, _ = to_band(e, labels)
    return band_halftwist(band, exponent)


