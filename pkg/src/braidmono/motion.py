"""Braid words of explicit point motions in the plane.

Every geometric object in the package (model transitions, decorated paths,
the base-point identification) is reduced to a motion of punctures along
straight segments with exact rational coordinates.  The word is read off
by sweeping a slightly tilted projection: two punctures exchange slots when
their projections cross, and the one travelling rightwards passes below the
other for a positive letter.

The tilt ``TILT`` makes conjugate pairs ``a ± bi`` project to distinct
slots, the ``+i`` member on the left.  That choice is the flattening used
for every configuration with complex points.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .braid import Band, BraidError, BraidWord, invert

__all__ = [
    "TILT",
    "Point",
    "pt",
    "MotionError",
    "slot_order",
    "motion_word",
    "Motion",
    "path_band",
]

Point = tuple[Fraction, Fraction]
TILT = Fraction(1, 1009)


class MotionError(BraidError):
    """Degenerate motion: collision or non-generic projection."""


def pt(x, y=0) -> Point:
    return (Fraction(x), Fraction(y))


def _proj(z: Point) -> Fraction:
    return z[0] - TILT * z[1]


def _height(z: Point) -> Fraction:
    return z[1] + TILT * z[0]


def slot_order(points: Sequence[Point]) -> list[int]:
    """Puncture indices sorted by tilted projection; raises on ties."""
    keys = [_proj(z) for z in points]
    order = sorted(range(len(points)), key=keys.__getitem__)
    for a, b in zip(order, order[1:]):
        if keys[a] == keys[b]:
            raise MotionError(f"punctures {a} and {b} share a projection at {points[a]}")
    return order


def _lerp(a: Point, b: Point, t: Fraction) -> Point:
    return (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))


def _segment_letters(start, end, order):
    """Crossings while every puncture moves straight from ``start`` to ``end``.

    ``order`` (slot -> puncture) is updated in place.
    """
    n = len(start)
    p0 = [_proj(z) for z in start]
    p1 = [_proj(z) for z in end]
    events: dict[Fraction, list[tuple[int, int]]] = {}
    for a in range(n):
        for b in range(a + 1, n):
            d0, d1 = p0[a] - p0[b], p1[a] - p1[b]
            if d1 == 0:
                raise MotionError(f"punctures {a}, {b} end a segment with equal projection")
            if (d0 > 0) != (d1 > 0):
                events.setdefault(d0 / (d0 - d1), []).append((a, b))
    letters = []
    for t in sorted(events):
        pairs = events[t]
        touched = [x for ab in pairs for x in ab]
        if len(set(touched)) != len(touched):
            raise MotionError(f"three punctures align at time {t}")
        for a, b in pairs:
            slot = {pz: s for s, pz in enumerate(order)}
            sa, sb = slot[a], slot[b]
            if abs(sa - sb) != 1:
                raise MotionError(f"non-adjacent crossing of {a}, {b} at time {t}")
            left, right = (a, b) if sa < sb else (b, a)
            hl = _height(_lerp(start[left], end[left], t))
            hr = _height(_lerp(start[right], end[right], t))
            if hl == hr:
                raise MotionError(f"punctures {a} and {b} collide at time {t}")
            i = min(sa, sb)
            letters.append((i + 1, 1 if hl < hr else -1))
            order[i], order[i + 1] = order[i + 1], order[i]
    return letters


def motion_word(frames: Sequence[Sequence[Point]]) -> BraidWord:
    """Braid of a piecewise-linear motion given by successive configurations."""
    if not frames:
        raise MotionError("empty motion")
    n = len(frames[0])
    order = slot_order(frames[0])
    letters: list[tuple[int, int]] = []
    for a, b in zip(frames, frames[1:]):
        if len(b) != n:
            raise MotionError("frames disagree on the number of punctures")
        letters.extend(_segment_letters(a, b, order))
    slot_order(frames[-1])
    return BraidWord(n, tuple(letters))


class Motion:
    """Builder for piecewise-linear motions, one segment per ``step``."""

    def __init__(self, points: Iterable[Point]):
        self.frames: list[list[Point]] = [list(points)]

    @property
    def current(self) -> list[Point]:
        return list(self.frames[-1])

    def step(self, moves: dict[int, Point]) -> Motion:
        cur = self.current
        for k, z in moves.items():
            cur[k] = (Fraction(z[0]), Fraction(z[1]))
        self.frames.append(cur)
        return self

    def word(self) -> BraidWord:
        return motion_word(self.frames)


def rotate_pair(m: Motion, a: int, b: int, ccw: bool = True) -> Motion:
    """Exchange punctures ``a`` and ``b`` by a half turn about their midpoint."""
    za, zb = m.current[a], m.current[b]
    cx, cy = (za[0] + zb[0]) / 2, (za[1] + zb[1]) / 2
    dx, dy = (zb[0] - za[0]) / 2, (zb[1] - za[1]) / 2
    # quarter-turn offset of the half-vector
    qx, qy = (dy, -dx) if ccw else (-dy, dx)
    m.step({a: (cx - dx + qx, cy - dy + qy), b: (cx + dx - qx, cy + dy - qy)})
    m.step({a: (cx + dx + qx, cy + dy + qy), b: (cx - dx - qx, cy - dy - qy)})
    m.step({a: zb, b: za})
    return m


def path_band(points: Sequence[Point], a: int, b: int, route: Sequence[Point] = ()) -> Band:
    """Band of the arc from puncture ``a`` to puncture ``b`` through ``route``.

    The halftwist is realised as a motion: ``b`` slides back along the arc
    until it sits next to ``a``, the two swap counterclockwise, and the slide
    is undone.  The slide is the band's transport (inverted).
    """
    pts = [pt(*z) for z in points]
    route = [pt(*z) for z in route]
    za = pts[a]
    v1 = route[0] if route else pts[b]
    dx, dy = v1[0] - za[0], v1[1] - za[1]
    scale = max(abs(dx), abs(dy))
    if scale == 0:
        raise MotionError("arc starts with a zero-length segment")
    # keep the final swap clear of every other puncture's projection
    pa = _proj(za)
    clear = min((abs(_proj(z) - pa) for i, z in enumerate(pts) if i not in (a, b)), default=Fraction(1))
    s = min(Fraction(1, 2), Fraction(1, 200) / scale, clear / (8 * scale))
    near = (za[0] + s * dx, za[1] + s * dy)
    slide = Motion(pts)
    for v in reversed(route):
        slide.step({b: v})
    slide.step({b: near})
    w_slide = slide.word()
    swap = rotate_pair(Motion(slide.current), a, b).word()
    if len(swap) != 1 or swap.letters[0][1] != 1:
        raise MotionError(f"local swap produced {swap.letters}, expected one positive letter")
    r = swap.letters[0][0]
    return Band(r, r + 1, invert(w_slide))
