"""Singular fibers of real line-and-conic arrangements, computed exactly.

Numbers are kept as ``a + b·√d`` with rational ``a, b`` and a positive
integer ``d``.  Comparisons between numbers with different radicands are
decided by squaring, so nothing here ever touches floating point except the
search for candidate factors of a quartic resultant, whose result is
re-checked by exact division.

The disk ``E`` over which the monodromy is taken is a thin neighbourhood of
the window ``[lo, hi]`` on the real axis, so only real events inside the
window count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .braid import BraidError
from .engine import SingularityRow, SingularityTable, SkeletonSpec
from .moves import Model, MoveKind
from .notation import LabelMap

__all__ = [
    "GeometryError",
    "CurveFormatError",
    "QNum",
    "Line",
    "Conic",
    "CurveSpec",
    "SingularEvent",
    "parse_curve",
    "singular_events",
    "fiber",
    "fiber_layout",
    "lefschetz_table",
    "ignored_events",
    "trace_components",
    "meeting_counts",
]


class GeometryError(BraidError):
    """Non-generic or unsupported geometry (colliding events, high degree)."""


class CurveFormatError(ValueError):
    """Unparseable curve file."""


# ------------------------------------------------------------ exact numbers


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def _sign_lin(a: Fraction, b: Fraction, d) -> int:
    """Sign of ``a + b√d`` for ``d ≥ 0``."""
    if b == 0 or d == 0:
        return _sgn(a)
    sb = _sgn(b)
    if a == 0 or _sgn(a) == sb:
        return sb
    c = a * a - b * b * d
    return _sgn(a) if c > 0 else 0 if c == 0 else sb


def _sign_two(a, b, d, c, e) -> int:
    """Sign of ``a + b√d + c√e``."""
    if c == 0 or e == 0:
        return _sign_lin(a, b, d)
    if b == 0 or d == 0:
        return _sign_lin(a, c, e)
    sb, sc = _sgn(b), _sgn(c)
    if sb == sc:
        u = sb
    else:
        diff = b * b * d - c * c * e
        u = sb if diff > 0 else 0 if diff == 0 else sc
    sa = _sgn(a)
    if sa == 0:
        return u
    if u == 0 or u == sa:
        return sa
    s = _sign_lin(a * a - b * b * d - c * c * e, -2 * b * c, d * e)
    return sa if s > 0 else 0 if s == 0 else u


def _squarefree(n: int) -> tuple[int, int]:
    """``n = k² · m`` with ``m`` free of small square factors."""
    k, m, p = 1, n, 2
    while p * p <= m and p < 10_000:
        while m % (p * p) == 0:
            m //= p * p
            k *= p
        p += 1
    r = math.isqrt(m)
    if r * r == m:
        return k * r, 1
    return k, m


@dataclass(frozen=True)
class QNum:
    """``a + b·√d`` with rational ``a, b`` and integer ``d ≥ 1``."""

    a: Fraction
    b: Fraction = Fraction(0)
    d: int = 1

    def __post_init__(self):
        a, b, d = Fraction(self.a), Fraction(self.b), int(self.d)
        if d < 1:
            raise GeometryError("radicand must be positive")
        if d == 1 or b == 0:
            a, b, d = a + b, Fraction(0), 1
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    @classmethod
    def sqrt_of(cls, q: Fraction) -> QNum:
        """``√q`` for rational ``q ≥ 0``."""
        q = Fraction(q)
        if q < 0:
            raise GeometryError("square root of a negative number")
        num = q.numerator * q.denominator
        k, m = _squarefree(num)
        return cls(Fraction(0), Fraction(k, q.denominator), m)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def _coerce(self, other) -> QNum:
        return other if isinstance(other, QNum) else QNum(Fraction(other))

    def _same(self, o: QNum) -> int:
        if self.d == 1:
            return o.d
        if o.d == 1 or o.d == self.d:
            return self.d
        raise GeometryError("arithmetic across different radicands")

    def __add__(self, other):
        o = self._coerce(other)
        return QNum(self.a + o.a, self.b + o.b, self._same(o))

    __radd__ = __add__

    def __neg__(self):
        return QNum(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        d = self._same(o)
        return QNum(self.a * o.a + self.b * o.b * d, self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.b == 0:
            if o.a == 0:
                raise ZeroDivisionError("division by zero")
            return QNum(self.a / o.a, self.b / o.a, self.d)
        d = self._same(o)
        den = o.a * o.a - o.b * o.b * d
        return self * QNum(o.a / den, -o.b / den, d)

    def sign(self) -> int:
        return _sign_lin(self.a, self.b, self.d)

    def cmp(self, other) -> int:
        o = self._coerce(other)
        return _sign_two(self.a - o.a, self.b, self.d, -o.b, o.d)

    def __lt__(self, other):
        return self.cmp(other) < 0

    def __le__(self, other):
        return self.cmp(other) <= 0

    def __gt__(self, other):
        return self.cmp(other) > 0

    def __ge__(self, other):
        return self.cmp(other) >= 0

    def __eq__(self, other):
        if not isinstance(other, (QNum, int, Fraction)):
            return NotImplemented
        return self.cmp(other) == 0

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def bounds(self, digits: int) -> tuple[Fraction, Fraction]:
        """Rational interval of width about ``10^-digits`` containing the number."""
        if self.b == 0:
            return self.a, self.a
        scale = 10**digits
        r = math.isqrt(self.d * scale * scale)
        lo, hi = Fraction(r, scale), Fraction(r + 1, scale)
        ends = sorted((self.a + self.b * lo, self.a + self.b * hi))
        return ends[0], ends[1]

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        sign = "+" if self.b > 0 else "-"
        coef = "" if abs(self.b) == 1 else f"{abs(self.b)}*"
        return f"{self.a}{sign}{coef}sqrt({self.d})"


def _rational_between(lo: QNum, hi: QNum) -> Fraction:
    """A short rational strictly between two numbers (``lo < hi``)."""
    digits = 2
    while True:
        _, a = lo.bounds(digits)
        b, _ = hi.bounds(digits)
        if a < b:
            # prefer the simplest fraction in the open interval
            mid = (a + b) / 2
            for den in (1, 2, 4, 8, 10, 16, 100, 1000):
                cand = Fraction(round(mid * den), den)
                if lo < cand < hi:
                    return cand
            return mid
        digits += 2
        if digits > 200:
            raise GeometryError("cannot separate two numbers")


# -------------------------------------------------------------- polynomials

Poly = list  # coefficients, constant term first


def _trim(p: Poly) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _padd(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return _trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def _pscale(p: Poly, c) -> Poly:
    return _trim([c * x for x in p])


def _pmul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return _trim(out)


def _pdivmod(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    p, q = _trim(p), _trim(q)
    quo = [Fraction(0)] * max(len(p) - len(q) + 1, 1)
    rem = list(p)
    while len(rem) >= len(q) and rem:
        c = rem[-1] / q[-1]
        k = len(rem) - len(q)
        quo[k] = c
        for i, b in enumerate(q):
            rem[i + k] -= c * b
        rem = _trim(rem)
    return _trim(quo), rem


def _peval(p: Poly, x):
    acc = Fraction(0) if not isinstance(x, QNum) else QNum(Fraction(0))
    for c in reversed(p):
        acc = acc * x + c
    return acc


@dataclass(frozen=True)
class Root:
    """Root of a polynomial factor: real ``QNum`` or a non-real conjugate pair."""

    value: QNum | None  # real root
    re: Fraction | None = None  # non-real pair: re ± i·√(im2)
    im2: Fraction | None = None
    multiplicity: int = 1

    @property
    def real(self) -> bool:
        return self.value is not None


def _quadratic_roots(p: Poly) -> list[Root]:
    p = _trim(p)
    if len(p) <= 1:
        return []
    if len(p) == 2:
        return [Root(QNum(-p[0] / p[1]))]
    c, b, a = p
    disc = b * b - 4 * a * c
    if disc == 0:
        return [Root(QNum(-b / (2 * a)), multiplicity=2)]
    if disc > 0:
        s = QNum.sqrt_of(disc)
        return [Root((s * -1 - b) / (2 * a)), Root((s - b) / (2 * a))]
    return [Root(None, -b / (2 * a), -disc / (4 * a * a))]


def _factor_low(p: Poly) -> list[Poly]:
    """Split a rational polynomial into factors of degree at most 2."""
    p = _trim(p)
    if len(p) <= 3:
        return [p] if len(p) > 1 else []
    coeffs = [float(c) for c in reversed(p)]
    roots = np.roots(coeffs)
    # rational roots first
    for r in roots:
        if abs(r.imag) < 1e-7:
            for den in (1, 2, 3, 4, 5, 6, 8, 9, 10, 12, 16, 20, 25, 100):
                cand = Fraction(round(r.real * den), den)
                q, rem = _pdivmod(p, [-cand, Fraction(1)])
                if not rem:
                    return [[-cand, Fraction(1)]] + _factor_low(q)
            cand = Fraction(r.real).limit_denominator(10**6)
            q, rem = _pdivmod(p, [-cand, Fraction(1)])
            if not rem:
                return [[-cand, Fraction(1)]] + _factor_low(q)
    # quadratic factors from root pairs
    idx = range(len(roots))
    for i in idx:
        for j in idx:
            if j <= i:
                continue
            s = roots[i] + roots[j]
            pr = roots[i] * roots[j]
            if abs(s.imag) > 1e-7 or abs(pr.imag) > 1e-7:
                continue
            for lim in (100, 10**4, 10**6):
                quad = [Fraction(pr.real).limit_denominator(lim), -Fraction(s.real).limit_denominator(lim), Fraction(1)]
                q, rem = _pdivmod(p, quad)
                if not rem:
                    return [quad] + _factor_low(q)
    raise GeometryError(f"polynomial of degree {len(p) - 1} has no factors of degree <= 2 over Q")


def _roots(p: Poly) -> list[Root]:
    out: list[Root] = []
    for f in _factor_low(p):
        out.extend(_quadratic_roots(f))
    # merge repeated roots from separate factors
    merged: list[Root] = []
    for r in out:
        for i, m in enumerate(merged):
            if r.real and m.real and r.value == m.value:
                merged[i] = Root(m.value, multiplicity=m.multiplicity + r.multiplicity)
                break
            if not r.real and not m.real and (r.re, r.im2) == (m.re, m.im2):
                merged[i] = Root(None, m.re, m.im2, m.multiplicity + r.multiplicity)
                break
        else:
            merged.append(r)
    return merged


# ------------------------------------------------------------- components


@dataclass(frozen=True)
class Line:
    """``y = a·x + b``."""

    a: Fraction
    b: Fraction
    name: str = ""

    def y_poly(self) -> tuple[Poly, Poly, Poly]:
        # as 0·y² + 1·y + (−a x − b)
        return [], [Fraction(1)], _trim([-self.b, -self.a])


@dataclass(frozen=True)
class Conic:
    """``A x² + B x y + C y² + D x + E y + F = 0`` with ``C ≠ 0``."""

    A: Fraction
    B: Fraction
    C: Fraction
    D: Fraction
    E: Fraction
    F: Fraction
    name: str = ""

    def __post_init__(self):
        if self.C == 0:
            raise CurveFormatError("conic needs a y² term (C != 0) so every fiber has two points")

    def y_poly(self) -> tuple[Poly, Poly, Poly]:
        """Coefficients of y², y, 1 as polynomials in x."""
        return [self.C], _trim([self.E, self.B]), _trim([self.F, self.D, self.A])

    def discriminant(self) -> Poly:
        c2, c1, c0 = self.y_poly()
        return _padd(_pmul(c1, c1), _pscale(_pmul(c2, c0), -4))

    def center(self, x):
        """Mean of the two fiber roots at ``x``."""
        return (self.B * x + self.E) / (-2 * self.C)

    def is_degenerate(self) -> bool:
        A, B, C, D, E, F = self.A, self.B, self.C, self.D, self.E, self.F
        det = A * (C * F - E * E / 4) - B / 2 * (B / 2 * F - E * D / 4) + D / 2 * (B / 2 * E / 2 - C * D / 2)
        return det == 0


Component = Line | Conic


@dataclass(frozen=True)
class CurveSpec:
    components: tuple[Component, ...]
    window: tuple[Fraction, Fraction] | None = None

    def __post_init__(self):
        seen = []
        for c in self.components:
            key = _normal_key(c)
            if key in seen:
                raise CurveFormatError(f"duplicate component {_describe(c)}")
            seen.append(key)
            if isinstance(c, Conic) and c.is_degenerate():
                raise CurveFormatError(f"degenerate conic {_describe(c)}")
        if self.window is not None and not self.window[0] < self.window[1]:
            raise CurveFormatError("window needs lo < hi")

    @property
    def degree(self) -> int:
        return sum(1 if isinstance(c, Line) else 2 for c in self.components)

    def label(self, i: int) -> str:
        return self.components[i].name or f"c{i + 1}"


def _describe(c: Component) -> str:
    if isinstance(c, Line):
        body = f"line {c.a} {c.b}"
    else:
        body = "conic " + " ".join(str(x) for x in (c.A, c.B, c.C, c.D, c.E, c.F))
    return f"{c.name} ({body})" if c.name else body


def _normal_key(c: Component):
    if isinstance(c, Line):
        return ("line", c.a, c.b)
    coeffs = (c.A, c.B, c.C, c.D, c.E, c.F)
    lead = next(x for x in coeffs if x != 0)
    return ("conic",) + tuple(x / lead for x in coeffs)


def _frac(tok: str) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise CurveFormatError(f"bad rational {tok!r}") from None


def parse_curve(text: str) -> CurveSpec:
    """Curve file: ``line a b [name]``, ``conic A B C D E F [name]``, ``window lo hi``."""
    comps: list[Component] = []
    window = None
    for num, raw in enumerate(text.splitlines(), start=1):
        ln = raw.split("#", 1)[0].strip()
        if not ln:
            continue
        tok = ln.split()
        kind = tok[0]
        if kind == "line" and len(tok) in (3, 4):
            comps.append(Line(_frac(tok[1]), _frac(tok[2]), tok[3] if len(tok) == 4 else ""))
        elif kind == "conic" and len(tok) in (7, 8):
            vals = [_frac(t) for t in tok[1:7]]
            comps.append(Conic(*vals, name=tok[7] if len(tok) == 8 else ""))
        elif kind == "window" and len(tok) == 3:
            window = (_frac(tok[1]), _frac(tok[2]))
        else:
            raise CurveFormatError(f"line {num}: cannot parse {raw.strip()!r}")
    if not comps:
        raise CurveFormatError("no components")
    return CurveSpec(tuple(comps), window)


# ------------------------------------------------------------ fibers


@dataclass(frozen=True)
class FiberPoint:
    component: int
    branch: int  # 0 for lines, -1/+1 lower/upper branch of a conic
    y: QNum


def _conic_roots(c: Conic, x: Fraction) -> tuple[list[QNum], Fraction | None]:
    c2, c1, c0 = c.y_poly()
    a, b, cc = _peval(c2, x), _peval(c1, x), _peval(c0, x)
    disc = b * b - 4 * a * cc
    if disc < 0:
        return [], -b / (2 * a)
    if disc == 0:
        raise GeometryError(f"x = {x} is a branch point of {c.name or 'a conic'}")
    s = QNum.sqrt_of(disc)
    r1, r2 = (s * -1 - b) / (2 * a), (s - b) / (2 * a)
    lo, hi = (r1, r2) if r1 < r2 else (r2, r1)
    return [lo, hi], None


def _fiber_points(curve: CurveSpec, x: Fraction) -> tuple[list[FiberPoint], list[tuple[Fraction, int]]]:
    pts: list[FiberPoint] = []
    pairs: list[tuple[Fraction, int]] = []
    for i, c in enumerate(curve.components):
        if isinstance(c, Line):
            pts.append(FiberPoint(i, 0, QNum(c.a * x + c.b)))
        else:
            roots, re_part = _conic_roots(c, x)
            if roots:
                pts += [FiberPoint(i, -1, roots[0]), FiberPoint(i, 1, roots[1])]
            else:
                pairs.append((re_part, i))
    pts.sort(key=_cmp_key(lambda p: p.y))
    for p, q in zip(pts, pts[1:]):
        if p.y == q.y:
            raise GeometryError(f"x = {x} is a singular fiber")
    return pts, pairs


def _cmp_key(get):
    import functools

    return functools.cmp_to_key(lambda u, v: get(u).cmp(get(v)))


def fiber(curve: CurveSpec, x) -> tuple[list[QNum], int]:
    """Sorted real fiber points at rational ``x`` and the number of non-real points."""
    pts, pairs = _fiber_points(curve, Fraction(x))
    return [p.y for p in pts], 2 * len(pairs)


def fiber_layout(curve: CurveSpec, x) -> list[tuple[str, bool]]:
    """Component names over ``x`` ordered by real part; ``True`` marks a conjugate pair."""
    pts, pairs = _fiber_points(curve, Fraction(x))
    items = [(p.y, curve.label(p.component), False) for p in pts]
    items += [(QNum(re_part), curve.label(i), True) for re_part, i in pairs]
    items.sort(key=_cmp_key(lambda t: t[0]))
    return [(name, is_pair) for _, name, is_pair in items]


# ------------------------------------------------------------ events


@dataclass(frozen=True)
class Branch:
    component: int
    side: int  # 0 for a line, ±1 for the conic branch through the point


@dataclass
class SingularEvent:
    x: QNum
    kind: str  # "branch", "tangent" or "cross"
    branches: tuple[Branch, ...]
    y: QNum | None = None
    real_side: int = 0  # branch points: +1 real to the right, -1 to the left

    def components(self) -> tuple[int, ...]:
        return tuple(sorted({b.component for b in self.branches}))

    def type_for(self, base: str) -> str:
        if self.kind == "cross":
            return "c"
        if self.kind == "tangent":
            return "b"
        toward_base = 1 if base == "right" else -1
        return "a1" if self.real_side == toward_base else "a2"


def _branch_of(c: Component, i: int, x: QNum, y: QNum) -> Branch:
    if isinstance(c, Line):
        return Branch(i, 0)
    s = (y - c.center(x)).sign()
    if s == 0:
        raise GeometryError(f"{c.name or 'conic'} meets another component at a branch point")
    return Branch(i, s)


def _common_y(c1: Component, c2: Component, x: QNum) -> QNum:
    """The y shared by two components over ``x`` (a simple common root)."""
    p2, p1, p0 = c1.y_poly()
    q2, q1, q0 = c2.y_poly()
    a2 = _peval(p2, x) if p2 else QNum(Fraction(0))
    b2 = _peval(q2, x) if q2 else QNum(Fraction(0))
    # eliminate y²: b2·P − a2·Q is linear in y
    lin = b2 * _peval(p1, x) - a2 * _peval(q1, x) if (p1 or q1) else QNum(Fraction(0))
    const = b2 * _peval(p0, x) - a2 * _peval(q0, x) if (p0 or q0) else QNum(Fraction(0))
    if isinstance(c1, Line) or isinstance(c2, Line):
        line = c1 if isinstance(c1, Line) else c2
        return line.a * x + line.b
    if lin.sign() == 0:
        raise GeometryError("two conics share both fiber points over one x")
    return (const * -1) / lin


def _pair_polys(c1: Component, c2: Component) -> Poly:
    """Resultant in y of the two defining polynomials, as a polynomial in x."""
    if isinstance(c1, Line) and isinstance(c2, Line):
        return _trim([c1.b - c2.b, c1.a - c2.a])
    if isinstance(c1, Line):
        c1, c2 = c2, c1
    if isinstance(c2, Line):
        c2_, c1_, c0_ = c1.y_poly()
        y = [c2.b, c2.a]
        return _padd(_padd(_pmul(c2_, _pmul(y, y)), _pmul(c1_, y)), c0_)
    p2, p1, p0 = c1.y_poly()
    q2, q1, q0 = c2.y_poly()
    u = _padd(_pmul(p2, q0), _pscale(_pmul(q2, p0), -1))
    v = _padd(_pmul(p2, q1), _pscale(_pmul(q2, p1), -1))
    w = _padd(_pmul(p1, q0), _pscale(_pmul(q1, p0), -1))
    return _padd(_pmul(u, u), _pscale(_pmul(v, w), -1))


@dataclass(frozen=True)
class OffAxis:
    """A non-real singular fiber ``re ± i·√im2``."""

    re: Fraction
    im2: Fraction
    components: tuple[int, ...]


def _raw_events(curve: CurveSpec) -> tuple[list[SingularEvent], list[OffAxis]]:
    comps = curve.components
    events: list[SingularEvent] = []
    off: list[OffAxis] = []
    for i, c in enumerate(comps):
        if isinstance(c, Conic):
            disc = c.discriminant()
            for r in _roots(disc):
                if not r.real:
                    off.append(OffAxis(r.re, r.im2, (i,)))
                    continue
                if r.multiplicity > 1:
                    raise GeometryError(f"{curve.label(i)} has a double branch point")
                deriv = _trim([k * disc[k] for k in range(1, len(disc))])
                side = _peval(deriv, r.value).sign()
                events.append(
                    SingularEvent(r.value, "branch", (Branch(i, -1), Branch(i, 1)), c.center(r.value), side)
                )
    for i in range(len(comps)):
        for k in range(i + 1, len(comps)):
            poly = _pair_polys(comps[i], comps[k])
            if not poly:
                raise GeometryError(f"{curve.label(i)} and {curve.label(k)} coincide")
            for r in _roots(poly):
                if not r.real:
                    off.append(OffAxis(r.re, r.im2, (i, k)))
                    continue
                y = _common_y(comps[i], comps[k], r.value)
                brs = (_branch_of(comps[i], i, r.value, y), _branch_of(comps[k], k, r.value, y))
                if r.multiplicity == 2 and (isinstance(comps[i], Line) or isinstance(comps[k], Line)):
                    events.append(SingularEvent(r.value, "tangent", brs, y))
                elif r.multiplicity == 1:
                    events.append(SingularEvent(r.value, "cross", brs, y))
                else:
                    raise GeometryError(
                        f"{curve.label(i)} and {curve.label(k)} meet with multiplicity {r.multiplicity}"
                    )
    return events, off


def _merge(events: list[SingularEvent], curve: CurveSpec) -> list[SingularEvent]:
    """Group events over the same x; several crossings at one point merge."""
    events = sorted(events, key=_cmp_key(lambda e: e.x))
    out: list[SingularEvent] = []
    for e in events:
        if out and out[-1].x == e.x:
            prev = out[-1]
            if prev.kind == "cross" and e.kind == "cross" and prev.y == e.y:
                merged = tuple(dict.fromkeys(prev.branches + e.branches))
                out[-1] = SingularEvent(prev.x, "cross", merged, prev.y)
                continue
            names = ", ".join(curve.label(i) for i in prev.components() + e.components())
            raise GeometryError(f"two singular points share x = {e.x} (components {names})")
        out.append(e)
    return out


def _window(curve: CurveSpec, events: Sequence[SingularEvent]) -> tuple[Fraction, Fraction]:
    if curve.window is not None:
        return curve.window
    if not events:
        return Fraction(-1), Fraction(1)
    lo = events[0].x.bounds(2)[0]
    hi = events[-1].x.bounds(2)[1]
    return Fraction(math.floor(lo) - 1), Fraction(math.ceil(hi) + 1)


def singular_events(curve: CurveSpec) -> list[SingularEvent]:
    """Real singular fibers inside the window, sorted by x ascending."""
    events = _merge(_raw_events(curve)[0], curve)
    lo, hi = _window(curve, events)
    inside = []
    for e in events:
        if e.x == lo or e.x == hi:
            raise GeometryError(f"singular fiber on the window boundary x = {e.x}")
        if lo < e.x < hi:
            inside.append(e)
    return inside


def ignored_events(curve: CurveSpec) -> tuple[list[SingularEvent], list[OffAxis]]:
    """Real events outside the window and the non-real ones.

    The disk ``E`` is a thin neighbourhood of the window interval, so neither
    kind lies in it.
    """
    raw, off = _raw_events(curve)
    events = _merge(raw, curve)
    lo, hi = _window(curve, events)
    return [e for e in events if not lo < e.x < hi], off


# --------------------------------------------------------- Lefschetz table


def _gaps(events: Sequence[SingularEvent], lo: Fraction, hi: Fraction) -> list[Fraction]:
    """Rational sample points: one left of all events, one in each gap, one right."""
    marks = [QNum(lo)] + [e.x for e in events] + [QNum(hi)]
    return [_rational_between(a, b) for a, b in zip(marks, marks[1:])]


def _cluster_slots(e: SingularEvent, pts: list[FiberPoint]) -> list[int]:
    slots = []
    for b in e.branches:
        for s, p in enumerate(pts, start=1):
            if p.component == b.component and (b.side == 0 or p.branch == b.side):
                slots.append(s)
    if len(slots) != len(e.branches):
        raise GeometryError(f"event at x = {e.x}: branches not all real on the sample fiber")
    slots.sort()
    if slots != list(range(slots[0], slots[-1] + 1)):
        raise GeometryError(f"event at x = {e.x}: its branches are not consecutive in the fiber")
    return slots


def _pair_order(curve: CurveSpec, x, pairs: Sequence[int]) -> list[int]:
    """Components with a complex pair over ``x``, by real part."""
    keyed = [(curve.components[i].center(x), i) for i in pairs]
    keyed.sort(key=_cmp_key(lambda t: t[0] if isinstance(t[0], QNum) else QNum(t[0])))
    return [i for _, i in keyed]


def lefschetz_table(curve: CurveSpec, base: str = "right", rows: int | None = None) -> SingularityTable:
    """Table of singular fibers ordered from the base point outwards.

    Rows are numbered as seen from the right, so the leftmost fiber is row
    ``len(events)`` whichever side the base point lies on.
    """
    if base not in ("right", "left"):
        raise GeometryError("base must be right or left")
    events = singular_events(curve)
    lo, hi = _window(curve, _merge(_raw_events(curve)[0], curve))
    samples = _gaps(events, lo, hi)  # samples[i] left of event i, samples[i+1] right
    n = curve.degree
    count = len(events)
    order = list(range(count - 1, -1, -1)) if base == "right" else list(range(count))
    base_x = samples[-1] if base == "right" else samples[0]
    _, base_pairs = _fiber_points(curve, base_x)
    model = Model(n, len(base_pairs))
    out_rows = []
    for pos in order[: rows if rows is not None else count]:
        e = events[pos]
        near_x = samples[pos + 1] if base == "right" else samples[pos]
        far_x = samples[pos] if base == "right" else samples[pos + 1]
        t = e.type_for(base)
        home = far_x if t == "a2" else near_x
        pts, _ = _fiber_points(curve, home)
        slots = _cluster_slots(e, pts)
        k, l = slots[0], slots[-1]
        j = count - pos
        if t == "c":
            delta = MoveKind("block", k, l, 1)
        elif t == "b":
            delta = MoveKind("block", k, l, 2)
        else:
            delta = _level_move(curve, e, t, k, near_x, far_x)
        skel = SkeletonSpec.complex_chord(k) if t == "a2" else SkeletonSpec.chord(k, l)
        out_rows.append(SingularityRow(j, t, (k, l), delta, skel))
    labels = _base_labels(curve, base_x)
    return SingularityTable(n, model, tuple(out_rows), labels, base)


def _level_move(curve: CurveSpec, e: SingularEvent, t: str, k: int, near_x, far_x) -> MoveKind:
    comp = e.branches[0].component
    complex_x = far_x if t == "a1" else near_x
    _, pairs = _fiber_points(curve, complex_x)
    ids = [i for _, i in pairs]
    count = len(ids)
    # order the pairs by real part at the event itself
    ranked = _pair_order(curve, e.x, ids)
    rank = ranked.index(comp)
    if count == 1:
        return MoveKind("I2R" if t == "a1" else "RI2", k)
    if count == 2:
        if t == "a1":
            return MoveKind("I4I2'" if rank == 1 else "I4I2", k)
        if rank != 0:
            raise GeometryError(f"event at x = {e.x}: a new pair right of the old one is not modelled")
        return MoveKind("I2I4", k)
    if count == 3:
        if rank != 2:
            raise GeometryError(f"event at x = {e.x}: only the rightmost of three pairs may change level")
        return MoveKind("I6I4" if t == "a1" else "I4I6", k)
    raise GeometryError(f"complex level {2 * count} is not supported")


def _base_labels(curve: CurveSpec, x: Fraction) -> LabelMap:
    """Slot-numbered labels of the base fiber; pairs sit between their real neighbours."""
    pts, pairs = _fiber_points(curve, x)
    items: list[tuple[QNum, int]] = [(p.y, 0) for p in pts]
    for re_part, i in pairs:
        items.append((QNum(re_part), 1))
    items.sort(key=_cmp_key(lambda t: t[0]))
    labels = []
    slot = 1
    for _, is_pair in items:
        if is_pair:
            xpos = Fraction(2 * slot + 1, 2)
            labels.append((str(slot), (xpos, Fraction(1))))
            labels.append((str(slot + 1), (xpos, Fraction(-1))))
            slot += 2
        else:
            labels.append((str(slot), (Fraction(slot), Fraction(0))))
            slot += 1
    return LabelMap.from_points(labels)



# ------------------------------------------------------- component tracing

# where the pair that changes level sits among the complex pairs (left to right)
_PAIR_INDEX = {"I2R": 0, "RI2": 0, "I4I2": 0, "I4I2'": 1, "I2I4": 0, "I6I4": 2, "I4I6": 2}


@dataclass(frozen=True)
class Meeting:
    j: int
    sing_type: str
    names: tuple[str, ...]


def trace_components(
    table: SingularityTable, reals: Sequence[str], pairs: Sequence[str] = ()
) -> tuple[list[Meeting], list[str], list[str]]:
    """Follow component names from the base fiber through the rows of a table.

    ``reals`` names the real fiber points bottom to top, ``pairs`` the
    complex pairs by real part.  Returns which components meet at each row
    and the names left at the far end.  Purely combinatorial: it needs no
    equations, so it can test whether a table is consistent with a claimed
    list of components.
    """
    state = list(reals)
    cplx = list(pairs)
    out: list[Meeting] = []
    for row in table.rows:
        k, l = row.lpair
        t = row.sing_type
        if t in ("c", "b"):
            if l > len(state):
                raise GeometryError(f"row {row.j}: slot {l} beyond {len(state)} real points")
            names = tuple(state[k - 1 : l])
            if t == "c":
                state[k - 1 : l] = reversed(state[k - 1 : l])
            out.append(Meeting(row.j, t, names))
        elif t == "a1":
            a, b = state[k - 1], state[k]
            if a != b:
                raise GeometryError(f"row {row.j}: branch point joins {a} and {b}")
            del state[k - 1 : k + 1]
            cplx.insert(min(_PAIR_INDEX[row.delta.kind], len(cplx)), a)
            out.append(Meeting(row.j, t, (a,)))
        else:
            name = cplx.pop(min(_PAIR_INDEX[row.delta.kind], len(cplx) - 1))
            state[k - 1 : k - 1] = [name, name]
            out.append(Meeting(row.j, t, (name,)))
    return out, state, cplx


def meeting_counts(meetings: Sequence[Meeting]) -> dict[tuple[str, str], int]:
    """Intersection multiplicities per pair of components (tangency counts 2)."""
    counts: dict[tuple[str, str], int] = {}
    for m in meetings:
        if m.sing_type not in ("b", "c"):
            continue
        weight = 2 if m.sing_type == "b" else 1
        names = m.names
        for i in range(len(names)):
            for k in range(i + 1, len(names)):
                key = tuple(sorted((names[i], names[k])))
                counts[key] = counts.get(key, 0) + weight
    return counts
