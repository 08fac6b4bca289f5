"""Braid monodromy from a table of singular fibers.

A table lists the singular fibers in order of increasing distance from the
base point.  Row ``i`` carries its Lefschetz pair, its singularity type and
the move ``δ`` that carries the model on its far side to the model on its
near side.  The local vanishing cycle of row ``i`` is its model skeleton
pushed through ``δ`` of every row strictly closer to the base point, then
through the identification of the base model with the labelled fiber.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .braid import (
    Band,
    BraidError,
    BraidWord,
    band_halftwist,
    block_halftwist,
    compose,
    conjugate,
    equal,
    format_word,
    invert,
    power,
)
from .motion import Motion
from .moves import Model, MoveError, MoveKind, format_move, model_points, parse_move, realize_move
from .notation import DecoratedExpr, LabelMap, Skeleton, expr_braid, expr_skeleton_word, parse, render, to_band

__all__ = [
    "EngineError",
    "TableFormatError",
    "SkeletonSpec",
    "SingularityRow",
    "SingularityTable",
    "Factor",
    "epsilon_rule",
    "model_sequence",
    "base_identification",
    "lvc",
    "lvc_trace",
    "TraceStep",
    "monodromy_factor",
    "braid_monodromy",
    "reversed_monodromy",
    "rotate_half",
    "conjugate_factorization",
    "parse_table",
    "format_table",
    "format_factor",
    "pretty_factor",
    "model_labels",
    "parse_table_blocks",
    "assemble_mirror",
    "parse_rho",
    "run_file",
    "Expected",
    "Verdict",
    "parse_expected",
    "expected_word",
    "check_factors",
]

SING_TYPES = ("a1", "a2", "b", "c", "cusp")
_EPSILON = {"a1": 1, "a2": 1, "b": 4, "c": 2, "cusp": 3}


class EngineError(BraidError):
    """Inconsistent table: level threading or row/move mismatch."""


class TableFormatError(EngineError):
    """Table text that cannot be parsed."""


def epsilon_rule(sing_type: str) -> int:
    """Exponent of the local monodromy for a singularity type."""
    try:
        return _EPSILON[sing_type]
    except KeyError:
        raise EngineError(f"unknown singularity type {sing_type!r}") from None


@dataclass(frozen=True)
class SkeletonSpec:
    """Model skeleton of a row.

    ``chord`` is the real segment through slots ``k..l``.  ``complex`` is the
    short chord ``<k, k+1>`` between the two real points that become a
    conjugate pair; it is drawn in the far-side model and carried across by
    the row's own move.
    """

    kind: str
    k: int
    l: int

    @classmethod
    def chord(cls, k: int, l: int) -> SkeletonSpec:
        return cls("chord", k, l)

    @classmethod
    def complex_chord(cls, k: int) -> SkeletonSpec:
        return cls("complex", k, k + 1)

    def __str__(self):
        return f"P{self.k}" if self.kind == "complex" else f"({self.k},{self.l})"


@dataclass(frozen=True)
class SingularityRow:
    j: int
    sing_type: str
    lpair: tuple[int, int]
    delta: MoveKind
    skeleton: SkeletonSpec | None = None

    def __post_init__(self):
        if self.sing_type not in SING_TYPES:
            raise EngineError(f"row {self.j}: unknown type {self.sing_type!r}")
        k, l = self.lpair
        if not 1 <= k < l:
            raise EngineError(f"row {self.j}: bad Lefschetz pair {self.lpair}")
        if self.sing_type in ("a1", "a2", "b") and l != k + 1:
            raise EngineError(f"row {self.j}: type {self.sing_type} needs l = k + 1")
        if self.skeleton is None:
            sk = SkeletonSpec.complex_chord(k) if self.sing_type == "a2" else SkeletonSpec.chord(k, l)
            object.__setattr__(self, "skeleton", sk)
        self._check_delta()

    def _check_delta(self):
        d, t = self.delta, self.sing_type
        lowering = d.kind in ("I2R", "I4I2", "I4I2'", "I6I4")
        raising = d.kind in ("RI2", "I2I4", "I4I6")
        expected = {
            "b": d.kind == "block" and d.r == 2 and (d.k, d.l) == self.lpair,
            "c": d.kind == "block" and d.r == 1 and (d.k, d.l) == self.lpair,
            "cusp": d.kind == "block" and d.r == 3 and (d.k, d.l) == self.lpair,
            "a1": lowering and d.k == self.lpair[0],
            "a2": raising and d.k == self.lpair[0],
        }[t]
        if not expected:
            raise EngineError(f"row {self.j}: move {format_move(d)} does not fit type {t} at {self.lpair}")

    @property
    def epsilon(self) -> int:
        return epsilon_rule(self.sing_type)


@dataclass(frozen=True)
class SingularityTable:
    """Rows ordered from the base point outwards.

    ``model`` is the model at the base point.  ``labels`` names the punctures
    of the base fiber and fixes their positions; without it the base fiber is
    the model itself.  ``base`` records on which side of the singular fibers
    the base point lies (informational: the accumulation is the same).
    """

    n: int
    model: Model
    rows: tuple[SingularityRow, ...] = ()
    labels: LabelMap | None = None
    base: str = "right"
    directives: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.model.n != self.n:
            raise EngineError("model strand count differs from table n")
        if self.labels is not None and self.labels.n != self.n:
            raise EngineError("label map size differs from table n")
        if self.base not in ("right", "left"):
            raise EngineError(f"base must be right or left, got {self.base!r}")
        model_sequence(self)

    def row_index(self, j: int) -> int:
        for i, r in enumerate(self.rows):
            if r.j == j:
                return i
        raise EngineError(f"no row j={j}")


def model_sequence(table: SingularityTable) -> list[Model]:
    """Models between consecutive rows; entry ``i`` is the near side of row ``i``.

    The list has one more entry than there are rows.  Raises on a move whose
    target level does not match the model it must land in.
    """
    models = [table.model]
    for row in table.rows:
        near = models[-1]
        d = row.delta
        far = near if d.source_pairs is None else Model(table.n, d.source_pairs)
        try:
            _, landed = realize_move(d, far)
        except MoveError as exc:
            raise EngineError(f"row {row.j}: {exc}") from None
        if landed != near:
            raise EngineError(
                f"row {row.j}: {format_move(d)} lands in {landed.name}, expected {near.name}"
            )
        home = far if row.skeleton.kind == "complex" else near
        if row.skeleton.l > home.real_count:
            raise EngineError(f"row {row.j}: skeleton {row.skeleton} reaches complex points")
        models.append(far)
    return models


# ----------------------------------------------------- base identification


def model_labels(model: Model) -> LabelMap:
    """Labels of a model's punctures: reals by position, pairs as ``x+i`` etc."""

    def imag(y: Fraction) -> str:
        mag = abs(y)
        core = "i" if mag == 1 else f"{mag}i" if mag.denominator == 1 else f"i/{mag.denominator}" if mag.numerator == 1 else f"{mag}i"
        return ("+" if y > 0 else "-") + core

    items = []
    for x, y in model_points(model):
        name = str(x) if y == 0 else f"{x}{imag(y)}"
        items.append((name, (x, y)))
    return LabelMap.from_points(items)


def base_identification(model: Model, labels: LabelMap) -> BraidWord:
    """Braid carrying the model onto the labelled base fiber.

    Real labels go to the real model points in order, conjugate pairs to the
    model pairs in order of real part.  Reals move first along the axis,
    then each pair travels straight to its place.
    """
    coords = labels.coords
    reals = sorted((i for i, z in enumerate(coords) if z[1] == 0), key=lambda i: coords[i][0])
    uppers = sorted((i for i, z in enumerate(coords) if z[1] > 0), key=lambda i: coords[i][0])
    lowers = {coords[i]: i for i, z in enumerate(coords) if z[1] < 0}
    if len(reals) != model.real_count or len(uppers) != model.complex_pairs:
        raise EngineError(
            f"labels have {len(reals)} real and {len(uppers)} complex-pair points, "
            f"model {model.name} needs {model.real_count} and {model.complex_pairs}"
        )
    src = model_points(model)
    m = Motion(src)
    m.step({s: coords[i] for s, i in enumerate(reals)})
    for p, up in enumerate(uppers):
        x, y = coords[up]
        low = lowers.get((x, -y))
        if low is None:
            raise EngineError(f"label {labels.labels[up]} has no conjugate partner")
        s = model.real_count + 2 * p
        m.step({s: coords[up], s + 1: coords[low]})
    # slot order of the moved model points equals the label map's slot order
    return m.word()


# --------------------------------------------------------------- factors


@dataclass(frozen=True)
class Factor:
    """``transport⁻¹ · Δ<k,l>^ε · transport`` for row ``origin_j``.

    For ``l = k + 1`` this is the ε-th power of the halftwist of ``band``.
    Longer skeletons (several branches meeting at one point) use the block
    halftwist of the whole segment.
    """

    k: int
    l: int
    transport: BraidWord
    epsilon: int
    origin_j: int
    convention_note: str = ""

    @property
    def strand_count(self) -> int:
        return self.transport.strand_count

    @property
    def band(self) -> Band:
        if self.l != self.k + 1:
            raise EngineError(f"row {self.origin_j}: skeleton <{self.k},{self.l}> is not a single arc")
        return Band(self.k, self.l, self.transport)

    def word(self) -> BraidWord:
        return conjugate(power(block_halftwist(self.k, self.l, self.strand_count), self.epsilon), self.transport)

    def moved(self, w: BraidWord) -> Factor:
        return replace(self, transport=compose(self.transport, w))


def _seed(table: SingularityTable, i: int, models: list[Model]) -> tuple[int, int, BraidWord]:
    row = table.rows[i]
    sk = row.skeleton
    transport = BraidWord.identity(table.n)
    if sk.kind == "complex":
        word, _ = realize_move(row.delta, models[i + 1])
        transport = word
    return sk.k, sk.l, transport


def lvc(table: SingularityTable, j: int) -> Factor:
    """Local vanishing cycle of row ``j`` as a factor with its exponent."""
    models = model_sequence(table)
    i = table.row_index(j)
    k, l, t = _seed(table, i, models)
    for m in range(i - 1, -1, -1):
        word, _ = realize_move(table.rows[m].delta, models[m + 1])
        t = compose(t, word)
    if table.labels is not None:
        t = compose(t, base_identification(table.model, table.labels))
    return Factor(k, l, t, table.rows[i].epsilon, j)


@dataclass(frozen=True)
class TraceStep:
    """The local vanishing cycle after one more move has been applied."""

    label: str  # the move, "lambda" for the seed, or "beta" for the base identification
    row: int | None  # j of the row whose move was applied
    factor: Factor


def lvc_trace(table: SingularityTable, j: int) -> list[TraceStep]:
    """Every intermediate value on the way from the skeleton of row ``j`` to the base fiber."""
    models = model_sequence(table)
    i = table.row_index(j)
    row = table.rows[i]
    k, l, t = _seed(table, i, models)
    steps = [TraceStep("lambda", j, Factor(k, l, t, row.epsilon, j))]
    for m in range(i - 1, -1, -1):
        word, _ = realize_move(table.rows[m].delta, models[m + 1])
        t = compose(t, word)
        steps.append(TraceStep(format_move(table.rows[m].delta), table.rows[m].j, Factor(k, l, t, row.epsilon, j)))
    if table.labels is not None:
        t = compose(t, base_identification(table.model, table.labels))
        steps.append(TraceStep("beta", None, Factor(k, l, t, row.epsilon, j)))
    return steps


def monodromy_factor(table: SingularityTable, j: int) -> Factor:
    return lvc(table, j)


def _all_factors(table: SingularityTable) -> list[Factor]:
    models = model_sequence(table)
    words = [realize_move(r.delta, models[i + 1])[0] for i, r in enumerate(table.rows)]
    beta = (
        base_identification(table.model, table.labels)
        if table.labels is not None
        else BraidWord.identity(table.n)
    )
    # suffix[i] = δ_{i-1} … δ_0 β, accumulated outward
    suffix = [beta]
    for w in words:
        suffix.append(compose(w, suffix[-1]))
    out = []
    for i, row in enumerate(table.rows):
        k, l, t = _seed(table, i, models)
        out.append(Factor(k, l, compose(t, suffix[i]), row.epsilon, row.j))
    return out


def braid_monodromy(table: SingularityTable) -> list[Factor]:
    """Factors for a base point to the right of all singular fibers."""
    if table.base != "right":
        raise EngineError("table is written for a left base point; use reversed_monodromy")
    return _all_factors(table)


def reversed_monodromy(table: SingularityTable) -> list[Factor]:
    """Factors for a base point to the left of all singular fibers.

    Rows are listed from the base point outwards (right to left in the
    plane), so the moves accumulate in the opposite geometric order.  The
    local moves keep their counterclockwise realisation.
    """
    if table.base != "left":
        raise EngineError("table is written for a right base point; use braid_monodromy")
    return _all_factors(table)


def rotate_half(factors: Sequence[Factor], n: int) -> list[Factor]:
    """Move every factor by the half turn of the whole disk."""
    delta = block_halftwist(1, n, n) if n > 1 else BraidWord.identity(n)
    return [f.moved(delta) for f in factors]


def conjugate_factorization(factors: Sequence[Factor], rho: BraidWord) -> list[Factor]:
    """Move every factor by ``rho⁻¹``."""
    r = invert(rho)
    return [f.moved(r) for f in factors]


# ---------------------------------------------------------- table files

_ROW = re.compile(r"^j=(\d+)\s+(.*)$")


def _parse_labels(text: str) -> LabelMap:
    items = []
    for idx, tok in enumerate(text.split(","), start=1):
        tok = tok.strip()
        if "@" in tok:
            name, where = tok.split("@", 1)
            items.append((name, _parse_point(where)))
        else:
            items.append((tok, (idx, 0)))
    return LabelMap.from_points(items)


def _parse_point(text: str) -> tuple[Fraction, Fraction]:
    m = re.fullmatch(r"([+-]?[\d/]+)(?:([+-])([\d/]*)i)?", text.strip())
    if not m:
        raise TableFormatError(f"bad point {text!r}")
    x = Fraction(m.group(1))
    if m.group(2) is None:
        return x, Fraction(0)
    y = Fraction(m.group(3) or 1)
    return x, -y if m.group(2) == "-" else y


def _format_point(z) -> str:
    x, y = z
    if y == 0:
        return str(x)
    mag = "" if abs(y) == 1 else str(abs(y))
    return f"{x}{'+' if y > 0 else '-'}{mag}i"


def _split_fields(text: str) -> dict[str, str]:
    out: dict[str, str] = {}
    for m in re.finditer(r"(\w+)=(\([^)]*\)|\S+)", text):
        out[m.group(1)] = m.group(2)
    return out


def parse_row(line: str) -> SingularityRow:
    m = _ROW.match(line.strip())
    if not m:
        raise TableFormatError(f"bad row: {line.strip()!r}")
    f = _split_fields(m.group(2))
    try:
        t = f["type"]
        lp = f["lpair"]
        delta = parse_move(f["delta"])
    except KeyError as exc:
        raise TableFormatError(f"row j={m.group(1)} lacks {exc.args[0]}") from None
    except MoveError as exc:
        raise TableFormatError(str(exc)) from None
    pm = re.fullmatch(r"P(\d+)", lp)
    if pm:
        k = int(pm.group(1))
        lpair, skel = (k, k + 1), SkeletonSpec.complex_chord(k)
    else:
        cm = re.fullmatch(r"\((\d+),(\d+)\)", lp)
        if not cm:
            raise TableFormatError(f"bad lpair {lp!r}")
        lpair, skel = (int(cm.group(1)), int(cm.group(2))), None
        if t == "a2":
            skel = SkeletonSpec.complex_chord(lpair[0])
        else:
            skel = SkeletonSpec.chord(*lpair)
    return SingularityRow(int(m.group(1)), t, lpair, delta, skel)


def parse_table(text: str) -> SingularityTable:
    """Parse the table text format.

    Header line: ``n=12 model=K2 labels=1,2,7@15/2+i,... base=right``.
    Extra header keys (``rho=...``, ``assemble=...``) are kept as directives.
    Row lines: ``j=5 type=c lpair=(7,8) delta=D<7,8>^1``.  ``#`` starts a
    comment.
    """
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise TableFormatError("empty table file")
    head = lines[0]
    if head.startswith("j="):
        raise TableFormatError("missing header line")
    fields = dict(re.findall(r"(\w+)=((?:D<[^>]*>(?:\^-?\d+)?\s*)+|\S+)", head))
    try:
        n = int(fields.pop("n"))
        model = Model.from_name(fields.pop("model", "K1"), n)
    except (KeyError, ValueError, MoveError) as exc:
        raise TableFormatError(f"bad header: {exc}") from None
    labels = _parse_labels(fields.pop("labels")) if "labels" in fields else None
    base = fields.pop("base", "right")
    rows = tuple(parse_row(ln) for ln in lines[1:])
    return SingularityTable(n, model, rows, labels, base, {k: v.strip() for k, v in fields.items()})


def format_row(row: SingularityRow) -> str:
    k, l = row.lpair
    lp = f"P{k}" if row.skeleton.kind == "complex" else f"({k},{l})"
    return f"j={row.j} type={row.sing_type} lpair={lp} delta={format_move(row.delta)}"


def format_table(table: SingularityTable) -> str:
    head = [f"n={table.n}", f"model={table.model.name}"]
    if table.labels is not None:
        parts = []
        for idx, (name, z) in enumerate(zip(table.labels.labels, table.labels.coords), start=1):
            parts.append(name if z == (idx, 0) else f"{name}@{_format_point(z)}")
        head.append("labels=" + ",".join(parts))
    head.append(f"base={table.base}")
    head += [f"{k}={v}" for k, v in table.directives.items()]
    return "\n".join([" ".join(head)] + [format_row(r) for r in table.rows]) + "\n"


# ------------------------------------------------------------ printing


def pretty_factor(f: Factor, labels: LabelMap | None, max_detours: int = 3) -> str | None:
    """Search for a plain decorated halftwist equal to the factor.

    Only single arcs without conjugators are tried; returns ``None`` when no
    form is found.
    """
    if f.l != f.k + 1:
        return None
    n = f.strand_count
    labels = labels or LabelMap.real(range(1, n + 1))
    a, b = f.band.endpoints()
    by_slot = labels.ordered()
    la, lb = by_slot[a - 1], by_slot[b - 1]
    if labels.coord(la)[0] > labels.coord(lb)[0]:
        la, lb = lb, la
    target = f.word()
    xa, xb = labels.coord(la)[0], labels.coord(lb)[0]
    between = [x for x in by_slot if x not in (la, lb) and xa < labels.coord(x)[0] < xb]
    sides = ("plain",) if not between else ("below", "above")
    for size in range(0, min(max_detours, len(between)) + 1):
        for side in sides:
            for det in combinations(between, size):
                e = DecoratedExpr("halftwist", la, lb, side, det, f.epsilon)
                try:
                    band, _ = to_band(e, labels)
                except BraidError:
                    continue
                if equal(band_halftwist(band, f.epsilon), target):
                    return render(e)
    return None


def format_factor(f: Factor, labels: LabelMap | None = None, style: str = "both", pretty: bool = True) -> str:
    parts = [f"j={f.origin_j}", f"epsilon={f.epsilon}"]
    if style in ("words", "both"):
        parts.append(f"word={format_word(f.word())}")
    if style in ("pretty", "both"):
        p = pretty_factor(f, labels) if pretty else None
        parts.append(f"pretty={p if p is not None else 'FLAG'}")
    return " ".join(parts)


# ------------------------------------------------------ multi-block files


def parse_table_blocks(text: str) -> list[SingularityTable]:
    """Split a file on lines of ``---`` and parse each block as a table."""
    blocks, cur = [], []
    for ln in text.splitlines():
        if ln.strip() == "---":
            blocks.append("\n".join(cur))
            cur = []
        else:
            cur.append(ln)
    blocks.append("\n".join(cur))
    return [parse_table(b) for b in blocks]


def assemble_mirror(
    right: SingularityTable, left: SingularityTable, rho: BraidWord
) -> list[Factor]:
    """Factors seen from the right base point followed by the left block.

    The left block is computed from its own base point, turned by the half
    turn of the disk and moved by ``rho⁻¹``.
    """
    first = braid_monodromy(right)
    second = conjugate_factorization(rotate_half(reversed_monodromy(left), left.n), rho)
    return first + second


def parse_rho(text: str, n: int) -> BraidWord:
    """A product of block moves such as ``D<2,3>^1 D<9,10>^1``."""
    words = []
    for tok in re.findall(r"D<\d+,\d+>(?:\^-?\d+)?", text):
        mv = parse_move(tok)
        words.append(power(block_halftwist(mv.k, mv.l, n), mv.r))
    if not words and text.strip():
        raise TableFormatError(f"bad rho {text!r}")
    return compose(*words) if words else BraidWord.identity(n)


def run_file(text: str) -> tuple[list[Factor], LabelMap | None]:
    """Factors described by a table file, honouring its header directives."""
    tables = parse_table_blocks(text)
    head = tables[0]
    mode = head.directives.get("assemble")
    if mode == "mirror":
        if len(tables) != 2:
            raise EngineError("assemble=mirror needs exactly two blocks")
        rho = parse_rho(head.directives.get("rho", ""), head.n)
        return assemble_mirror(head, tables[1], rho), head.labels
    if mode is not None:
        raise EngineError(f"unknown assemble mode {mode!r}")
    if len(tables) != 1:
        raise EngineError("several blocks need an assemble directive")
    if head.base == "left":
        return reversed_monodromy(head), head.labels
    return braid_monodromy(head), head.labels


# ------------------------------------------------------ expected lists


@dataclass(frozen=True)
class Expected:
    j: int
    text: str
    expr: object  # DecoratedExpr or Skeleton


@dataclass(frozen=True)
class Verdict:
    j: int
    ok: bool
    defaulted: bool
    expected: str
    note: str = ""


def parse_expected(text: str) -> tuple[int, LabelMap, list[Expected]]:
    """Expected list: header ``n=.. [labels=..]`` then ``j=<j> <expression>``."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or lines[0].startswith("j="):
        raise TableFormatError("expected list lacks its header")
    fields = dict(re.findall(r"(\w+)=(\S+)", lines[0]))
    try:
        n = int(fields["n"])
    except (KeyError, ValueError):
        raise TableFormatError("expected list header needs n=") from None
    labels = _parse_labels(fields["labels"]) if "labels" in fields else LabelMap.real(range(1, n + 1))
    if labels.n != n:
        raise TableFormatError("label count differs from n")
    out = []
    for ln in lines[1:]:
        m = re.match(r"j=(\d+)\s+(.+)$", ln)
        if not m:
            raise TableFormatError(f"bad expected line {ln!r}")
        out.append(Expected(int(m.group(1)), m.group(2), parse(m.group(2), labels)))
    return n, labels, out


def expected_word(e: Expected, labels: LabelMap, epsilon: int) -> BraidWord:
    """Braid of an expected entry; paths are raised to ``epsilon``."""
    if e.expr.kind == "path":
        return expr_skeleton_word(e.expr, labels, epsilon)
    return expr_braid(e.expr, labels)


def _defaulted(expr, labels: LabelMap) -> bool:
    if isinstance(expr, Skeleton):
        return any(_defaulted(a, labels) for a in expr.arcs)
    return expr.plain_defaulted(labels) or any(c.plain_defaulted(labels) for c in expr.conjugators)


def check_factors(factors: Sequence[Factor], labels: LabelMap, expected: Sequence[Expected]) -> list[Verdict]:
    """Compare computed factors to an expected list, row by row (matched on j)."""
    by_j = {f.origin_j: f for f in factors}
    seen = set()
    verdicts = []
    for e in expected:
        d = _defaulted(e.expr, labels)
        f = by_j.get(e.j)
        if f is None or e.j in seen:
            verdicts.append(Verdict(e.j, False, d, e.text, "no such factor" if f is None else "duplicate row"))
            continue
        seen.add(e.j)
        try:
            ok = equal(f.word(), expected_word(e, labels, f.epsilon))
        except BraidError as exc:
            verdicts.append(Verdict(e.j, False, d, e.text, str(exc)))
            continue
        verdicts.append(Verdict(e.j, ok, d, e.text))
    for f in factors:
        if f.origin_j not in seen and f.origin_j not in {e.j for e in expected}:
            verdicts.append(Verdict(f.origin_j, False, False, "", "factor missing from expected list"))
    return verdicts
