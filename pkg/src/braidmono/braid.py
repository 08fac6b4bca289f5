"""Braid words in Artin generators and their action on the free group.

Composition convention: a word is read left to right and the first letter
acts first, so ``compose(a, b)`` means "do ``a``, then ``b``".  The letter
``(i, +1)`` is the counterclockwise halftwist of the punctures sitting in
slots ``i`` and ``i + 1``: the left puncture passes below, the right one
above.

Equality is decided through the Artin representation on the free group of
rank ``n``, which is faithful; words are never normalised.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
import numpy as np

__all__ = [
    "BraidError",
    "BraidWord",
    "FreeWord",
    "ArtinAutomorphism",
    "Band",
    "sigma",
    "compose",
    "invert",
    "power",
    "conjugate",
    "artin_action",
    "equal",
    "permutation",
    "exponent_sum",
    "block_halftwist",
    "band_halftwist",
    "parse_word",
    "format_word",
]


class BraidError(ValueError):
    """Raised for malformed braid data (bad indices, strand mismatch)."""


# --------------------------------------------------------------------- words


@dataclass(frozen=True)
class BraidWord:
    strand_count: int
    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        n = self.strand_count
        if n < 1:
            raise BraidError(f"strand count must be positive, got {n}")
        letters = tuple((int(i), int(s)) for i, s in self.letters)
        for i, s in letters:
            if not 1 <= i <= n - 1:
                raise BraidError(f"generator index {i} outside [1, {n - 1}]")
            if s not in (1, -1):
                raise BraidError(f"letter sign must be +1 or -1, got {s}")
        object.__setattr__(self, "letters", letters)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: BraidWord) -> BraidWord:
        return compose(self, other)

    def __pow__(self, e: int) -> BraidWord:
        return power(self, e)

    def __invert__(self) -> BraidWord:
        return invert(self)

    def __str__(self):
        return format_word(self)

    @classmethod
    def identity(cls, n: int) -> BraidWord:
        return cls(n, ())


def sigma(i: int, n: int, e: int = 1) -> BraidWord:
    """``σ_i^e`` in ``B_n``."""
    s = 1 if e > 0 else -1
    return BraidWord(n, ((i, s),) * abs(e))


def _check_same(w1: BraidWord, w2: BraidWord):
    if w1.strand_count != w2.strand_count:
        raise BraidError(
            f"strand count mismatch: {w1.strand_count} vs {w2.strand_count}"
        )


def compose(*words: BraidWord) -> BraidWord:
    if not words:
        raise BraidError("compose needs at least one word")
    first = words[0]
    letters = list(first.letters)
    for w in words[1:]:
        _check_same(first, w)
        letters.extend(w.letters)
    return BraidWord(first.strand_count, tuple(letters))


def invert(w: BraidWord) -> BraidWord:
    return BraidWord(w.strand_count, tuple((i, -s) for i, s in reversed(w.letters)))


def power(w: BraidWord, e: int) -> BraidWord:
    base = w if e >= 0 else invert(w)
    return BraidWord(w.strand_count, base.letters * abs(e))


def conjugate(w: BraidWord, by: BraidWord) -> BraidWord:
    """``by⁻¹ · w · by``: the braid ``w`` transported along ``by``."""
    return compose(invert(by), w, by)


def exponent_sum(w: BraidWord) -> int:
    return sum(s for _, s in w.letters)


def permutation(w: BraidWord) -> tuple[int, ...]:
    """Final slot of the puncture starting in each slot (0-based tuple).

    ``permutation(compose(a, b)) == [pb[pa[k]] for k]``.
    """
    n = w.strand_count
    where = list(range(n))  # where[k] = current slot of puncture k
    at = list(range(n))  # at[slot] = puncture
    for i, _ in w.letters:
        a, b = at[i - 1], at[i]
        at[i - 1], at[i] = b, a
        where[a], where[b] = i, i - 1
    return tuple(where)


# ------------------------------------------------------------- free group


def _reduce(seq) -> np.ndarray:
    out: list[int] = []
    for x in seq:
        x = int(x)
        if x == 0:
            raise BraidError("free generator index 0 is not allowed")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return np.array(out, dtype=np.int64)


def _cat(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    lu, lv = len(u), len(v)
    if lu == 0:
        return v
    if lv == 0:
        return u
    if u[-1] != -v[0]:
        return np.concatenate((u, v))
    m = min(lu, lv)
    nz = np.flatnonzero(u[::-1][:m] + v[:m])
    k = int(nz[0]) if len(nz) else m
    return np.concatenate((u[: lu - k], v[k:]))


def _inv(u: np.ndarray) -> np.ndarray:
    return -u[::-1]


class FreeWord:
    """Freely reduced word; letters are ``±k`` for generator ``x_k``."""

    __slots__ = ("_a",)

    def __init__(self, letters=(), *, _reduced: np.ndarray | None = None):
        arr = _reduce(letters) if _reduced is None else _reduced
        arr.setflags(write=False)
        self._a = arr

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> FreeWord:
        return cls(_reduced=np.ascontiguousarray(arr, dtype=np.int64))

    @property
    def letters(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self._a)

    def __len__(self):
        return len(self._a)

    def __mul__(self, other: FreeWord) -> FreeWord:
        return FreeWord._wrap(_cat(self._a, other._a))

    def inverse(self) -> FreeWord:
        return FreeWord._wrap(_inv(self._a))

    def __eq__(self, other):
        return isinstance(other, FreeWord) and np.array_equal(self._a, other._a)

    def __hash__(self):
        return hash(self._a.tobytes())

    def __repr__(self):
        if not len(self._a):
            return "FreeWord(1)"
        return "FreeWord(" + " ".join(
            f"x{abs(x)}" + ("^-1" if x < 0 else "") for x in self._a
        ) + ")"


@dataclass(frozen=True, eq=False)
class ArtinAutomorphism:
    images: tuple[FreeWord, ...]

    @property
    def rank(self) -> int:
        return len(self.images)

    def __eq__(self, other):
        return isinstance(other, ArtinAutomorphism) and all(
            a == b for a, b in zip(self.images, other.images, strict=True)
        )

    def __hash__(self):
        return hash(tuple(hash(x) for x in self.images))

    def apply(self, w: FreeWord) -> FreeWord:
        out = np.zeros(0, dtype=np.int64)
        for x in w._a:
            img = self.images[abs(int(x)) - 1]._a
            out = _cat(out, img if x > 0 else _inv(img))
        return FreeWord._wrap(out)

    def is_identity(self) -> bool:
        return all(
            len(im) == 1 and im.letters[0] == k
            for k, im in enumerate(self.images, start=1)
        )


def artin_action(w: BraidWord) -> ArtinAutomorphism:
    """Images of ``x_1..x_n`` under ``w``.

    ``σ_i: x_i ↦ x_i x_{i+1} x_i⁻¹, x_{i+1} ↦ x_i``; the automorphism of a
    word substitutes later letters into earlier ones, which keeps the map a
    homomorphism for the first-letter-acts-first convention.
    """
    n = w.strand_count
    imgs = [np.array([k], dtype=np.int64) for k in range(1, n + 1)]
    for i, s in w.letters:
        a, b = imgs[i - 1], imgs[i]
        if s > 0:
            imgs[i - 1], imgs[i] = _cat(_cat(a, b), _inv(a)), a
        else:
            imgs[i - 1], imgs[i] = b, _cat(_cat(_inv(b), a), b)
    return ArtinAutomorphism(tuple(FreeWord._wrap(x) for x in imgs))


def equal(w1: BraidWord, w2: BraidWord) -> bool:
    _check_same(w1, w2)
    return artin_action(w1) == artin_action(w2)


# ------------------------------------------------------------ halftwists


def block_halftwist(k: int, l: int, n: int) -> BraidWord:
    """Positive halftwist of the block of slots ``k..l`` (``Δ<k,l>``)."""
    if not 1 <= k < l <= n:
        raise BraidError(f"block <{k},{l}> invalid for {n} strands")
    letters = []
    for top in range(l - 1, k - 1, -1):
        letters.extend((i, 1) for i in range(k, top + 1))
    return BraidWord(n, tuple(letters))


def _below_chord_transport(i: int, j: int, n: int) -> BraidWord:
    # the straight chord (i, i+1) dragged by σ_{i+1} … σ_{j-1}: its right end
    # slides under every intermediate puncture
    return BraidWord(n, tuple((m, 1) for m in range(i + 1, j)))


@dataclass(frozen=True)
class Band:
    """A simple arc between two punctures, up to isotopy.

    The arc is the image of the base chord joining slots ``left`` and
    ``right`` under the braid ``transport``.  For non-adjacent endpoints the
    base chord runs below the real axis.
    """

    left: int
    right: int
    transport: BraidWord = field(default=None)  # type: ignore[assignment]
    strand_count: int = 0

    def __post_init__(self):
        n = self.strand_count or (
            self.transport.strand_count if self.transport is not None else 0
        )
        if self.transport is None:
            object.__setattr__(self, "transport", BraidWord.identity(n))
        if self.transport.strand_count != n:
            raise BraidError("band transport has the wrong strand count")
        object.__setattr__(self, "strand_count", n)
        if not 1 <= self.left < self.right <= n:
            raise BraidError(f"band endpoints ({self.left},{self.right}) invalid for {n}")

    def moved(self, w: BraidWord) -> Band:
        """The arc after the diffeomorphism ``w`` has acted on it."""
        return Band(self.left, self.right, compose(self.transport, w))

    def base_halftwist(self) -> BraidWord:
        n, i, j = self.strand_count, self.left, self.right
        return conjugate(sigma(i, n), _below_chord_transport(i, j, n))

    def endpoints(self) -> tuple[int, int]:
        """Final slots (1-based) of the arc's two ends."""
        perm = permutation(self.transport)
        a, b = perm[self.left - 1] + 1, perm[self.right - 1] + 1
        return (a, b) if a < b else (b, a)


def band_halftwist(b: Band, e: int = 1) -> BraidWord:
    """``H(b)^e``."""
    return conjugate(power(b.base_halftwist(), e), b.transport)


# ------------------------------------------------------------- plain text

_TOKEN = re.compile(r"s(\d+)(?:\^(-?\d+))?$")


def parse_word(text: str, n: int) -> BraidWord:
    """Parse ``s3 s4^-1 s3^2``; ``1`` or empty text is the identity."""
    letters: list[tuple[int, int]] = []
    for tok in text.split():
        if tok in ("1", "e"):
            continue
        m = _TOKEN.match(tok)
        if not m:
            raise BraidError(f"bad braid token {tok!r}")
        i, e = int(m.group(1)), int(m.group(2) or 1)
        letters.extend([(i, 1 if e > 0 else -1)] * abs(e))
    return BraidWord(n, tuple(letters))


def format_word(w: BraidWord) -> str:
    if not w.letters:
        return "1"
    out = []
    run_i, run_e = w.letters[0][0], 0
    for i, s in w.letters:
        if i == run_i and (run_e == 0 or (run_e > 0) == (s > 0)):
            run_e += s
            continue
        out.append((run_i, run_e))
        run_i, run_e = i, s
    out.append((run_i, run_e))
    return " ".join(f"s{i}" if e == 1 else f"s{i}^{e}" for i, e in out)


def free_word_from_text(text: str) -> FreeWord:
    """``x1 x2^-1`` style; handy in tests."""
    letters = []
    for tok in text.split():
        m = re.fullmatch(r"x(\d+)(?:\^(-?\d+))?", tok)
        if not m:
            raise BraidError(f"bad free-group token {tok!r}")
        k, e = int(m.group(1)), int(m.group(2) or 1)
        letters.extend([k if e > 0 else -k] * abs(e))
    return FreeWord(letters)

