"""Words over [q] = {0, ..., q-1}, cyclic shifts, and shift classes.

A word is a fixed-length tuple of symbols.  The left cyclic shift by i maps
position j to the old position (j + i) mod n, so shifting (0, 1, 2) by 1
gives (1, 2, 0).  A word's class is its orbit under all n shifts; the class
representative is the lexicographically least rotation.

Everything here is deliberately direct Python: these functions are the
reference semantics that the vectorized kernels in engine.py are tested
against.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import DimensionMismatch


@dataclass(frozen=True, slots=True)
class Word:
    """An immutable word: symbols in range(q)."""

    symbols: tuple[int, ...]
    q: int

    def __post_init__(self):
        if self.q < 2:
            raise ValueError(f"alphabet size must be at least 2, got q={self.q}")
        n = len(self.symbols)
        if n < 1:
            raise ValueError("words must have length at least 1")
        for s in self.symbols:
            if not (0 <= s < self.q):
                raise ValueError(f"symbol {s} out of range for alphabet size {self.q}")

    @property
    def n(self) -> int:
        return len(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def __getitem__(self, j: int) -> int:
        return self.symbols[j]

    def __str__(self) -> str:
        return word_to_text(self)


def word(symbols, q: int) -> Word:
    """Convenience constructor accepting any iterable of symbols."""
    return Word(tuple(int(s) for s in symbols), q)


def word_to_text(x: Word) -> str:
    """Render a word for files and reports.

    Digits are concatenated when q <= 10; larger alphabets separate symbols
    with commas so multi-digit symbols stay unambiguous.
    """
    if x.q <= 10:
        return "".join(str(s) for s in x.symbols)
    return ",".join(str(s) for s in x.symbols)


def word_from_text(text: str, q: int) -> Word:
    """Inverse of word_to_text for a known alphabet size."""
    text = text.strip()
    if q <= 10:
        symbols = [int(c) for c in text]
    else:
        symbols = [int(tok) for tok in text.split(",")]
    return word(symbols, q)


def _check_pair(x: Word, y: Word) -> None:
    if x.n != y.n or x.q != y.q:
        raise DimensionMismatch(
            f"words disagree on shape: (n={x.n}, q={x.q}) vs (n={y.n}, q={y.q})"
        )


def cyclic_shift(x: Word, i: int) -> Word:
    """Left cyclic shift by i positions (any integer; reduced mod n)."""
    n = x.n
    i %= n
    if i == 0:
        return x
    return Word(x.symbols[i:] + x.symbols[:i], x.q)


def hamming_distance(x: Word, y: Word) -> int:
    """Number of positions where x and y differ."""
    _check_pair(x, y)
    return sum(1 for a, b in zip(x.symbols, y.symbols) if a != b)


def weight(x: Word) -> int:
    """Number of nonzero symbols.

    For binary words this equals the distance to the all-zero word.
    """
    return sum(1 for s in x.symbols if s != 0)


def period(x: Word) -> int:
    """Smallest p >= 1 with p | n such that shifting by p fixes x.

    Equals the number of distinct rotations of x; p = n means full period.
    """
    n = x.n
    s = x.symbols
    for p in range(1, n + 1):
        if n % p == 0 and all(s[j] == s[(j + p) % n] for j in range(n)):
            return p
    raise AssertionError("unreachable: p = n always fixes x")


def autocorrelation_distance(x: Word, i: int) -> int:
    """Distance from x to its own shift by i, for a nontrivial shift.

    Computed as n minus the number of positions j with x[j] == x[(j+i) mod n].
    Only 1 <= i <= n-1 is meaningful (i = 0 is trivially zero), so anything
    else is rejected rather than silently reduced.
    """
    n = x.n
    if not (1 <= i <= n - 1):
        raise ValueError(f"shift must lie in [1, {n - 1}], got i={i}")
    s = x.symbols
    return n - sum(1 for j in range(n) if s[j] == s[(j + i) % n])


def min_cyclic_autodistance(x: Word) -> int:
    """min over 1 <= i <= n-1 of the distance from x to its shift by i.

    Zero exactly when x has a nontrivial period.  Undefined for n = 1
    (there is no nontrivial shift), which is rejected.
    """
    n = x.n
    if n == 1:
        raise ValueError("min cyclic autodistance is undefined for words of length 1")
    return min(autocorrelation_distance(x, i) for i in range(1, n))


def _least_rotation_index(s: tuple[int, ...]) -> int:
    """Index k such that the rotation starting at k is lexicographically least.

    Booth's algorithm over the doubled sequence, O(n) time.  Ties (periodic
    words) resolve to the smallest such k because comparisons never move k
    forward on equality.
    """
    ss = s + s
    f = [-1] * len(ss)
    k = 0
    for j in range(1, len(ss)):
        c = ss[j]
        i = f[j - k - 1]
        while i != -1 and c != ss[k + i + 1]:
            if c < ss[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if c != ss[k + i + 1]:
            if c < ss[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k


def canonical_rotation(x: Word) -> Word:
    """The lexicographically least rotation of x (the class representative)."""
    return cyclic_shift(x, _least_rotation_index(x.symbols))


@dataclass(frozen=True, slots=True)
class CyclicClass:
    """A shift orbit: canonical representative, orbit size, and autodistance.

    n_distinct equals the representative's period.  auto_distance is the
    minimum distance from the representative to its nontrivial shifts; it is
    positive exactly when the orbit has full period.  For n = 1 there are no
    nontrivial shifts and auto_distance is reported as n (the constraint it
    feeds, "all rotations distinct and far apart", is vacuous there).
    """

    representative: Word
    n_distinct: int
    auto_distance: int

    @property
    def n(self) -> int:
        return self.representative.n

    @property
    def q(self) -> int:
        return self.representative.q

    def rotations(self) -> list[Word]:
        """The distinct words of the class, starting from the representative."""
        return [cyclic_shift(self.representative, i) for i in range(self.n_distinct)]


def class_of(x: Word) -> CyclicClass:
    """The shift class containing x."""
    rep = canonical_rotation(x)
    p = period(rep)
    if rep.n == 1:
        auto = 1
    else:
        auto = min_cyclic_autodistance(rep)
    return CyclicClass(representative=rep, n_distinct=p, auto_distance=auto)


def _necklace_stream(n: int, q: int) -> Iterator[tuple[tuple[int, ...], int]]:
    """Yield (representative, period) for every shift class of [q]^n.

    Classic lexicographic necklace generation: extend the current prefix by
    repeating it with period p, bumping a symbol resets the period to the
    prefix length.  Completed strings whose period divides n are exactly the
    lexicographically least rotations, emitted in ascending order with O(n)
    working memory (the full q^n word list is never materialized).
    """
    a = [0] * (n + 1)

    def extend(t: int, p: int) -> Iterator[tuple[tuple[int, ...], int]]:
        if t > n:
            if n % p == 0:
                yield tuple(a[1 : n + 1]), p
            return
        a[t] = a[t - p]
        yield from extend(t + 1, p)
        for v in range(a[t - p] + 1, q):
            a[t] = v
            yield from extend(t + 1, t)

    return extend(1, 1)


def enumerate_classes(
    n: int,
    q: int,
    *,
    full_period_only: bool = False,
    weight_exactly: int | None = None,
    min_auto_distance: int | None = None,
) -> Iterator[CyclicClass]:
    """Stream the shift classes of [q]^n in ascending canonical order.

    Filters:
      full_period_only  keep classes with n distinct rotations
      weight_exactly    keep classes of the given Hamming weight (binary only;
                        weight is a class invariant)
      min_auto_distance keep classes with auto_distance at least this value

    Each qualifying class is produced exactly once, lazily.
    """
    if n < 1:
        raise ValueError(f"word length must be at least 1, got n={n}")
    if q < 2:
        raise ValueError(f"alphabet size must be at least 2, got q={q}")
    if weight_exactly is not None:
        if q != 2:
            raise ValueError("the weight filter applies to binary alphabets only")
        if not (0 <= weight_exactly <= n):
            raise ValueError(f"weight must lie in [0, {n}], got {weight_exactly}")

    for symbols, p in _necklace_stream(n, q):
        if full_period_only and p != n:
            continue
        if weight_exactly is not None and sum(symbols) != weight_exactly:
            continue
        rep = Word(symbols, q)
        if n == 1:
            auto = 1
        else:
            auto = min_cyclic_autodistance(rep)
        if min_auto_distance is not None and auto < min_auto_distance:
            continue
        yield CyclicClass(representative=rep, n_distinct=p, auto_distance=auto)
