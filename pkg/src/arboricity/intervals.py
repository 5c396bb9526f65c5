"""Exact measure algebra on finite unions of half-open rational intervals.

Every set is stored as a sorted tuple of disjoint, non-touching pairs
``(a, b)`` meaning ``[a, b)``.  Endpoints are :class:`fractions.Fraction`;
nothing in this module touches floating point.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "IntervalSet",
    "AtomPartition",
    "atoms",
    "segments",
    "transport",
    "parse_rational",
]


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"``, an integer string, or a number into a Fraction.

    Floats are rejected; use a string if you mean a decimal.
    """
    if isinstance(text, float):
        raise TypeError("floats are not accepted as exact rationals")
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    s = str(text).strip()
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def _canonical(pairs: Iterable[tuple]) -> tuple[tuple[Fraction, Fraction], ...]:
    items = sorted((Fraction(a), Fraction(b)) for a, b in pairs if Fraction(a) < Fraction(b))
    out: list[list[Fraction]] = []
    for a, b in items:
        if out and a <= out[-1][1]:
            if b > out[-1][1]:
                out[-1][1] = b
        else:
            out.append([a, b])
    return tuple((a, b) for a, b in out)


class IntervalSet:
    """A finite union of half-open intervals ``[a, b)`` with rational ends.

    Instances are immutable and hashable.  Two instances compare equal iff
    they describe the same point set.
    """

    __slots__ = ("intervals", "_hash")

    def __init__(self, pairs: Iterable[tuple] = ()):
        object.__setattr__(self, "intervals", _canonical(pairs))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("IntervalSet is immutable")

    @classmethod
    def _raw(cls, canonical: tuple) -> "IntervalSet":
        obj = cls.__new__(cls)
        object.__setattr__(obj, "intervals", canonical)
        object.__setattr__(obj, "_hash", None)
        return obj

    @classmethod
    def interval(cls, a, b) -> "IntervalSet":
        return cls([(parse_rational(a), parse_rational(b))])

    @classmethod
    def empty(cls) -> "IntervalSet":
        return cls._raw(())

    # -- basic protocol -------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.intervals)

    def __len__(self) -> int:
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntervalSet):
            return NotImplemented
        return self.intervals == other.intervals

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(self.intervals))
        return self._hash

    def __repr__(self) -> str:
        return f"IntervalSet({self.to_text()!r})"

    @property
    def measure(self) -> Fraction:
        return sum((b - a for a, b in self.intervals), Fraction(0))

    @property
    def lower(self) -> Fraction | None:
        return self.intervals[0][0] if self.intervals else None

    @property
    def upper(self) -> Fraction | None:
        return self.intervals[-1][1] if self.intervals else None

    # -- boolean algebra ------------------------------------------------

    def _sweep(self, other: "IntervalSet", keep) -> "IntervalSet":
        # keep(in_self, in_other) -> bool, evaluated on elementary pieces
        points = sorted({p for ab in self.intervals for p in ab} | {p for ab in other.intervals for p in ab})
        out = []
        i = j = 0
        a_iv, b_iv = self.intervals, other.intervals
        for lo, hi in zip(points, points[1:]):
            while i < len(a_iv) and a_iv[i][1] <= lo:
                i += 1
            while j < len(b_iv) and b_iv[j][1] <= lo:
                j += 1
            in_a = i < len(a_iv) and a_iv[i][0] <= lo
            in_b = j < len(b_iv) and b_iv[j][0] <= lo
            if keep(in_a, in_b):
                if out and out[-1][1] == lo:
                    out[-1] = (out[-1][0], hi)
                else:
                    out.append((lo, hi))
        return IntervalSet._raw(tuple(out))

    def union(self, *others: "IntervalSet") -> "IntervalSet":
        pairs = list(self.intervals)
        for o in others:
            pairs.extend(o.intervals)
        return IntervalSet(pairs)

    def intersection(self, other: "IntervalSet") -> "IntervalSet":
        if not self.intervals or not other.intervals:
            return IntervalSet._raw(())
        return self._sweep(other, lambda x, y: x and y)

    def difference(self, other: "IntervalSet") -> "IntervalSet":
        if not self.intervals or not other.intervals:
            return self
        return self._sweep(other, lambda x, y: x and not y)

    def symmetric_difference(self, other: "IntervalSet") -> "IntervalSet":
        return self._sweep(other, lambda x, y: x != y)

    __or__ = union
    __and__ = intersection
    __sub__ = difference
    __xor__ = symmetric_difference

    def complement_within(self, lo, hi=None) -> "IntervalSet":
        """Complement inside ``[lo, hi)``; with one argument, inside ``[0, lo)``."""
        if hi is None:
            lo, hi = 0, lo
        lo, hi = parse_rational(lo), parse_rational(hi)
        if hi <= lo:
            raise ValueError(f"empty ambient interval [{lo}, {hi})")
        return IntervalSet([(lo, hi)]) - self

    def issubset(self, other: "IntervalSet") -> bool:
        return not (self - other)

    def isdisjoint(self, other: "IntervalSet") -> bool:
        return not (self & other)

    __le__ = issubset

    def __contains__(self, x) -> bool:
        x = Fraction(x)
        k = bisect_right(self.intervals, (x, float("inf"))) - 1
        return k >= 0 and self.intervals[k][0] <= x < self.intervals[k][1]

    # -- measure-aware helpers ------------------------------------------

    def prefix(self, amount) -> "IntervalSet":
        """Return the leftmost subset of the given measure."""
        amount = parse_rational(amount)
        if amount < 0 or amount > self.measure:
            raise ValueError(f"cannot take a prefix of measure {amount} from a set of measure {self.measure}")
        out = []
        left = amount
        for a, b in self.intervals:
            if left <= 0:
                break
            take = min(b - a, left)
            out.append((a, a + take))
            left -= take
        return IntervalSet._raw(tuple(out))

    def quantile(self, amount) -> Fraction:
        """Smallest ``x`` with ``measure(self ∩ (-inf, x)) == amount``."""
        amount = parse_rational(amount)
        if amount < 0 or amount > self.measure:
            raise ValueError("quantile outside the set's measure")
        if not self.intervals:
            return Fraction(0)
        acc = Fraction(0)
        for a, b in self.intervals:
            if acc + (b - a) >= amount:
                return a + (amount - acc)
            acc += b - a
        return self.intervals[-1][1]

    def scale(self, factor, shift=0) -> "IntervalSet":
        factor, shift = parse_rational(factor), parse_rational(shift)
        if factor <= 0:
            raise ValueError("scale factor must be positive")
        return IntervalSet._raw(tuple((a * factor + shift, b * factor + shift) for a, b in self.intervals))

    # -- text form ------------------------------------------------------

    def to_text(self) -> str:
        return " , ".join(f"{a}..{b}" for a, b in self.intervals)

    def to_json(self) -> list[list[str]]:
        return [[str(a), str(b)] for a, b in self.intervals]

    @classmethod
    def from_text(cls, text: str) -> "IntervalSet":
        text = text.strip()
        if not text:
            return cls._raw(())
        pairs = []
        for chunk in text.split(","):
            lo, sep, hi = chunk.partition("..")
            if not sep:
                raise ValueError(f"bad interval chunk {chunk!r}")
            pairs.append((parse_rational(lo), parse_rational(hi)))
        return cls(pairs)

    @classmethod
    def from_json(cls, data: Sequence[Sequence[str]]) -> "IntervalSet":
        return cls((parse_rational(a), parse_rational(b)) for a, b in data)


def _breakpoints(family: Sequence[IntervalSet]) -> list[Fraction]:
    return sorted({p for s in family for ab in s.intervals for p in ab})


def segments(family: Sequence[IntervalSet]) -> list[tuple[Fraction, Fraction, frozenset[int]]]:
    """Elementary pieces ``[p, q)`` between consecutive breakpoints of the family.

    Each piece carries the set of family indices containing it.  Pieces
    contained in no member are dropped.
    """
    points = _breakpoints(family)
    if len(points) < 2:
        return []
    members: list[set[int]] = [set() for _ in range(len(points) - 1)]
    for idx, s in enumerate(family):
        for a, b in s.intervals:
            lo = bisect_left(points, a)
            hi = bisect_left(points, b)
            for k in range(lo, hi):
                members[k].add(idx)
    return [(points[k], points[k + 1], frozenset(m)) for k, m in enumerate(members) if m]


@dataclass(frozen=True)
class AtomPartition:
    atoms: tuple[IntervalSet, ...]
    membership: tuple[frozenset[int], ...]

    def __len__(self) -> int:
        return len(self.atoms)

    def __iter__(self):
        return iter(zip(self.atoms, self.membership))

    def reassemble(self, index: int) -> IntervalSet:
        return IntervalSet().union(*(a for a, m in self if index in m))


def atoms(family: Sequence[IntervalSet]) -> AtomPartition:
    """Partition the union of ``family`` into maximal constant-membership pieces."""
    grouped: dict[frozenset[int], list[tuple[Fraction, Fraction]]] = {}
    for lo, hi, m in segments(family):
        grouped.setdefault(m, []).append((lo, hi))
    order = sorted(grouped, key=lambda m: grouped[m][0][0])
    return AtomPartition(
        atoms=tuple(IntervalSet(grouped[m]) for m in order),
        membership=tuple(order),
    )


_UNIT = IntervalSet([(0, 1)])


def transport(psi: IntervalSet, cell: IntervalSet) -> IntervalSet:
    """Carry ``psi ⊆ [0, 1)`` onto ``cell`` by the order-preserving map that
    stretches measure uniformly by ``cell.measure``.
    """
    if not psi.issubset(_UNIT):
        raise ValueError(f"{psi!r} is not contained in [0, 1)")
    m = cell.measure
    if m == 0 or not psi:
        return IntervalSet._raw(())
    pieces = []
    for a, b in psi.intervals:
        lo = cell.quantile(a * m)
        hi = cell.quantile(b * m)
        pieces.append(cell & IntervalSet._raw(((lo, hi),)))
    return IntervalSet().union(*pieces)
