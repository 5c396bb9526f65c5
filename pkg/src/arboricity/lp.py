"""Exact covering LPs over the rationals.

The LP is always

    minimize    sum_C x_C
    subject to  sum_{C containing v} x_C >= 1   for every vertex v
                x >= 0

with columns given as vertex bitmasks.  We run a revised primal simplex
with an explicit basis inverse and Bland's rule, all in
:class:`fractions.Fraction`, so results are exact and the method always
terminates.  Column generation appends columns to a live basis, which
stays primal feasible.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Protocol, Sequence

from .graph import Graph, members

log = logging.getLogger(__name__)

__all__ = [
    "CoverLp",
    "LpResult",
    "LpError",
    "PricingError",
    "PricingOracle",
    "solve_exact",
    "column_generation",
]

ZERO = Fraction(0)
ONE = Fraction(1)


class LpError(RuntimeError):
    pass


class PricingError(LpError):
    """The pricing oracle broke its contract."""


@dataclass
class CoverLp:
    n: int
    columns: list[int]
    kind: str = "forest"


@dataclass
class LpResult:
    value: Fraction
    primal: dict[int, Fraction]
    dual: tuple[Fraction, ...]
    columns: list[int] = field(default_factory=list)
    iterations: int = 0
    pivots: int = 0
    certificate: dict = field(default_factory=dict)

    def cover(self) -> dict[frozenset[int], Fraction]:
        return {frozenset(members(c)): w for c, w in self.primal.items()}

    def check_duality(self, n: int | None = None) -> bool:
        """Primal feasible, dual feasible for the stored columns, equal objectives."""
        n = len(self.dual) if n is None else n
        covered = [ZERO] * n
        for c, w in self.primal.items():
            if w < 0:
                return False
            for v in members(c):
                covered[v] += w
        if any(c < 1 for c in covered):
            return False
        if any(y < 0 for y in self.dual):
            return False
        for c in self.columns:
            if sum((self.dual[v] for v in members(c)), ZERO) > 1:
                return False
        return sum(self.primal.values(), ZERO) == self.value == sum(self.dual, ZERO)

    def to_json(self) -> dict:
        return {
            "value": str(self.value),
            "primal": {",".join(map(str, members(c))): str(w) for c, w in sorted(self.primal.items())},
            "dual": [str(y) for y in self.dual],
            "iterations": self.iterations,
            "certificate": {k: (str(v) if isinstance(v, Fraction) else v) for k, v in self.certificate.items()},
        }


class _Simplex:
    """Revised simplex on ``A x - s = 1``.

    Variable ids: ``0..n-1`` are surplus variables, ``n..n+K-1`` the
    columns in insertion order, ``-1-v`` the phase-one artificials.
    """

    def __init__(self, n: int, columns: Iterable[int]):
        self.n = n
        self.cols: list[int] = []
        self.index: dict[int, int] = {}
        for c in columns:
            self.add_column(c)
        self.pivots = 0
        self._start()

    def add_column(self, mask: int) -> bool:
        if mask in self.index or mask == 0:
            return False
        self.index[mask] = self.n + len(self.cols)
        self.cols.append(mask)
        return True

    # column helpers
    def _cost(self, var: int, phase: int) -> Fraction:
        if var < 0:
            return ONE if phase == 1 else ZERO
        if var < self.n:
            return ZERO
        return ZERO if phase == 1 else ONE

    def _ftran(self, var: int) -> list[Fraction]:
        binv = self.binv
        if var < 0:
            v = -1 - var
            return [row[v] for row in binv]
        if var < self.n:
            return [-row[var] for row in binv]
        vs = members(self.cols[var - self.n])
        return [sum((row[v] for v in vs), ZERO) for row in binv]

    def _start(self) -> None:
        n = self.n
        self.binv = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
        self.xb = [ONE] * n
        basis = []
        self.need_phase1 = False
        for v in range(n):
            var = self.index.get(1 << v)
            if var is None:
                basis.append(-1 - v)
                self.need_phase1 = True
            else:
                basis.append(var)
        self.basis = basis

    def duals(self, phase: int = 2) -> list[Fraction]:
        cb = [self._cost(b, phase) for b in self.basis]
        n = self.n
        y = [ZERO] * n
        for r, c in enumerate(cb):
            if c:
                row = self.binv[r]
                for i in range(n):
                    if row[i]:
                        y[i] += c * row[i]
        return y

    def _reduced(self, var: int, y: list[Fraction], phase: int) -> Fraction:
        if var < 0:
            return self._cost(var, phase) - y[-1 - var]
        if var < self.n:
            return y[var]
        return self._cost(var, phase) - sum((y[v] for v in members(self.cols[var - self.n])), ZERO)

    def _iterate(self, phase: int) -> None:
        n = self.n
        while True:
            y = self.duals(phase)
            basic = set(self.basis)
            entering = None
            for var in range(n + len(self.cols)):
                if var in basic:
                    continue
                if self._reduced(var, y, phase) < 0:
                    entering = var
                    break
            if entering is None:
                return
            d = self._ftran(entering)
            best = None
            for r in range(n):
                if d[r] > 0:
                    ratio = self.xb[r] / d[r]
                    key = (ratio, self.basis[r] if self.basis[r] >= 0 else -10**9 + self.basis[r])
                    if best is None or key < best[0]:
                        best = (key, r)
            if best is None:
                raise LpError("covering LP reported unbounded; columns are malformed")
            self._pivot(best[1], entering, d)

    def _pivot(self, p: int, entering: int, d: list[Fraction]) -> None:
        piv = d[p]
        rowp = [x / piv for x in self.binv[p]]
        xp = self.xb[p] / piv
        for r in range(self.n):
            if r == p or not d[r]:
                continue
            f = d[r]
            row = self.binv[r]
            self.binv[r] = [a - f * b if b else a for a, b in zip(row, rowp)]
            self.xb[r] -= f * xp
        self.binv[p] = rowp
        self.xb[p] = xp
        self.basis[p] = entering
        self.pivots += 1

    def optimize(self) -> None:
        if self.need_phase1:
            self._iterate(1)
            for r, var in enumerate(self.basis):
                if var < 0 and self.xb[r] != 0:
                    raise LpError(f"covering LP infeasible: vertex {-1 - var} is in no column")
            self._drive_out_artificials()
            self.need_phase1 = False
        self._iterate(2)

    def _drive_out_artificials(self) -> None:
        for r, var in enumerate(self.basis):
            if var >= 0:
                continue
            basic = set(self.basis)
            for cand in range(self.n + len(self.cols)):
                if cand in basic:
                    continue
                d = self._ftran(cand)
                if d[r] != 0:
                    self._pivot(r, cand, d)
                    break
            else:
                raise LpError("redundant row in covering LP")

    def result(self) -> LpResult:
        primal = {}
        for r, var in enumerate(self.basis):
            if var >= self.n and self.xb[r] != 0:
                primal[self.cols[var - self.n]] = self.xb[r]
        y = self.duals(2)
        value = sum(primal.values(), ZERO)
        return LpResult(value=value, primal=primal, dual=tuple(y), columns=list(self.cols), pivots=self.pivots)


def solve_exact(lp: CoverLp) -> LpResult:
    """Optimal solution of a covering LP with an explicit column list."""
    covered = 0
    for c in lp.columns:
        covered |= c
    if covered != (1 << lp.n) - 1:
        missing = members(((1 << lp.n) - 1) & ~covered)
        raise LpError(f"covering LP infeasible: vertices {missing} lie in no column")
    sx = _Simplex(lp.n, lp.columns)
    sx.optimize()
    res = sx.result()
    if res.value != sum(res.dual, ZERO) or any(y < 0 for y in res.dual):
        raise LpError("strong-duality check failed")
    res.certificate = {"method": "enumeration", "columns": len(lp.columns)}
    return res


class PricingOracle(Protocol):
    def __call__(self, weights: Sequence[Fraction], floor: Fraction | None = None) -> tuple[int, Fraction]: ...

    def feasible(self, mask: int) -> bool: ...


def column_generation(
    g: Graph,
    pricing: PricingOracle,
    seed_columns: Iterable[int] = (),
    extend: Callable[[int], int] | None = None,
    max_iterations: int = 100_000,
) -> LpResult:
    """Solve the full covering LP whose columns are the sets ``pricing`` ranges over.

    The restricted master starts from all singletons plus ``seed_columns``.
    Each round prices the current duals with ``floor=1``; a column of weight
    above 1 is added (after optional ``extend`` to a maximal feasible set).
    When no such column exists, one unrestricted pricing call records the
    exact maximum as the optimality certificate.
    """
    n = g.n
    if n == 0:
        return LpResult(value=ZERO, primal={}, dual=(), certificate={"pricing_max": ZERO, "rounds": 0})
    cols = [1 << v for v in range(n)]
    for c in seed_columns:
        if not pricing.feasible(c):
            raise PricingError(f"seed column {members(c)} is infeasible")
        cols.append(c)
    sx = _Simplex(n, cols)
    history: list[Fraction] = []
    for rounds in range(1, max_iterations + 1):
        sx.optimize()
        y = sx.duals()
        mask, weight = pricing(y, floor=ONE)
        if mask and not pricing.feasible(mask):
            raise PricingError(f"pricing returned infeasible set {members(mask)}")
        actual = sum((y[v] for v in members(mask)), ZERO)
        if actual != weight:
            raise PricingError(f"pricing weight {weight} disagrees with recomputed {actual}")
        history.append(weight)
        log.debug("round %d: master value %s, pricing %s", rounds, sum(y, ZERO), weight)
        if weight <= 1:
            break
        if extend is not None:
            mask = extend(mask)
        if not sx.add_column(mask):
            raise PricingError(f"pricing returned an existing column {members(mask)} with weight {weight} > 1")
    else:
        raise LpError(f"column generation did not converge in {max_iterations} rounds")
    exact_mask, exact_max = pricing(y)
    if exact_max > 1:
        raise PricingError("floored and exact pricing disagree")
    res = sx.result()
    if res.value != sum(y, ZERO):
        raise LpError("strong-duality check failed")
    res.iterations = rounds
    res.certificate = {
        "method": "column-generation",
        "pricing_max": exact_max,
        "pricing_argmax": members(exact_mask),
        "rounds": rounds,
        "columns": len(sx.cols),
    }
    log.info("column generation: value %s after %d rounds, %d columns", res.value, rounds, len(sx.cols))
    return res
