"""Charges ``d(v) - 10/3`` redistributed by two local rules, and detection of
the four unavoidable configurations of sparse graphs.

R1: every vertex sends 2/3 to each neighbour of degree two.
R2: every heavy vertex sends 1/6 to each neighbour of degree three.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .graph import ConfigurationWitness, Graph

__all__ = [
    "ChargeLedger",
    "Transfer",
    "SparsityReport",
    "discharge",
    "detect_configurations",
    "check_unavoidable",
    "THRESHOLD",
]

THRESHOLD = Fraction(10, 3)
R1_AMOUNT = Fraction(2, 3)
R2_AMOUNT = Fraction(1, 6)


@dataclass(frozen=True)
class Transfer:
    source: int
    target: int
    amount: Fraction
    rule: str

    def to_json(self) -> dict:
        return {"from": self.source, "to": self.target, "amount": str(self.amount), "rule": self.rule}


@dataclass
class ChargeLedger:
    initial: dict[int, Fraction]
    final: dict[int, Fraction]
    transfers: list[Transfer] = field(default_factory=list)

    @property
    def total(self) -> Fraction:
        return sum(self.initial.values(), Fraction(0))

    def conserved(self) -> bool:
        return sum(self.final.values(), Fraction(0)) == self.total

    def negative(self) -> list[int]:
        return [v for v, c in self.final.items() if c < 0]

    def to_json(self) -> dict:
        return {
            "initial": {str(v): str(c) for v, c in self.initial.items()},
            "final": {str(v): str(c) for v, c in self.final.items()},
            "transfers": [t.to_json() for t in self.transfers],
        }


def discharge(g: Graph) -> ChargeLedger:
    initial = {v: g.degree(v) - THRESHOLD for v in range(g.n)}
    final = dict(initial)
    log: list[Transfer] = []
    for v in range(g.n):
        heavy = not g.is_light(v)
        if heavy:
            # a degree-three vertex has effective degree at most three, so it is light
            assert g.degree(v) >= 4, f"heavy vertex {v} of degree {g.degree(v)}"
        for u in sorted(g.adj[v]):
            d = g.degree(u)
            if d == 2:
                log.append(Transfer(v, u, R1_AMOUNT, "R1"))
            elif d == 3 and heavy:
                log.append(Transfer(v, u, R2_AMOUNT, "R2"))
    for t in log:
        final[t.source] -= t.amount
        final[t.target] += t.amount
    ledger = ChargeLedger(initial, final, log)
    assert ledger.conserved()
    return ledger


def detect_configurations(g: Graph) -> list[ConfigurationWitness]:
    """Every occurrence of the four configurations, in vertex order.

    Adjacent degree-two pairs are reported once, from the smaller id.
    """
    out = []
    for v in range(g.n):
        d = g.degree(v)
        if d <= 1:
            out.append(ConfigurationWitness("degree-at-most-one", {"v": v}))
        if d == 2:
            for w in sorted(g.adj[v]):
                if w > v and g.degree(w) == 2:
                    out.append(ConfigurationWitness("adjacent-degree-twos", {"v": v, "w": w}))
        if 3 <= d <= 9 and g.effective_degree(v) <= 2:
            out.append(ConfigurationWitness("effective-degree-two", {"v": v}))
        if d == 3:
            light = tuple(u for u in sorted(g.adj[v]) if g.is_light(u))
            if len(light) >= 2:
                out.append(ConfigurationWitness("degree-three-two-light", {"v": v, "light": light}))
    return out


def _centres(w: ConfigurationWitness) -> tuple[int, ...]:
    if w.kind == "adjacent-degree-twos":
        return (w.roles["v"], w.roles["w"])
    return (w.roles["v"],)


@dataclass
class SparsityReport:
    ok: bool
    vacuous: bool
    average_degree: Fraction
    witnesses: list[ConfigurationWitness]
    negative: list[int]
    ledger: ChargeLedger

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "vacuous": self.vacuous,
            "average_degree": str(self.average_degree),
            "negative_vertices": self.negative,
            "witnesses": [w.to_json() for w in self.witnesses],
            "negative_witnesses": {
                str(v): [w.to_json() for w in self.witnesses if v in _centres(w)] for v in self.negative
            },
            "total_charge": str(self.ledger.total),
        }


def check_unavoidable(g: Graph) -> SparsityReport:
    """A sparse graph (average degree below 10/3) must contain a configuration.

    ``ok`` is false only for a counterexample.  Independently of the
    average degree, every vertex ending with negative charge must be the
    centre of a detected configuration (either end, for an adjacent pair).
    """
    ledger = discharge(g)
    wit = detect_configurations(g)
    avg = g.average_degree()
    vacuous = avg >= THRESHOLD
    neg = ledger.negative()
    ok = vacuous or bool(wit)
    for v in neg:
        if not any(v in _centres(w) for w in wit):
            ok = False
    return SparsityReport(ok, vacuous, avg, wit, neg, ledger)
