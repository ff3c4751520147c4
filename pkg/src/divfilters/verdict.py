"""Three-valued proof state with certificates.

Proved and Refuted are final: re-running a query with a larger budget must
never flip them. UnknownAtBound records the budget at which search stopped.
"""

from __future__ import annotations

from enum import Enum
from typing import Any


class ProofState(Enum):
    PROVED = "proved"
    REFUTED = "refuted"
    UNKNOWN = "unknown-at-bound"


class Verdict:
    """Outcome of a (possibly semi-decidable) query.

    certificate is an optional witness: a natural number, a finite tuple/set,
    or the name of the structural rule that applied.
    """

    __slots__ = ("state", "budget", "certificate")

    def __init__(self, state: ProofState, budget: int, certificate: Any = None):
        self.state = state
        self.budget = budget
        self.certificate = certificate

    @property
    def proved(self) -> bool:
        return self.state is ProofState.PROVED

    @property
    def refuted(self) -> bool:
        return self.state is ProofState.REFUTED

    @property
    def unknown(self) -> bool:
        return self.state is ProofState.UNKNOWN

    @property
    def decided(self) -> bool:
        return self.state is not ProofState.UNKNOWN

    def __repr__(self):
        cert = f", certificate={self.certificate!r}" if self.certificate is not None else ""
        return f"Verdict({self.state.value}, budget={self.budget}{cert})"

    def __eq__(self, other):
        return isinstance(other, Verdict) and self.state is other.state

    def __hash__(self):
        return hash(self.state)

    def to_json(self) -> dict:
        out = {"state": self.state.value, "budget": self.budget}
        if self.certificate is not None:
            cert = self.certificate
            if hasattr(cert, "to_json"):
                cert = cert.to_json()
            elif isinstance(cert, (set, frozenset)):
                cert = sorted(cert)
            elif isinstance(cert, tuple):
                cert = list(cert)
            out["certificate"] = cert
        return out


def proved(budget: int, certificate: Any = None) -> Verdict:
    return Verdict(ProofState.PROVED, budget, certificate)


def refuted(budget: int, certificate: Any = None) -> Verdict:
    return Verdict(ProofState.REFUTED, budget, certificate)


def unknown(budget: int, certificate: Any = None) -> Verdict:
    return Verdict(ProofState.UNKNOWN, budget, certificate)


def three_valued_not(v: Verdict) -> Verdict:
    if v.proved:
        return refuted(v.budget, v.certificate)
    if v.refuted:
        return proved(v.budget, v.certificate)
    return v


def three_valued_and(a: Verdict, b: Verdict) -> Verdict:
    # a Refuted branch decides the conjunction even if the other is Unknown
    if a.refuted:
        return a
    if b.refuted:
        return b
    if a.proved and b.proved:
        return proved(max(a.budget, b.budget))
    return unknown(max(a.budget, b.budget))


def three_valued_or(a: Verdict, b: Verdict) -> Verdict:
    if a.proved:
        return a
    if b.proved:
        return b
    if a.refuted and b.refuted:
        return refuted(max(a.budget, b.budget))
    return unknown(max(a.budget, b.budget))
