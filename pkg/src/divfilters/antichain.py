"""Strong antichains (pairwise-coprime subsets) and their covering dual.

A finite set covers E when every member of E is divisible by one of finitely
many n >= 2; a strong antichain in E bounds how small such a cover can be.
The exact maximum-antichain solver is a branch-and-bound over the
coprimality graph; the upper bound partitions candidates into classes that
share a prime (such a class contributes at most one antichain element).

1 is coprime to everything, so antichains containing 1 are legal; solvers
report its presence separately in diagnostics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from . import arith
from .errors import IncompleteEnumerationError, PreconditionError
from .semantics import (
    DEFAULT_BUDGET,
    enumerate_upto,
    has_infinite_antichain,
    is_upward_closed,
    member,
    syntactic_cover,
)
from .setexpr import SetExpr, render
from .verdict import Verdict, proved, refuted, unknown


@dataclass(frozen=True)
class AntichainCertificate:
    """A verified pairwise-coprime subset of the host expression."""

    witness: tuple[int, ...]
    host: SetExpr
    bound: int
    mode: str = "exact"

    @property
    def contains_one(self) -> bool:
        return 1 in self.witness

    def to_json(self) -> dict:
        return {
            "kind": "antichain",
            "host_expr": render(self.host),
            "witness": list(self.witness),
            "bound": self.bound,
            "mode": self.mode,
        }


@dataclass(frozen=True)
class CoveringCertificate:
    """A finite set of moduli >= 2 covering the host's members.

    structural=True means the cover is proved for the whole set, not just
    for the members seen up to verified_bound.
    """

    covers: frozenset[int]
    host: SetExpr
    verified_bound: int
    structural: bool = False

    def to_json(self) -> dict:
        return {
            "kind": "covering",
            "host_expr": render(self.host),
            "covers": sorted(self.covers),
            "bound": self.verified_bound,
            "mode": "structural" if self.structural else "bound-verified",
        }


def _check_pairwise_coprime(xs) -> None:
    xs = sorted(xs)
    for i, a in enumerate(xs):
        for b in xs[i + 1 :]:
            if math.gcd(a, b) != 1:
                raise PreconditionError(f"{a} and {b} are not coprime")


def _supports(candidates: list[int]) -> list[frozenset[int]]:
    return [arith.prime_support(x) for x in candidates]


def _greedy_antichain(candidates: list[int], supports=None) -> list[int]:
    if supports is None:
        supports = _supports(candidates)
    used: set[int] = set()
    chosen: list[int] = []
    for x, sup in zip(candidates, supports):
        if used.isdisjoint(sup):
            chosen.append(x)
            used |= sup
    return chosen


def _class_upper_bound(supports: list[frozenset[int]]) -> int:
    """Partition into prime-sharing classes; the class count bounds any
    pairwise-coprime subset."""
    remaining = [s for s in supports]
    bound = sum(1 for s in remaining if not s)  # the element 1, if present
    remaining = [s for s in remaining if s]
    while remaining:
        freq: dict[int, int] = {}
        for s in remaining:
            for p in s:
                freq[p] = freq.get(p, 0) + 1
        best_p = max(freq, key=lambda p: (freq[p], -p))
        remaining = [s for s in remaining if best_p not in s]
        bound += 1
    return bound


def max_strong_antichain(
    e: SetExpr,
    limit: int,
    mode: str = "exact",
    budget: Optional[int] = None,
) -> tuple[int, AntichainCertificate]:
    """Largest (exact) or maximal (greedy) pairwise-coprime subset of the
    members of e up to `limit`."""
    if mode not in ("exact", "greedy"):
        raise PreconditionError(f"unknown mode {mode!r}")
    budget = max(budget or DEFAULT_BUDGET, limit)
    candidates, complete = enumerate_upto(e, limit, budget)
    if not complete:
        raise IncompleteEnumerationError(
            f"members of {render(e)} up to {limit} contain Unknown verdicts"
        )
    # ascending smallest-prime-factor order keeps exploration deterministic
    supports = _supports(candidates)
    order = sorted(
        range(len(candidates)),
        key=lambda i: (min(supports[i], default=1), candidates[i]),
    )
    candidates = [candidates[i] for i in order]
    supports = [supports[i] for i in order]

    greedy = _greedy_antichain(candidates, supports)
    if mode == "greedy":
        cert = AntichainCertificate(tuple(sorted(greedy)), e, limit, "greedy")
        return len(greedy), cert

    best = _exact_antichain(candidates, supports, greedy)
    cert = AntichainCertificate(tuple(sorted(best)), e, limit, "exact")
    return len(best), cert


def _exact_antichain(
    candidates: list[int], supports: list[frozenset[int]], greedy: list[int]
) -> list[int]:
    if _class_upper_bound(supports) == len(greedy):
        return greedy
    best = list(greedy)

    def search(rest: list[int], chosen: list[int]) -> None:
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        if not rest:
            return
        rest_supports = [supports_by_value[x] for x in rest]
        if len(chosen) + _class_upper_bound(rest_supports) <= len(best):
            return
        x = rest[0]
        sup = supports_by_value[x]
        included = [y for y in rest[1:] if supports_by_value[y].isdisjoint(sup)]
        search(included, chosen + [x])
        search(rest[1:], chosen)

    supports_by_value = dict(zip(candidates, supports))
    search(candidates, [])
    return best


def find_antichain_of_size(
    e: SetExpr, size: int, limit: int, budget: Optional[int] = None
) -> Optional[AntichainCertificate]:
    """Greedily grow a pairwise-coprime subset of e up to `size`, scanning
    members ascending; stops at the first success."""
    budget = max(budget or DEFAULT_BUDGET, limit)
    used: set[int] = set()
    chosen: list[int] = []
    for m in range(1, limit + 1):
        sup = arith.prime_support(m)
        if not used.isdisjoint(sup):
            continue
        if member(e, m, budget).proved:
            chosen.append(m)
            used |= sup
            if len(chosen) >= size:
                return AntichainCertificate(tuple(chosen), e, limit, "greedy")
    return None


def covering_witness(
    e: SetExpr,
    k_max: int,
    n_max: int,
    limit: int,
    budget: Optional[int] = None,
) -> Optional[CoveringCertificate]:
    """Smallest (minimal k, then lexicographic) cover {n_1..n_k}, n_i in
    [2, n_max], validated against all members of e up to `limit`."""
    if min(k_max, n_max, limit) < 1:
        raise PreconditionError("k_max, n_max and limit must be >= 1")
    budget = max(budget or DEFAULT_BUDGET, limit)
    members, complete = enumerate_upto(e, limit, budget)
    if not complete:
        raise IncompleteEnumerationError(
            f"members of {render(e)} up to {limit} contain Unknown verdicts"
        )
    sc = syntactic_cover(e)
    for k in range(1, k_max + 1):
        for combo in combinations(range(2, n_max + 1), k):
            if all(any(m % n == 0 for n in combo) for m in members):
                structural = sc is not None and all(
                    any(c % n == 0 for n in combo) for c in sc
                )
                return CoveringCertificate(frozenset(combo), e, limit, structural)
    return None


def is_n_free(e: SetExpr, budget: int = DEFAULT_BUDGET) -> Verdict:
    """Can no finite set of moduli >= 2 cover e?

    Proved requires a structural infinite-antichain rule; bounded evidence
    alone yields UnknownAtBound.
    """
    sc = syntactic_cover(e)
    if sc is not None:
        cert = CoveringCertificate(sc, e, budget, structural=True)
        return refuted(budget, cert)
    if has_infinite_antichain(e):
        sample = find_antichain_of_size(e, 4, min(budget, 10**4))
        cert = {
            "rule": "infinite-antichain",
            "sample": list(sample.witness) if sample else [],
        }
        return proved(budget, cert)
    scan_limit = min(budget, 10**3)
    used: set[int] = set()
    largest: list[int] = []
    for m in range(1, scan_limit + 1):
        sup = arith.prime_support(m)
        if used.isdisjoint(sup) and member(e, m, budget).proved:
            largest.append(m)
            used |= sup
    best_cover = None
    try:
        best_cover = covering_witness(e, 3, 10, scan_limit, budget)
    except IncompleteEnumerationError:
        pass
    cert = {
        "largest_antichain": largest,
        "best_cover": sorted(best_cover.covers) if best_cover else None,
    }
    return unknown(budget, cert)


def extend_antichain(
    e: SetExpr, x: set[int] | frozenset[int] | list[int], limit: int,
    budget: Optional[int] = None,
) -> Optional[int]:
    """Least member of e up to `limit` coprime to every element of x."""
    _check_pairwise_coprime(x)
    budget = max(budget or DEFAULT_BUDGET, limit)
    xs = sorted(x)
    for m in range(1, limit + 1):
        v = member(e, m, budget)
        if v.unknown:
            raise IncompleteEnumerationError(
                f"membership of {m} in {render(e)} is Unknown at budget {budget}"
            )
        if v.proved and all(math.gcd(m, y) == 1 for y in xs):
            return m
    return None


@dataclass(frozen=True)
class LcmWitness:
    a: int
    b: int
    value: int

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "lcm": self.value}


def lcm_extension(
    a_expr: SetExpr,
    b_expr: SetExpr,
    x: set[int] | frozenset[int] | list[int],
    limit: int,
    budget: Optional[int] = None,
) -> Optional[LcmWitness]:
    """Extend the pairwise-coprime set x inside the intersection of two
    upward-closed sets: pick least a in A and b in B coprime to x and return
    lcm(a, b), which lies in both by upward closure."""
    budget = max(budget or DEFAULT_BUDGET, limit)
    for name, expr in (("A", a_expr), ("B", b_expr)):
        if not is_upward_closed(expr, budget).proved:
            raise PreconditionError(f"{name} = {render(expr)} is not proved upward closed")
    _check_pairwise_coprime(x)
    a = extend_antichain(a_expr, x, limit, budget)
    if a is None:
        return None
    b = extend_antichain(b_expr, x, limit, budget)
    if b is None:
        return None
    _, l, _ = arith.coprime_lcm(a, b)
    return LcmWitness(a, b, l)
