"""Finite divisibility chains built from almost-disjoint prime families.

The j-th link is generated by the upward closure of the product set of the
first j family members; consecutive links are related by tilde-divisibility
because a product over a prefix divides the product over an extension.

Only finite chains are modelled. The double invariant checked by
verify_chain: each prime filter below a link divides it, and no link
contains the upward closure of a family member at or above its index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from . import arith
from .errors import BudgetExceededError, PreconditionError
from .filters import FilterPresentation, divides_tilde, make_filter, principal
from .semantics import DEFAULT_BUDGET, member
from .setexpr import (
    Inter,
    Lit,
    Mult,
    PrimesGeom,
    PrimesIdx,
    ProdSet,
    SetExpr,
    Union,
    Up,
    render,
)
from .verdict import Verdict, proved, refuted

MAX_FACTORIAL_ARG = 500


def ad_family(k: int, scheme: str = "residue") -> list[SetExpr]:
    """k pairwise almost-disjoint infinite sets of primes.

    residue: prime-index residue classes mod k (pairwise disjoint).
    tree: branch-prefix families over the binary expansion of the prime
    index; distinct families share exactly the primes at their common
    prefix, a finite nonempty overlap.
    """
    if k < 1:
        raise PreconditionError("k must be >= 1")
    if scheme == "residue":
        return [PrimesIdx(r, k) for r in range(1, k + 1)]
    if scheme == "tree":
        width = max(1, (k - 1).bit_length()) if k > 1 else 0
        family: list[SetExpr] = []
        for j in range(k):
            branch = "1" + format(j, f"0{width}b") if width else "1"
            prefix_indices = {int(branch[:length], 2) for length in range(1, len(branch) + 1)}
            prefix_primes = frozenset(arith.nth_prime(i) for i in prefix_indices)
            tail = PrimesGeom(int(branch, 2), 2)
            family.append(Union(Lit(prefix_primes), tail))
        return family
    raise PreconditionError(f"unknown scheme {scheme!r}")


def _geom_core(c: int, q: int) -> int:
    while c % q == 0:
        c //= q
    return c


def _pair_almost_disjoint(a: SetExpr, b: SetExpr) -> bool:
    """Structural proof that a and b are almost disjoint (finite overlap)."""
    if a == b:
        return False
    if isinstance(a, PrimesIdx) and isinstance(b, PrimesIdx):
        return a.m == b.m and a.r != b.r
    if isinstance(a, Union) and isinstance(b, Union):
        if (
            isinstance(a.left, Lit)
            and isinstance(b.left, Lit)
            and isinstance(a.right, PrimesGeom)
            and isinstance(b.right, PrimesGeom)
            and a.right.q == b.right.q
        ):
            # distinct geometric index tails are disjoint; the finite
            # literal prefixes may overlap freely
            return _geom_core(a.right.c, a.right.q) != _geom_core(b.right.c, b.right.q)
    return False


def verify_almost_disjoint(family: list[SetExpr]) -> Optional[str]:
    """None if the family is structurally verified almost disjoint,
    otherwise a diagnostic naming the offending pair."""
    for i, a in enumerate(family):
        for b in family[i + 1 :]:
            if a == b:
                return f"{render(a)} repeats: infinite self-intersection"
            if not _pair_almost_disjoint(a, b):
                return f"cannot verify almost disjointness of {render(a)} and {render(b)}"
    return None


@dataclass(frozen=True)
class ChainSpec:
    length: int
    family: tuple[SetExpr, ...]
    links: tuple[FilterPresentation, ...]  # length + 1 filters
    prime_filters: tuple[FilterPresentation, ...]
    scheme: str = "custom"

    def to_json(self) -> dict:
        return {
            "k": self.length,
            "scheme": self.scheme,
            "family": [render(a) for a in self.family],
            "links": [f.spec_text() for f in self.links],
        }


def build_chain(
    k: int,
    family: Optional[list[SetExpr]] = None,
    scheme: str = "residue",
    budget: int = DEFAULT_BUDGET,
) -> ChainSpec:
    """Assemble the chain of filters over the first k family members."""
    if k < 0:
        raise PreconditionError("k must be >= 0")
    if family is None:
        family = ad_family(max(k, 1), scheme)
    else:
        scheme = "custom"
    if len(family) < k:
        raise PreconditionError(f"family has {len(family)} members, need {k}")
    used = list(family[:k])
    diagnostic = verify_almost_disjoint(used)
    if diagnostic is not None:
        raise PreconditionError(diagnostic)
    links = [principal(1)]
    for j in range(1, k + 1):
        gen = Up(ProdSet(tuple(used[:j])))
        links.append(make_filter([gen], budget))
    prime_filters = [make_filter([Up(a)], budget) for a in used]
    return ChainSpec(k, tuple(used), tuple(links), tuple(prime_filters), scheme)


@dataclass(frozen=True)
class PairResult:
    beta: int
    alpha: int
    expectation: str  # "divides" | "omits"
    verdict: Verdict
    ok: bool

    def to_json(self) -> dict:
        out = {
            "beta": self.beta,
            "alpha": self.alpha,
            "expectation": self.expectation,
            "ok": self.ok,
        }
        out.update(self.verdict.to_json())
        return out


@dataclass(frozen=True)
class ChainReport:
    pairs: tuple[PairResult, ...]
    passed: bool

    def to_json(self) -> dict:
        return {"passed": self.passed, "pairs": [p.to_json() for p in self.pairs]}


def _avoiding_product_witness(
    chain: ChainSpec, alpha: int, beta: int, limit: int
) -> Optional[int]:
    """A core element of link alpha with no divisor in family member beta:
    the product of one fresh prime per earlier family member, each chosen
    outside member beta."""
    avoid = chain.family[beta]
    used: set[int] = set()
    product = 1
    for source in chain.family[:alpha]:
        pick = None
        idx = 1
        while True:
            p = arith.nth_prime(idx)
            if p > limit:
                break
            if (
                p not in used
                and member(source, p, limit).proved
                and member(avoid, p, limit).refuted
            ):
                pick = p
                break
            idx += 1
        if pick is None:
            return None
        used.add(pick)
        product *= pick
    return product


def verify_chain(chain: ChainSpec, limit: int = 10**6, budget: Optional[int] = None) -> ChainReport:
    """Check both halves of the chain invariant for every index pair."""
    budget = budget or DEFAULT_BUDGET
    results: list[PairResult] = []
    k = chain.length
    for alpha in range(k + 1):
        link = chain.links[alpha]
        for beta in range(k):
            if beta < alpha:
                v = divides_tilde(chain.prime_filters[beta], link, budget)
                results.append(PairResult(beta, alpha, "divides", v, v.proved))
            else:
                v = _omission_verdict(chain, alpha, beta, limit, budget)
                results.append(PairResult(beta, alpha, "omits", v, v.refuted))
    return ChainReport(tuple(results), all(r.ok for r in results))


def _omission_verdict(
    chain: ChainSpec, alpha: int, beta: int, limit: int, budget: int
) -> Verdict:
    """Verdict for 'Up(A_beta) belongs to link alpha', expected Refuted.

    Witnesses are built constructively: the minimal core element of a long
    link is a product of many primes and exceeds any scanning bound.
    """
    target = Up(chain.family[beta])
    link = chain.links[alpha]
    if link.principal:
        v = member(target, link.point, budget)
        if v.refuted:
            return refuted(budget, link.point)
        return v
    witness = _avoiding_product_witness(chain, alpha, beta, limit)
    if witness is None:
        from .verdict import unknown

        return unknown(budget, "no avoiding product within limit")
    in_core = member(link.core, witness, budget)
    in_target = member(target, witness, budget)
    if in_core.proved and in_target.refuted:
        return refuted(budget, witness)
    if in_core.proved and in_target.proved:
        return proved(budget, witness)
    from .verdict import unknown

    return unknown(budget, witness)


def max_approx(k: int, budget: int = DEFAULT_BUDGET) -> FilterPresentation:
    """Finite stand-in for the top class: the filter generated by the
    multiple-sets of 1!, 2!, ..., k!. Its core is the multiples of k!, so
    it sits tilde-above every principal point up to k."""
    if k < 1:
        raise PreconditionError("k must be >= 1")
    if k > MAX_FACTORIAL_ARG:
        raise BudgetExceededError(f"factorial argument {k} exceeds cap {MAX_FACTORIAL_ARG}")
    gens = tuple(Mult(math.factorial(j)) for j in range(1, k + 1))
    core: SetExpr = gens[0]
    for g in gens[1:]:
        core = Inter(core, g)
    witness = math.factorial(k)
    assert member(core, witness, budget).proved
    return FilterPresentation("generated", core, gens=gens, fip_witness=witness)
