"""Finitely presented filters on N and the operations on them.

A presentation is either principal at a point n (the filter of all sets
containing n) or generated by finitely many set expressions (the filter of
all supersets of their intersection, the core). A finitely generated filter
is fully determined by its core, so tilde-divisibility F |~ G reduces to:
every element of core(G) has a divisor in core(F), i.e. core(G) <= core(F)^.

True free ultrafilters are not finitely presentable and are out of scope;
the operations here are exact on the presentable fragment and return
UnknownAtBound where bounded search cannot decide.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import arith
from .errors import FilterConstructionError, ParseError, PreconditionError
from .semantics import (
    DEFAULT_BUDGET,
    _as_up,
    enumerate_upto,
    is_prime_set,
    is_upward_closed,
    member,
    structurally_subset,
)
from .setexpr import (
    Derived,
    Inter,
    Lit,
    Mult,
    Nat,
    PowSet,
    Primes,
    PrimesGeom,
    PrimesIdx,
    ProdSet,
    Scale,
    SetExpr,
    Up,
    parse_expr,
    render,
)
from .verdict import Verdict, proved, refuted, three_valued_or, unknown


@dataclass(frozen=True)
class FilterPresentation:
    kind: str  # "principal" | "generated"
    core: SetExpr
    point: Optional[int] = None
    gens: tuple[SetExpr, ...] = ()
    fip_witness: Optional[int] = None

    @property
    def principal(self) -> bool:
        return self.kind == "principal"

    def to_json(self) -> dict:
        out = {"kind": self.kind, "core": render(self.core)}
        if self.principal:
            out["point"] = self.point
        else:
            out["generators"] = [render(g) for g in self.gens]
        out["fip_witness"] = self.fip_witness
        return out

    def spec_text(self) -> str:
        if self.principal:
            return f"principal:{self.point}"
        return "gen:[" + ";".join(render(g) for g in self.gens) + "]"

    def __repr__(self):
        return f"FilterPresentation({self.spec_text()})"


def principal(n: int) -> FilterPresentation:
    if n < 1:
        raise PreconditionError("principal point must be >= 1")
    return FilterPresentation("principal", Lit(frozenset({n})), point=n, fip_witness=n)


def _structural_min_member(e: SetExpr) -> Optional[int]:
    """A member of e found without scanning, when the shape admits one."""
    if isinstance(e, Nat):
        return 1
    if isinstance(e, Primes):
        return 2
    if isinstance(e, Lit):
        return min(e.elements) if e.elements else None
    if isinstance(e, Mult):
        return e.n
    if isinstance(e, PrimesIdx):
        return arith.nth_prime(e.r)
    if isinstance(e, PrimesGeom):
        return arith.nth_prime(e.c)
    if isinstance(e, Up):
        return _structural_min_member(e.inner)
    if isinstance(e, Scale):
        inner = _structural_min_member(e.inner)
        return None if inner is None else e.n * inner
    if isinstance(e, PowSet):
        inner = _structural_min_member(e.base)
        return None if inner is None else inner**e.n
    if isinstance(e, ProdSet) and all(is_prime_set(a) for a in e.args):
        used: set[int] = set()
        product = 1
        for arg in e.args:
            pick = None
            idx = 1
            while idx <= 10**4:
                p = arith.nth_prime(idx)
                if p not in used and member(arg, p, DEFAULT_BUDGET).proved:
                    pick = p
                    break
                idx += 1
            if pick is None:
                return None
            used.add(pick)
            product *= pick
        return product
    return None


def make_filter(
    gens: list[SetExpr] | tuple[SetExpr, ...],
    budget: int = DEFAULT_BUDGET,
    allow_unverified: bool = False,
) -> FilterPresentation:
    """Build a generated presentation, verifying the finite intersection
    property by exhibiting a member of the core."""
    gens = tuple(gens)
    if not gens:
        raise PreconditionError("a generated filter needs at least one generator")
    core = gens[0]
    for g in gens[1:]:
        core = Inter(core, g)
    witness = _structural_min_member(core)
    if witness is not None and member(core, witness, budget).proved:
        return FilterPresentation("generated", core, gens=gens, fip_witness=witness)
    saw_unknown = False
    for m in range(1, budget + 1):
        v = member(core, m, budget)
        if v.proved:
            return FilterPresentation("generated", core, gens=gens, fip_witness=m)
        if v.unknown:
            saw_unknown = True
    if allow_unverified:
        return FilterPresentation("generated", core, gens=gens, fip_witness=None)
    if saw_unknown:
        raise FilterConstructionError(
            f"core {render(core)} has no member <= {budget} and some verdicts "
            "are Unknown; pass allow_unverified=True to accept anyway"
        )
    raise FilterConstructionError(
        f"core {render(core)} is empty up to budget {budget}; "
        "the presentation fails the finite intersection property"
    )


def parse_filter_spec(text: str, budget: int = DEFAULT_BUDGET) -> FilterPresentation:
    """Parse "principal:6" or "gen:[mult(2);mult(3)]"."""
    text = text.strip()
    if text.startswith("principal:"):
        body = text[len("principal:") :]
        if not body.isdigit() or int(body) < 1:
            raise ParseError("principal point must be a natural >= 1", len("principal:"))
        return principal(int(body))
    if text.startswith("gen:[") and text.endswith("]"):
        body = text[len("gen:[") : -1]
        parts = [p for p in body.split(";") if p.strip()]
        if not parts:
            raise ParseError("empty generator list", len("gen:["))
        return make_filter([parse_expr(p) for p in parts], budget)
    raise ParseError("filter spec must be 'principal:<n>' or 'gen:[e1;e2;...]'", 0)


def filter_member(
    f: FilterPresentation, e: SetExpr, budget: int = DEFAULT_BUDGET
) -> Verdict:
    """Does the set denoted by e belong to the filter? (e belongs iff it
    contains the core.)"""
    if f.principal:
        return member(e, f.point, budget)
    if structurally_subset(f.core, e, budget):
        return proved(budget, "structural")
    for b in range(1, budget + 1):
        vb = member(f.core, b, budget)
        if not vb.proved:
            continue
        ve = member(e, b, budget)
        if ve.refuted:
            return refuted(budget, b)
    return unknown(budget)


def divides_tilde(
    f: FilterPresentation, g: FilterPresentation, budget: int = DEFAULT_BUDGET
) -> Verdict:
    """Tilde-divisibility on presentations: every element of core(G) must
    have a divisor in core(F). Reduces to ordinary divisibility on
    principal points."""
    if f.principal and g.principal:
        if g.point % f.point == 0:
            return proved(budget, (f.point, g.point))
        return refuted(budget, g.point)
    target = Up(f.core)
    if structurally_subset(g.core, target, budget):
        return proved(budget, "structural")
    for b in range(1, budget + 1):
        if not member(g.core, b, budget).proved:
            continue
        if member(target, b, budget).refuted:
            return refuted(budget, b)
    return unknown(budget)


def product_member(
    f: FilterPresentation,
    g: FilterPresentation,
    e: SetExpr,
    budget: int = DEFAULT_BUDGET,
) -> Verdict:
    """Membership of e in the product filter F*G.

    The product of two generated filters need not be finitely generated, so
    it is never materialized; only membership queries are supported.
    """
    if f.principal and g.principal:
        return member(e, f.point * g.point, budget)
    if f.principal:
        return filter_member(g, Quot_of(e, f.point), budget)
    if g.principal:
        return filter_member(f, Quot_of(e, g.point), budget)
    e_up = _as_up(e)
    if e_up is not None and is_prime_set(e_up.inner):
        # prime-upward sets collapse the product to a union of the factors
        return three_valued_or(
            filter_member(f, e, budget), filter_member(g, e, budget)
        )
    unfold = Derived(
        f"product-unfold:{render(e)}",
        lambda n, b: filter_member(g, Quot_of(e, n), b),
    )
    return filter_member(f, unfold, budget)


def Quot_of(e: SetExpr, n: int) -> SetExpr:
    from .setexpr import Quot

    return e if n == 1 else Quot(e, n)


def _mult_subset_rule(e: SetExpr, n: int, budget: int) -> Optional[Verdict]:
    """Decide whether nN is a subset of e, when a rule applies."""
    if isinstance(e, Mult):
        if n % e.n == 0:
            return proved(budget)
        return refuted(budget, n)
    if is_upward_closed(e, 1).proved:  # structural check only
        v = member(e, n, budget)
        if v.proved:
            return proved(budget)
        if v.refuted:
            return refuted(budget, n)
    return None


def d_set(e: SetExpr, budget: int = DEFAULT_BUDGET) -> Derived:
    """The set {n : nN <= e}, as a queryable predicate. Always upward
    closed: shrinking n to a multiple shrinks nN."""

    def fn(n: int, b: int) -> Verdict:
        ruled = _mult_subset_rule(e, n, b)
        if ruled is not None:
            return ruled
        k = 1
        saw_unknown = False
        while k <= max(1, b // n):
            v = member(e, n * k, b)
            if v.refuted:
                return refuted(b, n * k)
            if v.unknown:
                saw_unknown = True
            k += 1
        return unknown(b)

    return Derived(f"mult-subsets:{render(e)}", fn, upward_closed=True)


def d_member(
    f: FilterPresentation, e: SetExpr, budget: int = DEFAULT_BUDGET
) -> Verdict:
    """Membership of e in the derived filter D(F) = {A : {n : nN <= A} in F}."""
    if is_upward_closed(e, budget).proved and filter_member(f, e, budget).proved:
        # an upward-closed member of F satisfies nN <= E for each n in E
        return proved(budget, "upward-closed member")
    return filter_member(f, d_set(e, budget), budget)


def a_sub_h(e: SetExpr, h: FilterPresentation, budget: int = DEFAULT_BUDGET) -> Derived:
    """{m : e/m in H}, as a queryable predicate."""
    up = is_upward_closed(e, budget).proved

    def fn(m: int, b: int) -> Verdict:
        return filter_member(h, Quot_of(e, m), b)

    return Derived(f"quotients-in-filter:{render(e)}", fn, upward_closed=up)


def scale_filter(f: FilterPresentation, h: int) -> FilterPresentation:
    """The image filter under multiplication by h: core h*core(F).

    Matches the product with the principal filter at h.
    """
    if h < 1:
        raise PreconditionError("scale factor must be >= 1")
    if h == 1:
        return f
    if f.principal:
        return principal(f.point * h)
    core = Scale(f.core, h)
    witness = None if f.fip_witness is None else f.fip_witness * h
    return FilterPresentation("generated", core, gens=(core,), fip_witness=witness)


def _explicit_finite_elements(e: SetExpr) -> Optional[frozenset[int]]:
    if isinstance(e, Lit):
        return e.elements
    from .setexpr import Union as U_, Inter as I_

    if isinstance(e, U_):
        left = _explicit_finite_elements(e.left)
        right = _explicit_finite_elements(e.right)
        if left is not None and right is not None:
            return left | right
        return None
    if isinstance(e, I_):
        left = _explicit_finite_elements(e.left)
        right = _explicit_finite_elements(e.right)
        if left is not None and right is not None:
            return left & right
        return None
    if isinstance(e, Scale):
        inner = _explicit_finite_elements(e.inner)
        return None if inner is None else frozenset(e.n * x for x in inner)
    return None


def interpolation_check(
    f: FilterPresentation, g: FilterPresentation, limit: int,
    budget: Optional[int] = None,
) -> Verdict:
    """Finite shadow of the interpolation property on cores: find
    a, b in core(F) and c in core(G) with a != c != b, a | c and c | b."""
    budget = max(budget or DEFAULT_BUDGET, limit)
    ef = _explicit_finite_elements(f.core)
    eg = _explicit_finite_elements(g.core)
    if ef is not None and eg is not None:
        members_f, members_g = sorted(ef), sorted(eg)
        exhaustive = True
    else:
        members_f, complete_f = enumerate_upto(f.core, limit, budget)
        members_g, complete_g = enumerate_upto(g.core, limit, budget)
        if not (complete_f and complete_g):
            return unknown(budget)
        exhaustive = False
    set_f = set(members_f)
    for c in members_g:
        divs = [a for a in arith.divisors(c) if a in set_f and a != c]
        if not divs:
            continue
        for b in members_f:
            if b != c and b % c == 0:
                return proved(budget, (divs[0], c, b))
    if exhaustive:
        return refuted(budget, "exhaustive over finite cores")
    return unknown(budget)
