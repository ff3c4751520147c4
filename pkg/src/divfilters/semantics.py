"""Evaluation semantics for set expressions.

member() is exact (never Unknown) for every expression that contains no
Down node: divisors of m are finitely many, so upward closure is decidable
whenever the inner set is. Down is an unbounded existential and yields
Proved or UnknownAtBound, never Refuted.

The structural-rule tables (upward-closedness, infinitude, subset proofs,
syntactic covers, infinite-antichain rules) are deliberate
under-approximations: anything off-table degrades to bounded search.
"""

from __future__ import annotations

import math
from typing import Optional

from . import arith
from .errors import PreconditionError
from .setexpr import (
    EMPTY as EMPTY_SINGLETON,
    N as NAT_SINGLETON,
    Comp,
    Derived,
    Down,
    Empty,
    Factorials,
    Inter,
    Level,
    Lit,
    Mult,
    Nat,
    PowSet,
    Primes,
    PrimesGeom,
    PrimesIdx,
    ProdSet,
    Quot,
    Scale,
    SetExpr,
    Union,
    Up,
)
from .verdict import (
    Verdict,
    proved,
    refuted,
    three_valued_and,
    three_valued_not,
    three_valued_or,
    unknown,
)

DEFAULT_BUDGET = 10**4


def _iroot(m: int, n: int) -> int:
    """Largest x with x**n <= m."""
    if n == 1:
        return m
    if n == 2:
        import math

        return math.isqrt(m)
    x = int(round(m ** (1.0 / n)))
    while x > 1 and x**n > m:
        x -= 1
    while (x + 1) ** n <= m:
        x += 1
    return x


def _is_factorial(m: int) -> Optional[int]:
    """Return k with k! == m, or None."""
    f, k = 1, 1
    while f < m:
        k += 1
        f *= k
    return k if f == m else None


def is_prime_set(e: SetExpr) -> bool:
    """Structural proof that e is a set of primes."""
    if isinstance(e, (Primes, PrimesIdx, PrimesGeom)):
        return True
    if isinstance(e, Lit):
        return all(arith.is_prime(x) for x in e.elements)
    if isinstance(e, Union):
        return is_prime_set(e.left) and is_prime_set(e.right)
    if isinstance(e, Inter):
        return is_prime_set(e.left) or is_prime_set(e.right)
    return False


def is_infinite_prime_set(e: SetExpr) -> bool:
    """Structural proof that e is an infinite set of primes."""
    if isinstance(e, (Primes, PrimesIdx, PrimesGeom)):
        return True
    if isinstance(e, Union):
        if not (is_prime_set(e.left) and is_prime_set(e.right)):
            return False
        return is_infinite_prime_set(e.left) or is_infinite_prime_set(e.right)
    return False


def member(e: SetExpr, m: int, budget: int = DEFAULT_BUDGET) -> Verdict:
    """Three-valued membership of m in the set denoted by e."""
    if budget < 1:
        raise PreconditionError("budget must be >= 1")
    if m < 1:
        raise PreconditionError("membership is defined on naturals >= 1")
    return _member(e, m, budget)


def _member(e: SetExpr, m: int, budget: int) -> Verdict:
    if isinstance(e, Mult):
        return proved(budget) if m % e.n == 0 else refuted(budget)
    if isinstance(e, Lit):
        return proved(budget) if m in e.elements else refuted(budget)
    if isinstance(e, Nat):
        return proved(budget)
    if isinstance(e, Empty):
        return refuted(budget)
    if isinstance(e, Primes):
        return proved(budget) if arith.is_prime(m) else refuted(budget)
    if isinstance(e, Level):
        return proved(budget) if arith.omega(m) == e.n else refuted(budget)
    if isinstance(e, PrimesIdx):
        if not arith.is_prime(m):
            return refuted(budget)
        idx = arith.prime_index(m)
        return proved(budget, idx) if (idx - e.r) % e.m == 0 else refuted(budget)
    if isinstance(e, PrimesGeom):
        if not arith.is_prime(m):
            return refuted(budget)
        idx = arith.prime_index(m)
        if idx % e.c != 0:
            return refuted(budget)
        v = idx // e.c
        while v % e.q == 0:
            v //= e.q
        return proved(budget, idx) if v == 1 else refuted(budget)
    if isinstance(e, Factorials):
        k = _is_factorial(m)
        return proved(budget, k) if k is not None else refuted(budget)
    if isinstance(e, Up):
        inner = e.inner
        # common fast shapes: finite generator set / principal generator
        if isinstance(inner, Lit):
            for s in sorted(inner.elements):
                if m % s == 0:
                    return proved(budget, s)
            return refuted(budget)
        if isinstance(inner, Mult):
            return proved(budget, inner.n) if m % inner.n == 0 else refuted(budget)
        saw_unknown = False
        for d in arith.divisors(m):
            v = _member(inner, d, budget)
            if v.proved:
                return proved(budget, d)
            if v.unknown:
                saw_unknown = True
        return unknown(budget) if saw_unknown else refuted(budget)
    if isinstance(e, Down):
        k = 1
        while k * m <= budget:
            v = _member(e.inner, k * m, budget)
            if v.proved:
                return proved(budget, k * m)
            k += 1
        # the search space is unbounded above; finiteness cannot be refuted
        return unknown(budget)
    if isinstance(e, Quot):
        return _member(e.inner, m * e.n, budget)
    if isinstance(e, Scale):
        if m % e.n != 0:
            return refuted(budget)
        return _member(e.inner, m // e.n, budget)
    if isinstance(e, Comp):
        return three_valued_not(_member(e.inner, m, budget))
    if isinstance(e, Union):
        left = _member(e.left, m, budget)
        if left.proved:
            return left
        return three_valued_or(left, _member(e.right, m, budget))
    if isinstance(e, Inter):
        left = _member(e.left, m, budget)
        if left.refuted:
            return left
        return three_valued_and(left, _member(e.right, m, budget))
    if isinstance(e, PowSet):
        x = _iroot(m, e.n)
        if x**e.n != m:
            return refuted(budget)
        v = _member(e.base, x, budget)
        if v.proved:
            return proved(budget, x)
        return v
    if isinstance(e, ProdSet):
        return _prodset_member(e, m, budget)
    if isinstance(e, Derived):
        return e.fn(m, budget)
    raise TypeError(f"unknown node {e!r}")


def _prodset_member(e: ProdSet, m: int, budget: int) -> Verdict:
    args = e.args
    k = len(args)
    if k == 1:
        return _member(args[0], m, budget)
    if all(is_prime_set(a) for a in args):
        # m must be a product of k distinct primes matched one per argument
        fac = arith.factorize(m)
        if any(exp != 1 for _, exp in fac.factors) or len(fac.factors) != k:
            return refuted(budget)
        primes = [p for p, _ in fac.factors]
        matched = _match(primes, args, budget)
        if matched is not None:
            return proved(budget, tuple(matched))
        return refuted(budget)
    return _prodset_backtrack(args, m, budget)


def _match(primes: list[int], args: tuple[SetExpr, ...], budget: int):
    """Assign each argument set a distinct prime from `primes` (exact sets)."""
    k = len(args)
    accept = [
        [p for p in primes if _member(args[i], p, budget).proved] for i in range(k)
    ]
    order = sorted(range(k), key=lambda i: len(accept[i]))
    used: set[int] = set()
    chosen: dict[int, int] = {}

    def go(j: int) -> bool:
        if j == k:
            return True
        i = order[j]
        for p in accept[i]:
            if p not in used:
                used.add(p)
                chosen[i] = p
                if go(j + 1):
                    return True
                used.discard(p)
                del chosen[i]
        return False

    if go(0):
        return tuple(chosen[i] for i in range(k))
    return None


def _prodset_backtrack(args: tuple[SetExpr, ...], m: int, budget: int) -> Verdict:
    """General product matching: factor m into pairwise-distinct parts, one
    member per argument set, with three-valued propagation."""
    saw_unknown = False

    def go(i: int, remaining: int, used: tuple[int, ...]):
        nonlocal saw_unknown
        if i == len(args) - 1:
            if remaining in used:
                return None
            v = _member(args[i], remaining, budget)
            if v.proved:
                return used + (remaining,)
            if v.unknown:
                saw_unknown = True
            return None
        for d in arith.divisors(remaining):
            if d in used:
                continue
            v = _member(args[i], d, budget)
            if v.unknown:
                saw_unknown = True
                continue
            if v.refuted:
                continue
            result = go(i + 1, remaining // d, used + (d,))
            if result is not None:
                return result
        return None

    witness = go(0, m, ())
    if witness is not None:
        return proved(budget, witness)
    return unknown(budget) if saw_unknown else refuted(budget)


def enumerate_upto(
    e: SetExpr, limit: int, budget: int = DEFAULT_BUDGET
) -> tuple[list[int], bool]:
    """Ascending Proved members of e up to `limit`, plus a completeness flag.

    The flag is False iff some m <= limit evaluated UnknownAtBound.
    """
    if limit > budget:
        raise PreconditionError("enumeration limit must not exceed the budget")
    members: list[int] = []
    complete = True
    for m in range(1, limit + 1):
        v = _member(e, m, budget)
        if v.proved:
            members.append(m)
        elif v.unknown:
            complete = False
    return members, complete


# --- upward closedness ------------------------------------------------------

def _structurally_up_closed(e: SetExpr) -> bool:
    if isinstance(e, (Nat, Empty, Mult, Up)):
        return True
    if isinstance(e, (Union, Inter)):
        return _structurally_up_closed(e.left) and _structurally_up_closed(e.right)
    if isinstance(e, Derived):
        return e.upward_closed
    return False


def is_upward_closed(e: SetExpr, budget: int = DEFAULT_BUDGET) -> Verdict:
    """Is the denoted set closed under taking multiples?"""
    if _structurally_up_closed(e):
        return proved(budget, "structural")
    for m in range(1, budget + 1):
        if not _member(e, m, budget).proved:
            continue
        k = 2
        while k * m <= budget:
            if _member(e, k * m, budget).refuted:
                return refuted(budget, (m, k * m))
            k += 1
    return unknown(budget)


# --- infinitude -------------------------------------------------------------

def _structurally_infinite(e: SetExpr) -> bool:
    if isinstance(e, (Nat, Primes, Mult, PrimesIdx, PrimesGeom, Factorials)):
        return True
    if isinstance(e, Level):
        return e.n >= 1
    if isinstance(e, (Up, Down)):
        return _structurally_infinite(e.inner)
    if isinstance(e, Scale):
        return _structurally_infinite(e.inner)
    if isinstance(e, Union):
        return _structurally_infinite(e.left) or _structurally_infinite(e.right)
    if isinstance(e, PowSet):
        return is_infinite_prime_set(e.base)
    if isinstance(e, ProdSet):
        return all(is_infinite_prime_set(a) for a in e.args)
    if isinstance(e, Derived):
        return e.infinite
    return False


def _structurally_finite(e: SetExpr) -> bool:
    if isinstance(e, (Empty, Lit)):
        return True
    if isinstance(e, Union):
        return _structurally_finite(e.left) and _structurally_finite(e.right)
    if isinstance(e, Inter):
        return _structurally_finite(e.left) or _structurally_finite(e.right)
    if isinstance(e, (Scale, PowSet, Quot)):
        inner = e.inner if isinstance(e, (Scale, Quot)) else e.base
        return _structurally_finite(inner)
    if isinstance(e, ProdSet):
        return all(_structurally_finite(a) for a in e.args)
    return False


def is_infinite(e: SetExpr, budget: int = DEFAULT_BUDGET) -> Verdict:
    """Is the denoted set infinite? Decided structurally or left Unknown."""
    if _structurally_infinite(e):
        return proved(budget, "structural")
    if _structurally_finite(e):
        return refuted(budget, "structural")
    count = sum(1 for m in range(1, budget + 1) if _member(e, m, budget).proved)
    return unknown(budget, count)


# --- Up(B)/m case rule for finite prime B ------------------------------------

def quotient_case_rule(primes: frozenset[int] | set[int], m: int) -> SetExpr:
    """Collapse Up({primes})/m to either N or Up({primes}).

    The quotient equals N exactly when some listed prime divides m.
    """
    if m < 1:
        raise PreconditionError("m must be >= 1")
    bad = [p for p in primes if not arith.is_prime(p)]
    if bad:
        raise PreconditionError(f"non-prime elements in B: {sorted(bad)}")
    if any(m % p == 0 for p in primes):
        return Nat()
    return Up(Lit(frozenset(primes)))


# --- structural subset proofs -------------------------------------------------

def simplify(e: SetExpr) -> SetExpr:
    """Bottom-up rewriting to a small canonical-ish form; used so the
    structural subset rules can fire through Scale/Quot/Up wrappers.
    Rewrites preserve the denoted set exactly."""
    if isinstance(e, (Comp, Up, Down)):
        e = type(e)(simplify(e.inner))
    elif isinstance(e, (Quot, Scale)):
        e = type(e)(simplify(e.inner), e.n)
    elif isinstance(e, (Union, Inter)):
        e = type(e)(simplify(e.left), simplify(e.right))
    elif isinstance(e, PowSet):
        e = PowSet(simplify(e.base), e.n)
    elif isinstance(e, ProdSet):
        e = ProdSet(tuple(simplify(a) for a in e.args))
    if isinstance(e, Up) and _structurally_up_closed(e.inner):
        return e.inner
    if isinstance(e, Scale):
        if e.n == 1:
            return e.inner
        if isinstance(e.inner, (Union, Inter)):
            # n(A op B) = nA op nB: both sides require n | x and x/n in each part
            kind = type(e.inner)
            return kind(
                simplify(Scale(e.inner.left, e.n)),
                simplify(Scale(e.inner.right, e.n)),
            )
        if isinstance(e.inner, Mult):
            return Mult(e.inner.n * e.n)
        if isinstance(e.inner, Lit):
            return Lit(frozenset(e.n * x for x in e.inner.elements))
        if isinstance(e.inner, Scale):
            return Scale(e.inner.inner, e.inner.n * e.n)
        if isinstance(e.inner, Nat):
            return Mult(e.n)
        if isinstance(e.inner, Empty):
            return EMPTY_SINGLETON
    if isinstance(e, Quot):
        if e.n == 1:
            return e.inner
        if isinstance(e.inner, Mult):
            return Mult(e.inner.n // math.gcd(e.inner.n, e.n))
        if isinstance(e.inner, Lit):
            elems = frozenset(x // e.n for x in e.inner.elements if x % e.n == 0)
            return Lit(elems) if elems else EMPTY_SINGLETON
        if isinstance(e.inner, Quot):
            return Quot(e.inner.inner, e.inner.n * e.n)
        if isinstance(e.inner, (Nat, Empty)):
            return e.inner
        if isinstance(e.inner, Up) and isinstance(e.inner.inner, Lit):
            gens = e.inner.inner.elements
            if any(e.n % s == 0 for s in gens):
                return NAT_SINGLETON
            if all(arith.is_prime(s) for s in gens):
                # primes not dividing n are coprime to it: s | m*n iff s | m
                return e.inner
    return e


def _as_up(e: SetExpr) -> Optional[Up]:
    """View e as an upward closure when one is syntactically evident."""
    if isinstance(e, Up):
        return e
    if isinstance(e, Mult):
        return Up(Lit(frozenset({e.n})))
    if isinstance(e, Nat):
        return Up(Lit(frozenset({1})))
    return None


def structurally_subset(a: SetExpr, b: SetExpr, budget: int = DEFAULT_BUDGET, _depth: int = 0) -> bool:
    """True when a documented structural rule proves a <= b (set inclusion).

    False means "no rule applied", never "refuted".
    """
    if _depth > 40:
        return False
    if _depth == 0:
        a, b = simplify(a), simplify(b)
    if a == b:
        return True
    if isinstance(b, Nat):
        return True
    if isinstance(a, Empty):
        return True
    sub = lambda x, y: structurally_subset(x, y, budget, _depth + 1)
    if isinstance(a, Lit):
        return all(_member(b, x, budget).proved for x in a.elements)
    if isinstance(a, Union):
        if sub(a.left, b) and sub(a.right, b):
            return True
    if isinstance(a, Inter):
        if sub(a.left, b) or sub(a.right, b):
            return True
    if isinstance(b, Inter):
        if sub(a, b.left) and sub(a, b.right):
            return True
    if isinstance(b, Union):
        if sub(a, b.left) or sub(a, b.right):
            return True
    a_up, b_up = _as_up(a), _as_up(b)
    if b_up is not None:
        y = b_up.inner
        if isinstance(y, Lit) and 1 in y.elements:
            return True  # 1^ is all of N
        if a_up is not None and sub(a_up.inner, b_up):
            return True
        if sub(a, y):
            return True
        if isinstance(a, ProdSet):
            if any(arg == y for arg in a.args):
                return True
            if isinstance(y, ProdSet) and _is_prefix(y.args, a.args):
                return True
        if isinstance(a, PowSet) and a.base == y:
            return True
        if isinstance(a, Scale) and isinstance(y, Scale) and a.n == y.n:
            if sub(a.inner, Up(y.inner)):
                return True
        if isinstance(a, Scale) and isinstance(y, Lit):
            if any(a.n % s == 0 for s in y.elements):
                return True
    if isinstance(a, Scale) and isinstance(b, Scale) and a.n == b.n:
        if sub(a.inner, b.inner):
            return True
    return False


def _is_prefix(short: tuple, long: tuple) -> bool:
    return len(short) <= len(long) and long[: len(short)] == short


# --- covers and antichain structure ------------------------------------------

def syntactic_cover(e: SetExpr) -> Optional[frozenset[int]]:
    """A structurally-proved finite set C of naturals >= 2 such that every
    member of e is divisible by some element of C; None if no rule applies."""
    if isinstance(e, Empty):
        return frozenset({2})
    if isinstance(e, Mult):
        return frozenset({e.n}) if e.n >= 2 else None
    if isinstance(e, Lit):
        if 1 in e.elements:
            return None
        return frozenset(e.elements)
    if isinstance(e, Scale):
        if e.n >= 2:
            return frozenset({e.n})
        return syntactic_cover(e.inner)
    if isinstance(e, Union):
        left, right = syntactic_cover(e.left), syntactic_cover(e.right)
        if left is not None and right is not None:
            return left | right
        return None
    if isinstance(e, Inter):
        left = syntactic_cover(e.left)
        if left is not None:
            return left
        return syntactic_cover(e.right)
    if isinstance(e, Up):
        return syntactic_cover(e.inner)
    if isinstance(e, PowSet):
        return syntactic_cover(e.base)
    if isinstance(e, ProdSet):
        for arg in e.args:
            cover = syntactic_cover(arg)
            if cover is not None:
                return cover
        return None
    return None


def has_infinite_antichain(e: SetExpr) -> bool:
    """Structural proof that e contains an infinite pairwise-coprime family."""
    if is_infinite_prime_set(e):
        return True
    if isinstance(e, PowSet):
        return is_infinite_prime_set(e.base)
    if isinstance(e, ProdSet):
        return all(is_infinite_prime_set(a) for a in e.args)
    if isinstance(e, Union):
        return has_infinite_antichain(e.left) or has_infinite_antichain(e.right)
    if isinstance(e, (Up, Down)):
        return has_infinite_antichain(e.inner)
    if isinstance(e, Scale) and e.n == 1:
        return has_infinite_antichain(e.inner)
    return False
