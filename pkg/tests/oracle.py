"""Independent brute-force oracle for expression membership.

Evaluates the defining predicate of every atom and combinator directly,
sharing no code with the library's evaluator (its own primality test,
its own factor counting). Returns, for an expression and a bound, the
set of members in [1, bound].

For Down the oracle scans multiples up to a separate cap, so its answer
is itself only a lower approximation; comparisons against the library
restrict to decided verdicts there.
"""

from __future__ import annotations

import math
from functools import lru_cache

from divfilters.setexpr import (
    Comp,
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

DOWN_CAP_FACTOR = 10


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@lru_cache(maxsize=None)
def _primes_list(count: int) -> tuple[int, ...]:
    out = []
    n = 2
    while len(out) < count:
        if _is_prime(n):
            out.append(n)
        n += 1
    return tuple(out)


def _big_omega(n: int) -> int:
    count = 0
    d = 2
    while d * d <= n:
        while n % d == 0:
            n //= d
            count += 1
        d += 1
    if n > 1:
        count += 1
    return count


def _factorials_upto(bound: int) -> set[int]:
    out, k, value = set(), 1, 1
    while value <= bound:
        out.add(value)
        k += 1
        value = math.factorial(k)
    return out


def _geometric_indices(c: int, q: int, cap: int) -> set[int]:
    out, idx = set(), c
    while idx <= cap:
        out.add(idx)
        idx *= q
    return out


def _prodset_members(arg_sets: list[set[int]], bound: int) -> set[int]:
    """Products x1*...*xk <= bound, xi from arg_sets[i], pairwise distinct."""
    out: set[int] = set()

    def rec(i: int, product: int, used: tuple[int, ...]):
        if i == len(arg_sets):
            out.add(product)
            return
        for x in arg_sets[i]:
            if product * x > bound:
                continue
            if x in used:
                continue
            rec(i + 1, product * x, used + (x,))

    rec(0, 1, ())
    return out


def oracle_set(e: SetExpr, bound: int) -> set[int]:
    """All members of e in [1, bound], by direct predicate evaluation."""
    universe = range(1, bound + 1)
    if isinstance(e, Nat):
        return set(universe)
    if isinstance(e, Empty):
        return set()
    if isinstance(e, Primes):
        return {m for m in universe if _is_prime(m)}
    if isinstance(e, Lit):
        return {m for m in e.elements if m <= bound}
    if isinstance(e, Mult):
        return set(range(e.n, bound + 1, e.n))
    if isinstance(e, Level):
        return {m for m in universe if _big_omega(m) == e.n}
    if isinstance(e, PrimesIdx):
        primes = []
        n = 2
        while len(primes) < 1 or primes[-1] <= bound:
            if _is_prime(n):
                primes.append(n)
            n += 1
        return {
            p
            for i, p in enumerate(primes, start=1)
            if p <= bound and i % e.m == e.r % e.m
        }
    if isinstance(e, PrimesGeom):
        primes = []
        n = 2
        while len(primes) < 1 or primes[-1] <= bound:
            if _is_prime(n):
                primes.append(n)
            n += 1
        wanted = _geometric_indices(e.c, e.q, len(primes))
        return {p for i, p in enumerate(primes, start=1) if p <= bound and i in wanted}
    if isinstance(e, Factorials):
        return _factorials_upto(bound)
    if isinstance(e, PowSet):
        root_bound = int(round(bound ** (1.0 / e.n))) + 2
        base = oracle_set(e.base, root_bound)
        return {x**e.n for x in base if x**e.n <= bound}
    if isinstance(e, ProdSet):
        arg_sets = [oracle_set(a, bound) for a in e.args]
        return _prodset_members(arg_sets, bound)
    if isinstance(e, Comp):
        return set(universe) - oracle_set(e.inner, bound)
    if isinstance(e, Union):
        return oracle_set(e.left, bound) | oracle_set(e.right, bound)
    if isinstance(e, Inter):
        return oracle_set(e.left, bound) & oracle_set(e.right, bound)
    if isinstance(e, Up):
        base = oracle_set(e.inner, bound)
        out: set[int] = set()
        for a in base:
            out.update(range(a, bound + 1, a))
        return out
    if isinstance(e, Down):
        # must cover every witness the library can reach within its budget
        cap = max(bound * DOWN_CAP_FACTOR, 2 * 10**4)
        base = oracle_set(e.inner, cap)
        return {m for m in universe if any(k % m == 0 for k in base)}
    if isinstance(e, Quot):
        base = oracle_set(e.inner, bound * e.n)
        return {m for m in universe if m * e.n in base}
    if isinstance(e, Scale):
        base = oracle_set(e.inner, bound // e.n if e.n else bound)
        return {e.n * x for x in base if e.n * x <= bound}
    raise NotImplementedError(f"oracle has no rule for {type(e).__name__}")
