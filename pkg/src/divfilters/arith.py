"""Exact integer arithmetic substrate: primes, factorization, Omega-counting,
gcd/lcm/coprimality.

All naturals here are 1-based: 0 is out of domain everywhere. Omega(1) = 0,
so 1 sits alone on level 0 of the prime-factor-count hierarchy.

The smallest-prime-factor sieve is grown on demand under a lock; growing it
is idempotent, so concurrent callers always observe identical results.
"""

from __future__ import annotations

import math
import threading
from bisect import bisect_right
from dataclasses import dataclass

from .errors import BudgetExceededError, PreconditionError

# Values above SIEVE_CAP**2 cannot be factored by trial division over the
# sieved primes and are rejected with an explicit error.
DEFAULT_SIEVE_CAP = 10**6


class _Sieve:
    """Smallest-prime-factor sieve, grown in powers of two."""

    def __init__(self, cap: int = DEFAULT_SIEVE_CAP):
        self.cap = cap
        self._lock = threading.Lock()
        self._limit = 0
        self._spf: list[int] = []
        self._primes: list[int] = []
        self.ensure(1 << 10)

    def ensure(self, n: int) -> None:
        if n <= self._limit:
            return
        if n > self.cap:
            raise BudgetExceededError(
                f"sieve request {n} exceeds configured cap {self.cap}"
            )
        with self._lock:
            if n <= self._limit:
                return
            limit = self._limit or 1
            while limit < n:
                limit *= 2
            limit = min(limit, self.cap)
            spf = list(range(limit + 1))
            for p in range(2, math.isqrt(limit) + 1):
                if spf[p] == p:
                    for q in range(p * p, limit + 1, p):
                        if spf[q] == q:
                            spf[q] = p
            primes = [p for p in range(2, limit + 1) if spf[p] == p]
            # publish atomically; readers never see a partial sieve
            self._spf = spf
            self._primes = primes
            self._limit = limit

    @property
    def limit(self) -> int:
        return self._limit

    def spf(self, m: int) -> int:
        self.ensure(m)
        return self._spf[m]

    def primes_upto(self, m: int) -> list[int]:
        self.ensure(max(m, 2))
        return self._primes[: bisect_right(self._primes, m)]

    def is_prime(self, m: int) -> bool:
        if m < 2:
            return False
        if m <= self._limit:
            return self._spf[m] == m
        if m <= self.cap:
            self.ensure(m)
            return self._spf[m] == m
        return self._trial_is_prime(m)

    def _trial_is_prime(self, m: int) -> bool:
        root = math.isqrt(m)
        if root > self.cap:
            raise BudgetExceededError(
                f"primality of {m} needs trial division past cap {self.cap}"
            )
        self.ensure(root)
        for p in self._primes:
            if p > root:
                break
            if m % p == 0:
                return False
        return True

    def nth_prime(self, i: int) -> int:
        if i < 1:
            raise PreconditionError("prime index must be >= 1")
        while len(self._primes) < i:
            if self._limit >= self.cap:
                raise BudgetExceededError(
                    f"nth_prime({i}) exceeds sieve cap {self.cap}"
                )
            self.ensure(min(self._limit * 2, self.cap))
        return self._primes[i - 1]

    def prime_index(self, p: int) -> int:
        """1-based index of the prime p; raises if p is not prime."""
        if not self.is_prime(p):
            raise PreconditionError(f"{p} is not prime")
        if p > self.cap:
            raise BudgetExceededError(
                f"prime_index({p}) exceeds sieve cap {self.cap}"
            )
        self.ensure(p)
        return bisect_right(self._primes, p)


_SIEVE = _Sieve()


@dataclass(frozen=True)
class Factorization:
    """Prime factorization of a natural number >= 1.

    factors is an ascending tuple of (prime, exponent) pairs with distinct
    primes; the empty tuple encodes value == 1.
    """

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        for p, e in self.factors:
            prod *= p**e
        if prod != self.value:
            raise ValueError("factor product does not equal value")


def _check_natural(m: int, name: str = "m") -> None:
    if not isinstance(m, int) or m < 1:
        raise PreconditionError(f"{name} must be a natural number >= 1, got {m!r}")


def factorize(m: int) -> Factorization:
    """Factor m >= 1 into (prime, exponent) pairs, ascending by prime."""
    _check_natural(m)
    if m == 1:
        return Factorization(1, ())
    pairs: list[tuple[int, int]] = []
    n = m
    if n <= _SIEVE.cap:
        _SIEVE.ensure(n)
        while n > 1:
            p = _SIEVE.spf(n)
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            pairs.append((p, e))
        return Factorization(m, tuple(pairs))
    # trial division past the sieve cap; the cofactor left after stripping
    # all primes <= cap is prime whenever its square root fits under cap
    root = min(math.isqrt(n), _SIEVE.cap)
    for p in _SIEVE.primes_upto(root):
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            pairs.append((p, e))
    if n > 1:
        if math.isqrt(n) > _SIEVE.cap:
            raise BudgetExceededError(
                f"factorize({m}) needs trial division past cap {_SIEVE.cap}"
            )
        pairs.append((n, 1))
    pairs.sort()
    return Factorization(m, tuple(pairs))


def omega(m: int) -> int:
    """Number of prime factors of m counted with multiplicity; omega(1) = 0."""
    return sum(e for _, e in factorize(m).factors)


def prime_support(m: int) -> frozenset[int]:
    """The set of distinct primes dividing m."""
    return frozenset(p for p, _ in factorize(m).factors)


def coprime_lcm(a: int, b: int) -> tuple[int, int, bool]:
    """Return (gcd, lcm, coprime) for a, b >= 1."""
    _check_natural(a, "a")
    _check_natural(b, "b")
    g = math.gcd(a, b)
    return g, a * b // g, g == 1


def is_prime(m: int) -> bool:
    if m < 1:
        raise PreconditionError(f"m must be >= 1, got {m!r}")
    return _SIEVE.is_prime(m)


def primes_upto(m: int) -> list[int]:
    """All primes <= m, ascending."""
    _check_natural(m)
    if m > _SIEVE.cap:
        raise BudgetExceededError(f"primes_upto({m}) exceeds cap {_SIEVE.cap}")
    return _SIEVE.primes_upto(m)


def nth_prime(i: int) -> int:
    """The i-th prime, 1-based: nth_prime(1) == 2."""
    return _SIEVE.nth_prime(i)


def prime_index(p: int) -> int:
    """1-based index of the prime p."""
    return _SIEVE.prime_index(p)


def divisors(m: int) -> list[int]:
    """All divisors of m, ascending."""
    fac = factorize(m)
    divs = [1]
    for p, e in fac.factors:
        divs = [d * p**k for d in divs for k in range(e + 1)]
    divs.sort()
    return divs
