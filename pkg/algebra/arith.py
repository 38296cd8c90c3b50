from __future__ import annotations

import logging
import random
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from math import gcd, isqrt
from typing import Dict, List, Optional, Tuple

logger = logging.getLogger(__name__)

# Miller-Rabin with these bases is deterministic below 3.317e24.
_DETERMINISTIC_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_DETERMINISTIC_LIMIT = 3_317_044_064_679_887_385_961_981
_RANDOM_ROUNDS = 64

DEFAULT_RHO_ITERATIONS = 10**8
DEFAULT_TRIAL_BOUND = 10**6


class NotPrimeError(ValueError):
    pass


@dataclass(frozen=True)
class FactorEffort:
    """Budget for one factorization or squarefree decision."""

    rho_iterations: int = DEFAULT_RHO_ITERATIONS
    trial_bound: int = DEFAULT_TRIAL_BOUND
    seed: int = 0

    def to_json(self) -> Dict:
        return {
            "rho_iterations": self.rho_iterations,
            "trial_bound": self.trial_bound,
            "seed": self.seed,
        }


@dataclass
class _Meter:
    limit: int
    used: int = 0

    @property
    def exhausted(self) -> bool:
        return self.used >= self.limit


@dataclass(frozen=True)
class IntFactorization:
    """
    Prime-power decomposition of ``|input|``.

    ``cofactor`` is 1 when the factorization is complete; otherwise it is the
    product of the parts that resisted factoring within the budget.
    """

    input: int
    factors: Tuple[Tuple[int, int], ...]
    cofactor: int = 1
    rho_iterations_used: int = 0
    seed: int = 0

    @property
    def sign(self) -> int:
        return -1 if self.input < 0 else 1

    @property
    def complete(self) -> bool:
        return self.cofactor == 1

    def value(self) -> int:
        out = self.cofactor
        for p, e in self.factors:
            out *= p**e
        return out

    def to_text(self) -> str:
        parts = [str(p) if e == 1 else f"{p}^{e}" for p, e in self.factors]
        if self.cofactor != 1:
            parts.append(f"{self.cofactor}?")
        if not parts:
            parts.append("1")
        text = " * ".join(parts)
        return f"-({text})" if self.sign < 0 else text

    def to_json(self) -> Dict:
        return {
            "input": str(self.input),
            "factors": [{"p": str(p), "e": e} for p, e in self.factors],
            "cofactor": str(self.cofactor),
            "complete": self.complete,
        }


class SquarefreeKind(str, Enum):
    SQUAREFREE = "Squarefree"
    NOT_SQUAREFREE = "NotSquarefree"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class SquarefreeStatus:
    kind: SquarefreeKind
    factorization: IntFactorization
    witness: Optional[int] = None
    witness_is_prime: bool = True

    @property
    def is_squarefree(self) -> bool:
        return self.kind is SquarefreeKind.SQUAREFREE


@lru_cache(maxsize=None)
def small_primes(bound: int) -> Tuple[int, ...]:
    """All primes <= bound (sieve of Eratosthenes)."""
    if bound < 2:
        return ()
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, bound + 1, i)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def _miller_rabin_round(n: int, d: int, r: int, a: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(r - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_probable_prime(n: int) -> bool:
    """
    Miller-Rabin. Deterministic below 3.3e24 through a fixed witness set, above
    that 64 extra rounds with bases drawn from a generator seeded by ``n``.
    """
    if n < 2:
        return False
    for p in _DETERMINISTIC_BASES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    if not all(_miller_rabin_round(n, d, r, a) for a in _DETERMINISTIC_BASES):
        return False
    if n < _DETERMINISTIC_LIMIT:
        return True
    rng = random.Random(n)
    return all(_miller_rabin_round(n, d, r, rng.randrange(2, n - 1)) for _ in range(_RANDOM_ROUNDS))


def require_prime(p: int) -> None:
    if not isinstance(p, int) or not is_probable_prime(p):
        raise NotPrimeError(f"{p} is not prime")


def integer_nth_root(n: int, k: int) -> int:
    """Floor of the k-th root of n >= 0."""
    if n < 0:
        raise ValueError("negative input")
    if n < 2 or k == 1:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def integer_sqrt_exact(n: int) -> Optional[int]:
    """r with r*r == n, or None when n is not a perfect square."""
    if n < 0:
        raise ValueError(f"negative input {n}")
    r = isqrt(n)
    return r if r * r == n else None


def is_perfect_power(n: int) -> Optional[Tuple[int, int]]:
    """(root, k) with root**k == n for the smallest prime k that works, or None."""
    if n < 4:
        return None
    for k in small_primes(n.bit_length()):
        root = integer_nth_root(n, k)
        if root > 1 and root**k == n:
            return root, k
    return None


def _brent_rho(n: int, rng: random.Random, meter: _Meter) -> Optional[int]:
    """One Pollard-Brent walk; returns a nontrivial factor or None."""
    if n % 2 == 0:
        return 2
    y = rng.randrange(1, n)
    c = rng.randrange(1, n)
    m = 128
    g = r = q = 1
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            steps = min(m, r - k)
            for _ in range(steps):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            meter.used += steps
            g = gcd(q, n)
            k += m
            if meter.exhausted and g == 1:
                return None
        r *= 2
    if g == n:
        while True:
            ys = (ys * ys + c) % n
            meter.used += 1
            g = gcd(abs(x - ys), n)
            if g > 1:
                break
    return g if g != n else None


def _split(n: int, rng: random.Random, meter: _Meter, primes: Counter, unresolved: List[int]) -> None:
    if n == 1:
        return
    if is_probable_prime(n):
        primes[n] += 1
        return
    power = is_perfect_power(n)
    if power is not None:
        root, k = power
        sub: Counter = Counter()
        rest: List[int] = []
        _split(root, rng, meter, sub, rest)
        for p, e in sub.items():
            primes[p] += e * k
        unresolved.extend(x for x in rest for _ in range(k))
        return
    while not meter.exhausted:
        d = _brent_rho(n, rng, meter)
        if d is not None and 1 < d < n:
            _split(d, rng, meter, primes, unresolved)
            _split(n // d, rng, meter, primes, unresolved)
            return
    logger.debug("rho budget exhausted on %d-bit cofactor", n.bit_length())
    unresolved.append(n)


def _trial_divide(n: int, bound: int, primes: Counter) -> int:
    for p in small_primes(bound):
        if p * p > n:
            break
        while n % p == 0:
            primes[p] += 1
            n //= p
    else:
        return n
    if n > 1:
        primes[n] += 1
    return 1


def factor_integer(n: int, effort: FactorEffort | None = None) -> IntFactorization:
    """Trial division to ``effort.trial_bound``, then Pollard-Brent within budget."""
    if n == 0:
        raise ValueError("cannot factor 0")
    effort = effort or FactorEffort()
    primes: Counter = Counter()
    rest = _trial_divide(abs(n), effort.trial_bound, primes)
    unresolved: List[int] = []
    meter = _Meter(limit=effort.rho_iterations)
    if rest > 1:
        _split(rest, random.Random(effort.seed), meter, primes, unresolved)

    cofactor = 1
    for part in unresolved:
        cofactor *= part
    # Parts left unresolved may still share primes found elsewhere.
    for p in list(primes):
        while cofactor % p == 0:
            primes[p] += 1
            cofactor //= p
    return IntFactorization(
        input=n,
        factors=tuple(sorted(primes.items())),
        cofactor=cofactor,
        rho_iterations_used=meter.used,
        seed=effort.seed,
    )


def squarefree_status(n: int, effort: FactorEffort | None = None) -> SquarefreeStatus:
    """Classify |n| as squarefree, not squarefree (with witness) or unknown."""
    if n == 0:
        raise ValueError("squarefree status of 0 is undefined")
    fac = factor_integer(n, effort)
    for p, e in fac.factors:
        if e >= 2:
            return SquarefreeStatus(SquarefreeKind.NOT_SQUAREFREE, fac, witness=p)
    if fac.complete:
        return SquarefreeStatus(SquarefreeKind.SQUAREFREE, fac)

    cofactor = fac.cofactor
    power = is_perfect_power(cofactor)
    if power is not None:
        root, _ = power
        return SquarefreeStatus(
            SquarefreeKind.NOT_SQUAREFREE, fac, witness=root, witness_is_prime=is_probable_prime(root)
        )
    for p, _ in fac.factors:
        if cofactor % p == 0:
            return SquarefreeStatus(SquarefreeKind.NOT_SQUAREFREE, fac, witness=p)
    return SquarefreeStatus(SquarefreeKind.UNKNOWN, fac)
