from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import zip_longest
from typing import List, NamedTuple, Sequence, Tuple

from algebra.arith import require_prime
from algebra.matrices import DimensionError, IntMatrix, det, rank_mod_p

logger = logging.getLogger(__name__)


class ZeroPolynomialError(ValueError):
    pass


class NotMonicError(ValueError):
    pass


class ModulusMismatchError(ValueError):
    pass


def _strip(coeffs: Sequence[int]) -> Tuple[int, ...]:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _render(coeffs: Sequence[int]) -> str:
    terms: List[str] = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            power = "x" if k == 1 else f"x^{k}"
            body = power if mag == 1 else f"{mag}*{power}"
        if not terms:
            terms.append(f"-{body}" if c < 0 else body)
        else:
            terms.append(f"- {body}" if c < 0 else f"+ {body}")
    return " ".join(terms) if terms else "0"


@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial, coefficients lowest degree first."""

    coeffs: Tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _strip(int(c) for c in self.coeffs))

    @classmethod
    def from_high(cls, coeffs: Sequence[int]) -> "IntPoly":
        """Build from highest-degree-first coefficients."""
        return cls(tuple(reversed(coeffs)))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def is_monic(self) -> bool:
        return self.leading == 1

    def coefficient(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __add__(self, other: "IntPoly") -> "IntPoly":
        return IntPoly(tuple(a + b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=0)))

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return IntPoly(tuple(a - b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=0)))

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-a for a in self.coeffs))

    def __mul__(self, other: "IntPoly | int") -> "IntPoly":
        if isinstance(other, int):
            return IntPoly(tuple(other * a for a in self.coeffs))
        if self.is_zero or other.is_zero:
            return IntPoly(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(tuple(out))

    __rmul__ = __mul__

    def __call__(self, x: int) -> int:
        return eval_poly(self, x)

    def shift(self, k: int) -> "IntPoly":
        """Multiply by x^k."""
        return IntPoly((0,) * k + self.coeffs) if self.coeffs else self

    def to_list(self) -> List[int]:
        return list(self.coeffs)

    def __str__(self) -> str:
        return _render(self.coeffs)


@dataclass(frozen=True)
class ModPoly:
    """Polynomial over F_p, coefficients in [0, p) lowest degree first."""

    p: int
    coeffs: Tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _strip(c % self.p for c in self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def _check(self, other: "ModPoly") -> None:
        if self.p != other.p:
            raise ModulusMismatchError(f"moduli differ: {self.p} vs {other.p}")

    def monic(self) -> "ModPoly":
        if self.is_zero:
            return self
        inv = pow(self.leading, -1, self.p)
        return ModPoly(self.p, tuple(c * inv for c in self.coeffs))

    def __add__(self, other: "ModPoly") -> "ModPoly":
        self._check(other)
        return ModPoly(self.p, tuple(a + b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=0)))

    def __sub__(self, other: "ModPoly") -> "ModPoly":
        self._check(other)
        return ModPoly(self.p, tuple(a - b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=0)))

    def __mul__(self, other: "ModPoly") -> "ModPoly":
        self._check(other)
        if self.is_zero or other.is_zero:
            return ModPoly(self.p, ())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return ModPoly(self.p, tuple(out))

    def __divmod__(self, other: "ModPoly") -> Tuple["ModPoly", "ModPoly"]:
        self._check(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quot = [0] * max(len(rem) - len(other.coeffs) + 1, 0)
        inv = pow(other.leading, -1, self.p)
        dg = other.degree
        for k in range(len(rem) - 1, dg - 1, -1):
            c = rem[k] * inv % self.p
            if c:
                quot[k - dg] = c
                for j, b in enumerate(other.coeffs):
                    rem[k - dg + j] = (rem[k - dg + j] - c * b) % self.p
        return ModPoly(self.p, tuple(quot)), ModPoly(self.p, tuple(rem))

    def __mod__(self, other: "ModPoly") -> "ModPoly":
        return divmod(self, other)[1]

    def derivative(self) -> "ModPoly":
        return ModPoly(self.p, tuple(k * c for k, c in enumerate(self.coeffs))[1:])

    def lift(self) -> IntPoly:
        """Canonical integer lift with coefficients in [0, p)."""
        return IntPoly(self.coeffs)

    def __str__(self) -> str:
        return f"{_render(self.coeffs)} (mod {self.p})"


def charpoly(m: IntMatrix) -> IntPoly:
    """
    det(xI - m) by Berkowitz's division-free algorithm.

    Each step extends the characteristic polynomial of the leading principal
    r x r block to (r+1) x (r+1) by a Toeplitz product.
    """
    if not m.is_square:
        raise DimensionError(f"charpoly of a {m.rows}x{m.cols} matrix")
    n = m.rows
    if n == 0:
        return IntPoly((1,))
    a = m.to_rows()
    vect = [1, -a[0][0]]  # highest degree first
    for r in range(1, n):
        row = a[r][:r]
        column = [a[i][r] for i in range(r)]
        toeplitz = [1, -a[r][r]]
        v = column
        for _ in range(r):
            toeplitz.append(-sum(x * y for x, y in zip(row, v)))
            v = [sum(a[i][j] * v[j] for j in range(r)) for i in range(r)]
        vect = [
            sum(toeplitz[i - j] * vect[j] for j in range(max(0, i - len(toeplitz) + 1), min(i, len(vect) - 1) + 1))
            for i in range(r + 2)
        ]
    return IntPoly(tuple(reversed(vect)))


def derivative(f: IntPoly) -> IntPoly:
    return IntPoly(tuple(k * c for k, c in enumerate(f.coeffs))[1:])


def eval_poly(f: IntPoly, x: int) -> int:
    acc = 0
    for c in reversed(f.coeffs):
        acc = acc * x + c
    return acc


def substitute_square(f: IntPoly) -> IntPoly:
    """f(x^2)."""
    out = [0] * (2 * len(f.coeffs) - 1) if f.coeffs else []
    for k, c in enumerate(f.coeffs):
        out[2 * k] = c
    return IntPoly(tuple(out))


def poly_of_matrix(f: IntPoly, m: IntMatrix) -> IntMatrix:
    """f(m) by Horner's rule."""
    if not m.is_square:
        raise DimensionError("poly_of_matrix needs a square matrix")
    n = m.rows
    acc = IntMatrix.zeros(n)
    ident = IntMatrix.identity(n)
    for c in reversed(f.coeffs):
        acc = acc @ m + ident.scale(c)
    return acc


def sylvester_matrix(f: IntPoly, g: IntPoly) -> IntMatrix:
    """
    (deg f + deg g) square matrix: deg g shifted rows of f's coefficients,
    then deg f shifted rows of g's, highest degree first.
    """
    if f.is_zero or g.is_zero:
        raise ZeroPolynomialError("Sylvester matrix of the zero polynomial")
    m, n = f.degree, g.degree
    size = m + n
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    rows = []
    for i in range(n):
        rows.append([0] * i + fc + [0] * (size - i - len(fc)))
    for i in range(m):
        rows.append([0] * i + gc + [0] * (size - i - len(gc)))
    return IntMatrix.from_rows(rows) if rows else IntMatrix.zeros(0)


def resultant(f: IntPoly, g: IntPoly) -> int:
    return det(sylvester_matrix(f, g))


def _require_monic(f: IntPoly) -> None:
    if f.is_zero:
        raise ZeroPolynomialError("zero polynomial")
    if not f.is_monic:
        raise NotMonicError(f"polynomial {f} is not monic")


def discriminant(f: IntPoly) -> int:
    """(-1)^(n(n-1)/2) Res(f, f') for monic f of degree n >= 1."""
    _require_monic(f)
    n = f.degree
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    res = resultant(f, derivative(f))
    return -res if (n * (n - 1) // 2) % 2 else res


def reduce_mod_p(f: IntPoly, p: int) -> ModPoly:
    require_prime(p)
    return ModPoly(p, f.coeffs)


def gcd_mod_p(a: ModPoly, b: ModPoly) -> ModPoly:
    """Monic gcd over F_p; gcd(a, 0) = monic(a)."""
    a._check(b)
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def _derivative_gcd(f: IntPoly, p: int) -> ModPoly:
    fp = reduce_mod_p(f, p)
    return gcd_mod_p(fp, fp.derivative())


def has_multiple_factor_mod_p(f: IntPoly, p: int) -> bool:
    """True iff f mod p has a repeated irreducible factor."""
    _require_monic(f)
    return _derivative_gcd(f, p).degree >= 1


class KernelGcdCheck(NamedTuple):
    degree: int
    corank: int
    agree: bool


def sylvester_kernel_vs_gcd(f: IntPoly, p: int) -> KernelGcdCheck:
    """Compare deg gcd(f, f') over F_p with the corank of S(f, f') mod p."""
    _require_monic(f)
    n = f.degree
    if n < 1:
        raise ValueError("needs degree >= 1")
    deg = _derivative_gcd(f, p).degree
    corank = (2 * n - 1) - rank_mod_p(sylvester_matrix(f, derivative(f)), p)
    return KernelGcdCheck(deg, corank, deg == corank)
