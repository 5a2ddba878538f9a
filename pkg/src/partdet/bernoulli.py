"""Bernoulli numbers, Bernoulli polynomials and Bernoulli-Barnes numbers.

Sign convention: ``B_1 = -1/2``, i.e. the numbers are the Taylor coefficients
of ``z / (e^z - 1)``. Some libraries use ``B_1 = +1/2``; nothing here does.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Sequence

from .rational import as_rational

__all__ = [
    "UniPoly",
    "bernoulli_number",
    "bernoulli_poly",
    "bernoulli_poly_eval",
    "bernoulli_barnes_number",
    "bernoulli_barnes_by_compositions",
    "bernoulli_barnes_by_series",
    "compositions",
]


class UniPoly:
    """Dense univariate polynomial over Q; ``coeffs[k]`` multiplies ``x**k``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x) -> Fraction:
        x = as_rational(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UniPoly(x + y for x, y in zip(a, b))

    def __neg__(self) -> "UniPoly":
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            s = as_rational(other)
            return UniPoly(c * s for c in self.coeffs)
        if self.is_zero() or other.is_zero():
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "UniPoly":
        s = as_rational(scalar)
        return UniPoly(c / s for c in self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "UniPoly(0)"
        parts = [f"{c}*x^{k}" for k, c in enumerate(self.coeffs) if c]
        return "UniPoly(" + " + ".join(reversed(parts)) + ")"


_BERNOULLI: list[Fraction] = [Fraction(1)]
_BERNOULLI_LOCK = threading.Lock()


def bernoulli_number(j: int) -> Fraction:
    """B_j with B_1 = -1/2.

    Uses ``sum_{k=0}^{n} C(n+1, k) B_k = 0`` and a grow-only cache.
    """
    if j < 0:
        raise ValueError("j must be nonnegative")
    cache = _BERNOULLI
    if j < len(cache):
        return cache[j]
    with _BERNOULLI_LOCK:
        while len(cache) <= j:
            n = len(cache)
            if n > 1 and n % 2:
                cache.append(Fraction(0))
                continue
            s = sum((comb(n + 1, k) * cache[k] for k in range(n)), Fraction(0))
            cache.append(-s / (n + 1))
    return cache[j]


@lru_cache(maxsize=None)
def bernoulli_poly(n: int) -> UniPoly:
    """B_n(x) = sum_k C(n, k) B_{n-k} x^k; monic of degree n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return UniPoly(comb(n, k) * bernoulli_number(n - k) for k in range(n + 1))


def bernoulli_poly_eval(n: int, x) -> Fraction:
    return bernoulli_poly(n)(x)


def compositions(total: int, parts: int):
    """Yield all weak compositions of ``total`` into ``parts`` nonnegative parts."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def _check_parts(a: Sequence[int]) -> tuple[int, ...]:
    a = tuple(int(x) for x in a)
    if not a or any(x < 1 for x in a):
        raise ValueError(f"parts must be a nonempty vector of positive integers, got {a}")
    return a


def bernoulli_barnes_by_compositions(j: int, a: Sequence[int]) -> Fraction:
    a = _check_parts(a)
    jfact = factorial(j)
    total = Fraction(0)
    for comp in compositions(j, len(a)):
        term = Fraction(jfact)
        for i, ai in zip(comp, a):
            b = bernoulli_number(i)
            if not b:
                term = Fraction(0)
                break
            term = term * b / factorial(i) * Fraction(ai) ** (i - 1)
        total += term
    return total


def bernoulli_barnes_by_series(j: int, a: Sequence[int]) -> Fraction:
    """Coefficient extraction from prod_i z/(e^{a_i z} - 1), truncated at z^j."""
    a = _check_parts(a)
    series = [Fraction(1)] + [Fraction(0)] * j
    for ai in a:
        factor = [bernoulli_number(k) * Fraction(ai) ** (k - 1) / factorial(k) for k in range(j + 1)]
        series = [
            sum((series[i] * factor[k - i] for i in range(k + 1)), Fraction(0))
            for k in range(j + 1)
        ]
    return series[j] * factorial(j)


def bernoulli_barnes_number(j: int, a: Sequence[int]) -> Fraction:
    """B_j(a) = B_j(0; a), the Bernoulli-Barnes number of the parts ``a``."""
    if j < 0:
        raise ValueError("j must be nonnegative")
    return bernoulli_barnes_by_series(j, a)
