"""Sparse multivariate polynomials over Q.

A :class:`MultiPoly` maps exponent tuples to nonzero Fractions.  The number
of variables is fixed at construction and arithmetic between polynomials of
different arity raises instead of silently embedding one ring in the other.
Terms are ordered graded-lexicographically (total degree first, then
lexicographic with ``x_1`` largest).
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from math import comb
from typing import Iterable, Mapping, Sequence

from .bernoulli import bernoulli_number, bernoulli_poly
from .rational import as_rational, format_rational, parse_rational

__all__ = [
    "MultiPoly",
    "NotDivisibleError",
    "elem_sym",
    "complete_hom",
    "divided_diff_bernoulli",
    "divided_diff_bernoulli_recursive",
    "exact_div",
    "vandermonde",
    "is_symmetric",
    "mp_eval",
]

Exponent = tuple[int, ...]


class NotDivisibleError(ArithmeticError):
    """Exact division left a nonzero remainder."""


def grlex_key(exp: Exponent) -> tuple[int, Exponent]:
    return (sum(exp), exp)


class MultiPoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], object] | Iterable = ()):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Exponent, Fraction] = {}
        for exp, c in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent {exp} for {nvars} variables")
            c = as_rational(c)
            if c:
                c = clean.get(exp, 0) + c
                if c:
                    clean[exp] = c
                else:
                    clean.pop(exp, None)
        self.nvars = nvars
        self.terms = clean

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Exponent, Fraction]) -> "MultiPoly":
        # caller guarantees: no zero coefficients, exponent length == nvars
        p = object.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        return p

    @classmethod
    def constant(cls, nvars: int, c=1) -> "MultiPoly":
        c = as_rational(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls._raw(nvars, {})

    @classmethod
    def var(cls, nvars: int, index: int) -> "MultiPoly":
        """The variable ``x_{index+1}`` (0-based ``index``)."""
        if not 0 <= index < nvars:
            raise IndexError(index)
        exp = [0] * nvars
        exp[index] = 1
        return cls._raw(nvars, {tuple(exp): Fraction(1)})

    @classmethod
    def from_univariate(cls, coeffs: Sequence, nvars: int, index: int) -> "MultiPoly":
        terms = {}
        for k, c in enumerate(coeffs):
            c = as_rational(c)
            if c:
                exp = [0] * nvars
                exp[index] = k
                terms[tuple(exp)] = c
        return cls._raw(nvars, terms)

    # basic queries

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_term(self) -> tuple[Exponent, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self.terms, key=grlex_key)
        return exp, self.terms[exp]

    def homogeneous_part(self, degree: int) -> "MultiPoly":
        return MultiPoly._raw(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == degree})

    # arithmetic

    def _check(self, other: "MultiPoly") -> None:
        if self.nvars != other.nvars:
            raise ValueError(f"arity mismatch: {self.nvars} vs {other.nvars} variables")

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return MultiPoly.constant(self.nvars, other)

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s += c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return MultiPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            s = as_rational(other)
            if not s:
                return MultiPoly.zero(self.nvars)
            return MultiPoly._raw(self.nvars, {e: c * s for e, c in self.terms.items()})
        self._check(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly._raw(self.nvars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "MultiPoly":
        s = as_rational(scalar)
        return MultiPoly._raw(self.nvars, {e: c / s for e, c in self.terms.items()})

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = MultiPoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    # variable manipulations

    def permute(self, perm: Sequence[int]) -> "MultiPoly":
        """Substitute ``x_i -> x_{perm[i]}`` (0-based)."""
        if sorted(perm) != list(range(self.nvars)):
            raise ValueError("not a permutation")
        out = {}
        for e, c in self.terms.items():
            new = [0] * self.nvars
            for i, k in enumerate(e):
                new[perm[i]] = k
            out[tuple(new)] = c
        return MultiPoly._raw(self.nvars, out)

    def swap(self, i: int, j: int) -> "MultiPoly":
        perm = list(range(self.nvars))
        perm[i], perm[j] = j, i
        return self.permute(perm)

    def substitute(self, index: int, value) -> "MultiPoly":
        """Set ``x_{index+1} = value``; the arity is kept (that variable no longer occurs)."""
        value = as_rational(value)
        out: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            k = e[index]
            new = e[:index] + (0,) + e[index + 1:]
            out[new] = out.get(new, 0) + c * value ** k
        return MultiPoly._raw(self.nvars, {e: c for e, c in out.items() if c})

    def __call__(self, *point) -> Fraction:
        return mp_eval(self, point)

    # serialization

    def to_json(self) -> dict:
        return {
            "nvars": self.nvars,
            "terms": [{"exp": list(e), "coeff": format_rational(c)} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "MultiPoly":
        return cls(data["nvars"], [(t["exp"], parse_rational(str(t["coeff"]))) for t in data["terms"]])

    def __repr__(self) -> str:
        if not self.terms:
            return f"MultiPoly({self.nvars}, 0)"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(f"x{i + 1}^{k}" if k > 1 else f"x{i + 1}" for i, k in enumerate(e) if k)
            parts.append(f"{c}*{mono}" if mono else str(c))
        return f"MultiPoly({self.nvars}, " + " + ".join(parts) + ")"


def elem_sym(n: int, k: int) -> MultiPoly:
    """Elementary symmetric polynomial E_{n,k}."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    terms = {}
    for idx in combinations(range(n), k):
        exp = [0] * n
        for i in idx:
            exp[i] = 1
        terms[tuple(exp)] = Fraction(1)
    return MultiPoly._raw(n, terms)


def complete_hom(n: int, j: int) -> MultiPoly:
    """Complete homogeneous polynomial: the sum of all degree-j monomials in n variables."""
    if n < 1 or j < 0:
        raise ValueError(f"need n >= 1 and j >= 0, got n={n}, j={j}")
    terms = {}
    for idx in combinations_with_replacement(range(n), j):
        exp = [0] * n
        for i in idx:
            exp[i] += 1
        terms[tuple(exp)] = Fraction(1)
    return MultiPoly._raw(n, terms)


@lru_cache(maxsize=None)
def divided_diff_bernoulli(ell: int, j: int) -> MultiPoly:
    """Divided difference B_ell(x_1, ..., x_j) of the Bernoulli polynomial.

    Closed form ``sum_t C(ell, t+j-1) B_{ell-j+1-t} L_t(x_1..x_j)``; it is the
    zero polynomial when ``ell <= j - 2``.
    """
    if ell < 1 or j < 1:
        raise ValueError("ell and j must be positive")
    out = MultiPoly.zero(j)
    for t in range(ell - j + 2):
        c = comb(ell, t + j - 1) * bernoulli_number(ell - j + 1 - t)
        if c:
            out = out + complete_hom(j, t) * c
    return out


def divided_diff_bernoulli_recursive(ell: int, j: int) -> MultiPoly:
    """Same polynomial as :func:`divided_diff_bernoulli`, built by the
    Newton recursion with exact divisions by ``x_k - x_{j-1}``."""
    if ell < 1 or j < 1:
        raise ValueError("ell and j must be positive")
    nvars = j
    base = bernoulli_poly(ell).coeffs

    @lru_cache(maxsize=None)
    def dd(vs: tuple[int, ...]) -> MultiPoly:
        if len(vs) == 1:
            return MultiPoly.from_univariate(base, nvars, vs[0])
        head, prev, last = vs[:-2], vs[-2], vs[-1]
        num = dd(head + (last,)) - dd(head + (prev,))
        den = MultiPoly.var(nvars, last) - MultiPoly.var(nvars, prev)
        return exact_div(num, den)

    return dd(tuple(range(j)))


def exact_div(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Return ``p / q``, raising :class:`NotDivisibleError` on a nonzero remainder."""
    p._check(q)
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    n = p.nvars
    lead_exp, lead_c = q.leading_term()
    q_rest = [(e, c) for e, c in q.terms.items() if e != lead_exp]
    rem = dict(p.terms)
    heap = [(-sum(e), tuple(-x for x in e)) for e in rem]
    heapq.heapify(heap)
    quot: dict[Exponent, Fraction] = {}
    while heap:
        _, neg = heapq.heappop(heap)
        e = tuple(-x for x in neg)
        c = rem.pop(e, None)
        if c is None:
            continue
        shift = tuple(a - b for a, b in zip(e, lead_exp))
        if any(s < 0 for s in shift):
            raise NotDivisibleError(f"leading monomial {e} is not divisible by {lead_exp}")
        f = c / lead_c
        quot[shift] = f
        for qe, qc in q_rest:
            t = tuple(a + b for a, b in zip(shift, qe))
            old = rem.get(t)
            if old is None:
                rem[t] = -f * qc
                heapq.heappush(heap, (-sum(t), tuple(-x for x in t)))
            else:
                new = old - f * qc
                if new:
                    rem[t] = new
                else:
                    del rem[t]
    return MultiPoly._raw(n, quot)


@lru_cache(maxsize=None)
def vandermonde(n: int, power: int = 1) -> MultiPoly:
    """prod_{1 <= i < j <= n} (x_j - x_i) ** power."""
    if n < 1 or power < 0:
        raise ValueError("need n >= 1 and power >= 0")
    out = MultiPoly.constant(n, 1)
    for i in range(n):
        for j in range(i + 1, n):
            out = out * (MultiPoly.var(n, j) - MultiPoly.var(n, i))
    return out ** power if power != 1 else out


def is_symmetric(p: MultiPoly) -> bool:
    """Invariance under every adjacent transposition, which generate S_n."""
    return all(p.swap(i, i + 1) == p for i in range(p.nvars - 1))


def mp_eval(p: MultiPoly, point: Sequence) -> Fraction:
    if len(point) != p.nvars:
        raise ValueError(f"point has {len(point)} coordinates, polynomial has {p.nvars} variables")
    xs = [as_rational(x) for x in point]
    max_exp = [0] * p.nvars
    for e in p.terms:
        for i, k in enumerate(e):
            if k > max_exp[i]:
                max_exp[i] = k
    powers = []
    for x, m in zip(xs, max_exp):
        row = [Fraction(1)]
        for _ in range(m):
            row.append(row[-1] * x)
        powers.append(row)
    total = Fraction(0)
    for e, c in p.terms.items():
        term = c
        for i, k in enumerate(e):
            if k:
                term *= powers[i][k]
        total += term
    return total
