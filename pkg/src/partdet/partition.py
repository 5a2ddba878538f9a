"""Restricted partition function p_a(n) and its quasi-polynomial coefficients.

``p_a(n)`` counts nonnegative solutions of ``a_1 x_1 + ... + a_r x_r = n``.
For a common multiple ``D`` of the parts it is a quasi-polynomial

    p_a(n) = sum_{m < r} d[m][n mod D] * n**m

and the table ``d`` is obtained three ways: interpolation of brute-force
counts, the Delta system and the Delta-bar system.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, lcm
from typing import Sequence

from .bernoulli import bernoulli_barnes_number
from .detpoly import (
    VerificationReport,
    bernoulli_row,
    build_delta_bar_matrix,
    build_delta_matrix,
    compare,
)
from .rational import (
    SingularMatrixError,
    cramer_column_replace,
    det,
    format_rational,
    parse_rational,
    solve_linear,
)

__all__ = [
    "PartitionSpec",
    "QuasiPolynomial",
    "p_oracle",
    "p_values",
    "quasi_from_oracle",
    "delta_system_rhs",
    "deltabar_system_rhs",
    "quasi_from_delta_system",
    "quasi_from_deltabar_system",
    "quasi_from_delta_cramer",
    "eval_quasi",
    "check_residue_identity",
    "check_system_identity",
    "check_triple_agreement",
]


@dataclass(frozen=True)
class PartitionSpec:
    """Parts ``a`` and a period ``D`` (defaults to lcm(a))."""

    a: tuple[int, ...]
    D: int = 0

    def __post_init__(self):
        a = tuple(int(x) for x in self.a)
        if not a or any(x < 1 for x in a):
            raise ValueError(f"parts must be positive integers, got {self.a}")
        D = int(self.D) or lcm(*a)
        if D < 1 or any(D % x for x in a):
            raise ValueError(f"D={D} is not a common multiple of {a}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "D", D)

    @property
    def r(self) -> int:
        return len(self.a)


@dataclass(frozen=True)
class QuasiPolynomial:
    """Coefficient table ``d[m][v]``, ``m < r``, residue ``v = n mod D``.

    The residue class the paper indexes as ``v = D`` is stored at ``v = 0``.
    """

    r: int
    D: int
    d: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.d) != self.r or any(len(row) != self.D for row in self.d):
            raise ValueError("coefficient table must be r x D")

    @classmethod
    def from_unknowns(cls, r: int, D: int, x: Sequence[Fraction]) -> "QuasiPolynomial":
        """Unpack a solution vector ordered ``(m, v)`` with ``v = 1..D``."""
        d = [[Fraction(0)] * D for _ in range(r)]
        for m in range(r):
            for v in range(1, D + 1):
                d[m][v % D] = x[m * D + v - 1]
        return cls(r, D, tuple(tuple(row) for row in d))

    def __call__(self, n: int) -> Fraction:
        return eval_quasi(self, n)

    def to_json(self) -> dict:
        return {"r": self.r, "D": self.D, "d": [[format_rational(x) for x in row] for row in self.d]}

    @classmethod
    def from_json(cls, data) -> "QuasiPolynomial":
        return cls(data["r"], data["D"],
                   tuple(tuple(parse_rational(str(x)) for x in row) for row in data["d"]))

    def to_csv_rows(self) -> list[list[str]]:
        rows = [["m", "v", "d"]]
        for m, row in enumerate(self.d):
            for v, x in enumerate(row):
                rows.append([str(m), str(v), format_rational(x)])
        return rows


def p_values(a: Sequence[int], limit: int) -> list[int]:
    """p_a(0), ..., p_a(limit) by the coin-change recurrence."""
    dp = [0] * (limit + 1)
    dp[0] = 1
    for part in a:
        for j in range(part, limit + 1):
            dp[j] += dp[j - part]
    return dp


def p_oracle(spec: PartitionSpec, n: int) -> int:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return p_values(spec.a, n)[n]


def _interpolate(xs: Sequence[int], ys: Sequence[int]) -> list[Fraction]:
    """Coefficients (low degree first) of the polynomial through the points."""
    k = len(xs)
    coeffs = [Fraction(0)] * k
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if not yi:
            continue
        basis = [Fraction(1)]
        denom = 1
        for j, xj in enumerate(xs):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xj * basis[t + 1]
            denom *= xi - xj
        for t, c in enumerate(basis):
            coeffs[t] += c * yi / denom
    return coeffs


def quasi_from_oracle(spec: PartitionSpec) -> QuasiPolynomial:
    """Interpolate each residue class through n = v + kD, k = 1..r.

    The result is validated against the counts at k = 0 and k = r+1..2r.
    """
    r, D = spec.r, spec.D
    counts = p_values(spec.a, (2 * r + 1) * D)
    d = [[Fraction(0)] * D for _ in range(r)]
    for v in range(D):
        xs = [v + k * D for k in range(1, r + 1)]
        coeffs = _interpolate(xs, [counts[x] for x in xs])
        for m in range(r):
            d[m][v] = coeffs[m]
        for k in [0] + list(range(r + 1, 2 * r + 1)):
            n = v + k * D
            value = sum((coeffs[m] * n ** m for m in range(r)), Fraction(0))
            if value != counts[n]:
                raise ArithmeticError(f"interpolation failed validation at n={n}")
    return QuasiPolynomial(r, D, tuple(tuple(row) for row in d))


def eval_quasi(q: QuasiPolynomial, n: int) -> Fraction:
    v = n % q.D
    return sum((q.d[m][v] * n ** m for m in range(q.r)), Fraction(0))


def _system_value(spec: PartitionSpec, n: int) -> Fraction:
    # +delta_{0n}: the value at n = 0 includes the excluded p_a(0) term
    r = spec.r
    value = Fraction((-1) ** (r - 1) * factorial(n), factorial(n + r)) * bernoulli_barnes_number(r + n, spec.a)
    return value + 1 if n == 0 else value


def delta_system_rhs(spec: PartitionSpec) -> list[Fraction]:
    """Right-hand side for rows n = 0..rD-1 of the Delta system."""
    return [_system_value(spec, n) for n in range(spec.r * spec.D)]


def _residue_value(spec: PartitionSpec, m: int) -> Fraction:
    r, D = spec.r, spec.D
    return Fraction((-1) ** (r - 1) * D ** (m + 1), factorial(m) * factorial(r - 1 - m)) \
        * bernoulli_barnes_number(r - 1 - m, spec.a)


def deltabar_system_rhs(spec: PartitionSpec) -> list[Fraction]:
    """Residue rows m = 0..r-1, then Bernoulli rows n = 0..rD-r-1."""
    r, D = spec.r, spec.D
    return [_residue_value(spec, m) for m in range(r)] + [_system_value(spec, n) for n in range(r * D - r)]


def quasi_from_delta_system(spec: PartitionSpec) -> QuasiPolynomial:
    """Solve the Delta system; raises SingularMatrixError if Delta_{r,D} = 0."""
    x = solve_linear(build_delta_matrix(spec.r, spec.D), delta_system_rhs(spec))
    return QuasiPolynomial.from_unknowns(spec.r, spec.D, x)


def quasi_from_delta_cramer(spec: PartitionSpec) -> QuasiPolynomial:
    """Cramer's rule on the Delta system; test path for small rD."""
    m = build_delta_matrix(spec.r, spec.D)
    rhs = delta_system_rhs(spec)
    full = det(m)
    if not full:
        raise SingularMatrixError("determinant vanishes; system route unavailable")
    x = [cramer_column_replace(m, j, rhs) / full for j in range(m.cols)]
    return QuasiPolynomial.from_unknowns(spec.r, spec.D, x)


def quasi_from_deltabar_system(spec: PartitionSpec) -> QuasiPolynomial:
    x = solve_linear(build_delta_bar_matrix(spec.r, spec.D), deltabar_system_rhs(spec))
    return QuasiPolynomial.from_unknowns(spec.r, spec.D, x)


def _name(spec: PartitionSpec) -> str:
    return "a=(" + ",".join(map(str, spec.a)) + f"),D={spec.D}"


def check_residue_identity(spec: PartitionSpec) -> list[VerificationReport]:
    """For each m: sum_v (-D)^m d[m][v] against the Bernoulli-Barnes value."""
    q = quasi_from_oracle(spec)
    out = []
    for m in range(spec.r):
        lhs = sum((Fraction(-spec.D) ** m * x for x in q.d[m]), Fraction(0))
        out.append(compare(f"residue[{_name(spec)},m={m}]", lhs, _residue_value(spec, m)))
    return out


def check_system_identity(spec: PartitionSpec, rows: Sequence[int]) -> list[VerificationReport]:
    """The Delta-system row n evaluated with oracle coefficients, for any n."""
    q = quasi_from_oracle(spec)
    r, D = spec.r, spec.D
    x = [q.d[m][v % D] for m in range(r) for v in range(1, D + 1)]
    out = []
    for n in rows:
        lhs = sum((a * b for a, b in zip(bernoulli_row(n, r, D), x)), Fraction(0))
        out.append(compare(f"system_row[{_name(spec)},n={n}]", lhs, _system_value(spec, n)))
    return out


def check_triple_agreement(spec: PartitionSpec, n_max: int | None = None) -> list[VerificationReport]:
    """Oracle, Delta route and Delta-bar route coefficient tables, plus evaluation."""
    name = _name(spec)
    oracle = quasi_from_oracle(spec)
    out = []
    for label, route in (("delta", quasi_from_delta_system), ("delta_bar", quasi_from_deltabar_system)):
        try:
            q = route(spec)
        except SingularMatrixError as exc:
            out.append(compare(f"triple[{name}].{label}", None, None, skipped=str(exc)))
            continue
        same = q == oracle
        out.append(compare(f"triple[{name}].{label}", same, True))
        n_max_eff = 3 * spec.r * spec.D if n_max is None else n_max
        counts = p_values(spec.a, n_max_eff)
        good = all(eval_quasi(q, n) == counts[n] for n in range(n_max_eff + 1))
        out.append(compare(f"triple[{name}].{label}.eval", good, True, n_max=n_max_eff))
    return out
