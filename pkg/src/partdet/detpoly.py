"""Bernoulli determinants: numeric Delta / Delta-bar values, their symbolic
polynomial versions F, G, F-bar, G-bar, and checks of the closed forms.

Direct determinant evaluation is the ground truth everywhere.  Printed closed
forms are never asserted here; they are compared against the direct value
and the outcome is returned as a :class:`VerificationReport`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, gcd, prod
from typing import Any, Sequence, Union

from .bernoulli import bernoulli_number, bernoulli_poly
from .multipoly import (
    MultiPoly,
    NotDivisibleError,
    divided_diff_bernoulli,
    elem_sym,
    exact_div,
    is_symmetric,
    mp_eval,
    vandermonde,
)
from .rational import RationalMatrix, det, format_rational

__all__ = [
    "GuardError",
    "Verdict",
    "VerificationReport",
    "compare",
    "SYMBOLIC_GUARD",
    "symbolic_det",
    "bernoulli_row",
    "build_delta_matrix",
    "build_delta_bar_matrix",
    "delta",
    "delta_via_F",
    "delta_bar",
    "delta_bar_via_Fbar",
    "canonical_point",
    "F_poly",
    "G_poly",
    "G_poly_divided_difference",
    "F1_closed_form",
    "Fbar_poly",
    "Gbar_poly",
    "Gbar_poly_divided_difference",
    "superfactorial",
    "hilbert_like_det",
    "hilbert_closed_form",
    "hessenberg_matrix",
    "hessenberg_M",
    "hessenberg_M_direct",
    "check_lemma31",
    "check_prop32",
    "check_prop33",
    "check_thm34",
    "check_corollary_35",
    "check_prop36",
    "check_prop42",
    "check_hessenberg",
    "check_delta_route",
    "check_delta_bar_route",
    "check_delta_bar_d1",
    "check_conjecture_44",
    "check_conjecture_45",
    "conjecture_44_rhs",
    "conjecture_45_factor",
    "corollary_35_printed",
    "check_gbar",
    "check_gbar33_degree",
    "gbar_degree_bound",
]

SYMBOLIC_GUARD = 9


class GuardError(ValueError):
    """A size guard was exceeded; pass ``force=True`` to override."""


class Verdict(str, enum.Enum):
    EQUAL = "EQUAL"
    EQUAL_UP_TO_SIGN = "EQUAL_UP_TO_SIGN"
    MISMATCH = "MISMATCH"


Value = Union[Fraction, int, bool, MultiPoly, None]


def _value_json(v: Value) -> Any:
    if isinstance(v, MultiPoly):
        return v.to_json()
    if isinstance(v, bool) or v is None:
        return v
    return format_rational(v)


@dataclass(frozen=True)
class VerificationReport:
    identity_name: str
    lhs: Value
    rhs: Value
    verdict: Verdict
    ratio: Fraction | None = None
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.verdict is not Verdict.MISMATCH

    def to_json(self) -> dict:
        out = {
            "identity": self.identity_name,
            "verdict": self.verdict.value,
            "ratio": None if self.ratio is None else format_rational(self.ratio),
            "lhs": _value_json(self.lhs),
            "rhs": _value_json(self.rhs),
        }
        if self.details:
            out["details"] = {k: _value_json(v) if isinstance(v, (Fraction, MultiPoly)) else v
                              for k, v in self.details.items()}
        return out


def compare(name: str, lhs: Value, rhs: Value, **details) -> VerificationReport:
    """Classify ``lhs`` against ``rhs`` as EQUAL, EQUAL_UP_TO_SIGN or MISMATCH."""
    ratio = None
    if isinstance(lhs, bool) or isinstance(rhs, bool):
        verdict = Verdict.EQUAL if lhs == rhs else Verdict.MISMATCH
    elif lhs == rhs:
        verdict = Verdict.EQUAL
    elif lhs is not None and rhs is not None and lhs == -rhs:
        verdict = Verdict.EQUAL_UP_TO_SIGN
    else:
        verdict = Verdict.MISMATCH
    if isinstance(lhs, (int, Fraction)) and isinstance(rhs, (int, Fraction)) \
            and not isinstance(lhs, bool) and not isinstance(rhs, bool) and lhs and rhs:
        ratio = Fraction(lhs) / Fraction(rhs)
    return VerificationReport(name, lhs, rhs, verdict, ratio, dict(details))


def _guard(r: int, D: int, force: bool) -> None:
    if r < 1 or D < 1:
        raise ValueError("r and D must be positive")
    if r * D > SYMBOLIC_GUARD and not force:
        raise GuardError(f"symbolic expansion needs r*D <= {SYMBOLIC_GUARD}, got r*D = {r * D}")


# --- symbolic determinants ---------------------------------------------------

def symbolic_det(cells: Sequence[Sequence[MultiPoly]], nvars: int) -> MultiPoly:
    """Determinant of a square matrix with polynomial entries.

    Laplace expansion row by row, with the partial minors of the first k rows
    memoized by column subset (a bitmask).  Rows are scaled to integer
    coefficients first, so the inner loop only touches Python ints.
    """
    n = len(cells)
    if any(len(row) != n for row in cells):
        raise ValueError("matrix must be square")
    zero_exp = (0,) * nvars
    int_rows = []
    scale = 1
    for row in cells:
        den = 1
        for p in row:
            for c in p.terms.values():
                den = den * c.denominator // gcd(den, c.denominator)
        scale *= den
        int_rows.append([
            [(e, c.numerator * (den // c.denominator)) for e, c in p.terms.items()]
            for p in row
        ])

    layer: dict[int, dict[tuple, int]] = {0: {zero_exp: 1}}
    for k in range(n):
        row = int_rows[k]
        nxt: dict[int, dict[tuple, int]] = {}
        for mask, minor in layer.items():
            for j in range(n):
                bit = 1 << j
                if mask & bit or not row[j]:
                    continue
                negative = (k + bin(mask & (bit - 1)).count("1")) % 2
                target = nxt.setdefault(mask | bit, {})
                for ce, cc in row[j]:
                    if negative:
                        cc = -cc
                    for me, mc in minor.items():
                        e = tuple(a + b for a, b in zip(me, ce))
                        target[e] = target.get(e, 0) + cc * mc
        layer = {}
        for mask, poly in nxt.items():
            poly = {e: c for e, c in poly.items() if c}
            if poly:
                layer[mask] = poly
    full = layer.get((1 << n) - 1, {})
    return MultiPoly._raw(nvars, {e: Fraction(c, scale) for e, c in full.items()})


def _bernoulli_cell(k: int, nvars: int, var: int) -> MultiPoly:
    """B_k(x_var) / k as a polynomial in ``nvars`` variables."""
    return MultiPoly.from_univariate(bernoulli_poly(k).coeffs, nvars, var) / k


def _dd_cell(ell: int, nvars: int, upto: int) -> MultiPoly:
    """B_ell(x_1, ..., x_upto) / ell embedded in ``nvars`` variables."""
    small = divided_diff_bernoulli(ell, upto)
    pad = (0,) * (nvars - upto)
    return MultiPoly._raw(nvars, {e + pad: c / ell for e, c in small.terms.items()})


def F_poly(r: int, D: int, force: bool = False) -> MultiPoly:
    """F_{r,D}: rD x rD determinant with entry B_{n+m+1}(x_v)/(n+m+1)."""
    _guard(r, D, force)
    cells = [
        [_bernoulli_cell(n + m + 1, D, v) for m in range(r) for v in range(D)]
        for n in range(r * D)
    ]
    return symbolic_det(cells, D)


def G_poly(r: int, D: int, force: bool = False) -> MultiPoly:
    """F_{r,D} divided exactly by the r-th power of the Vandermonde product."""
    return exact_div(F_poly(r, D, force), vandermonde(D, r))


def G_poly_divided_difference(r: int, D: int, force: bool = False) -> MultiPoly:
    """G_{r,D} as the determinant of divided differences B_{n+m+1}(x_1..x_v)/(n+m+1)."""
    _guard(r, D, force)
    cells = [
        [_dd_cell(n + m + 1, D, v) for m in range(r) for v in range(1, D + 1)]
        for n in range(r * D)
    ]
    return symbolic_det(cells, D)


def F1_closed_form(D: int) -> MultiPoly:
    """(1/D!) * prod_{i<j}(x_j - x_i) * sum_t (-1)^t E_{D,D-t} / (t+1)."""
    if D < 1:
        raise ValueError("D must be positive")
    s = MultiPoly.zero(D)
    for t in range(D + 1):
        s = s + elem_sym(D, D - t) * Fraction((-1) ** t, t + 1)
    return vandermonde(D, 1) * s / factorial(D)


def Fbar_poly(r: int, D: int, force: bool = False) -> MultiPoly:
    """F-bar_{r,D}: r block-indicator rows over rD - r Bernoulli rows."""
    _guard(r, D, force)
    one = MultiPoly.constant(D, 1)
    zero = MultiPoly.zero(D)
    cells = [[one if m == top else zero for m in range(r) for _ in range(D)] for top in range(r)]
    cells += [
        [_bernoulli_cell(n + m + 1, D, v) for m in range(r) for v in range(D)]
        for n in range(r * D - r)
    ]
    return symbolic_det(cells, D)


def _gbar_sign(r: int, D: int) -> int:
    return (-1) ** ((D + 1) * comb(r, 2))


def Gbar_poly(r: int, D: int, force: bool = False) -> MultiPoly:
    """G-bar_{r,D} = sign * F-bar_{r,D} / Vandermonde^r, for D >= 2."""
    if D < 2:
        raise ValueError("G-bar is defined for D >= 2")
    return exact_div(Fbar_poly(r, D, force) * _gbar_sign(r, D), vandermonde(D, r))


def Gbar_poly_divided_difference(r: int, D: int, force: bool = False) -> MultiPoly:
    """G-bar_{r,D} as the r(D-1)-order determinant of divided differences."""
    if D < 2:
        raise ValueError("G-bar is defined for D >= 2")
    _guard(r, D, force)
    cells = [
        [_dd_cell(n + m + 1, D, v) for m in range(r) for v in range(2, D + 1)]
        for n in range(r * D - r)
    ]
    return symbolic_det(cells, D)


# --- numeric determinants ----------------------------------------------------

def canonical_point(D: int) -> tuple[Fraction, ...]:
    """((D-1)/D, (D-2)/D, ..., 1/D, 0)."""
    return tuple(Fraction(D - 1 - i, D) for i in range(D))


def bernoulli_row(n: int, r: int, D: int) -> list[Fraction]:
    """Row n of the Delta matrix; valid for any n >= 0."""
    return [
        Fraction(D) ** (n + m) * bernoulli_poly(n + m + 1)(Fraction(v, D)) / (n + m + 1)
        for m in range(r)
        for v in range(1, D + 1)
    ]


def build_delta_matrix(r: int, D: int) -> RationalMatrix:
    """The rD x rD matrix with entry D^{n+m} B_{n+m+1}(v/D)/(n+m+1).

    Column ``m*D + (v-1)`` holds block ``m`` and residue ``v = 1..D``.
    """
    if r < 1 or D < 1:
        raise ValueError("r and D must be positive")
    return RationalMatrix.from_rows([bernoulli_row(n, r, D) for n in range(r * D)])


def build_delta_bar_matrix(r: int, D: int) -> RationalMatrix:
    """r residue rows ((-D)^m across block m) stacked over rD - r Bernoulli rows."""
    if r < 1 or D < 1:
        raise ValueError("r and D must be positive")
    rows = [
        [Fraction(-D) ** m if blk == m else Fraction(0) for blk in range(r) for _ in range(D)]
        for m in range(r)
    ]
    rows += [bernoulli_row(n, r, D) for n in range(r * D - r)]
    return RationalMatrix.from_rows(rows)


def delta(r: int, D: int) -> Fraction:
    return det(build_delta_matrix(r, D))


def _delta_prefactor(r: int, D: int) -> Fraction:
    n = r * D
    return Fraction((-1) ** (n * (n + r) // 2) * D ** (n * (n + r - 2) // 2))


def delta_via_F(r: int, D: int, force: bool = False) -> Fraction:
    """Delta_{r,D} as sign * D-power * F_{r,D} at the canonical point."""
    return _delta_prefactor(r, D) * mp_eval(F_poly(r, D, force), canonical_point(D))


def delta_bar(r: int, D: int) -> Fraction:
    return det(build_delta_bar_matrix(r, D))


def _delta_bar_prefactor(r: int, D: int) -> Fraction:
    return Fraction(-D) ** (D * comb(r, 2) + comb(r * D - r, 2))


def delta_bar_via_Fbar(r: int, D: int, force: bool = False) -> Fraction:
    """The printed route: (-D)^{D C(r,2) + C(rD-r,2)} * F-bar at the canonical point."""
    return _delta_bar_prefactor(r, D) * mp_eval(Fbar_poly(r, D, force), canonical_point(D))


# --- small closed forms ------------------------------------------------------

def superfactorial(k: int) -> int:
    """1! 2! ... k!, with the empty product 1 for k <= 0."""
    return prod(factorial(i) for i in range(1, k + 1))


def hilbert_closed_form(r: int) -> Fraction:
    """[1! ... (r-1)!]^3 / (r! (r+1)! ... (2r-1)!)."""
    return Fraction(superfactorial(r - 1) ** 3, prod(factorial(i) for i in range(r, 2 * r)))


def hilbert_like_det(r: int) -> Fraction:
    if r < 1:
        raise ValueError("r must be positive")
    return det(RationalMatrix.from_rows(
        [[Fraction(1, i + j - 1) for j in range(1, r + 1)] for i in range(1, r + 1)]
    ))


def hessenberg_matrix(D: int) -> RationalMatrix:
    """Lower Hessenberg matrix whose determinant is D! G_{1,D}(0, ..., 0)."""
    rows = []
    for i in range(1, D + 1):
        row = []
        for j in range(1, D + 1):
            if j == 1:
                row.append(bernoulli_number(i))
            elif j <= i:
                row.append(comb(i, j - 1) * bernoulli_number(i - j + 1))
            elif j == i + 1:
                row.append(Fraction(1))
            else:
                row.append(Fraction(0))
        rows.append(row)
    return RationalMatrix(D, D, [x for row in rows for x in row])


def hessenberg_M(D: int) -> Fraction:
    """M_D from the Hessenberg recursion, M_0 = 1."""
    if D < 0:
        raise ValueError("D must be nonnegative")
    M = [Fraction(1)]
    for d in range(1, D + 1):
        value = d * bernoulli_number(1) * M[d - 1]
        for ell in range(1, d):
            value += (-1) ** (d - ell) * comb(d, d + 1 - ell) * bernoulli_number(d + 1 - ell) * M[ell - 1]
        M.append(value)
    return M[D]


def hessenberg_M_direct(D: int) -> Fraction:
    return det(hessenberg_matrix(D))


# --- checks ------------------------------------------------------------------

def check_lemma31(r: int) -> VerificationReport:
    return compare(f"lemma31[r={r}]", hilbert_like_det(r), hilbert_closed_form(r))


def check_prop32(r: int, force: bool = False) -> list[VerificationReport]:
    F = F_poly(r, 1, force)
    lead_exp, lead_c = F.leading_term()
    return [
        compare(f"prop32.degree[r={r}]", F.degree, r * r),
        compare(f"prop32.leading[r={r}]", lead_c, hilbert_closed_form(r)),
    ]


def check_prop33(D: int, force: bool = False) -> list[VerificationReport]:
    G = G_poly(1, D, force)
    lead = G.homogeneous_part(G.degree)
    expected_lead = MultiPoly.constant(D, Fraction(1, factorial(D))) * elem_sym(D, D)
    return [
        compare(f"prop33.symmetric[D={D}]", is_symmetric(G), True),
        compare(f"prop33.degree[D={D}]", G.degree, D),
        compare(f"prop33.leading[D={D}]", lead, expected_lead),
        compare(f"prop33.constant[D={D}]", G.constant_term(), Fraction((-1) ** D, factorial(D + 1))),
    ]


def check_thm34(D: int, force: bool = False) -> VerificationReport:
    return compare(f"thm34[D={D}]", F_poly(1, D, force), F1_closed_form(D))


def corollary_35_printed(D: int) -> Fraction:
    point = canonical_point(D)
    s = sum(
        (Fraction((-1) ** t, t + 1) * mp_eval(elem_sym(D, D - t), point) for t in range(D + 1)),
        Fraction(0),
    )
    return Fraction((-1) ** (D * (D + 1) // 2) * superfactorial(D - 1), factorial(D)) * s


def check_corollary_35(D: int) -> VerificationReport:
    """Direct Delta_{1,D} against the printed corollary expression."""
    return compare(f"cor35[D={D}]", delta(1, D), corollary_35_printed(D))


def check_prop36(r: int, D: int, force: bool = False) -> list[VerificationReport]:
    name = f"prop36[r={r},D={D}]"
    F = F_poly(r, D, force)
    V = vandermonde(D, r)
    try:
        G = exact_div(F, V)
    except NotDivisibleError as exc:
        return [compare(name + ".divides", False, True, error=str(exc))]
    bound = r * r * comb(D + 1, 2) - r * comb(D, 2)
    return [
        compare(name + ".divides", V * G, F),
        compare(name + ".symmetric", is_symmetric(G), True),
        compare(name + ".degree_bound", G.degree <= bound, True, degree=G.degree, bound=bound),
        compare(name + ".divided_differences", G, G_poly_divided_difference(r, D, force)),
    ]


def check_prop42(D: int, force: bool = False) -> list[VerificationReport]:
    """Part (1) as printed, part (2) both as printed and in corrected form."""
    out = [compare(
        f"prop42.fbar[D={D}]",
        Fbar_poly(1, D, force),
        vandermonde(D, 1) / factorial(D - 1),
    )]
    direct = delta_bar(1, D)
    printed = Fraction(superfactorial(D - 2)) / Fraction(-D) ** D
    corrected = Fraction(superfactorial(D - 2), D ** (D - 1))
    out.append(compare(f"prop42.delta_bar_printed[D={D}]", direct, printed))
    out.append(compare(f"prop42.delta_bar_corrected[D={D}]", direct, corrected))
    return out


def check_hessenberg(D: int) -> VerificationReport:
    closed = Fraction((-1) ** D, D + 1)
    rec = hessenberg_M(D)
    direct = hessenberg_M_direct(D)
    report = compare(f"hessenberg[D={D}]", rec, closed, direct=direct)
    if direct != closed:
        return VerificationReport(report.identity_name, rec, closed, Verdict.MISMATCH,
                                  report.ratio, report.details)
    return report


def check_delta_route(r: int, D: int, force: bool = False) -> VerificationReport:
    return compare(f"delta_route[r={r},D={D}]", delta(r, D), delta_via_F(r, D, force))


def check_delta_bar_route(r: int, D: int, force: bool = False) -> VerificationReport:
    return compare(f"delta_bar_route[r={r},D={D}]", delta_bar(r, D), delta_bar_via_Fbar(r, D, force))


def check_delta_bar_d1(r: int) -> VerificationReport:
    return compare(f"delta_bar_d1[r={r}]", delta_bar(r, 1), Fraction((-1) ** comb(r, 2)))


def conjecture_44_rhs(r: int, include_j0: bool = False) -> MultiPoly:
    """Conjectured F-bar_{r,2}, by default with the product over j = 1..r-1.

    Keeping the j = 0 factor ((x_2-x_1)^2)^r pushes the degree to r^2 + 2r,
    while F-bar_{r,2} has degree r^2; ``include_j0=True`` builds that reading
    anyway so it can be reported.
    """
    u = MultiPoly.var(2, 1) - MultiPoly.var(2, 0)
    out = u ** r * (Fraction((-1) ** comb(r, 2)) * hilbert_closed_form(r))
    u2 = u * u
    for j in range(0 if include_j0 else 1, r):
        out = out * (u2 - j * j) ** (r - j)
    return out


def check_conjecture_44(r: int, include_j0: bool = False, force: bool = False) -> VerificationReport:
    if r < 1:
        raise ValueError("r must be positive")
    if r > 4 and not force:
        raise GuardError(f"conjecture 4.4 check needs r <= 4, got {r}")
    name = f"conj44.printed_j0[r={r}]" if include_j0 else f"conj44[r={r}]"
    return compare(name, Fbar_poly(r, 2, force), conjecture_44_rhs(r, include_j0))


def conjecture_45_factor(D: int, reading: str = "product") -> MultiPoly:
    """prod (or sum) over i < j of ((x_j - x_i)^2 - 1)."""
    if reading not in ("product", "sum"):
        raise ValueError(f"unknown reading {reading!r}")
    out = MultiPoly.constant(D, 1) if reading == "product" else MultiPoly.zero(D)
    for i in range(D):
        for j in range(i + 1, D):
            d = MultiPoly.var(D, j) - MultiPoly.var(D, i)
            out = out * (d * d - 1) if reading == "product" else out + d * d - 1
    return out


def check_conjecture_45(D: int, reading: str = "product", force: bool = False) -> VerificationReport:
    """Divide F-bar_{2,D} by V^2 times the pair factor; EQUAL iff the quotient is a constant K(D).

    ``reading="sum"`` uses the printed sum over pairs, which only coincides
    with the product for D = 2.
    """
    if D < 2:
        raise ValueError("D must be at least 2")
    if D > 4 and not force:
        raise GuardError(f"conjecture 4.5 check needs D <= 4, got {D}")
    name = f"conj45[D={D}]" if reading == "product" else f"conj45.printed_sum[D={D}]"
    fbar = Fbar_poly(2, D, force)
    base = vandermonde(D, 2) * conjecture_45_factor(D, reading)
    try:
        K = exact_div(fbar, base)
    except NotDivisibleError as exc:
        return compare(name, fbar, None, error=str(exc))
    if not K.is_constant():
        return compare(name, fbar, None, error="quotient is not constant", quotient=K)
    k = K.constant_term()
    return compare(name, fbar, base * k, K=k, K_nonzero=bool(k))


def gbar_degree_bound(r: int, D: int) -> int:
    """The printed bound r C(rD-r, 2) + D C(r, 2) - r C(D, 2); negative for r = 1."""
    return r * comb(r * D - r, 2) + D * comb(r, 2) - r * comb(D, 2)


def check_gbar(r: int, D: int, force: bool = False) -> list[VerificationReport]:
    name = f"gbar[r={r},D={D}]"
    fbar = Fbar_poly(r, D, force)
    V = vandermonde(D, r)
    try:
        G = exact_div(fbar * _gbar_sign(r, D), V)
    except NotDivisibleError as exc:
        return [compare(name + ".divides", False, True, error=str(exc))]
    bound = gbar_degree_bound(r, D)
    return [
        compare(name + ".divides", V * G * _gbar_sign(r, D), fbar),
        compare(name + ".symmetric", is_symmetric(G), True),
        compare(f"gbar.degree_bound[r={r},D={D}]", G.degree <= bound, True, degree=G.degree, bound=bound),
        compare(name + ".divided_differences", G, Gbar_poly_divided_difference(r, D, force)),
    ]


def check_gbar33_degree(force: bool = False) -> VerificationReport:
    G = Gbar_poly(3, 3, force)
    return compare("gbar33.degree", G.degree, 18)
