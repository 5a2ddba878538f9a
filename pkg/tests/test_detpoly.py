from fractions import Fraction
from math import comb, factorial

import pytest
import sympy

from partdet import detpoly as dp
from partdet.detpoly import Verdict
from partdet.multipoly import MultiPoly, elem_sym, is_symmetric, mp_eval, vandermonde
from partdet.rational import RationalMatrix, det_cofactor

F = Fraction


def X(n, i):
    return MultiPoly.var(n, i - 1)


def from_sympy(expr, xs):
    poly = sympy.Poly(sympy.expand(expr), *xs)
    return MultiPoly(len(xs), [(m, F(int(c.p), int(c.q))) for m, c in poly.terms()])


def sympy_F(r, D, bar=False):
    """F_{r,D} or F-bar_{r,D} straight from sympy's Bernoulli polynomials."""
    xs = sympy.symbols(f"x1:{D + 1}")
    assert sympy.expand(sympy.bernoulli(1, xs[0])) == xs[0] - sympy.Rational(1, 2)
    rows = []
    if bar:
        rows += [[1 if m == top else 0 for m in range(r) for _ in range(D)] for top in range(r)]
    nrows = r * D - r if bar else r * D
    rows += [[sympy.bernoulli(n + m + 1, x) / (n + m + 1) for m in range(r) for x in xs] for n in range(nrows)]
    return from_sympy(sympy.Matrix(rows).det(method="berkowitz"), xs)


def test_delta_matrix_examples():
    assert dp.build_delta_matrix(1, 1) == RationalMatrix.from_rows([[F(1, 2)]])
    assert dp.build_delta_matrix(1, 2) == RationalMatrix.from_rows([[0, F(1, 2)], [F(-1, 12), F(1, 6)]])
    m = dp.build_delta_matrix(2, 3)
    assert (m.rows, m.cols) == (6, 6)


def test_delta_examples():
    assert dp.delta(1, 1) == F(1, 2)
    assert dp.delta(1, 2) == F(1, 24)
    assert all(dp.delta(1, D) != 0 for D in range(1, 7))


def test_delta_bar_matrix_examples():
    assert dp.build_delta_bar_matrix(1, 2) == RationalMatrix.from_rows([[1, 1], [0, F(1, 2)]])
    assert dp.build_delta_bar_matrix(1, 3).row(2) == (F(-1, 12), F(-1, 12), F(1, 4))
    for r in range(1, 6):
        m = dp.build_delta_bar_matrix(r, 1)
        assert m.rows == r


def test_delta_bar_examples():
    assert dp.delta_bar(1, 2) == F(1, 2)
    assert dp.delta_bar(1, 3) == F(1, 9)
    for r in range(1, 6):
        assert dp.delta_bar(r, 1) == (-1) ** comb(r, 2)


@pytest.mark.parametrize("r, D", [(r, D) for r in range(1, 7) for D in range(1, 7) if r * D <= 6])
def test_delta_route_agrees(r, D):
    assert dp.delta(r, D) == dp.delta_via_F(r, D)


@pytest.mark.parametrize("r, D", [(r, D) for r in range(1, 7) for D in range(1, 7) if r * D <= 6])
def test_delta_bar_route_up_to_sign(r, D):
    direct, route = dp.delta_bar(r, D), dp.delta_bar_via_Fbar(r, D)
    assert abs(direct) == abs(route)
    # the printed prefactor misses (-1)^(rD - r)
    assert direct == (-1) ** (r * D - r) * route


def test_F_poly_examples():
    x = X(1, 1)
    assert dp.F_poly(1, 1) == x - F(1, 2)
    x1, x2 = X(2, 1), X(2, 2)
    expected = F(1, 2) * (x2 - x1) * (x1 * x2 - (x1 + x2) / 2 + F(1, 3))
    assert dp.F_poly(1, 2) == expected


@pytest.mark.parametrize("r, D", [(1, 2), (1, 3), (2, 1), (2, 2), (3, 1)])
def test_F_poly_against_sympy(r, D):
    assert dp.F_poly(r, D) == sympy_F(r, D)


@pytest.mark.parametrize("r, D", [(1, 2), (1, 3), (2, 2), (3, 1)])
def test_Fbar_poly_against_sympy(r, D):
    assert dp.Fbar_poly(r, D) == sympy_F(r, D, bar=True)


def test_symbolic_det_matches_numeric_cofactor():
    cells = [[MultiPoly.constant(0, F(i * i + 1, j + 2) - j) for j in range(5)] for i in range(5)]
    numeric = RationalMatrix.from_rows([[c.constant_term() for c in row] for row in cells])
    assert dp.symbolic_det(cells, 0).constant_term() == det_cofactor(numeric)


@pytest.mark.parametrize("r", range(1, 5))
def test_F_r1_leading_term(r):
    p = dp.F_poly(r, 1)
    assert p.degree == r * r
    assert p.leading_term() == ((r * r,), dp.hilbert_closed_form(r))


def test_guard():
    with pytest.raises(dp.GuardError):
        dp.F_poly(2, 5)
    with pytest.raises(dp.GuardError):
        dp.check_conjecture_44(5)


@pytest.mark.parametrize("D", range(1, 5))
def test_G1_properties(D):
    G = dp.G_poly(1, D)
    assert is_symmetric(G)
    assert G.degree == D
    assert G.homogeneous_part(D) == elem_sym(D, D) / factorial(D)
    assert mp_eval(G, [0] * D) == F((-1) ** D, factorial(D + 1))


def test_G_examples():
    x1, x2 = X(2, 1), X(2, 2)
    assert dp.G_poly(1, 2) == F(1, 2) * (x1 * x2 - (x1 + x2) / 2 + F(1, 3))


@pytest.mark.parametrize("r, D", [(1, 2), (1, 3), (1, 4), (2, 2), (2, 3), (3, 2)])
def test_G_both_routes(r, D):
    G = dp.G_poly(r, D)
    assert vandermonde(D, r) * G == dp.F_poly(r, D)
    assert G == dp.G_poly_divided_difference(r, D)
    assert is_symmetric(G)
    assert G.degree <= r * r * comb(D + 1, 2) - r * comb(D, 2)


@pytest.mark.parametrize("D", range(1, 5))
def test_theorem_closed_form(D):
    assert dp.F1_closed_form(D) == dp.F_poly(1, D)


def test_F1_closed_form_d1():
    assert dp.F1_closed_form(1) == X(1, 1) - F(1, 2)


def test_Fbar_examples():
    for r in range(1, 5):
        assert dp.Fbar_poly(r, 1) == MultiPoly.constant(1, 1)
    for D in range(2, 6):
        assert dp.Fbar_poly(1, D) == vandermonde(D, 1) / factorial(D - 1)


@pytest.mark.parametrize("r, D", [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2)])
def test_Gbar_both_routes(r, D):
    G = dp.Gbar_poly(r, D)
    assert G == dp.Gbar_poly_divided_difference(r, D)
    assert is_symmetric(G)
    reports = {rep.identity_name.split("[")[0]: rep for rep in dp.check_gbar(r, D)}
    assert reports["gbar.degree_bound"].details["degree"] == G.degree
    if r == 1:
        # printed bound is negative, G-bar_{1,D} = 1/(D-1)! is a nonzero constant
        assert G == MultiPoly.constant(D, F(1, factorial(D - 1)))
        assert reports["gbar.degree_bound"].verdict is Verdict.MISMATCH
    else:
        assert G.degree <= dp.gbar_degree_bound(r, D)
        assert all(rep.verdict is Verdict.EQUAL for rep in reports.values())


@pytest.mark.parametrize("r", range(1, 5))
def test_Gbar_r2_leading_term_on_axis(r):
    on_axis = dp.Gbar_poly(r, 2).substitute(1, 0)
    assert on_axis.degree == r * (r - 1)
    assert on_axis.leading_term() == ((r * (r - 1), 0), dp.hilbert_closed_form(r))


@pytest.mark.parametrize("r, value", [(1, F(1)), (2, F(1, 12)), (3, F(1, 2160))])
def test_hilbert_like_det(r, value):
    assert dp.hilbert_like_det(r) == value
    assert dp.hilbert_closed_form(r) == value


def test_hilbert_against_sympy():
    for r in range(1, 9):
        h = sympy.Matrix(r, r, lambda i, j: sympy.Rational(1, i + j + 1)).det()
        assert dp.hilbert_like_det(r) == F(int(h.p), int(h.q))


def test_hessenberg_examples():
    assert dp.hessenberg_M(0) == 1
    assert dp.hessenberg_M(1) == F(-1, 2)
    assert dp.hessenberg_M(2) == F(1, 3)
    assert dp.hessenberg_M_direct(2) == F(1, 3)


@pytest.mark.parametrize("D", range(0, 21))
def test_hessenberg_three_ways(D):
    assert dp.hessenberg_M(D) == dp.hessenberg_M_direct(D) == F((-1) ** D, D + 1)


@pytest.mark.parametrize("D", range(1, 5))
def test_hessenberg_is_scaled_G_at_origin(D):
    assert dp.hessenberg_M(D) == factorial(D) * dp.G_poly(1, D).constant_term()


def test_corollary_35_reports():
    assert dp.check_corollary_35(1).verdict is Verdict.EQUAL
    rep = dp.check_corollary_35(2)
    assert rep.verdict is Verdict.EQUAL_UP_TO_SIGN
    assert (rep.lhs, rep.rhs, rep.ratio) == (F(1, 24), F(-1, 24), -1)
    # the printed sign misses (-1)^C(D,2)
    for D in range(1, 6):
        assert dp.delta(1, D) == (-1) ** comb(D, 2) * dp.corollary_35_printed(D)


def test_prop42_reports():
    for D in range(2, 7):
        fbar, printed, corrected = dp.check_prop42(D)
        assert fbar.verdict is Verdict.EQUAL
        assert printed.verdict is Verdict.MISMATCH
        assert corrected.verdict is Verdict.EQUAL


def test_conjecture_44():
    for r in range(1, 4):
        assert dp.check_conjecture_44(r).verdict is Verdict.EQUAL
        assert dp.check_conjecture_44(r, include_j0=True).verdict is Verdict.MISMATCH
    assert dp.check_conjecture_44(1).lhs == X(2, 2) - X(2, 1)


def test_conjecture_45():
    rep2 = dp.check_conjecture_45(2)
    assert rep2.verdict is Verdict.EQUAL and rep2.details["K"] == F(-1, 12)
    # D = 2 overlaps with conjecture 4.4 at r = 2
    assert rep2.lhs == dp.conjecture_44_rhs(2)
    rep3 = dp.check_conjecture_45(3)
    assert rep3.verdict is Verdict.EQUAL and rep3.details["K"] == F(-1, 2880)
    assert dp.check_conjecture_45(2, reading="sum").verdict is Verdict.EQUAL
    assert dp.check_conjecture_45(3, reading="sum").verdict is Verdict.MISMATCH


def test_conjecture_45_gbar_consistency():
    # G-bar_{2,2} = sign * K(2) * ((x2-x1)^2 - 1)
    K = dp.check_conjecture_45(2).details["K"]
    u = X(2, 2) - X(2, 1)
    assert dp.Gbar_poly(2, 2) == (-1) ** (3 * comb(2, 2)) * K * (u * u - 1)


@pytest.mark.slow
def test_conjecture_45_d4():
    rep = dp.check_conjecture_45(4)
    assert rep.verdict is Verdict.EQUAL and rep.details["K"] != 0


def test_gbar33_degree():
    assert dp.check_gbar33_degree().verdict is Verdict.EQUAL


def test_compare_verdicts():
    assert dp.compare("x", F(1, 2), F(1, 2)).verdict is Verdict.EQUAL
    rep = dp.compare("x", F(1, 2), F(-1, 2))
    assert rep.verdict is Verdict.EQUAL_UP_TO_SIGN and rep.ratio == -1
    rep = dp.compare("x", F(1, 2), F(1, 3))
    assert rep.verdict is Verdict.MISMATCH and rep.ratio == F(3, 2)
    assert dp.compare("x", F(0), F(1)).ratio is None
    assert dp.compare("p", X(2, 1), -X(2, 1)).verdict is Verdict.EQUAL_UP_TO_SIGN


def test_report_json():
    data = dp.compare("x", F(1, 2), F(-1, 2)).to_json()
    assert data == {"identity": "x", "verdict": "EQUAL_UP_TO_SIGN", "ratio": "-1", "lhs": "1/2", "rhs": "-1/2"}
    data = dp.compare("p", X(1, 1), X(1, 1)).to_json()
    assert data["lhs"] == {"nvars": 1, "terms": [{"exp": [1], "coeff": "1"}]}
