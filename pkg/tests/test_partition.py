from fractions import Fraction
from itertools import product
from math import lcm

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from partdet.detpoly import Verdict
from partdet.partition import (
    PartitionSpec,
    QuasiPolynomial,
    check_residue_identity,
    check_system_identity,
    check_triple_agreement,
    eval_quasi,
    p_oracle,
    p_values,
    quasi_from_delta_cramer,
    quasi_from_delta_system,
    quasi_from_deltabar_system,
    quasi_from_oracle,
)
from partdet.verify import partition_specs

F = Fraction

SPECS = partition_specs()


def brute_count(a, n):
    # independent of the DP: enumerate all multiplicity vectors
    return sum(
        1 for xs in product(*[range(n // ai + 1) for ai in a])
        if sum(x * ai for x, ai in zip(xs, a)) == n
    )


def spec_id(spec):
    return ",".join(map(str, spec.a)) + f"|D={spec.D}"


def test_spec_validation():
    assert PartitionSpec((2, 3)).D == 6
    assert PartitionSpec((2, 3), 12).D == 12
    assert PartitionSpec((1, 2, 2)).r == 3
    with pytest.raises(ValueError):
        PartitionSpec((2, 3), 4)
    with pytest.raises(ValueError):
        PartitionSpec((0, 1))
    with pytest.raises(ValueError):
        PartitionSpec(())


def test_p_oracle_examples():
    assert p_oracle(PartitionSpec((1, 2)), 4) == 3
    assert p_oracle(PartitionSpec((1,)), 17) == 1
    assert p_values((2, 3), 7) == [1, 0, 1, 1, 1, 1, 2, 1]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 5), min_size=1, max_size=3), st.integers(0, 20))
def test_p_values_against_enumeration(a, n):
    assert p_values(a, n)[n] == brute_count(a, n)


def test_quasi_examples():
    q = quasi_from_oracle(PartitionSpec((1,)))
    assert q.d == ((F(1),),)
    assert all(eval_quasi(q, n) == 1 for n in range(10))
    q = quasi_from_oracle(PartitionSpec((1, 2)))
    # p(n) = n/2 + 1 for even n, n/2 + 1/2 for odd n
    assert q.d == ((F(1), F(1, 2)), (F(1, 2), F(1, 2)))
    assert eval_quasi(q, 4) == 3
    assert eval_quasi(q, 0) == q.d[0][0]


def test_quasi_json_roundtrip():
    q = quasi_from_oracle(PartitionSpec((1, 2)))
    data = q.to_json()
    assert data == {"r": 2, "D": 2, "d": [["1", "1/2"], ["1/2", "1/2"]]}
    assert QuasiPolynomial.from_json(data) == q
    assert q.to_csv_rows()[0][0] == "m"


@pytest.mark.parametrize("spec", SPECS, ids=spec_id)
def test_triple_agreement(spec):
    reports = check_triple_agreement(spec)
    assert reports and all(rep.verdict is Verdict.EQUAL for rep in reports)


@pytest.mark.parametrize("spec", SPECS, ids=spec_id)
def test_routes_match_oracle_directly(spec):
    oracle = quasi_from_oracle(spec)
    assert quasi_from_delta_system(spec) == oracle
    assert quasi_from_deltabar_system(spec) == oracle
    counts = p_values(spec.a, 3 * spec.r * spec.D)
    assert all(eval_quasi(oracle, n) == c for n, c in enumerate(counts))


@pytest.mark.parametrize("spec", SPECS, ids=spec_id)
def test_system_rows_beyond_solved_range(spec):
    rD = spec.r * spec.D
    reports = check_system_identity(spec, range(rD + 6))
    assert all(rep.verdict is Verdict.EQUAL for rep in reports)


@pytest.mark.parametrize("a", [(1,), (1, 2), (2, 3), (1, 1, 2), (1, 2, 2)])
def test_period_independence(a):
    base = lcm(*a)
    q1 = quasi_from_oracle(PartitionSpec(a))
    q2 = quasi_from_delta_system(PartitionSpec(a, 2 * base))
    for n in range(3 * len(a) * base * 2 + 1):
        assert eval_quasi(q1, n) == eval_quasi(q2, n) == p_oracle(PartitionSpec(a), n)


@pytest.mark.parametrize("spec", [s for s in SPECS if s.r * s.D <= 5], ids=spec_id)
def test_cramer_matches_solve(spec):
    assert quasi_from_delta_cramer(spec) == quasi_from_delta_system(spec)


@pytest.mark.parametrize("spec", SPECS, ids=spec_id)
def test_residue_identity(spec):
    reports = check_residue_identity(spec)
    assert len(reports) == spec.r
    assert all(rep.verdict is Verdict.EQUAL for rep in reports)


def test_residue_examples():
    rep = check_residue_identity(PartitionSpec((1, 2)))[0]
    assert rep.lhs == rep.rhs == F(3, 2)
    rep = check_residue_identity(PartitionSpec((1,)))[0]
    assert rep.lhs == rep.rhs == 1
    rep = check_residue_identity(PartitionSpec((1, 1)))[1]
    assert rep.lhs == rep.rhs == -1


def test_d1_uses_bar_route():
    # D = 1: the Delta-bar system is purely residue rows
    spec = PartitionSpec((1, 1))
    q = quasi_from_deltabar_system(spec)
    assert q.d == ((F(1),), (F(1),))

