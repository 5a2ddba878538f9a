"""Named identity checks, grouped the way the command line exposes them."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations_with_replacement
from math import lcm
from typing import Callable

from . import detpoly as dp
from .bernoulli import bernoulli_number, bernoulli_poly_eval
from .detpoly import Verdict, VerificationReport, compare
from .partition import PartitionSpec, check_residue_identity, check_triple_agreement

__all__ = [
    "IDENTITIES",
    "KNOWN_ERRATA",
    "is_known_erratum",
    "partition_specs",
    "run_identity",
    "run_all",
    "exit_status",
]

# printed forms that disagree with direct computation; reported, never fatal
KNOWN_ERRATA = (
    "prop42.delta_bar_printed",
    "conj44.printed_j0",
    "conj45.printed_sum",
    "gbar.degree_bound[r=1,",
)


def is_known_erratum(report: VerificationReport) -> bool:
    return report.identity_name.startswith(KNOWN_ERRATA)


def partition_specs(max_part: int = 4, max_r: int = 3, max_rD: int = 8) -> list[PartitionSpec]:
    """Every multiset of parts <= max_part with r <= max_r and r * lcm <= max_rD."""
    out = []
    for r in range(1, max_r + 1):
        for a in combinations_with_replacement(range(1, max_part + 1), r):
            if r * lcm(*a) <= max_rD:
                out.append(PartitionSpec(a))
    return out


def _bernoulli(max_n: int = 20, samples: int = 50, seed: int = 0, **_) -> list[VerificationReport]:
    out = [
        compare("bernoulli.B1", bernoulli_number(1), Fraction(-1, 2)),
        compare("bernoulli.B2", bernoulli_number(2), Fraction(1, 6)),
        compare("bernoulli.B4", bernoulli_number(4), Fraction(-1, 30)),
    ]
    rng = random.Random(seed)
    xs = [Fraction(rng.randint(-50, 50), rng.randint(1, 30)) for _ in range(samples)]
    for n in range(max_n + 1):
        good = all(bernoulli_poly_eval(n, 1 - x) == (-1) ** n * bernoulli_poly_eval(n, x) for x in xs)
        out.append(compare(f"bernoulli.reflection[n={n}]", good, True))
    return out


def _range(lo: int, default_hi: int, override: int | None) -> range:
    return range(lo, (default_hi if override is None else override) + 1)


def _lemma31(max_r=None, **_):
    return [dp.check_lemma31(r) for r in _range(1, 8, max_r)]


def _prop32(max_r=None, force=False, **_):
    return [rep for r in _range(1, 4, max_r) for rep in dp.check_prop32(r, force)]


def _prop33(max_D=None, force=False, **_):
    return [rep for D in _range(1, 4, max_D) for rep in dp.check_prop33(D, force)]


def _thm34(max_D=None, force=False, **_):
    return [dp.check_thm34(D, force) for D in _range(1, 4, max_D)]


def _cor35(max_D=None, **_):
    return [dp.check_corollary_35(D) for D in _range(1, 4, max_D)]


def _prop36(force=False, **_):
    pairs = [(1, 1), (1, 2), (1, 3), (1, 4), (2, 2), (2, 3), (3, 2)]
    return [rep for r, D in pairs for rep in dp.check_prop36(r, D, force)]


def _prop42(max_D=None, force=False, **_):
    return [rep for D in _range(2, 6, max_D) for rep in dp.check_prop42(D, force)]


def _hessenberg(max_D=None, **_):
    return [dp.check_hessenberg(D) for D in _range(0, 20, max_D)]


def _pairs(max_rD: int):
    return [(r, D) for r in range(1, max_rD + 1) for D in range(1, max_rD // r + 1)]


def _delta_route(max_rD=None, force=False, **_):
    return [dp.check_delta_route(r, D, force) for r, D in _pairs(max_rD or 6)]


def _delta_bar_route(max_rD=None, force=False, **_):
    return [dp.check_delta_bar_route(r, D, force) for r, D in _pairs(max_rD or 6)]


def _delta_bar_values(max_r=None, **_):
    out = [
        compare("delta_bar[r=1,D=2]", dp.delta_bar(1, 2), Fraction(1, 2)),
        compare("delta_bar[r=1,D=3]", dp.delta_bar(1, 3), Fraction(1, 9)),
    ]
    return out + [dp.check_delta_bar_d1(r) for r in _range(1, 5, max_r)]


def _conj44(max_r=None, force=False, **_):
    rs = _range(1, 3, max_r)
    return [dp.check_conjecture_44(r, force=force) for r in rs] + \
        [dp.check_conjecture_44(r, include_j0=True, force=force) for r in rs]


def _conj45(max_D=None, force=False, **_):
    Ds = _range(2, 3, max_D)
    return [dp.check_conjecture_45(D, force=force) for D in Ds] + \
        [dp.check_conjecture_45(D, reading="sum", force=force) for D in Ds]


def _gbar(force=False, **_):
    pairs = [(1, 2), (1, 3), (1, 4), (2, 2), (2, 3), (3, 2)]
    return [rep for r, D in pairs for rep in dp.check_gbar(r, D, force)]


def _gbar33(force=False, **_):
    return [dp.check_gbar33_degree(force)]


def _residue(**_):
    return [rep for spec in partition_specs() for rep in check_residue_identity(spec)]


def _triple(**_):
    return [rep for spec in partition_specs() for rep in check_triple_agreement(spec)]


IDENTITIES: dict[str, Callable[..., list[VerificationReport]]] = {
    "bernoulli": _bernoulli,
    "lemma31": _lemma31,
    "prop32": _prop32,
    "prop33": _prop33,
    "thm34": _thm34,
    "cor35": _cor35,
    "prop36": _prop36,
    "prop42": _prop42,
    "hessenberg": _hessenberg,
    "delta-route": _delta_route,
    "deltabar-route": _delta_bar_route,
    "deltabar-values": _delta_bar_values,
    "conj44": _conj44,
    "conj45": _conj45,
    "gbar": _gbar,
    "gbar33": _gbar33,
    "residue": _residue,
    "triple-agreement": _triple,
}


def run_identity(name: str, **params) -> list[VerificationReport]:
    try:
        fn = IDENTITIES[name]
    except KeyError:
        raise KeyError(f"unknown identity {name!r}; choose from {', '.join(IDENTITIES)} or 'all'") from None
    return fn(**params)


def run_all(**params) -> list[VerificationReport]:
    return [rep for name in IDENTITIES for rep in run_identity(name, **params)]


def exit_status(reports: list[VerificationReport]) -> int:
    """0 unless some MISMATCH is not a known printed-form erratum."""
    bad = [r for r in reports if r.verdict is Verdict.MISMATCH and not is_known_erratum(r)]
    return 1 if bad else 0
