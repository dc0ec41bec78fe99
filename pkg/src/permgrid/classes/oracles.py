"""Brute-force counts for pipeline stages.

Each oracle names a class by its basis and a predicate on its members; the
stage's series must agree with the number of members of each length that
pass the predicate.  Only the stages with a direct combinatorial meaning
have an oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from ..enumerate import ClassSpec, count_filtered
from ..grid import griddable
from ..perm import (
    Decomposability,
    Permutation,
    classify_decomposability,
    decompose,
    is_simple,
    is_skew_indecomposable,
    symmetry,
)
from ..ratfun import series
from .resources import load_matrix

Predicate = Callable[[Permutation], bool]

BASES = {
    "av2143_4321": ("2143", "4321"),
    "av2143_4312": ("2143", "4312"),
    "av1324_4312": ("1324", "4312"),
}


@dataclass(frozen=True)
class Oracle:
    basis: tuple[str, ...]
    keep: Predicate
    note: str


def in_grid(name: str, op: str = "") -> Predicate:
    m = load_matrix(name)
    if op:
        # op is an involution here, so membership in op(C) means op(p) in C
        return lambda p: griddable(symmetry(p, op), m)
    return lambda p: griddable(p, m)


def _any(*preds: Predicate) -> Predicate:
    return lambda p: any(f(p) for f in preds)


def _decomp(kind: Decomposability) -> Predicate:
    return lambda p: classify_decomposability(p) is kind


def _strong(p: Permutation) -> bool:
    return len(p) >= 2 and classify_decomposability(p) is Decomposability.STRONG


def _simple_in(pred: Predicate, *excluded: Predicate) -> Predicate:
    def keep(p):
        return len(p) >= 4 and is_simple(p) and pred(p) and not any(e(p) for e in excluded)

    return keep


def _inflating(pred: Predicate) -> Predicate:
    """Strong-indecomposables whose simple skeleton satisfies ``pred``."""
    return lambda p: _strong(p) and pred(decompose(p).skeleton)


def _every(p: Permutation) -> bool:
    return True


@lru_cache(maxsize=None)
def oracles(pipeline: str) -> dict[str, Oracle]:
    basis = BASES[pipeline]
    out = {"f": Oracle(basis, _every, "all members")}
    if pipeline == "av2143_4321":
        return out
    out["f_plus"] = Oracle(basis, _decomp(Decomposability.SUM), "sum-decomposable members")
    out["f_minus"] = Oracle(basis, _decomp(Decomposability.SKEW), "skew-decomposable members")
    if pipeline == "av2143_4312":
        e, f = in_grid("E"), in_grid("F")
        g = ("312", "2143")
        out.update(
            s=Oracle(basis, _simple_in(_every), "simple members"),
            s_E=Oracle(basis, _simple_in(e), "simples gridded by E"),
            s_EF=Oracle(basis, _simple_in(lambda p: e(p) and f(p)), "simples gridded by E and F"),
            f_ind=Oracle(basis, _strong, "strong-indecomposable members"),
            g=Oracle(g, _every, "all members"),
            g_nminus=Oracle(g, lambda p: len(p) >= 2 and is_skew_indecomposable(p), "skew-indecomposables"),
        )
        return out
    t, x = in_grid("T"), in_grid("X")
    g24, g24r, f47 = in_grid("grid2x4"), in_grid("grid2x4", "rir"), in_grid("F4x7")
    g33 = in_grid("grid3x3")
    wedge = _any(in_grid("wedge_simple"), in_grid("wedge_simple", "rir"))
    out.update(
        f_E=Oracle(("213", "312"), _every, "all members"),
        f_G=Oracle(("213", "4312"), _every, "all members"),
        f_nminus=Oracle(basis, is_skew_indecomposable, "skew-indecomposable members"),
        i=Oracle(basis, _strong, "strong-indecomposable members"),
        s_T=Oracle(basis, _simple_in(t), "simples gridded by T"),
        s_2x4=Oracle(basis, _simple_in(g24), "simples gridded by the 2x4 matrix"),
        s_4x7=Oracle(basis, _simple_in(f47, g24), "simples gridded by the 4x7 matrix but not the 2x4 one"),
        s_F=Oracle(basis, _simple_in(f47), "simples gridded by the 4x7 matrix"),
        s_X=Oracle(basis, _simple_in(x), "simples gridded by X"),
        s_3x3W=Oracle(basis, _simple_in(g33, wedge), "simples gridded by the 3x3 matrix, not wedge simples"),
        s_6x6=Oracle(basis, _simple_in(x, g33, g24, g24r), "simples of X outside the smaller grids"),
        i_T=Oracle(basis, _inflating(t), "inflations of simples of T"),
        i_F=Oracle(basis, _inflating(f47), "inflations of simples of F"),
        i_X=Oracle(basis, _inflating(x), "inflations of simples of X"),
        i_3x3=Oracle(basis, _inflating(g33), "inflations of simples of the 3x3 matrix"),
        i_2x4=Oracle(basis, _inflating(g24), "inflations of simples of the 2x4 matrix"),
    )
    return out


def oracle_counts(pipeline: str, stage: str, n_max: int) -> list[int]:
    """Counts for n = 0..n_max (the constant term is always 0)."""
    o = oracles(pipeline)[stage]
    return [0] + count_filtered(ClassSpec.av(*o.basis), n_max, o.keep)


@dataclass(frozen=True)
class OracleCheck:
    stage: str
    passed: bool
    expected: list[int]
    got: list


def check_against_oracles(result, n_max: int = 9) -> list[OracleCheck]:
    """Compare every stage of a pipeline result that has an oracle, up to length ``n_max``."""
    out = []
    for stage in oracles(result.pipeline):
        if stage in result.stages:
            want = oracle_counts(result.pipeline, stage, n_max)
            got = series(result[stage], n_max)
            out.append(OracleCheck(stage, want == got, want, got))
    return out
