"""Exhaustive checks of the structural descriptions behind the three pipelines.

Each claim says that a pattern class (or its simples) equals, or sits inside,
a union of grid classes.  :func:`verify_structure` tests it length by length
and reports the first counterexample instead of raising.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from ..enumerate import ClassSpec, generate
from ..grid import class_members, griddable
from ..perm import Permutation, is_simple
from .resources import load_matrix

MAX_N = 10


@dataclass(frozen=True)
class Claim:
    basis: tuple[str, ...]
    grids: tuple[str, ...]
    # "equal": the class is the union; "inside": the class lies in the union
    relation: str
    simples_only: bool = False
    # extra condition on the members tested, beyond membership in Av(basis)
    restrict: tuple[str, ...] = ()
    summary: str = ""


CLAIMS = {
    "union_ABCD": Claim(
        ("2143", "4321"), ("A", "B", "C", "D"), "equal",
        summary="Av(2143,4321) is the union of A, B, C and D",
    ),
    "av321_2143_pair": Claim(
        ("321", "2143"), ("inc_pair", "inc_pair_t"), "equal",
        summary="Av(321,2143) is the union of (1 1) and its transpose",
    ),
    "E_union_F": Claim(
        ("2143", "4312"), ("E", "F"), "equal",
        summary="Av(2143,4312) is the union of E and F",
    ),
    "container_2x2": Claim(
        ("2143", "4312"), ("container_2x2",), "inside",
        summary="Av(2143,4312) lies in a two-by-two grid class",
    ),
    "simples_in_TFSX": Claim(
        ("1324", "4312"), ("T", "F4x7", "S7x4", "X"), "inside", simples_only=True,
        summary="every simple of Av(1324,4312) lies in T, F, S or X",
    ),
    "EF_simples": Claim(
        ("2143", "4312"), ("EF_2413", "EF_3142"), "inside", simples_only=True, restrict=("E", "F"),
        summary="every simple of E and F lies in one of two small grid classes",
    ),
}

THEOREMS = tuple(CLAIMS)


@dataclass
class StructureReport:
    theorem: str
    n_max: int
    summary: str
    # number of permutations tested at each length
    checked: dict[int, int] = field(default_factory=dict)
    counterexample: Optional[Permutation] = None
    reason: str = ""

    @property
    def passed(self) -> bool:
        return self.counterexample is None

    def as_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "n_max": self.n_max,
            "summary": self.summary,
            "passed": self.passed,
            "checked": {str(k): v for k, v in self.checked.items()},
            "counterexample": str(self.counterexample) if self.counterexample else None,
            "reason": self.reason,
        }


def _in_union(grids) -> Callable[[Permutation], bool]:
    return lambda p: any(griddable(p, m) for m in grids)


def verify_structure(theorem: str, n_max: int) -> StructureReport:
    try:
        claim = CLAIMS[theorem]
    except KeyError:
        raise KeyError(f"unknown structure claim {theorem!r}; choose from {', '.join(THEOREMS)}") from None
    if not 1 <= n_max <= MAX_N:
        raise ValueError(f"n_max must lie in 1..{MAX_N}")
    report = StructureReport(theorem, n_max, claim.summary)
    spec = ClassSpec.av(*claim.basis)
    grids = [load_matrix(g) for g in claim.grids]
    covered = _in_union(grids)
    restrict = [load_matrix(r) for r in claim.restrict]
    for n in range(1, n_max + 1):
        members = generate(spec, n)
        tested = 0
        for p in members:
            if claim.simples_only and not (len(p) >= 4 and is_simple(p)):
                continue
            if not all(griddable(p, m) for m in restrict):
                continue
            tested += 1
            if not covered(p):
                report.counterexample = p
                report.reason = f"{p} is in the class but in none of {', '.join(claim.grids)}"
                report.checked[n] = tested
                return report
        if claim.relation == "equal":
            have = set(members)
            for m, name in zip(grids, claim.grids):
                outside = sorted(class_members(m, n) - have)
                if outside:
                    report.counterexample = outside[0]
                    report.reason = f"{outside[0]} is in {name} but not in Av({','.join(claim.basis)})"
                    report.checked[n] = tested
                    return report
        report.checked[n] = tested
    return report
