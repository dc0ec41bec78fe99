"""Checks that each transcribed automaton encodes its target set exactly once.

For every length, the accepted words are decoded; the decodings must be
distinct and must form exactly the intended set of permutations, found by
brute force.  Word counts must also agree with the series of the
automaton's generating function.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from ..automata import Dfa, count_words, gf
from ..enumerate import ClassSpec, generate
from ..grid import class_members
from ..perm import Permutation, is_simple
from ..ratfun import series
from . import languages
from .oracles import in_grid
from .resources import load_dfa, load_matrix
from .schemes import scheme

Predicate = Callable[[Permutation], bool]


@dataclass(frozen=True)
class Encoding:
    name: str
    dfa: Callable[[], Dfa]
    scheme: str
    # the target at length n, as a set of permutations
    target: Callable[[int], set]
    # permutation length minus word length (implicit dot cells)
    extra: int = 0
    # shorter permutations are not part of the claim
    min_length: int = 1


@lru_cache(maxsize=None)
def _simples(basis: tuple[str, ...], n: int) -> tuple[Permutation, ...]:
    return tuple(p for p in generate(ClassSpec.av(*basis), n) if is_simple(p))


def _simples_where(basis: tuple[str, ...], keep: Predicate, *drop: Predicate) -> Callable[[int], set]:
    return lambda n: {p for p in _simples(basis, n) if keep(p) and not any(d(p) for d in drop)}


def _grid_members(name: str) -> Callable[[int], set]:
    return lambda n: class_members(load_matrix(name), n)


AV1 = ("2143", "4312")
AV2 = ("1324", "4312")


@lru_cache(maxsize=None)
def encodings() -> dict[str, Encoding]:
    g24, g33, x = in_grid("grid2x4"), in_grid("grid3x3"), in_grid("X")
    g24r = in_grid("grid2x4", "rir")
    wedge_lt, wedge_gt = in_grid("wedge_simple"), in_grid("wedge_simple", "rir")
    table = [
        Encoding(f"language_{c}", lambda c=c: languages.component_language(c), languages.COMPONENT_SCHEME[c], _grid_members(c))
        for c in languages.COMPONENTS
    ]
    table += [
        Encoding("E_simples", lambda: load_dfa("E_simples"), "E", _simples_where(AV1, in_grid("E")), min_length=4),
        Encoding("EF_2413", lambda: load_dfa("EF_2413"), "EF_2413", _simples_where(AV1, in_grid("EF_2413")), 1, 4),
        Encoding("EF_3142", lambda: load_dfa("EF_2413"), "EF_3142", _simples_where(AV1, in_grid("EF_3142")), 1, 4),
        Encoding("T", lambda: load_dfa("T"), "T", _simples_where(AV2, in_grid("T")), min_length=4),
        Encoding("grid2x4", lambda: load_dfa("grid2x4"), "grid2x4", _simples_where(AV2, g24), min_length=4),
        Encoding("F4x7", lambda: load_dfa("F4x7"), "F4x7", _simples_where(AV2, in_grid("F4x7"), g24), min_length=4),
        Encoding("grid3x3_W", lambda: load_dfa("grid3x3_W"), "grid3x3", _simples_where(AV2, g33, wedge_lt, wedge_gt), min_length=4),
        Encoding("X6x6", lambda: load_dfa("X6x6"), "X", _simples_where(AV2, x, g33, g24, g24r), min_length=4),
    ]
    return {e.name: e for e in table}


@dataclass(frozen=True)
class BijectionCheck:
    encoding: str
    n: int
    words: int
    target: int
    duplicates: int
    extraneous: int
    missing: int
    series_term: int

    @property
    def passed(self) -> bool:
        return self.duplicates == self.extraneous == self.missing == 0 and self.words == self.target == self.series_term

    def as_dict(self) -> dict:
        return {**self.__dict__, "passed": self.passed}


def check_encoding(name: str, n_max: int) -> list[BijectionCheck]:
    e = encodings()[name]
    d = e.dfa()
    sch = scheme(e.scheme)
    terms = series(gf(d), n_max)
    counts = count_words(d, n_max)
    out = []
    for n in range(e.min_length, n_max + 1):
        k = n - e.extra
        perms = [sch.decode(w) for w in d.words(k)]
        seen = Counter(perms)
        target = e.target(n)
        out.append(BijectionCheck(
            name, n, len(perms), len(target),
            duplicates=sum(c - 1 for c in seen.values()),
            extraneous=len(set(seen) - target),
            missing=len(target - set(seen)),
            series_term=terms[k] if terms[k] == counts[k] else -1,
        ))
    return out


def verify_encodings(n_max: int = 9) -> list[BijectionCheck]:
    return [c for name in encodings() for c in check_encoding(name, n_max)]
