"""Regular languages in bijection with the four components of Av(2143, 4321).

Each language is an intersection or union of small constraint automata, so
every rule can be tested on its own.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable

from ..automata import (
    Dfa,
    all_words,
    complement,
    contains_any_subword,
    factor_containment,
    intersection,
    letters_only,
    minimize,
    subword_containment,
    union,
)
from ..enumerate import compute_basis
from ..grid import grid_class
from ..perm import Permutation
from .encoding import EncodingScheme
from .resources import load_matrix
from .schemes import scheme

COMPONENTS = ("A", "B", "C", "D")

# scheme used to encode each component
COMPONENT_SCHEME = {"A": "A", "B": "B", "C": "inc_triple", "D": "inc_triple_t"}


def b_constraints() -> dict[str, Dfa]:
    """The named rules whose combination is the language of B."""
    s = scheme("B").alphabet
    return {
        "increasing": letters_only("b", s),
        "ab_only": letters_only("ab", s),
        "bc_only": letters_only("bc", s),
        "has_ab": subword_containment("ab", s),
        "has_cb": subword_containment("cb", s),
        "has_cbcb": subword_containment("cbcb", s),
        "d_last": complement(contains_any_subword(["da", "db", "dc"], s)),
        "no_ca": complement(factor_containment("ca", s)),
    }


@lru_cache(maxsize=None)
def language_B() -> Dfa:
    """One word per permutation of B.

    Without a 321, a permutation lies in (1 1) or its transpose.  Increasing
    permutations are written with b alone.  Otherwise, a permutation of
    (1 1) uses a and b and must contain ab.  One of the transpose uses b
    and c and must contain cbcb, which rules out the permutations already
    written over {a, b}.  A permutation with a 321 has its d's at the end,
    contains ab and cb, and has no factor ca.
    """
    k = b_constraints()
    parts = [
        k["increasing"],
        intersection(k["ab_only"], k["has_ab"]),
        intersection(k["bc_only"], k["has_cbcb"]),
        intersection(k["d_last"], k["no_ca"], k["has_cb"], k["has_ab"]),
    ]
    return minimize(union(*parts))


@lru_cache(maxsize=None)
def language_A() -> Dfa:
    """A is the reverse-complement of B; the same words decode through the mirrored scheme."""
    return language_B()


def triple_constraints() -> dict[str, Dfa]:
    s = scheme("inc_triple").alphabet
    return {
        # a letter y needs a descent between the first two columns
        "y_needs_yx": union(letters_only("xz", s, nonempty=False), subword_containment("yx", s)),
        # a letter z needs a descent between the last two columns
        "z_needs_zy": union(letters_only("xy", s, nonempty=False), subword_containment("zy", s)),
        "nonempty": complement(letters_only("", s, nonempty=False)),
    }


@lru_cache(maxsize=None)
def language_inc_triple() -> Dfa:
    """One word per permutation with at most two descents: column cuts sit at the descents."""
    k = triple_constraints()
    return minimize(intersection(k["y_needs_yx"], k["z_needs_zy"], k["nonempty"]))


@lru_cache(maxsize=None)
def component_basis(name: str, len_max: int = 8) -> tuple[Permutation, ...]:
    return tuple(compute_basis(grid_class(load_matrix(name)), len_max=len_max))


def avoidance_language(sch: EncodingScheme, basis: Iterable[Permutation]) -> Dfa:
    """Words over the scheme none of whose subwords encodes a basis element."""
    words = set()
    for b in basis:
        words |= sch.encodings_of(b)
    if not words:
        return all_words(sch.alphabet)
    return complement(contains_any_subword(sorted(words), sch.alphabet))


@lru_cache(maxsize=None)
def language_C() -> Dfa:
    """C inside (1 1 1), cut down by the encodings of C's basis."""
    sch = scheme("inc_triple")
    return minimize(intersection(language_inc_triple(), avoidance_language(sch, component_basis("C"))))


@lru_cache(maxsize=None)
def language_D() -> Dfa:
    """D is the inverse of C; the same words decode through the transposed scheme."""
    return language_C()


LANGUAGES = {"A": language_A, "B": language_B, "C": language_C, "D": language_D}


def component_language(name: str) -> Dfa:
    return LANGUAGES[name]()


def component_scheme(name: str) -> EncodingScheme:
    return scheme(COMPONENT_SCHEME[name])


def intersection_language(names: Iterable[str]) -> Dfa:
    """Language of the intersection of several components, written in the first one's scheme."""
    names = list(names)
    first, rest = names[0], names[1:]
    sch = component_scheme(first)
    parts = [component_language(first)]
    parts += [avoidance_language(sch, component_basis(y)) for y in rest]
    return minimize(intersection(*parts))
