"""The three enumeration pipelines.

Each pipeline is a fixed sequence of named stages.  A stage is a rational
generating function computed from automata, inflation rules or earlier
stages; when a closed-form fixture of the same name exists, the stage is
compared with it and a mismatch stops the run with a :class:`StageFailure`
naming the stage.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional, Sequence

from ..automata import (
    Dfa,
    complement,
    gf,
    intersection,
    prefix_language,
    subword_containment,
    suffix_language,
)
from ..enumerate import ClassSpec, count_filtered, count_series
from ..perm import is_skew_indecomposable
from ..ratfun import (
    ONE,
    X,
    RationalFunction,
    drop_below,
    guess_rational,
    inflation_gf,
    series,
)
from . import languages
from .resources import has_fixture, load_dfa, load_fixture

PIPELINES = ("av2143_4321", "av2143_4312", "av1324_4312")

# pretty names for the ASCII stage keys
LABELS = {
    "f": "f(x)",
    "i": "i(x)",
    "f_plus": "f_⊕",
    "f_minus": "f_⊖",
    "f_nminus": "f_{⊄⊖}",
    "f_nplusG": "f_{⊄⊕G}",
    "g_nminus": "g_{⊄⊖}",
    "s_EF": "s_{E∩F}",
    "s1_E": "s¹_E",
    "s2_E": "s²_E",
    "s1_EF": "s¹_{E∩F}",
    "s2_EF": "s²_{E∩F}",
    "s_2x4": "s_{2×4}",
    "s_4x7": "s_{4×7}",
    "i_2x4": "i_{2×4}",
    "i_4x7": "i_{4×7}",
    "s_3x3W": "s_{3×3∖W}",
    "i_3x3W": "i_{3×3∖W}",
    "s_6x6": "s_{6×6}",
    "i_6x6": "i_{6×6}",
    "i_3x3": "i_{3×3}",
    "s_4x6": "s_{4×6}",
    "i_4x6": "i_{4×6}",
    "i_FX": "i_{F∩X}",
    "special": "i_{2413,3142,24153}",
}

# simples shared by the two-by-four set and its reverse-inverse-reverse
WEDGE_OVERLAP = ("2413", "3142", "24153")


@dataclass(frozen=True)
class NamedGf:
    name: str
    value: RationalFunction

    @property
    def label(self) -> str:
        return LABELS.get(self.name, self.name)

    def series(self, n_max: int) -> list:
        return series(self.value, n_max)


@dataclass(frozen=True)
class SimpleType:
    """A subtype of the simples of one class, cut out of its automaton.

    ``prefixes``/``suffixes`` restrict the first and last letters of the
    code words (the two may overlap); ``accepting`` replaces the accept
    states.  Each entry of ``factors`` names the class that one
    non-monotone point, or one pair of points, inflates to.
    """

    class_tag: str
    subtype: str
    prefixes: tuple[str, ...] = ()
    suffixes: tuple[str, ...] = ()
    accepting: Optional[tuple[str, ...]] = None
    factors: tuple[str, ...] = ()

    def restrict(self, d: Dfa) -> Dfa:
        if self.accepting is not None:
            d = d.with_accepting(self.accepting)
        parts = [d]
        if self.prefixes:
            parts.append(prefix_language(self.prefixes, d.alphabet))
        if self.suffixes:
            parts.append(suffix_language(self.suffixes, d.alphabet))
        return intersection(*parts) if len(parts) > 1 else d


@dataclass(frozen=True)
class StageCheck:
    stage: str
    passed: bool
    expected: Optional[RationalFunction]
    got: RationalFunction
    kind: str = "fixture"


class StageFailure(RuntimeError):
    def __init__(self, pipeline: str, stage: str, expected, got, kind: str = "fixture"):
        self.pipeline = pipeline
        self.stage = stage
        self.expected = expected
        self.got = got
        self.kind = kind
        super().__init__(f"{pipeline}: stage {stage} disagrees with its {kind}: expected {expected}, got {got}")


@dataclass
class PipelineResult:
    pipeline: str
    stages: dict[str, NamedGf] = field(default_factory=dict)
    checks: list[StageCheck] = field(default_factory=list)

    @property
    def final(self) -> NamedGf:
        return self.stages["f"]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> RationalFunction:
        return self.stages[name].value


class _Run:
    def __init__(self, pipeline: str, check: bool, strict: bool):
        self.result = PipelineResult(pipeline)
        self.check = check
        self.strict = strict

    def put(self, name: str, value: RationalFunction) -> RationalFunction:
        res = self.result
        res.stages[name] = NamedGf(name, value)
        if self.check and has_fixture(res.pipeline, name):
            expected = load_fixture(res.pipeline, name)
            c = StageCheck(name, expected == value, expected, value)
            res.checks.append(c)
            if not c.passed and self.strict:
                raise StageFailure(res.pipeline, name, expected, value)
        return value

    def require(self, name: str, cond: bool, expected, got, kind: str):
        c = StageCheck(name, cond, expected, got, kind)
        self.result.checks.append(c)
        if not cond and self.strict:
            raise StageFailure(self.result.pipeline, name, expected, got, kind)


# ---------------------------------------------------------------------------
# inputs fitted from brute-force counts

# extra filters for fitted inputs
_FIT_FILTERS = {
    "skew_indecomposable_nontrivial": lambda p: len(p) >= 2 and is_skew_indecomposable(p),
}


@lru_cache(maxsize=None)
def fitted_gf(basis: tuple[str, ...], n_terms: int = 13, filter: str | None = None) -> RationalFunction:
    """Rational generating function of Av(basis), fitted to brute-force counts.

    The fit must agree on spare terms beyond those that determine it.
    """
    spec = ClassSpec.av(*basis)
    counts = count_filtered(spec, n_terms, _FIT_FILTERS.get(filter, filter)) if filter else count_series(spec, n_terms)
    r = guess_rational([0] + list(counts))
    if r is None:
        raise ValueError(f"no rational fit for Av({', '.join(basis)}) from {n_terms} terms")
    return r


def monotone() -> RationalFunction:
    return fitted_gf(("21",), 8)


def simples_gf(d: Dfa, extra_points: int = 0, min_length: int = 4) -> RationalFunction:
    """Accepted words counted by permutation length, without the short spurious ones."""
    return drop_below(gf(d) * X ** extra_points, min_length)


# ---------------------------------------------------------------------------
# Av(2143, 4321)

def subset_key(names: Sequence[str]) -> str:
    return "f_" + "".join(names)


def pipeline_2143_4321(check: bool = True, strict: bool = True) -> PipelineResult:
    run = _Run("av2143_4321", check, strict)
    total = RationalFunction(0)
    for k in range(1, 5):
        for names in itertools.combinations(languages.COMPONENTS, k):
            part = run.put(subset_key(names), gf(languages.intersection_language(names)))
            total = total + part if k % 2 else total - part
    run.put("f", total)
    return run.result


# ---------------------------------------------------------------------------
# Av(2143, 4312)

E_TYPES = (
    SimpleType("E", "type1", accepting=("A",)),
    SimpleType("E", "type2", accepting=("a", "a2", "ab", "dot_a", "dot_ab", "AB"), factors=("g",)),
)
EF_TYPES = (
    SimpleType("E∩F", "type1", accepting=("a",)),
    SimpleType("E∩F", "type2", accepting=("ab",), factors=("g",)),
)


def pipeline_2143_4312(check: bool = True, strict: bool = True) -> PipelineResult:
    run = _Run("av2143_4312", check, strict)
    I = monotone()
    e = load_dfa("E_simples")
    fib = load_dfa("EF_2413")
    s_E = run.put("s_E", simples_gf(e))
    # two disjoint grids related by reverse-inverse-reverse; the dot adds a point
    s_EF = run.put("s_EF", 2 * simples_gf(fib, extra_points=1))
    run.put("s", 2 * s_E - s_EF)
    s1_E = run.put("s1_E", simples_gf(E_TYPES[0].restrict(e)))
    s2_E = run.put("s2_E", simples_gf(E_TYPES[1].restrict(e)))
    run.require("s_E", s1_E + s2_E == s_E, s_E, s1_E + s2_E, "type partition")
    s1_EF = run.put("s1_EF", 2 * simples_gf(EF_TYPES[0].restrict(fib), extra_points=1))
    s2_EF = run.put("s2_EF", 2 * simples_gf(EF_TYPES[1].restrict(fib), extra_points=1))
    run.require("s_EF", s1_EF + s2_EF == s_EF, s_EF, s1_EF + s2_EF, "type partition")
    g = run.put("g", fitted_gf(("312", "2143")))
    g_nminus = run.put("g_nminus", fitted_gf(("312", "2143"), 13, "skew_indecomposable_nontrivial"))
    f_ind = run.put("f_ind", inflation_gf(2 * s1_E - s1_EF, []) + inflation_gf(2 * s2_E - s2_EF, [g]))
    # f_minus = x f + g_nminus I and f_plus = x f + (f_ind + f_minus) I, with
    # f = x + f_plus + f_minus + f_ind; collect the multiples of f
    coeff = X + X + X * I
    rest = X + f_ind + g_nminus * I + (f_ind + g_nminus * I) * I
    f = (rest / (ONE - coeff))
    run.put("f_minus", X * f + g_nminus * I)
    run.put("f_plus", X * f + (f_ind + run.result["f_minus"]) * I)
    run.put("f", f)
    return run.result


# ---------------------------------------------------------------------------
# Av(1324, 4312)

T_TYPES = (
    SimpleType("T", "ca", ("c",), ("a",), factors=("f_E", "f_E")),
    SimpleType("T", "cb", ("c",), ("b",), factors=("f_E", "Q")),
    SimpleType("T", "aa", ("a",), ("a",), factors=("Q", "f_E")),
    SimpleType("T", "ab", ("a",), ("b",), factors=("Q", "Q")),
)

GRID2X4_TYPES = (
    SimpleType("2×4", "aba_cdc", ("aba",), ("cdc",), factors=("f_E", "f_E")),
    SimpleType("2×4", "aba_bc", ("aba",), ("bc",), factors=("f_E", "f_E")),
    SimpleType("2×4", "aba_ac", ("aba",), ("ac",), factors=("f_E", "Q")),
    SimpleType("2×4", "bac_dc", ("bac",), ("dc",), factors=("f_E", "f_G")),
    SimpleType("2×4", "bab_bc", ("bab",), ("bc",), factors=("f_E", "Q")),
    SimpleType("2×4", "bab_ac", ("bab",), ("ac",), factors=("Q", "Q")),
    SimpleType("2×4", "bab_cdc", ("bab",), ("cdc",), factors=("f_E", "Q")),
)

GRID3X3_TYPES = (
    SimpleType("3×3∖W", "bab_cd", ("bab",), ("cd",), factors=("f_E", "f_E")),
    SimpleType("3×3∖W", "bab_dc", ("bab",), ("dc",), factors=("f_E", "Q")),
    SimpleType("3×3∖W", "aba_cd", ("aba",), ("cd",), factors=("f_E", "Q")),
    SimpleType("3×3∖W", "aba_dc", ("aba",), ("dc",), factors=("Q", "Q")),
)

# wedge simples of one variety: two of each even length, each with one
# point inflating like a wedge and one pair; of each odd length one with two
# wedge points and one with two pairs
WEDGE_SKELETONS = (
    ("even", 2 * X**4 / (ONE - X**2), ("f_E", "Q")),
    ("odd_points", X**5 / (ONE - X**2), ("f_E", "f_E")),
    ("odd_pairs", X**5 / (ONE - X**2), ("Q", "Q")),
)


def _short_words(run: _Run, tag: str, d: Dfa, expected: list[str], below: int = 4):
    """The accepted words too short to encode a simple; they are dropped from the series."""
    got = sorted(w for n in range(below) for w in d.words(n))
    run.require(f"short_words_{tag}", got == expected, expected, got, "short-word list")


def _subtypes(run: _Run, prefix: str, base: Dfa, types: Sequence[SimpleType], factors: dict, whole: RationalFunction):
    """Simple and inflation series for each subtype; checks that they partition ``whole``."""
    s_sum = RationalFunction(0)
    i_sum = RationalFunction(0)
    for t in types:
        s = run.put(f"s_{prefix}{t.subtype}", simples_gf(t.restrict(base)))
        i = run.put(f"i_{prefix}{t.subtype}", inflation_gf(s, [factors[k] for k in t.factors]))
        s_sum += s
        i_sum += i
    run.require(f"s_{prefix.rstrip('_') or t.class_tag}", s_sum == whole, whole, s_sum, "subtype partition")
    return i_sum


def pipeline_1324_4312(check: bool = True, strict: bool = True) -> PipelineResult:
    run = _Run("av1324_4312", check, strict)
    I = monotone()
    f_E = run.put("f_E", fitted_gf(("213", "312")))
    f_G = run.put("f_G", fitted_gf(("213", "4312")))
    factors = {"f_E": f_E, "f_G": f_G, "Q": f_G + f_E - I}

    t = load_dfa("T")
    _short_words(run, "T", t, ["cba"])
    s_T = run.put("s_T", simples_gf(t))
    i_T = run.put("i_T", _subtypes(run, "", t, T_TYPES, factors, s_T))

    g24 = load_dfa("grid2x4")
    _short_words(run, "2x4", g24, ["bac"])
    s_24 = run.put("s_2x4", simples_gf(g24))
    f47 = load_dfa("F4x7")
    s_47 = run.put("s_4x7", simples_gf(f47))
    run.put("s_F", s_24 + s_47)
    i_47 = run.put("i_4x7", inflation_gf(s_47, [f_E, f_E]))
    i_24 = run.put("i_2x4", _subtypes(run, "2x4_", g24, GRID2X4_TYPES, factors, s_24))
    i_F = run.put("i_F", i_47 + i_24)

    g33 = load_dfa("grid3x3_W")
    s_33W = run.put("s_3x3W", simples_gf(g33))
    x66 = load_dfa("X6x6")
    s_66 = run.put("s_6x6", simples_gf(x66))
    overlap = sum((X ** len(p) for p in WEDGE_OVERLAP), RationalFunction(0))
    run.put("s_X", s_66 + 2 * s_24 + s_33W - overlap)
    i_66 = run.put("i_6x6", inflation_gf(s_66, [f_E, f_E]))
    i_33W = run.put("i_3x3W", _subtypes(run, "3x3_", g33, GRID3X3_TYPES, factors, s_33W))
    special = run.put("special", sum(
        (inflation_gf(X ** len(p), [f_E, factors["Q"]] if len(p) == 4 else [factors["Q"]] * 2)
         for p in WEDGE_OVERLAP),
        RationalFunction(0),
    ))
    i_X = run.put("i_X", i_66 + 2 * i_24 + i_33W - special)

    one_variety = sum((inflation_gf(s, [factors[k] for k in fs]) for _, s, fs in WEDGE_SKELETONS), RationalFunction(0))
    i_W = run.put("i_W", 2 * one_variety - special)
    i_33 = run.put("i_3x3", i_33W + i_W)
    no_f = complement(subword_containment("f", f47.alphabet))
    s_46 = run.put("s_4x6", simples_gf(intersection(f47, no_f)))
    i_46 = run.put("i_4x6", inflation_gf(s_46, [f_E, f_E]))
    i_FX = run.put("i_FX", i_46 + i_24)
    # T∩F, T∩S, F∩S and the triple intersections all lie inside X
    i = run.put("i", i_T + 2 * i_F + i_X - (i_33 + 2 * i_FX))

    f_nplusG = run.put("f_nplusG", f_G * (ONE - X))
    f_plus = run.put("f_plus", f_nplusG * f_nplusG / (ONE - X))
    f_nminus = run.put("f_nminus", X + f_plus + i)
    # f_G also counts Av(312, 1324), a symmetry of it
    f_minus = run.put("f_minus", I * f_G + (f_nminus - I) * I)
    run.put("f", f_nminus + f_minus)
    return run.result


RUNNERS: dict[str, Callable[..., PipelineResult]] = {
    "av2143_4321": pipeline_2143_4321,
    "av2143_4312": pipeline_2143_4312,
    "av1324_4312": pipeline_1324_4312,
}


def run_pipeline(name: str, check: bool = True, strict: bool = True) -> PipelineResult:
    try:
        runner = RUNNERS[name]
    except KeyError:
        raise KeyError(f"unknown pipeline {name!r}; choose from {', '.join(PIPELINES)}") from None
    return runner(check=check, strict=strict)
