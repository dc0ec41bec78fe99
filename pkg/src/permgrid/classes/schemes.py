"""Letter-to-cell assignments for every encoded grid class.

Each entry reads ``letter: ((column, row-from-bottom), slope, horizontal, vertical)``
where the last two are the reading directions of the cell (+1 for left to
right or bottom to top).
"""

from __future__ import annotations

from functools import lru_cache

from .encoding import EncodingScheme

UP, DOWN = 1, -1
LR = BT = 1
RL = TB = -1

_TABLE = {
    # component of Av(2143,4321); d upper right, b lower left, a beside b, c above b
    "B": dict(
        n_cols=3, n_rows=3,
        cells={
            "a": ((2, 1), UP, LR, BT),
            "b": ((1, 1), UP, LR, BT),
            "c": ((1, 2), UP, LR, BT),
            "d": ((3, 3), UP, LR, BT),
        },
    ),
    # the (1 1 1) class
    "inc_triple": dict(
        n_cols=3, n_rows=1,
        cells={
            "x": ((1, 1), UP, LR, BT),
            "y": ((2, 1), UP, LR, BT),
            "z": ((3, 1), UP, LR, BT),
        },
    ),
    "E": dict(
        n_cols=4, n_rows=6,
        cells={
            "b": ((1, 1), UP, LR, BT),
            "a": ((1, 4), UP, LR, BT),
            "B": ((2, 2), UP, LR, BT),
            "A": ((2, 5), UP, LR, BT),
            "C": ((3, 2), DOWN, RL, BT),
            "D": ((3, 3), UP, RL, TB),
            "c": ((4, 1), DOWN, RL, BT),
            "d": ((4, 6), UP, RL, TB),
        },
    ),
    "EF_2413": dict(
        n_cols=3, n_rows=3,
        cells={
            "a": ((1, 1), UP, LR, BT),
            "b": ((3, 1), DOWN, RL, BT),
            "c": ((3, 2), UP, RL, TB),
        },
        dots=[(2, 3)],
    ),
    "T": dict(
        n_cols=2, n_rows=2,
        cells={
            "a": ((2, 2), DOWN, LR, TB),
            "b": ((1, 2), UP, RL, TB),
            "c": ((1, 1), DOWN, RL, BT),
        },
    ),
    "grid2x4": dict(
        n_cols=2, n_rows=4,
        cells={
            "a": ((1, 4), UP, LR, BT),
            "b": ((1, 2), DOWN, LR, TB),
            "c": ((2, 3), UP, LR, BT),
            "d": ((2, 1), DOWN, LR, TB),
        },
    ),
    "F4x7": dict(
        n_cols=4, n_rows=7,
        cells={
            "x": ((1, 5), UP, LR, BT),
            "a": ((2, 7), UP, LR, BT),
            "b": ((2, 3), DOWN, LR, TB),
            "c": ((3, 4), UP, LR, BT),
            "d": ((3, 2), DOWN, LR, TB),
            "e": ((4, 6), UP, LR, BT),
            "f": ((4, 1), DOWN, LR, TB),
        },
        dot_letters=["x"],
    ),
    "grid3x3": dict(
        n_cols=3, n_rows=3,
        cells={
            "a": ((1, 2), UP, LR, BT),
            "b": ((3, 2), DOWN, RL, BT),
            "c": ((2, 3), UP, LR, BT),
            "d": ((2, 1), DOWN, LR, TB),
        },
    ),
    "X": dict(
        n_cols=6, n_rows=6,
        cells={
            "a": ((1, 5), UP, LR, BT),
            "b": ((5, 5), DOWN, RL, BT),
            "c": ((2, 6), UP, LR, BT),
            "d": ((2, 2), DOWN, LR, TB),
            "e": ((3, 1), DOWN, LR, TB),
            "f": ((3, 3), UP, LR, BT),
            "g": ((4, 4), UP, LR, BT),
            "h": ((6, 4), DOWN, RL, BT),
        },
    ),
}

# schemes obtained from another by a symmetry of the plane
_DERIVED = {
    "A": ("B", "rc"),
    "inc_triple_t": ("inc_triple", "i"),
    "EF_3142": ("EF_2413", "rir"),
}

SCHEME_NAMES = tuple(_TABLE) + tuple(_DERIVED)


@lru_cache(maxsize=None)
def scheme(name: str) -> EncodingScheme:
    if name in _DERIVED:
        base, op = _DERIVED[name]
        return scheme(base).transformed(op, name=name)
    try:
        spec = _TABLE[name]
    except KeyError:
        raise KeyError(f"no encoding scheme named {name!r}") from None
    return EncodingScheme.build(
        spec["n_cols"], spec["n_rows"], spec["cells"],
        dots=spec.get("dots", ()), dot_letters=spec.get("dot_letters", ()), name=name,
    )
