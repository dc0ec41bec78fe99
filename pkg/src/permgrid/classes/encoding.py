"""Encodings of forest grid classes by words.

Each letter names a cell.  A word places one point per letter; within a
column the points are ordered horizontally by their position in the word
(left to right, or right to left for columns read that way), and within a
row they are ordered vertically in the same fashion.  Implicit dot cells
carry exactly one point that the word does not mention.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from ..grid import GriddingMatrix
from ..perm import Permutation, contains, standardize, symmetry

Cell = tuple[int, int]  # (column, row-from-bottom), 1-based, as read off a figure


@dataclass(frozen=True)
class EncodingScheme:
    """Letters mapped to cells of a gridding matrix, with reading directions.

    ``hdir[col]`` is +1 when the column is read left to right and -1 for
    right to left; ``vdir[row]`` is +1 for bottom to top.  Cells are given in
    Cartesian ``(column, row-from-bottom)`` coordinates.
    """

    n_cols: int
    n_rows: int
    letters: Mapping[str, Cell]
    signs: Mapping[str, int]
    hdir: Mapping[int, int]
    vdir: Mapping[int, int]
    dots: tuple[Cell, ...] = ()
    dot_letters: frozenset = frozenset()
    name: str = ""
    _index: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        for a, (c, r) in self.letters.items():
            if len(a) != 1:
                raise ValueError(f"letters must be single characters, got {a!r}")
            if not (1 <= c <= self.n_cols and 1 <= r <= self.n_rows):
                raise ValueError(f"cell {(c, r)} of {a!r} outside the grid")
            s = self.signs[a]
            if s not in (1, -1):
                raise ValueError(f"sign of {a!r} must be +1 or -1")
            if a not in self.dot_letters and self.hdir[c] * self.vdir[r] != s:
                raise ValueError(f"reading directions of {a!r} disagree with its cell's slope")
        cells = list(self.letters.values()) + list(self.dots)
        if len(set(cells)) != len(cells):
            raise ValueError("two letters share a cell")
        for c, r in self.dots:
            if sum(1 for cc, rr in cells if cc == c) > 1 or sum(1 for cc, rr in cells if rr == r) > 1:
                raise ValueError(f"implicit dot {(c, r)} must be alone in its row and column")

    @classmethod
    def build(
        cls,
        n_cols: int,
        n_rows: int,
        cells: Mapping[str, tuple[Cell, int, int, int]],
        dots: Iterable[Cell] = (),
        dot_letters: Iterable[str] = (),
        name: str = "",
    ) -> "EncodingScheme":
        """``cells[letter] = ((col, row), sign, hdir, vdir)``.

        Directions must agree for letters sharing a column or row.
        """
        letters, signs, hdir, vdir = {}, {}, {}, {}
        for a, ((c, r), s, h, v) in cells.items():
            letters[a] = (c, r)
            signs[a] = s
            if hdir.setdefault(c, h) != h:
                raise ValueError(f"column {c} read in two directions")
            if vdir.setdefault(r, v) != v:
                raise ValueError(f"row {r} read in two directions")
        for c, r in dots:
            hdir.setdefault(c, 1)
            vdir.setdefault(r, 1)
        return cls(n_cols, n_rows, letters, signs, hdir, vdir, tuple(dots), frozenset(dot_letters), name)

    @property
    def alphabet(self) -> tuple[str, ...]:
        return tuple(sorted(self.letters))

    def matrix(self) -> GriddingMatrix:
        dot_cells = [self.letters[a] for a in self.dot_letters] + list(self.dots)
        up = [cell for a, cell in self.letters.items() if self.signs[a] > 0 and a not in self.dot_letters]
        down = [cell for a, cell in self.letters.items() if self.signs[a] < 0 and a not in self.dot_letters]
        return GriddingMatrix.from_cells(self.n_cols, self.n_rows, up, down, dot_cells, name=self.name)

    # -- words <-> permutations ---------------------------------------------

    def decode(self, word: str) -> Permutation:
        pts = []
        for i, a in enumerate(word):
            try:
                c, r = self.letters[a]
            except KeyError:
                raise ValueError(f"letter {a!r} not in scheme {self.name or self.alphabet}") from None
            pts.append((c, r, i))
        for j, (c, r) in enumerate(self.dots):
            pts.append((c, r, len(word) + j))
        by_x = sorted(range(len(pts)), key=lambda k: (pts[k][0], self.hdir[pts[k][0]] * pts[k][2]))
        by_y = sorted(range(len(pts)), key=lambda k: (pts[k][1], self.vdir[pts[k][1]] * pts[k][2]))
        value = [0] * len(pts)
        for rank, k in enumerate(by_y, 1):
            value[k] = rank
        return Permutation([value[k] for k in by_x], check=False)

    def encodings_of(self, p: Permutation) -> set[str]:
        """All words of the right length decoding to ``p``.

        Prefixes of an encoding decode to patterns of ``p``; that prunes the
        search.
        """
        length = len(p) - len(self.dots)
        if length < 0:
            return set()
        out: set[str] = set()
        alphabet = self.alphabet

        def extend(prefix: str):
            if len(prefix) == length:
                if self.decode(prefix) == p:
                    out.add(prefix)
                return
            for a in alphabet:
                w = prefix + a
                if a in self.dot_letters and prefix.count(a):
                    continue
                if contains(p, self.decode(w)):
                    extend(w)

        extend("")
        return out

    # -- symmetries ----------------------------------------------------------

    def transformed(self, op: str, name: str = "") -> "EncodingScheme":
        """The scheme whose decodings are ``symmetry(decode(w), op)`` for the same words."""
        scheme = self
        for ch in op:
            scheme = scheme._step(ch)
        if name:
            scheme = EncodingScheme(
                scheme.n_cols, scheme.n_rows, scheme.letters, scheme.signs, scheme.hdir, scheme.vdir,
                scheme.dots, scheme.dot_letters, name,
            )
        return scheme

    def _step(self, ch: str) -> "EncodingScheme":
        C, R = self.n_cols, self.n_rows
        if ch == "r":  # mirror left-right
            cell = lambda c, r: (C + 1 - c, r)
            letters = {a: cell(*v) for a, v in self.letters.items()}
            signs = {a: -s for a, s in self.signs.items()}
            hdir = {C + 1 - c: -h for c, h in self.hdir.items()}
            vdir = dict(self.vdir)
            return EncodingScheme(C, R, letters, signs, hdir, vdir, tuple(cell(*d) for d in self.dots), self.dot_letters, self.name)
        if ch == "c":  # mirror top-bottom
            cell = lambda c, r: (c, R + 1 - r)
            letters = {a: cell(*v) for a, v in self.letters.items()}
            signs = {a: -s for a, s in self.signs.items()}
            hdir = dict(self.hdir)
            vdir = {R + 1 - r: -v for r, v in self.vdir.items()}
            return EncodingScheme(C, R, letters, signs, hdir, vdir, tuple(cell(*d) for d in self.dots), self.dot_letters, self.name)
        if ch == "i":  # reflect in the diagonal
            letters = {a: (r, c) for a, (c, r) in self.letters.items()}
            return EncodingScheme(
                R, C, letters, dict(self.signs), dict(self.vdir), dict(self.hdir),
                tuple((r, c) for c, r in self.dots), self.dot_letters, self.name,
            )
        raise ValueError(f"unknown symmetry step {ch!r}")


def check_transform(scheme: EncodingScheme, op: str, words: Iterable[str]) -> bool:
    """``decode`` commutes with the symmetry on the given words."""
    other = scheme.transformed(op)
    return all(other.decode(w) == symmetry(scheme.decode(w), op) for w in words)


def pattern_of(word: str, keep: Iterable[int], scheme: EncodingScheme) -> Permutation:
    """Decode the subword at the given indices (helper for tests)."""
    return scheme.decode("".join(word[i] for i in sorted(keep)))
