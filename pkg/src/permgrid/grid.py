"""Monotone grid classes: gridding matrices, cell graphs and griddability.

Matrices are written the way they are drawn: row 1 is the top row.  Cells
are addressed as ``(row, col)`` in that numbering everywhere in the public
interface.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence

import networkx as nx

from .enumerate import ClassSpec, generate
from .perm import Permutation

Cell = tuple[int, int]  # (row from top, column), both 1-based


@dataclass(frozen=True)
class GriddingMatrix:
    """Entries in {-1, 0, 1}; ``rows[0]`` is the top row.

    ``dots`` lists cells restricted to hold at most one point.
    """

    rows: tuple[tuple[int, ...], ...]
    dots: frozenset = frozenset()
    name: str = ""

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "dots", frozenset(tuple(d) for d in self.dots))
        if not rows or not rows[0]:
            raise ValueError("gridding matrix needs at least one row and column")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged gridding matrix")
        if any(v not in (-1, 0, 1) for r in rows for v in r):
            raise ValueError("entries must be -1, 0 or 1")
        for r, c in self.dots:
            if not (1 <= r <= len(rows) and 1 <= c <= len(rows[0])) or rows[r - 1][c - 1] == 0:
                raise ValueError(f"dot constraint on empty or missing cell {(r, c)}")

    @classmethod
    def from_cells(
        cls,
        n_cols: int,
        n_rows: int,
        up: Iterable[tuple[int, int]] = (),
        down: Iterable[tuple[int, int]] = (),
        dots: Iterable[tuple[int, int]] = (),
        name: str = "",
    ) -> "GriddingMatrix":
        """Build from Cartesian ``(column, row-from-bottom)`` coordinates, 1-based.

        This is the natural way to read a figure; ``dots`` get entry 1.
        """
        grid = [[0] * n_cols for _ in range(n_rows)]
        marks = []
        for sign, cells in ((1, up), (-1, down), (1, dots)):
            for c, r in cells:
                grid[n_rows - r][c - 1] = sign
        for c, r in dots:
            marks.append((n_rows - r + 1, c))
        return cls(tuple(map(tuple, grid)), frozenset(marks), name)

    @classmethod
    def parse(cls, text: str, name: str = "") -> "GriddingMatrix":
        """Rows top to bottom separated by newlines or ``/``; ``!r,c`` marks a dot cell."""
        body = []
        dots = []
        for raw in text.replace("/", "\n").splitlines():
            line = raw.split("#", 1)[0]
            tokens = line.split()
            row = []
            for tok in tokens:
                if tok.startswith("!"):
                    try:
                        r, c = (int(v) for v in tok[1:].split(","))
                    except ValueError as exc:
                        raise ValueError(f"bad dot marker {tok!r}") from exc
                    dots.append((r, c))
                else:
                    try:
                        row.append(int(tok))
                    except ValueError as exc:
                        raise ValueError(f"bad matrix entry {tok!r}") from exc
            if row:
                body.append(tuple(row))
        return cls(tuple(body), frozenset(dots), name)

    @classmethod
    def load(cls, path: str | Path) -> "GriddingMatrix":
        path = Path(path)
        return cls.parse(path.read_text(), name=path.stem)

    def to_text(self) -> str:
        lines = [" ".join(str(v) for v in r) for r in self.rows]
        if self.dots:
            lines.append(" ".join(f"!{r},{c}" for r, c in sorted(self.dots)))
        return "\n".join(lines) + "\n"

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_cols(self) -> int:
        return len(self.rows[0])

    def entry(self, cell: Cell) -> int:
        r, c = cell
        return self.rows[r - 1][c - 1]

    def nonzero_cells(self) -> list[Cell]:
        return [(r + 1, c + 1) for r, row in enumerate(self.rows) for c, v in enumerate(row) if v]

    def transpose(self) -> "GriddingMatrix":
        """Matrix of the inverse permutations: reflect in the main diagonal of the plot."""
        R, C = self.n_rows, self.n_cols
        # Cartesian (col, row-from-bottom) -> (row-from-bottom, col)
        rows = tuple(tuple(self.rows[R - c][C - r] for c in range(1, R + 1)) for r in range(1, C + 1))
        dots = frozenset((C - c + 1, R - r + 1) for r, c in self.dots)
        return GriddingMatrix(rows, dots, self.name + "^T" if self.name else "")

    def __str__(self) -> str:
        return self.to_text().strip().replace("\n", " / ")


# ---------------------------------------------------------------------------
# cell graph

def cell_graph(m: GriddingMatrix) -> nx.Graph:
    """Nonzero cells, joined when they share a row or column with no nonzero cell between."""
    g = nx.Graph()
    cells = m.nonzero_cells()
    g.add_nodes_from(cells)
    for r in range(1, m.n_rows + 1):
        line = [c for c in range(1, m.n_cols + 1) if m.entry((r, c))]
        g.add_edges_from(((r, a), (r, b)) for a, b in zip(line, line[1:]))
    for c in range(1, m.n_cols + 1):
        line = [r for r in range(1, m.n_rows + 1) if m.entry((r, c))]
        g.add_edges_from(((a, c), (b, c)) for a, b in zip(line, line[1:]))
    return g


def is_forest(m: GriddingMatrix) -> bool:
    return nx.is_forest(cell_graph(m))


# ---------------------------------------------------------------------------
# griddings

@dataclass(frozen=True)
class Gridding:
    """``col_cuts[j]`` points lie left of the j-th vertical line; ``row_cuts[i]``
    values lie below the i-th horizontal line (lines counted left to right and
    bottom to top).  ``cells[k]`` is the ``(row, col)`` cell of the k-th point."""

    col_cuts: tuple[int, ...]
    row_cuts: tuple[int, ...]
    cells: tuple[Cell, ...]


class _Search:
    """Gridding search for one permutation in one matrix.

    Internally columns are indexed 0.. from the left and rows 0.. from the
    bottom.  Once a column's position range is fixed, the points it may hold
    in row ``r`` when that row spans the values ``(lo, hi]`` form a valid cell
    for every ``hi`` up to some bound ``top[r][lo]`` (validity only breaks as
    the band grows).  Columns are chosen left to right; their bounds combine
    by taking minima, and a choice of row cuts exists iff the greedy sweep
    ``reach = max(top[r][0..reach])`` over the rows arrives at ``n``.
    """

    def __init__(self, values: Sequence[int], m: GriddingMatrix):
        self.v = tuple(values)
        self.n = len(values)
        self.R, self.C = m.n_rows, m.n_cols
        self.sign = [[m.rows[self.R - 1 - r][c] for r in range(self.R)] for c in range(self.C)]
        self.dot = [[(self.R - r, c + 1) in m.dots for r in range(self.R)] for c in range(self.C)]
        self._tables: dict = {}

    def table(self, c: int, start: int, end: int) -> tuple[tuple[int, ...], ...]:
        key = (c, start, end)
        hit = self._tables.get(key)
        if hit is not None:
            return hit
        n = self.n
        pts = sorted((self.v[i], i) for i in range(start, end))
        k = len(pts)
        # first[lo] = index in pts of the first point with value > lo
        first = [0] * (n + 1)
        j = 0
        for lo in range(n + 1):
            while j < k and pts[j][0] <= lo:
                j += 1
            first[lo] = j
        rows = []
        for r in range(self.R):
            sign, dot = self.sign[c][r], self.dot[c][r]
            # stop[j]: index of the first point that cannot join a cell whose lowest point is pts[j]
            if sign == 0:
                stop = list(range(k))
            elif dot:
                stop = [j + 1 for j in range(k)]
            else:
                stop = [k] * k
                for j in range(k - 2, -1, -1):
                    ok = pts[j + 1][1] > pts[j][1] if sign > 0 else pts[j + 1][1] < pts[j][1]
                    stop[j] = stop[j + 1] if ok else j + 1
            top = []
            for lo in range(n + 1):
                j = first[lo]
                if j == k:
                    top.append(n)
                else:
                    s = stop[j]
                    top.append(n if s == k else pts[s][0] - 1)
            rows.append(tuple(top))
        out = tuple(rows)
        self._tables[key] = out
        return out

    def feasible(self, acc) -> bool:
        reach = 0
        for row in acc:
            reach = max(row[: reach + 1])
        return reach == self.n

    def row_cuts(self, acc) -> tuple[int, ...]:
        n, R = self.n, self.R

        @functools.lru_cache(maxsize=None)
        def finish(r: int, lo: int) -> Optional[tuple[int, ...]]:
            if r == R - 1:
                return () if acc[r][lo] == n else None
            for hi in range(lo, acc[r][lo] + 1):
                rest = finish(r + 1, hi)
                if rest is not None:
                    return (hi,) + rest
            return None

        return finish(0, 0)

    def run(self, want_cuts: bool):
        n, C, R = self.n, self.C, self.R
        start_acc = tuple(tuple(n for _ in range(n + 1)) for _ in range(R))
        cuts: list[int] = []

        def dfs(c: int, start: int, acc):
            last = c == C - 1
            for end in ((n,) if last else range(start, n + 1)):
                if end > start:
                    tab = self.table(c, start, end)
                    new = tuple(tuple(map(min, ra, rb)) for ra, rb in zip(acc, tab))
                    if not self.feasible(new):
                        continue
                else:
                    new = acc
                if last:
                    return new
                cuts.append(end)
                found = dfs(c + 1, end, new)
                if found is not None:
                    return found
                cuts.pop()
            return None

        acc = dfs(0, 0, start_acc)
        if acc is None:
            return None
        if not want_cuts:
            return True
        return tuple(cuts), self.row_cuts(acc)


def grid(p: Permutation, m: GriddingMatrix) -> Optional[Gridding]:
    """A gridding of ``p`` in ``m`` with lexicographically least cuts, or None."""
    found = _Search(p.values, m).run(want_cuts=True)
    if found is None:
        return None
    col_cuts, row_cuts = found
    cells = []
    for i, val in enumerate(p.values):
        c = sum(1 for k in col_cuts if k <= i)
        r = sum(1 for k in row_cuts if k < val)
        cells.append((m.n_rows - r, c + 1))
    return Gridding(col_cuts, row_cuts, tuple(cells))


try:
    import numpy as np

    from ._gridkernel import griddable_kernel as _kernel
except ImportError:  # pragma: no cover - numba missing
    _kernel = None


@functools.lru_cache(maxsize=256)
def _kernel_arrays(m: GriddingMatrix):
    sign = np.array([[m.rows[m.n_rows - 1 - r][c] for r in range(m.n_rows)] for c in range(m.n_cols)], dtype=np.int64)
    dot = np.array(
        [[(m.n_rows - r, c + 1) in m.dots for r in range(m.n_rows)] for c in range(m.n_cols)], dtype=np.bool_
    )
    return sign, dot


@functools.lru_cache(maxsize=1 << 18)
def _griddable(values: tuple[int, ...], m: GriddingMatrix) -> bool:
    if m.n_cols > m.n_rows:
        inv = [0] * len(values)
        for i, val in enumerate(values, 1):
            inv[val - 1] = i
        values, m = tuple(inv), m.transpose()
    if _kernel is not None:
        sign, dot = _kernel_arrays(m)
        return bool(_kernel(np.array(values, dtype=np.int64), sign, dot))
    return _Search(values, m).run(want_cuts=False) is not None


def griddable(p: Permutation, m: GriddingMatrix) -> bool:
    """Whether ``p`` has a gridding in ``m`` (compiled search when numba is present)."""
    return _griddable(p.values, m)


def check_gridding(p: Permutation, m: GriddingMatrix, g: Gridding) -> bool:
    """Independent validation of a gridding against the cell rules."""
    if len(g.cells) != len(p):
        return False
    by_cell: dict[Cell, list[tuple[int, int]]] = {}
    for i, (val, cell) in enumerate(zip(p.values, g.cells)):
        r, c = cell
        col = sum(1 for k in g.col_cuts if k <= i) + 1
        row = m.n_rows - sum(1 for k in g.row_cuts if k < val)
        if (row, col) != cell:
            return False
        by_cell.setdefault(cell, []).append((i, val))
    for cell, pts in by_cell.items():
        sign = m.entry(cell)
        if sign == 0 or (cell in m.dots and len(pts) > 1):
            return False
        vals = [v for _, v in pts]
        if vals != sorted(vals, reverse=sign < 0):
            return False
    return True


def grid_class(m: GriddingMatrix) -> ClassSpec:
    return ClassSpec.predicate(functools.partial(griddable, m=m), name=f"Grid({m.name or m})")


def grid_union(*ms: GriddingMatrix, name: str = "") -> ClassSpec:
    def member(p: Permutation) -> bool:
        return any(griddable(p, m) for m in ms)

    return ClassSpec.predicate(member, name=name or "Grid(" + " | ".join(x.name or str(x) for x in ms) + ")")


def class_members(m: GriddingMatrix, n: int) -> set[Permutation]:
    """All length-``n`` permutations griddable in ``m``."""
    return set(generate(grid_class(m), n))
