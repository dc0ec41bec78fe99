"""Brute-force generation of permutation classes by insertion of a new maximum.

Classes are given either by a basis (fast vectorized path) or by a
membership predicate, which must be closed under taking patterns.
"""

from __future__ import annotations

import csv
import functools
import itertools
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Optional

import numpy as np

from .perm import (
    Permutation,
    avoids_all,
    is_simple,
    is_skew_indecomposable,
    is_sum_indecomposable,
    classify_decomposability,
    Decomposability,
)

Predicate = Callable[[Permutation], bool]

# candidates rejected by the deletion test that are still run through the
# predicate, to catch predicates that are not closed under deletion
_SPOT_CHECKS = 25


class NotDownwardClosed(ValueError):
    """Raised when a membership predicate admits a member with a non-member deletion."""


@dataclass(frozen=True)
class ClassSpec:
    """A permutation class: ``Av(basis)`` intersected with an optional predicate."""

    basis: frozenset = frozenset()
    membership: Optional[Predicate] = field(default=None, compare=True)
    name: str = ""

    @classmethod
    def av(cls, *patterns) -> "ClassSpec":
        basis = frozenset(p if isinstance(p, Permutation) else Permutation.parse(p) for p in patterns)
        label = "Av(" + ",".join(sorted(map(str, basis), key=lambda s: (len(s), s))) + ")"
        return cls(basis=basis, name=label)

    @classmethod
    def predicate(cls, fn: Predicate, name: str = "") -> "ClassSpec":
        return cls(membership=fn, name=name or getattr(fn, "__name__", "predicate"))

    def __contains__(self, p: Permutation) -> bool:
        if not avoids_all(p, self.basis):
            return False
        return self.membership is None or bool(self.membership(p))

    def __str__(self) -> str:
        return self.name or "class"


# ---------------------------------------------------------------------------
# vectorized avoidance generation

def _killed_slots(level: np.ndarray, basis: Iterable[Permutation]) -> np.ndarray:
    """Mark the insertion slots where a new maximum would complete a basis element.

    ``level`` has one member per row.  Inserting the maximum at slot ``s``
    (before column ``s``) creates an occurrence of ``b`` exactly when ``b``
    with its maximum removed occurs with the right split around ``s``.
    """
    rows, k = level.shape
    killed = np.zeros((rows, k + 1), dtype=bool)
    for b in basis:
        if len(b) > k + 1:
            continue
        vals = b.values
        m = vals.index(len(b))
        rest = vals[:m] + vals[m + 1:]
        L = len(rest)
        if L == 0:
            killed[:] = True
            continue
        by_value = sorted(range(L), key=rest.__getitem__)
        for combo in itertools.combinations(range(k), L):
            cols = [combo[i] for i in by_value]
            mask = np.ones(rows, dtype=bool)
            for lo_col, hi_col in zip(cols, cols[1:]):
                mask &= level[:, lo_col] < level[:, hi_col]
            if not mask.any():
                continue
            first = combo[m - 1] + 1 if m > 0 else 0
            last = combo[m] if m < L else k
            killed[mask, first:last + 1] = True
    return killed


def _children(level: np.ndarray, killed: np.ndarray) -> np.ndarray:
    rows, k = level.shape
    parent, slot = np.nonzero(~killed)
    out = np.empty((len(parent), k + 1), dtype=np.int16)
    for j in range(k + 1):
        left = level[parent, min(j, k - 1)] if k else np.zeros(len(parent), dtype=np.int16)
        right = level[parent, j - 1] if j > 0 else left
        out[:, j] = np.where(j < slot, left, np.where(j == slot, k + 1, right))
    if len(out):
        out = out[np.lexsort(out.T[::-1])]
    return out


class _Levels:
    """Members of a class grouped by length, grown lazily."""

    def __init__(self, spec: ClassSpec):
        self.spec = spec
        self.arrays: list[np.ndarray] = [np.zeros((1, 0), dtype=np.int16)]
        self.sets: list[Optional[set]] = [None]
        self.minimal_nonmembers: list[list[Permutation]] = [[]]

    def grow_to(self, n: int) -> None:
        while len(self.arrays) <= n:
            self._grow()

    def _grow(self) -> None:
        prev = self.arrays[-1]
        k = prev.shape[1]
        killed = _killed_slots(prev, self.spec.basis)
        fn = self.spec.membership
        if fn is None:
            self.arrays.append(_children(prev, killed))
            self.sets.append(None)
            self.minimal_nonmembers.append([])
            return
        prev_set = self._set(k)
        members = []
        minimal = []
        skipped = []
        for row, dead in zip(prev.tolist(), killed.tolist()):
            for s in range(k + 1):
                if dead[s]:
                    continue
                child = Permutation(row[:s] + [k + 1] + row[s:], check=False)
                # a member of a closed class has only members as deletions
                if not all(q in prev_set for q in child.deletions()):
                    if len(skipped) < _SPOT_CHECKS:
                        skipped.append(child)
                    continue
                if fn(child):
                    members.append(child)
                else:
                    minimal.append(child)
        for child in skipped:
            if fn(child):
                bad = next(q for q in child.deletions() if q not in prev_set)
                raise NotDownwardClosed(f"{self.spec}: member {child} has non-member deletion {bad}")
        members.sort()
        arr = np.array([p.values for p in members], dtype=np.int16).reshape(len(members), k + 1)
        self.arrays.append(arr)
        self.sets.append(set(members))
        self.minimal_nonmembers.append(sorted(minimal))

    def _set(self, k: int) -> set:
        if self.sets[k] is None:
            self.sets[k] = {Permutation(r, check=False) for r in self.arrays[k].tolist()}
        return self.sets[k]

    def members(self, n: int) -> list[Permutation]:
        self.grow_to(n)
        return [Permutation(r, check=False) for r in self.arrays[n].tolist()]

    def count(self, n: int) -> int:
        self.grow_to(n)
        return len(self.arrays[n])


@functools.lru_cache(maxsize=64)
def _levels(spec: ClassSpec) -> _Levels:
    return _Levels(spec)


def generate(spec: ClassSpec, n: int) -> list[Permutation]:
    """Members of length ``n``, each once, in lexicographic order."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return _levels(spec).members(n)


def count_series(spec: ClassSpec, n_max: int) -> list[int]:
    """Counts for n = 1..n_max."""
    levels = _levels(spec)
    return [levels.count(n) for n in range(1, n_max + 1)]


FILTERS: dict[str, Predicate] = {
    "simple": is_simple,
    "sum_indecomposable": is_sum_indecomposable,
    "skew_indecomposable": is_skew_indecomposable,
    "strong_indecomposable": lambda p: classify_decomposability(p) is Decomposability.STRONG,
}


def count_filtered(spec: ClassSpec, n_max: int, filter: str | Predicate) -> list[int]:
    """Counts of members passing ``filter`` for n = 1..n_max."""
    fn = FILTERS[filter] if isinstance(filter, str) else filter
    return [sum(1 for p in generate(spec, n) if fn(p)) for n in range(1, n_max + 1)]


def compute_basis(membership: Predicate | ClassSpec, len_max: int = 8) -> list[Permutation]:
    """Minimal non-members of length at most ``len_max``, sorted."""
    spec = membership if isinstance(membership, ClassSpec) else ClassSpec.predicate(membership)
    if spec.membership is None:
        return sorted(b for b in spec.basis if len(b) <= len_max)
    levels = _levels(spec)
    levels.grow_to(len_max)
    found = [p for k in range(1, len_max + 1) for p in levels.minimal_nonmembers[k]]
    return sorted(found)


def naive_members(spec: ClassSpec, n: int) -> list[Permutation]:
    """Filter all n! permutations; the slow reference for :func:`generate`."""
    return sorted(
        p for p in (Permutation(v, check=False) for v in itertools.permutations(range(1, n + 1))) if p in spec
    )


# ---------------------------------------------------------------------------
# golden files

def write_members(perms: Iterable[Permutation], path: str | Path) -> None:
    Path(path).write_text("".join(p.spaced() + "\n" for p in perms))


def read_members(path: str | Path) -> list[Permutation]:
    lines = Path(path).read_text().splitlines()
    return [Permutation.parse(line) for line in lines if line.strip()]


def write_series_csv(counts: Iterable[int], path: str | Path, start: int = 1) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["n", "count"])
        for n, c in enumerate(counts, start):
            w.writerow([n, c])


def read_series_csv(path: str | Path) -> list[int]:
    with open(path, newline="") as fh:
        return [int(row["count"]) for row in csv.DictReader(fh)]
