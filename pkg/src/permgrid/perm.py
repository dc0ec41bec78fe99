"""Permutations, pattern containment and substitution decomposition."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence


def standardize(seq: Sequence[int]) -> tuple[int, ...]:
    """Replace the entries of ``seq`` by their ranks 1..len(seq)."""
    order = sorted(range(len(seq)), key=seq.__getitem__)
    out = [0] * len(seq)
    for rank, idx in enumerate(order, 1):
        out[idx] = rank
    return tuple(out)


class Permutation:
    """A permutation in one-line notation, values 1..n.

    Instances are immutable and hashable; ordering is lexicographic on the
    one-line form (shorter permutations first).
    """

    __slots__ = ("values",)

    def __init__(self, values: Iterable[int] = (), check: bool = True):
        vals = tuple(values)
        if check and sorted(vals) != list(range(1, len(vals) + 1)):
            raise ValueError(f"{vals} is not a permutation of 1..{len(vals)}")
        object.__setattr__(self, "values", vals)

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """Read ``"2 1 4 3"`` or the compact digit form ``"2143"`` (n <= 9)."""
        text = text.strip()
        if not text:
            return cls(())
        if any(ch.isspace() for ch in text) or "," in text:
            parts = text.replace(",", " ").split()
            try:
                return cls(int(p) for p in parts)
            except ValueError as exc:
                raise ValueError(f"malformed permutation {text!r}") from exc
        if not text.isdigit():
            raise ValueError(f"malformed permutation {text!r}")
        return cls(int(ch) for ch in text)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1), check=False)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.values == other.values

    def __hash__(self) -> int:
        return hash(self.values)

    def __lt__(self, other: "Permutation") -> bool:
        return (len(self), self.values) < (len(other), other.values)

    def __repr__(self) -> str:
        return f"Permutation({str(self)!r})"

    def __str__(self) -> str:
        if len(self) <= 9:
            return "".join(map(str, self.values))
        return " ".join(map(str, self.values))

    def spaced(self) -> str:
        return " ".join(map(str, self.values))

    # -- pattern order ------------------------------------------------------

    def contains(self, needle: "Permutation") -> bool:
        return contains(self, needle)

    def avoids(self, basis: Iterable["Permutation"]) -> bool:
        return avoids_all(self, basis)

    def delete(self, i: int) -> "Permutation":
        """Remove the entry at index ``i`` and standardize."""
        v = self.values[i]
        return Permutation((w - (w > v) for k, w in enumerate(self.values) if k != i), check=False)

    def deletions(self) -> set["Permutation"]:
        return {self.delete(i) for i in range(len(self))}

    def insert_max(self, slot: int) -> "Permutation":
        """Insert the value n+1 before index ``slot`` (0..n)."""
        v = self.values
        return Permutation(v[:slot] + (len(v) + 1,) + v[slot:], check=False)

    def descents(self) -> int:
        v = self.values
        return sum(1 for i in range(len(v) - 1) if v[i] > v[i + 1])

    # -- symmetries ---------------------------------------------------------

    def reverse(self) -> "Permutation":
        return Permutation(self.values[::-1], check=False)

    def complement(self) -> "Permutation":
        n = len(self) + 1
        return Permutation((n - v for v in self.values), check=False)

    def inverse(self) -> "Permutation":
        out = [0] * len(self)
        for i, v in enumerate(self.values, 1):
            out[v - 1] = i
        return Permutation(out, check=False)


def perm(text: str) -> Permutation:
    """Shorthand for :meth:`Permutation.parse`."""
    return Permutation.parse(text)


# ---------------------------------------------------------------------------
# containment

def contains(haystack: Permutation, needle: Permutation) -> bool:
    """True iff some subsequence of ``haystack`` is order-isomorphic to ``needle``."""
    k = len(needle)
    if k == 0:
        return True
    n = len(haystack)
    if k > n:
        return False
    h = haystack.values
    pat = needle.values
    # for each needle index, the needle indices already placed that bound its value
    below: list[int] = []
    above: list[int] = []
    for i in range(k):
        lo = hi = -1
        for j in range(i):
            if pat[j] < pat[i] and (lo < 0 or pat[j] > pat[lo]):
                lo = j
            if pat[j] > pat[i] and (hi < 0 or pat[j] < pat[hi]):
                hi = j
        below.append(lo)
        above.append(hi)
    chosen = [0] * k

    def extend(i: int, start: int) -> bool:
        if i == k:
            return True
        lo = h[chosen[below[i]]] if below[i] >= 0 else 0
        hi = h[chosen[above[i]]] if above[i] >= 0 else n + 1
        for p in range(start, n - (k - i) + 1):
            if lo < h[p] < hi:
                chosen[i] = p
                if extend(i + 1, p + 1):
                    return True
        return False

    return extend(0, 0)


def avoids_all(p: Permutation, basis: Iterable[Permutation]) -> bool:
    return not any(contains(p, b) for b in basis)


# ---------------------------------------------------------------------------
# symmetries

_SYMMETRY_STEPS = {"r": Permutation.reverse, "c": Permutation.complement, "i": Permutation.inverse}
SYMMETRY_NAMES = {
    "identity": "",
    "reverse": "r",
    "complement": "c",
    "inverse": "i",
    "reverse_complement": "rc",
    "reverse_inverse": "ri",
    "inverse_reverse": "ir",
    "reverse_inverse_reverse": "rir",
}


def symmetry(p: Permutation, op: str) -> Permutation:
    """Apply a dihedral/inverse symmetry.

    ``op`` is a name from :data:`SYMMETRY_NAMES` or a string over ``r``, ``c``,
    ``i``; letters are applied left to right, so ``"ri"`` reverses first.
    """
    steps = SYMMETRY_NAMES.get(op, op)
    for ch in steps:
        if ch not in _SYMMETRY_STEPS:
            raise ValueError(f"unknown symmetry step {ch!r} in {op!r}")
        p = _SYMMETRY_STEPS[ch](p)
    return p


# ---------------------------------------------------------------------------
# intervals, simplicity, decomposition

def intervals(p: Permutation) -> list[tuple[int, int]]:
    """All intervals as half-open index ranges ``(i, j)`` with ``j - i >= 2``."""
    v = p.values
    out = []
    for i in range(len(v)):
        lo = hi = v[i]
        for j in range(i + 1, len(v)):
            lo = min(lo, v[j])
            hi = max(hi, v[j])
            if hi - lo == j - i:
                out.append((i, j + 1))
    return out


def is_simple(p: Permutation) -> bool:
    """Only trivial intervals (singletons and the whole permutation)."""
    n = len(p)
    if n < 1:
        raise ValueError("simplicity is defined for nonempty permutations")
    v = p.values
    for i in range(n):
        lo = hi = v[i]
        for j in range(i + 1, n):
            lo = min(lo, v[j])
            hi = max(hi, v[j])
            if hi - lo == j - i and j - i < n - 1:
                return False
    return True


def inflate(skeleton: Permutation, blocks: Sequence[Permutation]) -> Permutation:
    """``skeleton[blocks]``: replace each point by an interval shaped like its block."""
    if len(blocks) != len(skeleton):
        raise ValueError(f"skeleton of length {len(skeleton)} needs as many blocks, got {len(blocks)}")
    if any(len(b) == 0 for b in blocks):
        raise ValueError("blocks must be nonempty")
    # value offset of the block inflating skeleton value v
    sizes_by_value = [0] * (len(skeleton) + 1)
    for s, b in zip(skeleton.values, blocks):
        sizes_by_value[s] = len(b)
    offset = [0] * (len(skeleton) + 2)
    for v in range(1, len(skeleton) + 1):
        offset[v + 1] = offset[v] + sizes_by_value[v]
    out: list[int] = []
    for s, b in zip(skeleton.values, blocks):
        out.extend(offset[s] + w for w in b.values)
    return Permutation(out, check=False)


def direct_sum(a: Permutation, b: Permutation) -> Permutation:
    return Permutation(a.values + tuple(len(a) + w for w in b.values), check=False)


def skew_sum(a: Permutation, b: Permutation) -> Permutation:
    return Permutation(tuple(len(b) + w for w in a.values) + b.values, check=False)


def _components(p: Permutation, skew: bool) -> list[Permutation]:
    v = p.values
    n = len(v)
    out = []
    start = 0
    running = 0
    for i in range(n):
        running = max(running, v[i]) if not skew else max(running, n + 1 - v[i])
        if running == i + 1:
            out.append(Permutation(standardize(v[start:i + 1]), check=False))
            start = i + 1
    return out


def sum_components(p: Permutation) -> list[Permutation]:
    """Maximal-arity sum decomposition: ``p = a_1 + ... + a_k``, each sum-indecomposable."""
    return _components(p, skew=False)


def skew_components(p: Permutation) -> list[Permutation]:
    """Maximal-arity skew decomposition, each component skew-indecomposable."""
    return _components(p, skew=True)


class Decomposability(str, Enum):
    SUM = "sum_decomposable"
    SKEW = "skew_decomposable"
    STRONG = "strong_indecomposable"


def classify_decomposability(p: Permutation) -> Decomposability:
    if len(p) < 1:
        raise ValueError("defined for nonempty permutations")
    if len(sum_components(p)) > 1:
        return Decomposability.SUM
    if len(skew_components(p)) > 1:
        return Decomposability.SKEW
    return Decomposability.STRONG


def is_sum_indecomposable(p: Permutation) -> bool:
    return len(sum_components(p)) == 1


def is_skew_indecomposable(p: Permutation) -> bool:
    return len(skew_components(p)) == 1


@dataclass(frozen=True)
class SubstitutionDecomposition:
    skeleton: Permutation
    blocks: tuple[Permutation, ...]

    def inflate(self) -> Permutation:
        return inflate(self.skeleton, self.blocks)


def decompose(p: Permutation) -> SubstitutionDecomposition:
    """Substitution decomposition with a simple skeleton.

    Decomposable permutations get skeleton 12 (or 21) with the first block the
    first sum (skew) component and the second block everything after it.
    """
    n = len(p)
    if n < 1:
        raise ValueError("decompose needs a nonempty permutation")
    if n == 1:
        return SubstitutionDecomposition(p, (p,))
    for skew, skel in ((False, Permutation((1, 2))), (True, Permutation((2, 1)))):
        comps = _components(p, skew)
        if len(comps) > 1:
            k = len(comps[0])
            v = p.values
            return SubstitutionDecomposition(
                skel, (Permutation(standardize(v[:k]), check=False), Permutation(standardize(v[k:]), check=False))
            )
    # strong-indecomposable: maximal proper intervals partition the positions
    v = p.values
    block_end = []
    i = 0
    while i < n:
        best = i + 1
        lo = hi = v[i]
        for j in range(i + 1, n):
            lo = min(lo, v[j])
            hi = max(hi, v[j])
            if hi - lo == j - i and j - i < n - 1:
                best = j + 1
        block_end.append((i, best))
        i = best
    reps = [min(v[a:b]) for a, b in block_end]
    skeleton = Permutation(standardize(reps), check=False)
    blocks = tuple(Permutation(standardize(v[a:b]), check=False) for a, b in block_end)
    return SubstitutionDecomposition(skeleton, blocks)
