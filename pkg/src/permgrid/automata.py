"""Deterministic finite automata with a boolean algebra and word counting.

Transition maps are partial; a missing transition sends the word to an
implicit dead state.  All counting is exact.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Hashable, Iterable, Iterator, Mapping, Sequence

from .ratfun import Polynomial, RationalFunction

State = Hashable


class DfaFormatError(ValueError):
    pass


@dataclass(frozen=True)
class Dfa:
    alphabet: tuple[str, ...]
    states: tuple[State, ...]
    initial: State
    accepting: frozenset
    transitions: Mapping[tuple[State, str], State]

    def __post_init__(self):
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("repeated letter in alphabet")
        known = set(self.states)
        if self.initial not in known:
            raise ValueError(f"initial state {self.initial!r} not among states")
        if not set(self.accepting) <= known:
            raise ValueError("accepting states must be states")
        letters = set(self.alphabet)
        for (s, a), t in self.transitions.items():
            if s not in known or t not in known:
                raise ValueError(f"transition {s!r} -{a}-> {t!r} uses an unknown state")
            if a not in letters:
                raise ValueError(f"transition letter {a!r} not in alphabet")
        object.__setattr__(self, "transitions", dict(self.transitions))

    @classmethod
    def build(
        cls,
        alphabet: Iterable[str],
        initial: State,
        accepting: Iterable[State],
        edges: Iterable[tuple[State, str, State]],
    ) -> "Dfa":
        """Construct from edges whose labels may be words or ``+``-separated alternatives.

        A label like ``"aba+ba"`` becomes a trie of fresh intermediate states
        hanging off the source state, so ``s -aba-> t`` and ``s -ba-> t``
        share nothing but ``s`` and ``t``.  Labels that would make the
        machine nondeterministic are rejected.
        """
        alphabet = tuple(alphabet)
        accepting = list(accepting)
        order: list[State] = [initial]
        seen = {initial}

        def note(s):
            if s not in seen:
                seen.add(s)
                order.append(s)

        delta: dict[tuple[State, str], State] = {}

        def put(s, a, t):
            if a not in alphabet:
                raise DfaFormatError(f"letter {a!r} not in alphabet")
            if delta.get((s, a), t) != t:
                raise DfaFormatError(f"nondeterministic choice at state {s!r} on {a!r}")
            delta[(s, a)] = t

        for src, label, dst in edges:
            note(src)
            for word in label.split("+"):
                word = word.strip()
                if not word:
                    raise DfaFormatError(f"empty label on edge {src!r} -> {dst!r}")
                cur = src
                for i, a in enumerate(word[:-1]):
                    nxt = delta.get((cur, a))
                    if nxt is None:
                        nxt = f"{src}.{word[:i + 1]}"
                        note(nxt)
                        put(cur, a, nxt)
                    cur = nxt
                put(cur, word[-1], dst)
            note(dst)
        for s in accepting:
            note(s)
        return cls(alphabet, tuple(order), initial, frozenset(accepting), delta)

    # -- text format --------------------------------------------------------

    @classmethod
    def from_text(cls, text: str) -> "Dfa":
        """Parse the line format (``alphabet:``/``initial:``/``accepting:`` then ``src label dst``).

        Blank lines and lines starting with ``#`` are ignored.
        """
        header: dict[str, list[str]] = {}
        edges = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, colon, rest = line.partition(":")
            if colon and key.strip() in ("alphabet", "initial", "accepting"):
                header[key.strip()] = rest.split()
                continue
            parts = line.split()
            if len(parts) != 3:
                raise DfaFormatError(f"line {lineno}: expected 'source label target', got {raw!r}")
            edges.append(tuple(parts))
        for key in ("alphabet", "initial"):
            if key not in header:
                raise DfaFormatError(f"missing '{key}:' header")
        if len(header["initial"]) != 1:
            raise DfaFormatError("exactly one initial state required")
        return cls.build(header["alphabet"], header["initial"][0], header.get("accepting", []), edges)

    def _text_order(self) -> list:
        # the order in which build() meets the states when reading the edges back
        order, seen = [], set()
        for root in (self.initial,) + self.states:
            if root in seen or (root != self.initial and not any((root, a) in self.transitions for a in self.alphabet)):
                continue
            seen.add(root)
            order.append(root)
            queue = deque([root])
            while queue:
                s = queue.popleft()
                for a in self.alphabet:
                    t = self.transitions.get((s, a))
                    if t is not None and t not in seen:
                        seen.add(t)
                        order.append(t)
                        queue.append(t)
        return order + [s for s in self.states if s not in seen and s in self.accepting]

    def to_text(self) -> str:
        """Text form; saving, loading and saving again gives the same bytes."""
        order = self._text_order()
        lines = [
            "alphabet: " + " ".join(self.alphabet),
            f"initial: {self.initial}",
            "accepting: " + " ".join(str(s) for s in order if s in self.accepting),
        ]
        for s in order:
            for a in self.alphabet:
                t = self.transitions.get((s, a))
                if t is not None:
                    lines.append(f"{s} {a} {t}")
        return "\n".join(lines) + "\n"

    @classmethod
    def load(cls, path: str | Path) -> "Dfa":
        return cls.from_text(Path(path).read_text())

    def save(self, path: str | Path) -> None:
        with open(path, "w", newline="\n") as fh:
            fh.write(self.to_text())

    # -- queries ------------------------------------------------------------

    def step(self, s: State, word: str):
        for a in word:
            s = self.transitions.get((s, a))
            if s is None:
                return None
        return s

    def accepts(self, word: str) -> bool:
        s = self.step(self.initial, word)
        return s is not None and s in self.accepting

    def count_words(self, n_max: int) -> list[int]:
        return count_words(self, n_max)

    def gf(self) -> RationalFunction:
        return gf(self)

    def words(self, n: int) -> Iterator[str]:
        """Accepted words of length ``n`` in alphabet order."""
        live = _coreachable(self)

        def walk(s, prefix, left):
            if left == 0:
                if s in self.accepting:
                    yield prefix
                return
            for a in self.alphabet:
                t = self.transitions.get((s, a))
                if t is not None and t in live:
                    yield from walk(t, prefix + a, left - 1)

        if self.initial in live:
            yield from walk(self.initial, "", n)

    def with_accepting(self, accepting: Iterable[State]) -> "Dfa":
        return Dfa(self.alphabet, self.states, self.initial, frozenset(accepting), self.transitions)

    def __len__(self) -> int:
        return len(self.states)


def accepts(d: Dfa, word: str) -> bool:
    return d.accepts(word)


# ---------------------------------------------------------------------------
# counting

def count_words(d: Dfa, n_max: int) -> list[int]:
    """``counts[n]`` = number of accepted words of length n, for n = 0..n_max."""
    out_edges: dict[State, list[State]] = {s: [] for s in d.states}
    for (s, _), t in d.transitions.items():
        out_edges[s].append(t)
    vec = {d.initial: 1}
    counts = []
    for n in range(n_max + 1):
        counts.append(sum(c for s, c in vec.items() if s in d.accepting))
        if n == n_max:
            break
        nxt: dict[State, int] = {}
        for s, c in vec.items():
            for t in out_edges[s]:
                nxt[t] = nxt.get(t, 0) + c
        vec = nxt
    return counts


def _charpoly(mat: list[list[Fraction]]) -> list[Fraction]:
    """Coefficients (constant first) of det(x I - M), via Hessenberg reduction."""
    n = len(mat)
    h = [row[:] for row in mat]
    for m in range(1, n - 1):
        piv = next((i for i in range(m, n) if h[i][m - 1] != 0), None)
        if piv is None:
            continue
        if piv != m:
            h[piv], h[m] = h[m], h[piv]
            for row in h:
                row[piv], row[m] = row[m], row[piv]
        t = h[m][m - 1]
        for i in range(m + 1, n):
            u = h[i][m - 1] / t
            if u == 0:
                continue
            hi, hm = h[i], h[m]
            for j in range(n):
                hi[j] -= u * hm[j]
            for row in h:
                row[m] += u * row[i]
    polys: list[list[Fraction]] = [[Fraction(1)]]
    for m in range(1, n + 1):
        prev = polys[m - 1]
        cur = [Fraction(0)] + prev  # x * p_{m-1}
        for k, c in enumerate(prev):
            cur[k] -= h[m - 1][m - 1] * c
        t = Fraction(1)
        for i in range(1, m):
            t *= h[m - i][m - i - 1]
            if t == 0:
                break
            coef = t * h[m - i - 1][m - 1]
            if coef:
                for k, c in enumerate(polys[m - i - 1]):
                    cur[k] -= coef * c
        polys.append(cur)
    return polys[n]


def gf(d: Dfa) -> RationalFunction:
    """Exact generating function of the accepted words, counted by length.

    With T the transfer matrix, the answer is u (I - xT)^{-1} v.  Its
    denominator is det(I - xT), the reversed characteristic polynomial of T;
    by Cramer's rule the numerator has degree below the number of states, so
    it is fixed by the first |states| terms of the count series.
    """
    d = normalize(d)
    n = len(d.states)
    if not d.accepting:
        return RationalFunction(0)
    index = {s: i for i, s in enumerate(d.states)}
    mat = [[Fraction(0)] * n for _ in range(n)]
    for (s, _), t in d.transitions.items():
        mat[index[s]][index[t]] += 1
    chi = _charpoly(mat)
    den = Polynomial(reversed(chi))  # x^n chi(1/x)
    counts = count_words(d, n - 1)
    prod = [sum(den[k] * counts[i - k] for k in range(0, i + 1)) for i in range(n)]
    return RationalFunction(Polynomial(prod), den)


# ---------------------------------------------------------------------------
# structure

def _reachable(d: Dfa) -> set:
    seen = {d.initial}
    todo = [d.initial]
    while todo:
        s = todo.pop()
        for a in d.alphabet:
            t = d.transitions.get((s, a))
            if t is not None and t not in seen:
                seen.add(t)
                todo.append(t)
    return seen


def _coreachable(d: Dfa) -> set:
    back: dict[State, list[State]] = {}
    for (s, _), t in d.transitions.items():
        back.setdefault(t, []).append(s)
    seen = set(d.accepting)
    todo = list(seen)
    while todo:
        t = todo.pop()
        for s in back.get(t, ()):
            if s not in seen:
                seen.add(s)
                todo.append(s)
    return seen


def is_empty(d: Dfa) -> bool:
    return not (_reachable(d) & set(d.accepting))


def normalize(d: Dfa) -> Dfa:
    """Drop unreachable and dead states and rename to ``q0, q1, ...`` in BFS order."""
    useful = _reachable(d) & _coreachable(d)
    if d.initial not in useful:
        return Dfa(d.alphabet, ("q0",), "q0", frozenset(), {})
    names = {d.initial: "q0"}
    queue = deque([d.initial])
    delta = {}
    while queue:
        s = queue.popleft()
        for a in d.alphabet:
            t = d.transitions.get((s, a))
            if t is None or t not in useful:
                continue
            if t not in names:
                names[t] = f"q{len(names)}"
                queue.append(t)
            delta[(names[s], a)] = names[t]
    states = tuple(names.values())
    accepting = frozenset(names[s] for s in names if s in d.accepting)
    return Dfa(d.alphabet, states, "q0", accepting, delta)


def minimize(d: Dfa) -> Dfa:
    """Minimal partial DFA by Moore partition refinement, then normalized."""
    d = normalize(d)
    if not d.accepting:
        return d
    dead = object()
    states = list(d.states)
    block = {s: (s in d.accepting) for s in states}
    block[dead] = None
    while True:
        sig = {
            s: (block[s],) + tuple(block[d.transitions.get((s, a), dead)] for a in d.alphabet)
            for s in states
        }
        ids: dict = {}
        new = {s: ids.setdefault(sig[s], len(ids)) for s in states}
        new[dead] = None
        if len(ids) == len(set(block[s] for s in states)):
            block = new
            break
        block = new
    delta = {}
    for (s, a), t in d.transitions.items():
        delta[(block[s], a)] = block[t]
    reps = []
    for s in states:
        if block[s] not in reps:
            reps.append(block[s])
    acc = frozenset(block[s] for s in d.accepting)
    return normalize(Dfa(d.alphabet, tuple(reps), block[d.initial], acc, delta))


# ---------------------------------------------------------------------------
# boolean algebra

_MODES = {
    "intersection": lambda x, y: x and y,
    "union": lambda x, y: x or y,
    "difference": lambda x, y: x and not y,
}


def product(a: Dfa, b: Dfa, mode: str = "intersection") -> Dfa:
    if tuple(sorted(a.alphabet)) != tuple(sorted(b.alphabet)):
        raise ValueError(f"alphabet mismatch: {a.alphabet} vs {b.alphabet}")
    if mode not in _MODES:
        raise ValueError(f"unknown product mode {mode!r}")
    rule = _MODES[mode]
    start = (a.initial, b.initial)
    seen = {start}
    queue = deque([start])
    delta = {}
    order = [start]
    while queue:
        s = queue.popleft()
        for c in a.alphabet:
            t = (
                a.transitions.get((s[0], c)) if s[0] is not None else None,
                b.transitions.get((s[1], c)) if s[1] is not None else None,
            )
            if t == (None, None):
                continue
            if mode == "intersection" and None in t:
                continue
            if mode == "difference" and t[0] is None:
                continue
            delta[(s, c)] = t
            if t not in seen:
                seen.add(t)
                order.append(t)
                queue.append(t)
    acc = frozenset(s for s in order if rule(s[0] in a.accepting, s[1] in b.accepting))
    return minimize(Dfa(a.alphabet, tuple(order), start, acc, delta))


def intersection(*dfas: Dfa) -> Dfa:
    out = dfas[0]
    for d in dfas[1:]:
        out = product(out, d, "intersection")
    return out


def union(*dfas: Dfa) -> Dfa:
    out = dfas[0]
    for d in dfas[1:]:
        out = product(out, d, "union")
    return out


def difference(a: Dfa, b: Dfa) -> Dfa:
    return product(a, b, "difference")


def complement(d: Dfa) -> Dfa:
    """Accept exactly the words over the same alphabet that ``d`` rejects."""
    dead = "#dead"
    while dead in d.states:
        dead += "#"
    states = d.states + (dead,)
    delta = dict(d.transitions)
    for s in states:
        for a in d.alphabet:
            delta.setdefault((s, a), dead)
    acc = frozenset(s for s in states if s not in d.accepting)
    return minimize(Dfa(d.alphabet, states, d.initial, acc, delta))


def all_words(alphabet: Iterable[str]) -> Dfa:
    alphabet = tuple(alphabet)
    return Dfa(alphabet, ("q0",), "q0", frozenset({"q0"}), {("q0", a): "q0" for a in alphabet})


def subword_containment(w: str, alphabet: Iterable[str]) -> Dfa:
    """Words containing ``w`` as a (scattered) subsequence; |w|+1 states."""
    alphabet = tuple(alphabet)
    if not w:
        raise ValueError("subword must be nonempty")
    if set(w) - set(alphabet):
        raise ValueError(f"subword {w!r} uses letters outside {alphabet}")
    k = len(w)
    delta = {}
    for i in range(k + 1):
        for a in alphabet:
            delta[(i, a)] = i + 1 if i < k and a == w[i] else i
    return Dfa(alphabet, tuple(range(k + 1)), 0, frozenset({k}), delta)


def contains_any_subword(words: Iterable[str], alphabet: Iterable[str]) -> Dfa:
    """Words containing at least one of ``words`` as a subsequence.

    States track the greedy match progress in every pattern at once; this
    avoids the blow-up of a chain of pairwise unions.
    """
    alphabet = tuple(alphabet)
    pats = sorted(set(words))
    if not pats:
        return Dfa(alphabet, ("q0",), "q0", frozenset(), {})
    for w in pats:
        if not w or set(w) - set(alphabet):
            raise ValueError(f"bad subword {w!r}")
    done = "done"
    start = tuple(0 for _ in pats)
    seen = {start: None}
    queue = deque([start])
    delta = {}
    while queue:
        s = queue.popleft()
        for a in alphabet:
            t = tuple(i + 1 if i < len(w) and w[i] == a else i for i, w in zip(s, pats))
            if any(i == len(w) for i, w in zip(t, pats)):
                t = done
            delta[(s, a)] = t
            if t != done and t not in seen:
                seen[t] = None
                queue.append(t)
    for a in alphabet:
        delta[(done, a)] = done
    states = tuple(seen) + (done,)
    return minimize(Dfa(alphabet, states, start, frozenset({done}), delta))


def from_nfa(
    alphabet: Iterable[str],
    initial: Iterable[State],
    accepting: Iterable[State],
    edges: Iterable[tuple[State, str, State]],
) -> Dfa:
    """Subset construction for an epsilon-free NFA."""
    alphabet = tuple(alphabet)
    acc = set(accepting)
    moves: dict[tuple[State, str], set] = {}
    for s, a, t in edges:
        moves.setdefault((s, a), set()).add(t)
    start = frozenset(initial)
    seen = {start: None}
    queue = deque([start])
    delta = {}
    while queue:
        s = queue.popleft()
        for a in alphabet:
            t = frozenset(x for q in s for x in moves.get((q, a), ()))
            if not t:
                continue
            delta[(s, a)] = t
            if t not in seen:
                seen[t] = None
                queue.append(t)
    states = tuple(seen)
    return minimize(Dfa(alphabet, states, start, frozenset(s for s in states if s & acc), delta))


def prefix_language(words: Iterable[str], alphabet: Iterable[str]) -> Dfa:
    """Words beginning with one of ``words``."""
    alphabet = tuple(alphabet)
    edges = []
    for j, w in enumerate(words):
        for i, a in enumerate(w):
            edges.append(("s" if i == 0 else (j, i), a, (j, i + 1)))
        edges.extend(((j, len(w)), a, (j, len(w))) for a in alphabet)
    finals = [(j, len(w)) for j, w in enumerate(words)]
    return from_nfa(alphabet, ["s"], finals, edges)


def suffix_language(words: Iterable[str], alphabet: Iterable[str]) -> Dfa:
    """Words ending with one of ``words``."""
    alphabet = tuple(alphabet)
    edges = [("s", a, "s") for a in alphabet]
    finals = []
    for j, w in enumerate(words):
        for i, a in enumerate(w):
            edges.append(("s" if i == 0 else (j, i), a, (j, i + 1)))
        finals.append((j, len(w)))
    return from_nfa(alphabet, ["s"], finals, edges)


def factor_containment(w: str, alphabet: Iterable[str]) -> Dfa:
    """Words containing ``w`` as a contiguous factor."""
    alphabet = tuple(alphabet)
    edges = [("s", a, "s") for a in alphabet]
    for i, a in enumerate(w):
        edges.append(("s" if i == 0 else i, a, i + 1))
    edges.extend((len(w), a, len(w)) for a in alphabet)
    return from_nfa(alphabet, ["s"], [len(w)], edges)


def letters_only(letters: Iterable[str], alphabet: Iterable[str], nonempty: bool = True) -> Dfa:
    """Words using only ``letters`` (optionally including the empty word)."""
    alphabet = tuple(alphabet)
    letters = set(letters)
    delta = {(s, a): "q1" for s in ("q0", "q1") for a in alphabet if a in letters}
    acc = {"q1"} if nonempty else {"q0", "q1"}
    return Dfa(alphabet, ("q0", "q1"), "q0", frozenset(acc), delta)


def word_language(words: Iterable[str], alphabet: Iterable[str]) -> Dfa:
    """The finite language ``words``."""
    alphabet = tuple(alphabet)
    edges = []
    finals = []
    for j, w in enumerate(words):
        for i, a in enumerate(w):
            edges.append(("s" if i == 0 else (j, i), a, (j, i + 1)))
        finals.append((j, len(w)) if w else "s")
    return from_nfa(alphabet, ["s"], finals, edges)
