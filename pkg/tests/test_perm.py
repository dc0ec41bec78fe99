import itertools

import pytest
from hypothesis import given, strategies as st

from conftest import all_perms, perms
from permgrid.perm import (
    Decomposability,
    Permutation,
    avoids_all,
    classify_decomposability,
    contains,
    decompose,
    direct_sum,
    inflate,
    intervals,
    is_simple,
    perm,
    skew_components,
    skew_sum,
    sum_components,
    symmetry,
)

OPS = ["r", "c", "i", "rc", "ri", "ir", "rir", "ci", "rci"]


def naive_contains(big, small):
    k = len(small)
    return any(
        tuple(sorted(sub).index(v) + 1 for v in sub) == small.values
        for sub in itertools.combinations(big.values, k)
    )


class TestParsing:
    def test_compact_and_spaced(self):
        assert perm("2143") == perm("2 1 4 3") == perm("2,1,4,3") == Permutation((2, 1, 4, 3))

    def test_long_form_uses_spaces(self):
        p = Permutation(range(10, 0, -1))
        assert str(p) == "10 9 8 7 6 5 4 3 2 1"
        assert perm(str(p)) == p

    @pytest.mark.parametrize("bad", ["2243", "2a1", "0 1", "1 3"])
    def test_rejects_non_permutations(self, bad):
        with pytest.raises(ValueError):
            perm(bad)

    def test_empty(self):
        assert len(perm("")) == 0

    def test_immutable(self):
        with pytest.raises(AttributeError):
            perm("12").values = (2, 1)


class TestContainment:
    @pytest.mark.parametrize(
        "big, small, expected",
        [("782139645", "3142", True), ("2143", "2143", True), ("4321", "2143", False), ("53142", "2143", False)],
    )
    def test_examples(self, big, small, expected):
        assert contains(perm(big), perm(small)) is expected

    def test_empty_needle(self):
        assert contains(perm("312"), perm(""))

    def test_matches_naive(self, small_perms):
        for big in small_perms[5][::7]:
            for small in small_perms[3]:
                assert contains(big, small) == naive_contains(big, small)

    @pytest.mark.parametrize(
        "p, basis, expected",
        [("24153", ["2143", "4321"], False), ("2413", ["2143", "4321"], True), ("2143", ["2143", "4312"], False), ("321", [], True)],
    )
    def test_avoids_all(self, p, basis, expected):
        assert avoids_all(perm(p), [perm(b) for b in basis]) is expected

    @given(perms(max_size=7), perms(max_size=5), perms(max_size=4))
    def test_transitive(self, a, b, c):
        if contains(a, b) and contains(b, c):
            assert contains(a, c)

    @given(perms(max_size=7), perms(max_size=7))
    def test_antisymmetric(self, a, b):
        if contains(a, b) and contains(b, a):
            assert a == b

    @given(perms(max_size=8))
    def test_reflexive(self, p):
        assert contains(p, p)

    @given(perms(max_size=8), st.lists(perms(min_size=2, max_size=4), max_size=3))
    def test_avoidance_is_downward_closed(self, p, basis):
        if avoids_all(p, basis):
            assert all(avoids_all(q, basis) for q in p.deletions())


class TestSymmetry:
    @pytest.mark.parametrize("p, op, q", [("2143", "r", "3412"), ("2413", "i", "3142"), ("132", "c", "312")])
    def test_examples(self, p, op, q):
        assert symmetry(perm(p), op) == perm(q)

    def test_letters_apply_left_to_right(self):
        p = perm("25314")
        assert symmetry(p, "ri") == symmetry(symmetry(p, "r"), "i")

    @given(perms(max_size=8))
    def test_involutions(self, p):
        for op in ["r", "c", "i", "rc", "rir"]:
            assert symmetry(symmetry(p, op), op) == p

    @given(perms(max_size=7), perms(max_size=4))
    def test_preserves_containment(self, big, small):
        for op in OPS:
            assert contains(big, small) == contains(symmetry(big, op), symmetry(small, op))

    def test_unknown_op(self):
        with pytest.raises(ValueError):
            symmetry(perm("12"), "x")


class TestSimplicity:
    @pytest.mark.parametrize("p", ["1", "12", "21", "2413", "3142", "24153"])
    def test_simple(self, p):
        assert is_simple(perm(p))

    @pytest.mark.parametrize("p", ["123", "132", "782139645", "2143"])
    def test_not_simple(self, p):
        assert not is_simple(perm(p))

    def test_counts_of_simples(self, small_perms):
        # 1, 2, 0, 2, 6, 46, 338 simple permutations of length 1..7
        assert [sum(map(is_simple, small_perms[n])) for n in range(1, 8)] == [1, 2, 0, 2, 6, 46, 338]

    def test_intervals(self):
        assert (0, 2) in intervals(perm("2143"))
        assert intervals(perm("2413")) == [(0, 4)]


class TestDecomposition:
    def test_paper_example(self):
        d = decompose(perm("782139645"))
        assert d.skeleton == perm("3142")
        assert d.blocks == tuple(map(perm, ["12", "213", "1", "312"]))
        assert d.inflate() == perm("782139645")

    def test_trivial(self):
        d = decompose(perm("1"))
        assert d.skeleton == perm("1") and d.blocks == (perm("1"),)

    def test_left_greedy_sum(self):
        d = decompose(perm("123"))
        assert d.skeleton == perm("12") and d.blocks == (perm("1"), perm("12"))

    def test_left_greedy_skew(self):
        d = decompose(perm("3421"))
        assert d.skeleton == perm("21") and d.blocks == (perm("12"), perm("21"))

    def test_inflate_examples(self):
        assert inflate(perm("3142"), [perm(b) for b in ["12", "213", "1", "312"]]) == perm("782139645")
        assert inflate(perm("1"), [perm("2413")]) == perm("2413")
        assert inflate(perm("21"), [perm("1"), perm("1")]) == perm("21")

    def test_inflate_length_mismatch(self):
        with pytest.raises(ValueError):
            inflate(perm("21"), [perm("1")])

    @pytest.mark.parametrize("n", range(1, 8))
    def test_round_trip_exhaustive(self, n):
        for p in all_perms(n):
            d = decompose(p)
            assert inflate(d.skeleton, d.blocks) == p
            if len(d.skeleton) > 2:
                assert is_simple(d.skeleton)
            assert is_simple(p) == (len(d.skeleton) == len(p))

    @given(perms(min_size=10, max_size=14))
    def test_round_trip_random(self, p):
        assert decompose(p).inflate() == p

    @pytest.mark.parametrize("n", range(4, 7))
    def test_skeleton_unique(self, n):
        # no other block partition inflates the same simple skeleton to p
        for p in all_perms(n):
            d = decompose(p)
            k = len(d.skeleton)
            if k <= 2:
                continue
            hits = 0
            for cuts in itertools.combinations(range(1, n), k - 1):
                bounds = (0,) + cuts + (n,)
                v = p.values
                blocks = []
                for a, b in zip(bounds, bounds[1:]):
                    seg = v[a:b]
                    if max(seg) - min(seg) != b - a - 1:
                        break
                    blocks.append(Permutation(sorted(seg).index(x) + 1 for x in seg))
                else:
                    if inflate(d.skeleton, blocks) == p:
                        hits += 1
            assert hits == 1

    def test_sum_and_skew(self):
        assert direct_sum(perm("21"), perm("1")) == perm("213")
        assert skew_sum(perm("1"), perm("12")) == perm("312")
        assert sum_components(perm("213546")) == [perm("21"), perm("1"), perm("21"), perm("1")]
        assert skew_components(perm("3421")) == [perm("12"), perm("1"), perm("1")]


class TestClassify:
    @pytest.mark.parametrize(
        "p, kind",
        [("123", Decomposability.SUM), ("321", Decomposability.SKEW), ("2413", Decomposability.STRONG), ("1", Decomposability.STRONG)],
    )
    def test_examples(self, p, kind):
        assert classify_decomposability(perm(p)) is kind

    @given(perms(min_size=2, max_size=9))
    def test_exclusive(self, p):
        assert not (len(sum_components(p)) > 1 and len(skew_components(p)) > 1)

    @given(perms(min_size=1, max_size=9))
    def test_sum_components_reassemble(self, p):
        comps = sum_components(p)
        acc = comps[0]
        for c in comps[1:]:
            acc = direct_sum(acc, c)
        assert acc == p
        assert all(len(sum_components(c)) == 1 for c in comps)
