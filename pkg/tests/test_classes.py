import itertools

import pytest

from permgrid.automata import count_words, intersection, is_empty, word_language
from permgrid.enumerate import ClassSpec, compute_basis, count_series, generate
from permgrid.grid import class_members, griddable
from permgrid.perm import Permutation, is_simple, perm, symmetry
from permgrid.classes import languages
from permgrid.classes.encoding import check_transform
from permgrid.classes.resources import ENV_VAR, list_resources, load_dfa, load_matrix, read_gf_text
from permgrid.classes.schemes import SCHEME_NAMES, scheme

from conftest import all_perms


class TestSchemes:
    @pytest.mark.parametrize("name", SCHEME_NAMES)
    def test_decodings_lie_in_the_grid_class(self, name):
        sch = scheme(name)
        m = sch.matrix()
        for k in range(4):
            for w in itertools.product(sch.alphabet, repeat=k):
                w = "".join(w)
                if any(w.count(a) > 1 for a in sch.dot_letters):
                    continue
                assert griddable(sch.decode(w), m), (name, w)

    def test_b_examples(self):
        b = scheme("B")
        assert b.decode("b") == perm("1")
        assert b.encodings_of(perm("1")) == set(b.alphabet)
        p = b.decode("cab")
        assert len(p) == 3 and griddable(p, load_matrix("B"))

    def test_unknown_letter(self):
        with pytest.raises(ValueError, match="letter"):
            scheme("B").decode("bz")

    @pytest.mark.parametrize("name", ["B", "inc_triple", "T"])
    def test_encodings_of_is_the_decode_preimage(self, name):
        sch = scheme(name)
        for n in range(1, 5):
            pre = {}
            for w in itertools.product(sch.alphabet, repeat=n - len(sch.dots)):
                w = "".join(w)
                pre.setdefault(sch.decode(w), set()).add(w)
            for p in all_perms(n):
                assert sch.encodings_of(p) == pre.get(p, set())

    def test_basis_elements_have_no_accepted_encoding(self):
        b = scheme("B")
        # the grid class of B already avoids 2143, so no word at all decodes to it
        assert not griddable(perm("2143"), load_matrix("B"))
        assert b.encodings_of(perm("2143")) == set()
        for bad in languages.component_basis("B"):
            words = b.encodings_of(bad)
            assert is_empty(intersection(languages.language_B(), word_language(words, b.alphabet))) if words else True

    def test_every_member_has_one_accepted_word(self):
        b, lang, m = scheme("B"), languages.language_B(), load_matrix("B")
        for n in range(1, 6):
            for p in all_perms(n):
                accepted = [w for w in b.encodings_of(p) if lang.accepts(w)]
                assert len(accepted) == (1 if griddable(p, m) else 0), p
        for bad in ("2143", "4321"):
            words = b.encodings_of(perm(bad))
            assert is_empty(intersection(languages.language_B(), word_language(words, b.alphabet)))

    @pytest.mark.parametrize("name, base, op", [("A", "B", "rc"), ("inc_triple_t", "inc_triple", "i"), ("EF_3142", "EF_2413", "rir")])
    def test_derived_schemes(self, name, base, op):
        words = ["".join(w) for k in range(1, 5) for w in itertools.product(scheme(base).alphabet, repeat=k)]
        assert check_transform(scheme(base), op, words)
        for w in words[:60]:
            assert scheme(name).decode(w) == symmetry(scheme(base).decode(w), op)


class TestLanguages:
    @pytest.mark.parametrize("c", languages.COMPONENTS)
    def test_counts_match_class_members(self, c):
        counts = count_words(languages.component_language(c), 8)
        for n in range(1, 9):
            assert counts[n] == len(class_members(load_matrix(c), n))

    def test_c_is_at_most_two_descents(self):
        spec = ClassSpec.av("2143", "4321")
        counts = count_words(languages.language_C(), 8)
        for n in range(1, 9):
            want = sum(1 for p in generate(spec, n) if sum(a > b for a, b in zip(p.values, p.values[1:])) <= 2)
            assert counts[n] == want

    def test_b_basis(self):
        want = {perm(s) for s in ("2143", "4321", "35142", "35214", "35241", "43152", "53142")}
        assert set(languages.component_basis("B")) == want

    def test_wedge_basis(self):
        from permgrid.grid import grid_class

        assert set(compute_basis(grid_class(load_matrix("wedge")), 8)) == {perm("213"), perm("312")}

    def test_components_cover_the_class(self):
        union = languages.intersection_language(["A"])
        assert count_words(union, 1)[1] == 1
        total = count_series(ClassSpec.av("2143", "4321"), 7)
        for n in range(1, 8):
            members = set().union(*(class_members(load_matrix(c), n) for c in languages.COMPONENTS))
            assert len(members) == total[n - 1]


class TestResources:
    def test_listing(self):
        assert {"A", "B", "E", "F", "T", "X", "wedge"} <= set(list_resources(".matrix"))
        assert {"E_simples", "T", "X6x6"} <= set(list_resources(".dfa"))

    def test_fixture_text(self):
        assert read_gf_text("# comment\nx/\n(1-x)  # tail\n") == read_gf_text("x/(1-x)")
        with pytest.raises(ValueError):
            read_gf_text("# nothing\n")

    def test_override(self, tmp_path, monkeypatch):
        (tmp_path / "tiny.matrix").write_text("1 -1\n")
        monkeypatch.setenv(ENV_VAR, str(tmp_path))
        assert griddable(perm("132"), load_matrix("tiny"))
        with pytest.raises(OSError):
            load_dfa("T")

    def test_intro_example_grids_in_g(self):
        from permgrid.grid import grid

        p = Permutation.parse("15 13 16 11 17 10 8 7 12 3 2 14 9 6 5 4 1")
        g = grid(p, load_matrix("G"))
        assert g is not None
        assert not griddable(perm("2143"), load_matrix("E"))

    def test_simples_helper(self):
        assert [p for p in all_perms(4) if is_simple(p)] == [perm("2413"), perm("3142")]
