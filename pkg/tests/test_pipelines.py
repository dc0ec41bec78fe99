import itertools
import shutil

import pytest

from permgrid.enumerate import ClassSpec, count_series
from permgrid.grid import class_members
from permgrid.ratfun import X, series
from permgrid.classes import languages
from permgrid.classes.oracles import check_against_oracles, oracle_counts
from permgrid.classes.pipelines import (
    LABELS,
    PIPELINES,
    NamedGf,
    StageFailure,
    fitted_gf,
    monotone,
    run_pipeline,
    subset_key,
)
from permgrid.classes.resources import ENV_VAR, has_fixture, load_fixture, load_matrix, resource_dir

BASIS = {"av2143_4321": ("2143", "4321"), "av2143_4312": ("2143", "4312"), "av1324_4312": ("1324", "4312")}


@pytest.fixture(scope="module", params=PIPELINES)
def result(request):
    return run_pipeline(request.param)


def test_every_check_passes(result):
    failed = [c.stage for c in result.checks if not c.passed]
    assert result.ok and not failed


def test_final_matches_brute_force(result):
    want = count_series(ClassSpec.av(*BASIS[result.pipeline]), 9)
    assert series(result.final.value, 9) == [0] + want


def test_oracles(result):
    checks = check_against_oracles(result, 8)
    assert checks
    for c in checks:
        assert c.passed, (c.stage, c.expected, c.got)


def test_fixtures_are_all_used(result):
    # every fixture except printed copies names a stage of the run
    fixtures = {p.stem for p in (resource_dir() / "fixtures" / result.pipeline).glob("*.gf")}
    assert {f for f in fixtures if not f.endswith(".printed")} <= set(result.stages)
    checked = {c.stage for c in result.checks if c.kind == "fixture"}
    assert {s for s in result.stages if has_fixture(result.pipeline, s)} == checked


def test_series_are_nonnegative_integers(result):
    for name, g in result.stages.items():
        terms = g.series(10)
        assert all(t == int(t) and t >= 0 for t in terms), name


def test_labels():
    assert NamedGf("f_plus", X).label == "f_⊕"
    assert NamedGf("s_T", X).label == "s_T"
    assert all(isinstance(v, str) for v in LABELS.values())


class TestInclusionExclusion:
    @pytest.fixture
    def res(self):
        return run_pipeline("av2143_4321")

    def test_intersections_match_grid_members(self, res):
        grids = {c: load_matrix(c) for c in languages.COMPONENTS}
        for k in range(1, 5):
            for names in itertools.combinations(languages.COMPONENTS, k):
                terms = series(res[subset_key(names)], 7)
                for n in range(1, 8):
                    members = set.intersection(*(class_members(grids[c], n) for c in names))
                    assert terms[n] == len(members), (names, n)

    def test_printed_numerator_differs_in_one_coefficient(self, res):
        printed = load_fixture("av2143_4321", "f.printed")
        assert res["f"] != printed
        assert res["f"] - printed == -10 * X**6 / ((1 - 2 * X) ** 4 * (1 - X) ** 7 * (1 - 3 * X + X**2))


class TestSumSkew:
    @pytest.fixture
    def res(self):
        return run_pipeline("av2143_4312")

    def test_decomposition_sums(self, res):
        assert res["f"] == X + res["f_plus"] + res["f_minus"] + res["f_ind"]

    def test_printed_final_is_not_the_class(self, res):
        printed = load_fixture("av2143_4312", "f.printed")
        assert series(printed, 3) != series(res["f"], 3)
        assert series(res["f"], 11)[1:] == [1, 2, 6, 22, 86, 337, 1295, 4854, 17760, 63594, 223488]

    def test_type_split(self, res):
        assert res["s1_E"] + res["s2_E"] == res["s_E"]
        assert res["s1_EF"] + res["s2_EF"] == res["s_EF"]


class TestInflations:
    @pytest.fixture
    def res(self):
        return run_pipeline("av1324_4312")

    def test_symmetric_types_agree(self, res):
        assert res["i_cb"] == res["i_aa"]

    def test_subtypes_partition(self, res):
        assert sum((res[s] for s in ("s_ca", "s_cb", "s_aa", "s_ab")), 0 * X) == res["s_T"]
        rows = [s for s in res.stages if s.startswith("s_2x4_")]
        assert len(rows) == 7 and sum((res[s] for s in rows), 0 * X) == res["s_2x4"]
        rows = [s for s in res.stages if s.startswith("s_3x3_")]
        assert len(rows) == 4 and sum((res[s] for s in rows), 0 * X) == res["s_3x3W"]

    def test_sum_equation(self, res):
        assert res["f_plus"] == res["f_nplusG"] ** 2 / (1 - X)

    def test_printed_i_x_differs(self, res):
        assert res["i_X"] != load_fixture("av1324_4312", "i_X.printed")

    def test_fitted_inputs(self):
        assert fitted_gf(("213", "312")) == X / (1 - 2 * X)
        assert monotone() == X / (1 - X)
        with pytest.raises(ValueError, match="no rational fit"):
            fitted_gf(("132",), 8)

    def test_oracle_counts_for_inputs(self):
        assert oracle_counts("av1324_4312", "f_E", 5) == [0, 1, 2, 4, 8, 16]


class TestFailure:
    def test_broken_fixture_names_the_stage(self, tmp_path, monkeypatch):
        copy = tmp_path / "res"
        shutil.copytree(resource_dir(), copy)
        (copy / "fixtures" / "av1324_4312" / "s_4x7.gf").write_text("x^5/(1-x)^4\n")
        monkeypatch.setenv(ENV_VAR, str(copy))
        with pytest.raises(StageFailure) as info:
            run_pipeline("av1324_4312")
        assert info.value.stage == "s_4x7" and info.value.pipeline == "av1324_4312"
        assert "s_4x7" in str(info.value)
        loose = run_pipeline("av1324_4312", strict=False)
        assert [c.stage for c in loose.checks if not c.passed] == ["s_4x7"]
        unchecked = run_pipeline("av1324_4312", check=False)
        assert unchecked.ok and all(c.kind != "fixture" for c in unchecked.checks)

    def test_unknown_pipeline(self):
        with pytest.raises(KeyError):
            run_pipeline("av123")
