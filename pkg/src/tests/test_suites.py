"""
Tests for the verification suites end to end
"""
import pytest

from ..core.exact import heisenberg_plus_series, heisenberg_series
from ..core.suite_runner import CheckStatus
from ..core.suites import SuiteParams, parse_labels, run_suite


def params(**overrides):
    values = {"ell": 1, "max_weight": "2", "bound": 3}
    values.update(overrides)
    return SuiteParams(**values)


def statuses(runner):
    return {(r.paper_anchor, r.status) for r in runner.results}


def assert_all_pass(runner):
    failing = [(r.paper_anchor, r.name, r.details) for r in runner.results if r.status is CheckStatus.FAIL]
    assert not failing


class TestParams:
    """Parameter validation"""

    def test_as_dict_drops_unset_values(self):
        assert params().as_dict() == {"ell": 1, "max_weight": "2", "bound": 3, "type": "C"}

    def test_half_integer_weight(self):
        assert params(max_weight="5/2").max_weight2 == 5

    @pytest.mark.parametrize(
        "overrides",
        [{"ell": 0}, {"max_weight": "-1"}, {"max_weight": "1/3"}, {"type": "B"}, {"coset": "sec7"}],
    )
    def test_invalid(self, overrides):
        with pytest.raises(ValueError):
            params(**overrides)

    def test_parse_labels(self):
        assert parse_labels("0,1,2") == (0, 1, 2)
        with pytest.raises(ValueError):
            parse_labels("1,x")
        with pytest.raises(ValueError):
            parse_labels("1,-1")

    def test_unknown_command(self):
        with pytest.raises(ValueError):
            run_suite("nothing", params())


class TestRepresentationSuites:
    """Finite-dimensional suites"""

    def test_tensor_defaults(self):
        runner = run_suite("tensor", params())
        assert_all_pass(runner)
        assert {r.paper_anchor for r in runner.results} == {"tens-pr-decomp"}
        assert len(runner.results) == 6

    def test_tensor_request(self):
        runner = run_suite("tensor", params(lhs="1,0", rhs="1,0", rank=2))
        assert_all_pass(runner)
        assert runner.results[0].details["decomposition"] == {"2w1": 1, "w2": 1, "0": 1}

    def test_tensor_bad_labels(self):
        with pytest.raises(ValueError):
            run_suite("tensor", params(lhs="a", rhs="1"))

    def test_branch(self):
        runner = run_suite("branch", params())
        assert_all_pass(runner)
        anchors = {r.paper_anchor for r in runner.results}
        assert anchors == {"decomp-fin1", "decomp-fin2", "decomp-fin3", "sec8-conformal-weight"}

    def test_classify(self):
        runner = run_suite("classify", params(ell=3))
        assert_all_pass(runner)
        box = next(r for r in runner.results if r.paper_anchor == "classif-C-0")
        assert box.details["count"] == 5

    def test_classify_rank_four(self):
        runner = run_suite("classify", params(ell=4, bound=8))
        assert_all_pass(runner)
        box = next(r for r in runner.results if r.paper_anchor == "classif-C-0")
        assert box.details["count"] == 10
        assert [1, 1, 0, 0] in box.details["solutions"]

    def test_delta3(self):
        runner = run_suite("delta3", params(ell=3))
        assert_all_pass(runner)
        assert len(runner.results) == 2

    def test_delta3_rank_four(self):
        runner = run_suite("delta3", params(ell=4))
        assert_all_pass(runner)
        assert statuses(runner) == {("sec7-delta3", CheckStatus.PASS), ("sec7-delta3-control", CheckStatus.PASS)}
        assert "M_8" in runner.results[0].name


class TestFockSuites:
    """Suites computing in the Fock space"""

    def test_chars(self):
        runner = run_suite("chars", params())
        assert_all_pass(runner)
        assert {r.paper_anchor for r in runner.results} == {
            "fock-character", "m1-plus-character", "weyl-parity-decomp", "theta-split",
        }

    def test_virasoro_rank_one(self):
        runner = run_suite("virasoro", params())
        assert_all_pass(runner)
        assert ("Vir-decomp-C", CheckStatus.SKIP) in statuses(runner)
        assert ("sec5-omega", CheckStatus.PASS) in statuses(runner)
        assert ("thm-level-half", CheckStatus.PASS) in statuses(runner)
        assert ("sec4-weyl", CheckStatus.PASS) in statuses(runner)
        assert ("sec4-fields", CheckStatus.PASS) in statuses(runner)

    def test_commutant_rank_one(self):
        runner = run_suite("commutant", params())
        assert_all_pass(runner)
        assert {r.paper_anchor for r in runner.results} == {"com-bos-higher", "coset-bos-r-higher"}
        full = next(r for r in runner.results if r.paper_anchor == "com-bos-higher")
        assert full.details["dims"]["2"] == 2
        assert full.details["missing_generators"] == []

    def test_coset_needing_two_pairs_is_skipped(self):
        runner = run_suite("commutant", params(coset="sec9"))
        assert statuses(runner) == {("sec9-coset", CheckStatus.SKIP)}

    def test_column_limit_fails_the_check(self):
        runner = run_suite("commutant", params(coset="sec5-full", max_columns=3))
        assert not runner.passed
        assert "exceeds the limit" in runner.results[0].details["error"]

    @pytest.mark.slow
    def test_singular(self):
        runner = run_suite("singular", params(ell=2))
        assert_all_pass(runner)
        estar = next(r for r in runner.results if r.paper_anchor == "sec7-estar")
        assert estar.details["label"] == "-2Λ0+Λ2"

    @pytest.mark.slow
    def test_span(self):
        runner = run_suite("span", params(ell=2, max_weight="2"))
        assert_all_pass(runner)
        anchors = {r.paper_anchor for r in runner.results}
        assert {"gen-1-C", "sec8-eA", "gen-1-higher", "lem-ext"} <= anchors

    @pytest.mark.slow
    def test_symplectic_cosets(self):
        runner = run_suite("commutant", params(ell=2, max_weight="2", coset="sec6-full"))
        assert_all_pass(runner)
        assert {r.paper_anchor for r in runner.results} == {"com-bos-C", "com-antitone"}


def integer_dims(check, top):
    return [check.details["dims"][str(w)] for w in range(top + 1)]


class TestCommutantAcceptance:
    """Commutant dimensions against the reference characters"""

    @pytest.mark.slow
    def test_even_even_rank_one_to_weight_five(self):
        runner = run_suite("commutant", params(ell=1, max_weight="5", coset="sec5-even"))
        assert_all_pass(runner)
        series = heisenberg_plus_series(1, 5)
        assert integer_dims(runner.results[0], 5) == [1, 0, 1, 1, 3, 3]
        assert integer_dims(runner.results[0], 5) == [series.coefficient(w) for w in range(6)]

    @pytest.mark.slow
    def test_symplectic_commutant_to_weight_three(self):
        runner = run_suite("commutant", params(ell=2, max_weight="3", coset="sec6-full"))
        assert_all_pass(runner)
        check = next(r for r in runner.results if r.paper_anchor == "com-bos-C")
        series = heisenberg_series(1, 3)
        assert integer_dims(check, 3) == [1, 1, 2, 3]
        assert integer_dims(check, 3) == [series.coefficient(w) for w in range(4)]

    @pytest.mark.slow
    def test_product_inside_symplectic_span(self):
        runner = run_suite("commutant", params(ell=2, max_weight="3", coset="sec9"))
        assert_all_pass(runner)
        assert statuses(runner) == {("sec9-coset", CheckStatus.PASS)}
        series = heisenberg_plus_series(1, 3)
        assert integer_dims(runner.results[0], 3) == [1, 0, 1, 1]
        assert integer_dims(runner.results[0], 3) == [series.coefficient(w) for w in range(4)]
        assert runner.results[0].details["missing_generators"] == []
