"""
Tests for the vertex-operator mode calculus
"""
from fractions import Fraction

import pytest
import sympy

from ..core.opcalc import (
    CompositeElement,
    QuadraticElement,
    borcherds_commutator_defect,
    bracket,
    central_charge,
    field_mode,
    free_virasoro,
    general_binomial,
    heisenberg_virasoro,
    level_pairing,
    mode_action,
    physics_to_borcherds,
    state_mode,
    sugawara,
    translation_defect,
    virasoro_axioms,
    virasoro_mode,
)
from ..core.realization import TableTag, build_table, cartan_elements
from ..core.weylfock import FockMonomial, FockVector, Mode, apply_mode, graded_basis


def a(species, charge, depth2):
    return Mode(species, charge, depth2)


def element(*factors, coeff=1, label="u"):
    return QuadraticElement(FockVector({FockMonomial(factors): coeff}), label)


def brute_force_mode(x: Mode, y: Mode, m: int, vector: FockVector, reach: int = 15) -> FockVector:
    """u_m for u = a_x(-1/2-p) a_y(-1/2-q)|0> as an explicit double sum of
    normally ordered single-mode products."""
    p = (-x.depth2 - 1) // 2
    q = (-y.depth2 - 1) // 2
    total2 = 2 * (m - p - q)
    result = FockVector.zero()
    for r2 in range(-reach, reach + 1, 2):
        s2 = total2 - r2
        cr = sympy.binomial(sympy.Rational(-r2 - 1, 2), p)
        cs = sympy.binomial(sympy.Rational(-s2 - 1, 2), q)
        weight = Fraction(int(cr * cs))
        if not weight:
            continue
        left, right = Mode(x.species, x.charge, r2), Mode(y.species, y.charge, s2)
        # creation operators stand to the left
        if not left.is_creation and right.is_creation:
            left, right = right, left
        result = result + apply_mode(left, apply_mode(right, vector)) * weight
    return result


def test_general_binomial():
    """Binomials with negative tops"""
    assert general_binomial(5, 2) == 10
    assert general_binomial(-1, 3) == -1
    assert general_binomial(-2, 2) == 3
    assert general_binomial(3, -1) == 0


def test_physics_to_borcherds():
    """x(n) = x_{n + wt - 1}"""
    assert physics_to_borcherds(0, 1) == 0
    assert physics_to_borcherds(1, 2) == 2
    with pytest.raises(ValueError):
        physics_to_borcherds(0, Fraction(3, 2))


class TestQuadraticElement:
    """Validation of quadratic states"""

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            QuadraticElement(FockVector.zero(), "zero")

    def test_cubic_rejected(self):
        with pytest.raises(ValueError):
            element(a(1, 1, -1), a(1, 1, -1), a(1, -1, -1))

    def test_inhomogeneous_rejected(self):
        vector = FockVector({FockMonomial([a(1, 1, -1), a(1, -1, -1)]): 1, FockMonomial([a(1, 1, -3), a(1, -1, -1)]): 1})
        with pytest.raises(ValueError):
            QuadraticElement(vector, "mixed")

    def test_weight(self):
        assert element(a(1, 1, -3), a(1, -1, -1)).weight == 2

    def test_mode_action_rejects_non_quadratic_vector(self):
        with pytest.raises(ValueError):
            mode_action(FockVector.from_modes(a(1, 1, -1)), 0, FockVector.vacuum())


class TestModeAction:
    """Closed-form mode action against explicit double sums"""

    @pytest.mark.parametrize(
        "x,y",
        [
            (a(1, 1, -1), a(1, -1, -1)),
            (a(1, 1, -1), a(2, -1, -1)),
            (a(1, 1, -1), a(1, 1, -1)),
            (a(1, -1, -3), a(1, 1, -1)),
            (a(2, 1, -3), a(1, -1, -3)),
        ],
    )
    def test_matches_double_sum(self, x, y):
        u = element(x, y)
        states = [FockVector.from_monomial(m) for w in ("0", "1/2", "1") for m in graded_basis(2, w)]
        for m in range(-2, 3):
            for state in states:
                assert mode_action(u, m, state) == brute_force_mode(x, y, m, state)

    def test_creation_mode_of_vacuum_rebuilds_state(self):
        u = element(a(1, 1, -3), a(2, -1, -1))
        assert mode_action(u, -1, FockVector.vacuum()) == u.vector

    def test_positive_modes_kill_vacuum(self):
        u = element(a(1, 1, -1), a(1, -1, -1))
        for m in range(0, 4):
            assert not mode_action(u, m, FockVector.vacuum())

    def test_number_operator_sign(self):
        """h(1)_0 a1+(-1/2)|0> = a1+(-1/2)|0>"""
        h = build_table(TableTag.SL2_PRODUCT, 1)["h(1)"]
        state = FockVector.from_modes(a(1, 1, -1))
        assert mode_action(h, 0, state) == state

    def test_state_mode_vacuum_part_is_identity(self):
        state = FockVector.vacuum() * 3
        v = FockVector.from_modes(a(1, 1, -1))
        assert state_mode(state, -1, v) == v * 3
        assert not state_mode(state, 0, v)


class TestPairings:
    """Brackets and level pairings of weight-one currents"""

    def test_sl2_level(self):
        table = build_table(TableTag.SL2_PRODUCT, 1)
        assert level_pairing(table["e(1)"], table["f(1)"]) == -1

    def test_cartan_pairings(self):
        cartans = cartan_elements(3)
        for i, hi in enumerate(cartans.heisenberg):
            for j, hj in enumerate(cartans.heisenberg):
                assert level_pairing(hi, hj) == (-2 if i == j else 0)
        assert level_pairing(cartans.total, cartans.total) == -6
        for hbar in cartans.differences:
            assert level_pairing(hbar, hbar) == -4
            assert level_pairing(hbar, cartans.total) == 0

    def test_pairing_needs_weight_one(self):
        u = element(a(1, 1, -3), a(1, -1, -1))
        with pytest.raises(ValueError):
            level_pairing(u, u)

    def test_bracket_antisymmetric(self):
        table = build_table(TableTag.SYMPLECTIC, 2)
        for u in table:
            for v in table:
                assert bracket(u, v) == -bracket(v, u)


class TestVirasoro:
    """Virasoro vectors and central charges"""

    def test_free_grading(self):
        omega = free_virasoro(2)
        for w in ("0", "1/2", "1", "3/2"):
            for monomial in graded_basis(2, w):
                state = FockVector.from_monomial(monomial)
                assert virasoro_mode(omega, 0, state) == state * Fraction(w)

    @pytest.mark.parametrize("pairs", [1, 2, 3])
    def test_free_central_charge(self, pairs):
        assert central_charge(free_virasoro(pairs)) == -pairs

    def test_free_axioms(self):
        report = virasoro_axioms(free_virasoro(1), Fraction(3, 2))
        assert report.passed, report.failure
        assert report.central_charge == -1

    def test_translation(self):
        omega = free_virasoro(1)
        assert not virasoro_mode(omega, -1, FockVector.vacuum())
        state = FockVector.from_modes(a(1, 1, -1))
        assert virasoro_mode(omega, -1, state) == FockVector.from_modes(a(1, 1, -3))

    def test_sl2_sugawara(self):
        table = build_table(TableTag.SL2_PRODUCT, 1)
        omega = table.sugawara()
        assert isinstance(omega, CompositeElement)
        assert central_charge(omega) == -3
        report = virasoro_axioms(omega, 1, pairs=2, span=1)
        assert report.passed, report.failure

    def test_heisenberg_central_charge(self):
        cartans = cartan_elements(2)
        omega = heisenberg_virasoro(cartans.heisenberg, [[-2, 0], [0, -2]])
        assert central_charge(omega) == 2

    def test_heisenberg_gram_size_checked(self):
        with pytest.raises(ValueError):
            heisenberg_virasoro(cartan_elements(2).heisenberg, [[-2]])

    def test_sugawara_rejects_critical_level(self):
        table = build_table(TableTag.SL2_PRODUCT, 1)
        with pytest.raises(ValueError):
            sugawara(list(table), -2, 2)
        with pytest.raises(ValueError):
            sugawara(list(table), 0, 2)

    def test_sugawara_rejects_degenerate_currents(self):
        table = build_table(TableTag.SL2_PRODUCT, 1)
        with pytest.raises(ValueError):
            sugawara([table["e(1)"], table["e(1)"]], -1, 2)

    def test_composite_field_mode_on_vacuum(self):
        omega = build_table(TableTag.SL2_PRODUCT, 1).sugawara()
        assert field_mode(omega, -1, FockVector.vacuum()) == omega.vector

    def test_central_charge_needs_weight_two(self):
        with pytest.raises(ValueError):
            central_charge(element(a(1, 1, -1), a(1, -1, -1)))


class TestCommutatorFormula:
    """[u_m, v_n] = sum_k binom(m, k) (u_k v)_{m+n-k}"""

    @pytest.mark.parametrize("tag,ell", [(TableTag.SYMPLECTIC, 2), (TableTag.SL2_PRODUCT, 2), (TableTag.SYMPLECTIC_HALF, 2)])
    def test_generator_pairs(self, tag, ell):
        table = build_table(tag, ell)
        pairs = table.pairs
        states = [FockVector.vacuum(), FockVector.from_modes(a(1, 1, -1)), FockVector.from_modes(a(pairs, -1, -1))]
        for u in table:
            for v in table:
                for m in (-1, 0, 1, 2):
                    for n in (-1, 0, 1):
                        for state in states:
                            assert not borcherds_commutator_defect(u, v, m, n, state)

    def test_deeper_elements(self):
        u = element(a(1, 1, -3), a(2, -1, -1))
        v = element(a(2, 1, -1), a(1, -1, -1))
        for state in (FockVector.vacuum(), FockVector.from_modes(a(1, 1, -1), a(2, -1, -1))):
            for m in range(0, 3):
                for n in range(-1, 2):
                    assert not borcherds_commutator_defect(u, v, m, n, state)

    def test_virasoro_against_currents(self):
        omega = free_virasoro(2)
        u = element(a(1, 1, -1), a(2, -1, -1))
        for state in (FockVector.vacuum(), FockVector.from_modes(a(2, 1, -1), a(1, -1, -3))):
            for m in range(-1, 3):
                for n in range(-1, 2):
                    assert not borcherds_commutator_defect(omega, u, m, n, state)
                    assert not borcherds_commutator_defect(u, omega, n, m, state)

    def test_translation_covariance(self):
        omega = free_virasoro(2)
        u = element(a(1, 1, -1), a(2, -1, -1))
        for m in range(-1, 3):
            for monomial in graded_basis(2, "1/2"):
                assert not translation_defect(omega, u, m, FockVector.from_monomial(monomial))
