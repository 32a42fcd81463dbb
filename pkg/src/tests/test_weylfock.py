"""
Tests for modes, monomials, Fock vectors and the theta involution
"""
from fractions import Fraction

import pytest
import sympy

from ..core.exact import fock_series
from ..core.weylfock import (
    VACUUM,
    FockMonomial,
    FockVector,
    Mode,
    apply_mode,
    b_parity_groups,
    b_to_a,
    graded_basis,
    parity_split,
    parse_monomial,
    parse_vector,
    partner,
    render_vector,
    theta,
    theta_monomial,
    weyl_commutator,
)


def a(species, charge, depth):
    return Mode.make(species, charge, depth)


class TestModes:
    """Mode construction and rendering"""

    def test_render(self):
        assert a(1, 1, "-1/2").render() == "a1+(-1/2)"
        assert a(4, -1, "3/2").render() == "a4-(3/2)"

    def test_creation_flag(self):
        assert a(1, 1, "-1/2").is_creation
        assert not a(1, 1, "1/2").is_creation

    @pytest.mark.parametrize("species,charge,depth", [(0, 1, "-1/2"), (1, 2, "-1/2"), (1, 1, -1)])
    def test_invalid_modes(self, species, charge, depth):
        with pytest.raises(ValueError):
            Mode.make(species, charge, depth)

    def test_dual(self):
        assert a(2, 1, "-3/2").dual() == a(2, -1, "3/2")


class TestMonomials:
    """Canonical monomials"""

    def test_order_is_canonical(self):
        first = FockMonomial([a(2, -1, "-1/2"), a(1, 1, "-3/2")])
        second = FockMonomial([a(1, 1, "-3/2"), a(2, -1, "-1/2")])
        assert first == second
        assert first.weight == 2
        assert first.charge == 0

    def test_rejects_annihilation_modes(self):
        with pytest.raises(ValueError):
            FockMonomial([a(1, 1, "1/2")])

    def test_render_and_parse(self):
        monomial = FockMonomial([a(1, 1, "-1/2"), a(4, -1, "-3/2")])
        assert monomial.render() == "a1+(-1/2) a4-(-3/2) |0>"
        assert parse_monomial(monomial.render()) == monomial

    def test_vacuum_renders(self):
        assert VACUUM.render() == "|0>"
        assert VACUUM.weight2 == 0

    def test_parse_requires_vacuum_marker(self):
        with pytest.raises(ValueError):
            parse_monomial("a1+(-1/2)")


class TestFockVector:
    """Sparse vector arithmetic"""

    def test_zero_coefficients_are_dropped(self):
        mono = FockMonomial([a(1, 1, "-1/2")])
        vector = FockVector({mono: 1}) - FockVector({mono: 1})
        assert not vector
        assert vector == FockVector.zero()

    def test_weight_components(self):
        vector = FockVector.vacuum() + FockVector.from_modes(a(1, 1, "-1/2"))
        assert vector.weight2s() == [0, 1]
        with pytest.raises(ValueError):
            vector.weight2
        assert vector.weight_component(1) == FockVector.from_modes(a(1, 1, "-1/2"))

    def test_render_with_coefficients(self):
        vector = parse_vector("1/2*a1+(-1/2) a3-(-1/2) |0> - a2+(-1/2) a4-(-1/2) |0>")
        assert vector.coefficient(FockMonomial([a(1, 1, "-1/2"), a(3, -1, "-1/2")])) == Fraction(1, 2)
        assert parse_vector(render_vector(vector)) == vector

    def test_zero_renders(self):
        assert render_vector(FockVector.zero()) == "0"
        assert parse_vector("0") == FockVector.zero()


class TestWeylRelations:
    """Single-mode action against the defining relations"""

    def test_annihilation_kills_vacuum(self):
        assert not apply_mode(a(1, 1, "1/2"), FockVector.vacuum())
        assert not apply_mode(a(1, -1, "3/2"), FockVector.vacuum())

    def test_plus_mode_removes_minus_factor(self):
        state = FockVector.from_modes(a(1, -1, "-1/2"), a(1, -1, "-1/2"))
        assert apply_mode(a(1, 1, "1/2"), state) == FockVector.from_modes(a(1, -1, "-1/2")) * 2

    def test_minus_mode_removes_plus_factor_with_sign(self):
        state = FockVector.from_modes(a(2, 1, "-3/2"))
        assert apply_mode(a(2, -1, "3/2"), state) == -FockVector.vacuum()

    def test_creation_multiplies(self):
        state = apply_mode(a(1, 1, "-1/2"), FockVector.vacuum())
        assert state == FockVector.from_modes(a(1, 1, "-1/2"))

    def test_commutator_scalars(self):
        assert weyl_commutator(a(1, 1, "1/2"), a(1, -1, "-1/2")) == 1
        assert weyl_commutator(a(1, -1, "1/2"), a(1, 1, "-1/2")) == -1
        assert weyl_commutator(a(1, 1, "1/2"), a(2, -1, "-1/2")) == 0
        assert weyl_commutator(a(1, 1, "1/2"), a(1, 1, "-1/2")) == 0

    def test_commutator_is_operator_identity(self):
        modes = [Mode(s, c, d) for s in (1, 2) for c in (1, -1) for d in (-3, -1, 1, 3)]
        states = [FockVector.from_monomial(m) for w in ("0", "1/2", "1") for m in graded_basis(2, w)]
        for x in modes:
            for y in modes:
                for state in states:
                    lhs = apply_mode(x, apply_mode(y, state)) - apply_mode(y, apply_mode(x, state))
                    assert lhs == state * weyl_commutator(x, y)


class TestGradedBasis:
    """PBW basis enumeration"""

    @pytest.mark.parametrize("pairs", [1, 2, 4])
    def test_counts_match_character(self, pairs):
        series = fock_series(pairs, 2)
        for weight2 in range(5):
            assert len(graded_basis(pairs, Fraction(weight2, 2))) == series.coefficients[weight2]

    def test_full_weight_one_piece_of_m4(self):
        # 8 depth-1/2 modes: C(8+1, 2) = 36 monomials at weight 1
        assert len(graded_basis(4, 1)) == 36

    def test_charge_filter(self):
        neutral = graded_basis(1, 1, charge_filter=0)
        assert all(m.charge == 0 for m in neutral)
        assert len(neutral) == 1

    def test_negative_weight_rejected(self):
        with pytest.raises(ValueError):
            graded_basis(1, -1)


class TestTheta:
    """The order-two automorphism pairing species i and 2l+1-i"""

    def test_partner(self):
        assert partner(1, 2) == 4
        assert partner(3, 2) == 2
        with pytest.raises(ValueError):
            partner(5, 2)

    def test_mode_images(self):
        sign, image = theta_monomial(FockMonomial([a(1, 1, "-1/2")]), 2)
        assert (sign, image) == (1, FockMonomial([a(4, -1, "-1/2")]))
        sign, image = theta_monomial(FockMonomial([a(1, -1, "-1/2")]), 2)
        assert (sign, image) == (-1, FockMonomial([a(4, 1, "-1/2")]))
        sign, image = theta_monomial(FockMonomial([a(4, -1, "-1/2")]), 2)
        assert (sign, image) == (1, FockMonomial([a(1, 1, "-1/2")]))

    def test_involution(self):
        for monomial in graded_basis(4, "3/2"):
            vector = FockVector.from_monomial(monomial)
            assert theta(theta(vector, 2), 2) == vector


class TestBBasis:
    """Rescaled b-modes and parity grouping"""

    def test_groups(self):
        assert b_parity_groups(2) == ((1, 2), (3, 4))

    def test_theta_fixed_group(self):
        expansion = b_to_a([a(1, 1, "-1/2")], 2)
        assert expansion.sqrt2_exponent == -1
        assert expansion.vector == FockVector.from_modes(a(1, 1, "-1/2")) + FockVector.from_modes(a(4, -1, "-1/2"))
        assert theta(expansion.vector, 2) == expansion.vector

    def test_theta_odd_group(self):
        expansion = b_to_a([a(3, 1, "-1/2")], 2)
        assert expansion.vector == FockVector.from_modes(a(2, 1, "-1/2")) - FockVector.from_modes(a(3, -1, "-1/2"))
        assert theta(expansion.vector, 2) == -expansion.vector

    @pytest.mark.parametrize("ell", [1, 2])
    @pytest.mark.parametrize("weight", [Fraction(1, 2), 1, Fraction(3, 2), 2])
    def test_change_of_basis_is_invertible(self, ell, weight):
        basis = graded_basis(2 * ell, weight)
        column = {monomial: index for index, monomial in enumerate(basis)}
        rows = []
        for b_monomial in basis:
            image = b_to_a(list(b_monomial), ell).vector
            assert set(image.terms) <= set(column)
            row = [0] * len(basis)
            for monomial, coeff in image.terms.items():
                row[column[monomial]] = sympy.Rational(coeff.numerator, coeff.denominator)
            rows.append(row)
        assert sympy.Matrix(rows).rank() == len(basis)

    def test_annihilation_b_mode_rejected(self):
        with pytest.raises(ValueError):
            b_to_a([a(1, 1, "1/2")], 1)

    def test_parity_split(self):
        basis = graded_basis(2, 1)
        even, odd = parity_split(basis, [1])
        assert len(even) + len(odd) == len(basis)
        assert all(m.species_count([1]) % 2 == 0 for m in even)
