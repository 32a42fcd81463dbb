"""
Free-field generator tables for the affine algebras realized in the Weyl Fock
space, and the identities checked against them.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import permutations, product
from typing import Dict, List, Optional, Sequence, Tuple

from .exact import Number, to_scalar
from .opcalc import (
    CompositeElement,
    QuadraticElement,
    free_virasoro,
    gram_matrix,
    heisenberg_virasoro,
    mode_action,
    sugawara,
)
from .rootdata import RootSystem, WeightVector, render_dynkin, root_system
from .weylfock import FockMonomial, FockVector, Mode

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)


class TableTag(str, Enum):
    SYMPLECTIC = "C"  # C_l at level -1 in M_{2l}
    SPECIAL_LINEAR = "A"  # A_{2l-1} at level -1 in M_{2l}
    SL2_PRODUCT = "A1"  # A_1^{x l} at level -1 in M_{2l}
    SYMPLECTIC_HALF = "C-half"  # C_l at level -1/2 in M_l


def pair(i: int, ci: int, j: int, cj: int, depth2: int = -1) -> FockMonomial:
    return FockMonomial([Mode(i, ci, depth2), Mode(j, cj, depth2)])


def quadratic(terms: Sequence[Tuple[Number, FockMonomial]], label: str) -> QuadraticElement:
    vector = FockVector.combine((coeff, FockVector.from_monomial(m)) for coeff, m in terms)
    return QuadraticElement(vector, label)


@dataclass
class GeneratorTable:
    """Named currents of one affine algebra together with the data needed to
    read off highest weights: raising elements, Cartan elements and the
    Cartan elements whose zero modes return epsilon coordinates."""

    tag: TableTag
    ell: int
    elements: Dict[str, QuadraticElement]
    raising: Tuple[str, ...]
    cartans: Tuple[str, ...]
    coordinate_cartans: Tuple[QuadraticElement, ...]
    level: Fraction
    h_dual: Fraction
    pairs: int
    _gram: Optional[List[List[Fraction]]] = field(default=None, repr=False)

    def __iter__(self):
        return iter(self.elements.values())

    def __len__(self) -> int:
        return len(self.elements)

    def __getitem__(self, label: str) -> QuadraticElement:
        return self.elements[label]

    @property
    def labels(self) -> List[str]:
        return list(self.elements)

    @property
    def root_system(self) -> Optional[RootSystem]:
        if self.tag is TableTag.SPECIAL_LINEAR:
            return root_system("A", 2 * self.ell - 1)
        if self.tag is TableTag.SL2_PRODUCT:
            return None
        return root_system("C", self.ell)

    def gram(self) -> List[List[Fraction]]:
        if self._gram is None:
            self._gram = gram_matrix(list(self))
        return self._gram

    def sugawara(self) -> CompositeElement:
        return sugawara(list(self), self.level, self.h_dual, label=f"omega_{self.tag.value}({self.ell})")

    def with_elements(self, extra: Sequence[QuadraticElement]) -> "GeneratorTable":
        """The same table enlarged by further currents (commutant constraints)."""
        elements = dict(self.elements)
        for element in extra:
            elements[element.label] = element
        return GeneratorTable(
            self.tag, self.ell, elements, self.raising, self.cartans, self.coordinate_cartans,
            self.level, self.h_dual, self.pairs,
        )


def _symplectic_table(ell: int) -> GeneratorTable:
    elements: Dict[str, QuadraticElement] = {}
    raising: List[str] = []
    lowering: Dict[str, QuadraticElement] = {}
    cartans: Dict[str, QuadraticElement] = {}
    p = lambda i: 2 * ell + 1 - i  # noqa: E731
    for i in range(1, ell + 1):
        label = f"2e{i}"
        elements[f"e_{label}"] = quadratic([(1, pair(i, 1, p(i), -1))], f"e_{label}")
        lowering[f"f_{label}"] = quadratic([(1, pair(i, -1, p(i), 1))], f"f_{label}")
        cartans[f"h_{label}"] = quadratic([(-1, pair(i, 1, i, -1)), (1, pair(p(i), 1, p(i), -1))], f"h_{label}")
        raising.append(f"e_{label}")
    for i in range(1, ell + 1):
        for j in range(i + 1, ell + 1):
            label = f"e{i}+e{j}"
            elements[f"e_{label}"] = quadratic(
                [(HALF, pair(i, 1, p(j), -1)), (HALF, pair(j, 1, p(i), -1))], f"e_{label}"
            )
            lowering[f"f_{label}"] = quadratic(
                [(HALF, pair(i, -1, p(j), 1)), (HALF, pair(j, -1, p(i), 1))], f"f_{label}"
            )
            raising.append(f"e_{label}")
            label = f"e{i}-e{j}"
            elements[f"e_{label}"] = quadratic(
                [(HALF, pair(i, 1, j, -1)), (-HALF, pair(p(j), 1, p(i), -1))], f"e_{label}"
            )
            lowering[f"f_{label}"] = quadratic(
                [(HALF, pair(j, 1, i, -1)), (-HALF, pair(p(i), 1, p(j), -1))], f"f_{label}"
            )
            raising.append(f"e_{label}")
    elements.update(lowering)
    elements.update(cartans)
    return GeneratorTable(
        tag=TableTag.SYMPLECTIC,
        ell=ell,
        elements=elements,
        raising=tuple(raising),
        cartans=tuple(cartans),
        coordinate_cartans=tuple(cartans.values()),
        level=Fraction(-1),
        h_dual=Fraction(ell + 1),
        pairs=2 * ell,
    )


def _sl2_product_table(ell: int) -> GeneratorTable:
    elements: Dict[str, QuadraticElement] = {}
    p = lambda i: 2 * ell + 1 - i  # noqa: E731
    for i in range(1, ell + 1):
        elements[f"e({i})"] = quadratic([(1, pair(i, 1, p(i), -1))], f"e({i})")
    for i in range(1, ell + 1):
        elements[f"f({i})"] = quadratic([(1, pair(i, -1, p(i), 1))], f"f({i})")
    for i in range(1, ell + 1):
        elements[f"h({i})"] = quadratic([(-1, pair(i, 1, i, -1)), (1, pair(p(i), 1, p(i), -1))], f"h({i})")
    cartans = tuple(f"h({i})" for i in range(1, ell + 1))
    return GeneratorTable(
        tag=TableTag.SL2_PRODUCT,
        ell=ell,
        elements=elements,
        raising=tuple(f"e({i})" for i in range(1, ell + 1)),
        cartans=cartans,
        coordinate_cartans=tuple(elements[c] for c in cartans),
        level=Fraction(-1),
        h_dual=Fraction(2),
        pairs=2 * ell,
    )


def gl_cartan(i: int) -> QuadraticElement:
    """-a_i^+ a_i^-, whose zero mode counts N_i^+ - N_i^-."""
    return quadratic([(-1, pair(i, 1, i, -1))], f"H_{i}")


def _special_linear_table(ell: int) -> GeneratorTable:
    n = 2 * ell
    elements: Dict[str, QuadraticElement] = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            elements[f"eA_e{i}-e{j}"] = quadratic([(1, pair(i, 1, j, -1))], f"eA_e{i}-e{j}")
    raising = tuple(elements)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            elements[f"fA_e{i}-e{j}"] = quadratic([(1, pair(i, -1, j, 1))], f"fA_e{i}-e{j}")
    cartans = []
    for i in range(1, n):
        label = f"hA_{i}"
        elements[label] = quadratic([(-1, pair(i, 1, i, -1)), (1, pair(i + 1, 1, i + 1, -1))], label)
        cartans.append(label)
    return GeneratorTable(
        tag=TableTag.SPECIAL_LINEAR,
        ell=ell,
        elements=elements,
        raising=raising,
        cartans=tuple(cartans),
        coordinate_cartans=tuple(gl_cartan(i) for i in range(1, n + 1)),
        level=Fraction(-1),
        h_dual=Fraction(n),
        pairs=n,
    )


def _symplectic_half_table(ell: int) -> GeneratorTable:
    elements: Dict[str, QuadraticElement] = {}
    lowering: Dict[str, QuadraticElement] = {}
    cartans: Dict[str, QuadraticElement] = {}
    raising: List[str] = []
    for i in range(1, ell + 1):
        elements[f"e_2e{i}"] = quadratic([(HALF, pair(i, 1, i, 1))], f"e_2e{i}")
        lowering[f"f_2e{i}"] = quadratic([(-HALF, pair(i, -1, i, -1))], f"f_2e{i}")
        cartans[f"h_2e{i}"] = quadratic([(-1, pair(i, 1, i, -1))], f"h_2e{i}")
        raising.append(f"e_2e{i}")
    for i in range(1, ell + 1):
        for j in range(i + 1, ell + 1):
            elements[f"e_e{i}+e{j}"] = quadratic([(1, pair(i, 1, j, 1))], f"e_e{i}+e{j}")
            lowering[f"f_e{i}+e{j}"] = quadratic([(-1, pair(i, -1, j, -1))], f"f_e{i}+e{j}")
            elements[f"e_e{i}-e{j}"] = quadratic([(1, pair(i, 1, j, -1))], f"e_e{i}-e{j}")
            lowering[f"f_e{i}-e{j}"] = quadratic([(1, pair(j, 1, i, -1))], f"f_e{i}-e{j}")
            raising += [f"e_e{i}+e{j}", f"e_e{i}-e{j}"]
    elements.update(lowering)
    elements.update(cartans)
    return GeneratorTable(
        tag=TableTag.SYMPLECTIC_HALF,
        ell=ell,
        elements=elements,
        raising=tuple(raising),
        cartans=tuple(cartans),
        coordinate_cartans=tuple(cartans.values()),
        level=Fraction(-1, 2),
        h_dual=Fraction(ell + 1),
        pairs=ell,
    )


def build_table(tag: TableTag | str, ell: int) -> GeneratorTable:
    tag = TableTag(tag)
    minimum = 1 if tag in (TableTag.SL2_PRODUCT, TableTag.SYMPLECTIC_HALF) else 2
    if ell < minimum:
        raise ValueError(f"table {tag.value} needs ell >= {minimum}, got {ell}")
    builders = {
        TableTag.SYMPLECTIC: _symplectic_table,
        TableTag.SPECIAL_LINEAR: _special_linear_table,
        TableTag.SL2_PRODUCT: _sl2_product_table,
        TableTag.SYMPLECTIC_HALF: _symplectic_half_table,
    }
    table = builders[tag](ell)
    logger.debug(f"built table {tag.value} for ell={ell}: {len(table)} currents")
    return table


@dataclass(frozen=True)
class CartanElements:
    heisenberg: Tuple[QuadraticElement, ...]
    total: QuadraticElement
    differences: Tuple[QuadraticElement, ...]


def cartan_elements(ell: int) -> CartanElements:
    """H^(i) = a_i^+ a_i^- + a_i'^+ a_i'^-, their sum H, and consecutive
    differences (empty for ell = 1)."""
    if ell < 1:
        raise ValueError("ell must be at least 1")
    heisenberg = tuple(
        quadratic([(1, pair(i, 1, i, -1)), (1, pair(2 * ell + 1 - i, 1, 2 * ell + 1 - i, -1))], f"H({i})")
        for i in range(1, ell + 1)
    )
    total = QuadraticElement(FockVector.combine((1, h.vector) for h in heisenberg), "H")
    differences = tuple(
        QuadraticElement(heisenberg[i].vector - heisenberg[i + 1].vector, f"Hbar({i + 1})")
        for i in range(ell - 1)
    )
    return CartanElements(heisenberg, total, differences)


def estar(ell: int) -> QuadraticElement:
    if ell < 2:
        raise ValueError("e* needs ell >= 2")
    return quadratic(
        [(HALF, pair(1, 1, 2 * ell - 1, -1)), (-HALF, pair(2, 1, 2 * ell, -1))], "e*_e1+e2"
    )


def _permutation_sign(perm: Sequence[int]) -> int:
    sign = 1
    for a in range(len(perm)):
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b]:
                sign = -sign
    return sign


def delta3_terms(ell: int, indices: Tuple[int, int, int] = (1, 2, 3)) -> List[Tuple[int, List[QuadraticElement]]]:
    """Signed triple products of the symmetric determinant whose diagonal is
    e_{2 eps_a} and off-diagonal entries e_{eps_a + eps_b}."""
    if ell < 3:
        raise ValueError("the determinant vector needs ell >= 3")
    if len(set(indices)) != 3 or not all(1 <= i <= ell for i in indices):
        raise ValueError(f"invalid index triple {indices}")
    table = build_table(TableTag.SYMPLECTIC, ell)

    def entry(a: int, b: int) -> QuadraticElement:
        if a == b:
            return table[f"e_2e{a}"]
        low, high = min(a, b), max(a, b)
        return table[f"e_e{low}+e{high}"]

    terms = []
    for perm in permutations(range(3)):
        factors = [entry(indices[r], indices[perm[r]]) for r in range(3)]
        terms.append((_permutation_sign(perm), factors))
    return terms


def delta3_vector(
    ell: int, omit: Optional[int] = None, indices: Tuple[int, int, int] = (1, 2, 3)
) -> FockVector:
    """The determinant of (-1)-modes applied to the vacuum. ``omit`` drops one
    of the six expansion terms."""
    pieces = []
    for index, (sign, factors) in enumerate(delta3_terms(ell, indices)):
        if index == omit:
            continue
        state = FockVector.vacuum()
        for factor in reversed(factors):
            state = mode_action(factor, -1, state)
        pieces.append((sign, state))
    return FockVector.combine(pieces)


def zero_mode_eigenvalue(element: QuadraticElement, vector: FockVector) -> Optional[Fraction]:
    """Eigenvalue of element_0 on vector, or None if vector is not an eigenvector."""
    image = mode_action(element, 0, vector)
    monomial, coeff = next(iter(vector))
    value = image.coefficient(monomial) / coeff
    return value if image == vector * value else None


@dataclass
class SingularReport:
    is_singular: bool
    level: Fraction
    coordinates: Tuple[Fraction, ...] = ()
    dynkin_labels: Tuple[Fraction, ...] = ()
    affine_label: str = ""
    reason: str = ""


def render_affine_label(level: Fraction, labels: Sequence[Fraction]) -> str:
    """``-(n+1) Lambda_0 + n Lambda_1`` style label; comarks are all 1 for the
    algebras here."""
    coefficients = [level - sum(labels, Fraction(0))] + list(labels)
    parts = []
    for index, c in enumerate(coefficients):
        if not c:
            continue
        magnitude = "" if abs(c) == 1 else str(abs(c))
        parts.append(f"{'-' if c < 0 else '+'}{magnitude}Λ{index}")
    text = "".join(parts) or "0"
    return text[1:] if text.startswith("+") else text


def singular_check(vector: FockVector, table: GeneratorTable) -> SingularReport:
    """Is ``vector`` a Cartan eigenvector killed by the raising zero modes and
    by every positive mode x_m, m >= 1, of the table?"""
    if not vector:
        return SingularReport(False, table.level, reason="zero vector")
    weight2 = vector.weight2
    coordinates = []
    for cartan in table.coordinate_cartans:
        value = zero_mode_eigenvalue(cartan, vector)
        if value is None:
            return SingularReport(False, table.level, reason=f"not an eigenvector of {cartan.label}_0")
        coordinates.append(value)
    for label in table.raising:
        if mode_action(table[label], 0, vector):
            return SingularReport(False, table.level, tuple(coordinates), reason=f"{label}_0 acts non-trivially")
    for element in table:
        for m in range(1, (weight2 + element.weight2) // 2):
            if mode_action(element, m, vector):
                return SingularReport(
                    False, table.level, tuple(coordinates), reason=f"{element.label}_{m} acts non-trivially"
                )
    rs = table.root_system
    if rs is None:
        labels = tuple(coordinates)
        affine = " ⊗ ".join(f"({render_affine_label(table.level, [x])})" for x in labels)
    else:
        weight = rs.normalize(WeightVector(tuple(coordinates)))
        labels = rs.dynkin_labels(weight)
        affine = render_affine_label(table.level, labels)
    return SingularReport(True, table.level, tuple(coordinates), labels, affine)


def highest_weight(report: SingularReport, table: GeneratorTable) -> WeightVector:
    rs = table.root_system
    if rs is None:
        raise ValueError("product tables have no single root system")
    return rs.normalize(WeightVector(report.coordinates))


def classification_polys(h: Sequence[Number]) -> Dict[str, Fraction]:
    """Values of p_i, q_i, r_i for i = 3..l at mu = sum h_i eps_i."""
    if len(h) < 3:
        raise ValueError("classification polynomials need ell >= 3")
    values = [to_scalar(x) for x in h]
    h1, h2 = values[0], values[1]
    result: Dict[str, Fraction] = {}
    for i in range(3, len(values) + 1):
        hi = values[i - 1]
        result[f"p{i}"] = (h1 + 1) * (h2 + HALF) * hi
        result[f"q{i}"] = (h1 + 1) * (4 * hi + (h2 + hi) * (h2 + hi - 1))
        result[f"r{i}"] = 4 * hi * (h2 + 1) + (h1 + hi - 1) * (h2 + hi + h2 * (h1 + hi))
    return result


def classify_box(ell: int, bound: int) -> List[Tuple[int, ...]]:
    """All h in {0..bound}^ell where every classification polynomial vanishes."""
    if ell < 3:
        raise ValueError("classification needs ell >= 3")
    if bound < 0:
        raise ValueError("bound must be non-negative")
    solutions = [
        h for h in product(range(bound + 1), repeat=ell) if not any(classification_polys(h).values())
    ]
    logger.info(f"classification box ell={ell}, bound={bound}: {len(solutions)} solutions")
    return solutions


@dataclass
class IdentityCheck:
    name: str
    anchor: str
    holds: bool
    difference: FockVector
    sub_identities: List["IdentityCheck"] = field(default_factory=list)


def _identity(name: str, anchor: str, lhs: FockVector, rhs: FockVector) -> IdentityCheck:
    difference = lhs - rhs
    return IdentityCheck(name, anchor, not difference, difference)


def _sym_product(u: QuadraticElement, v: QuadraticElement) -> FockVector:
    """(u(-1) v(-1) + v(-1) u(-1)) |0>."""
    return mode_action(u, -1, v.vector) + mode_action(v, -1, u.vector)


def _free_part(species: Sequence[int], scale: Fraction) -> FockVector:
    """scale * sum_s (a_s^-(-3/2) a_s^+(-1/2) - a_s^+(-3/2) a_s^-(-1/2))."""
    terms = []
    for s in species:
        terms.append((scale, FockMonomial([Mode(s, -1, -3), Mode(s, 1, -1)])))
        terms.append((-scale, FockMonomial([Mode(s, 1, -3), Mode(s, -1, -1)])))
    return FockVector.combine((c, FockVector.from_monomial(m)) for c, m in terms)


def _quartic(*factors: Tuple[int, int]) -> FockVector:
    return FockVector.from_monomial(FockMonomial([Mode(s, c, -1) for s, c in factors]))


def _expansion_checks(ell: int) -> List[IdentityCheck]:
    """Expansions of the symmetric products entering the C-type Sugawara sum
    for the pair (i, j) = (1, 2)."""
    table = build_table(TableTag.SYMPLECTIC, ell)
    i, j = 1, 2
    ip, jp = 2 * ell + 1 - i, 2 * ell + 1 - j
    checks = []
    long_rhs = _quartic((i, 1), (i, -1), (ip, 1), (ip, -1)) * 2 + _free_part([i, ip], Fraction(1))
    checks.append(_identity(
        "long-root symmetric product", "proof-Vir-2",
        _sym_product(table["e_2e1"], table["f_2e1"]), long_rhs,
    ))
    plus_rhs = (
        _quartic((i, 1), (i, -1), (jp, 1), (jp, -1))
        + _quartic((i, 1), (j, -1), (jp, -1), (ip, 1))
        + _quartic((i, -1), (j, 1), (ip, -1), (jp, 1))
        + _quartic((j, 1), (j, -1), (ip, 1), (ip, -1))
        + _free_part([i, j, ip, jp], HALF)
    )
    checks.append(_identity(
        "short-root e1+e2 symmetric product", "proof-Vir-3",
        _sym_product(table["e_e1+e2"], table["f_e1+e2"]) * 2, plus_rhs,
    ))
    minus_rhs = (
        _quartic((i, 1), (i, -1), (j, 1), (j, -1))
        - _quartic((j, 1), (i, -1), (jp, 1), (ip, -1))
        - _quartic((i, 1), (j, -1), (ip, 1), (jp, -1))
        + _quartic((ip, 1), (ip, -1), (jp, 1), (jp, -1))
        + _free_part([i, j, ip, jp], HALF)
    )
    checks.append(_identity(
        "short-root e1-e2 symmetric product", "proof-Vir-4",
        _sym_product(table["e_e1-e2"], table["f_e1-e2"]) * 2, minus_rhs,
    ))
    return checks


def virasoro_decompositions(ell: int) -> List[IdentityCheck]:
    """omega = omega_1 + omega_2 for the A_1 product table (any ell), for the
    C table with omega_2 built on H (ell >= 2), and equality of the C and A
    Sugawara vectors (ell >= 2)."""
    if ell < 1:
        raise ValueError("ell must be at least 1")
    omega = free_virasoro(2 * ell).vector
    cartans = cartan_elements(ell)
    checks = []

    sl2_sugawara = build_table(TableTag.SL2_PRODUCT, ell).sugawara()
    omega2 = heisenberg_virasoro(cartans.heisenberg, [[-2 * int(a == b) for b in range(ell)] for a in range(ell)])
    checks.append(_identity("omega = omega_1 + omega_2 (A1 product)", "sec5-omega", omega, sl2_sugawara.vector + omega2.vector))
    if ell < 2:
        return checks

    c_sugawara = build_table(TableTag.SYMPLECTIC, ell).sugawara()
    omega2_c = heisenberg_virasoro([cartans.total], [[-2 * ell]])
    c_check = _identity("omega = omega_1 + omega_2 (C table)", "Vir-decomp-C", omega, c_sugawara.vector + omega2_c.vector)
    c_check.sub_identities = _expansion_checks(ell)
    c_check.holds = c_check.holds and all(s.holds for s in c_check.sub_identities)
    checks.append(c_check)

    a_sugawara = build_table(TableTag.SPECIAL_LINEAR, ell).sugawara()
    checks.append(_identity("omega_1 = omega_1^A", "sec8-omega", c_sugawara.vector, a_sugawara.vector))
    for check in checks:
        logger.info(f"{check.anchor}: {'holds' if check.holds else 'FAILS'}")
    return checks
