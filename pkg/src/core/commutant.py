"""
Graded linear algebra over the Weyl Fock space: commutants of generator
tables, spans closed under table modes, theta splits and character checks.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .exact import EchelonBasis, QSeries, SparseMatrix, from_doubled, nullspace, to_half_integer, Number
from .opcalc import QuadraticElement, mode_action
from .realization import GeneratorTable
from .weylfock import FockMonomial, FockVector, graded_basis, theta, theta_monomial

logger = logging.getLogger(__name__)


class GradedSubspace:
    """Subspace of the Fock space stored as one reduced echelon basis per
    doubled weight, up to ``max_weight2``."""

    def __init__(self, max_weight2: int):
        if max_weight2 < 0:
            raise ValueError("maximum weight must be non-negative")
        self.max_weight2 = max_weight2
        self._pieces: Dict[int, EchelonBasis] = {}

    @classmethod
    def from_vectors(cls, vectors: Iterable[FockVector], max_weight2: int) -> "GradedSubspace":
        space = cls(max_weight2)
        for vector in vectors:
            space.add(vector)
        return space

    def piece(self, weight2: int) -> EchelonBasis:
        if weight2 not in self._pieces:
            self._pieces[weight2] = EchelonBasis()
        return self._pieces[weight2]

    def add(self, vector: FockVector) -> bool:
        """Insert every weight component up to the truncation; True when
        some component was new."""
        grew = False
        for weight2, component in vector.weight_components().items():
            if weight2 <= self.max_weight2 and self.piece(weight2).add(component.terms):
                grew = True
        return grew

    def contains(self, vector: FockVector) -> bool:
        for weight2, component in vector.weight_components().items():
            if weight2 > self.max_weight2:
                raise ValueError(f"weight {from_doubled(weight2)} lies past the truncation")
            if not self.piece(weight2).contains(component.terms):
                return False
        return True

    def dim(self, weight2: int) -> int:
        return self._pieces[weight2].rank if weight2 in self._pieces else 0

    def dims(self) -> Dict[int, int]:
        return {w: self.dim(w) for w in range(self.max_weight2 + 1)}

    def basis(self, weight2: int) -> List[FockVector]:
        if weight2 not in self._pieces:
            return []
        return [FockVector(row) for row in self._pieces[weight2].rows()]

    def same_as(self, other: "GradedSubspace") -> bool:
        top = min(self.max_weight2, other.max_weight2)
        return all(self.piece(w).same_span(other.piece(w)) for w in range(top + 1))

    def is_subspace_of(self, other: "GradedSubspace") -> bool:
        return all(other.contains(v) for w in range(self.max_weight2 + 1) for v in self.basis(w))

    def __repr__(self) -> str:
        return f"GradedSubspace(dims={self.dims()})"


@dataclass(frozen=True)
class AmbientSpec:
    """Where commutant solutions are sought.

    ``parity`` fixes the parities of b-factor counts in the theta-fixed and
    theta-odd species groups; it is realized as a theta eigenvalue plus the
    parity of the total factor count, which the b-basis change preserves.
    """

    pairs: int
    parity: Optional[Tuple[int, int]] = None
    charge: Optional[int] = None
    within: Optional[GradedSubspace] = field(default=None, compare=False)

    @classmethod
    def full(cls, pairs: int) -> "AmbientSpec":
        return cls(pairs)

    @classmethod
    def even_even(cls, ell: int) -> "AmbientSpec":
        return cls(2 * ell, parity=(0, 0))

    @classmethod
    def restricted(cls, space: GradedSubspace, pairs: int) -> "AmbientSpec":
        return cls(pairs, within=space)

    @property
    def ell(self) -> int:
        if self.pairs % 2:
            raise ValueError("theta needs an even number of pairs")
        return self.pairs // 2

    def describe(self) -> str:
        parts = [f"M_{self.pairs}"]
        if self.parity is not None:
            parts.append(f"b-parity {self.parity}")
        if self.charge is not None:
            parts.append(f"charge {self.charge}")
        if self.within is not None:
            parts.append("restricted span")
        return ", ".join(parts)

    def _monomial_allowed(self, monomial: FockMonomial) -> bool:
        if self.charge is not None and monomial.charge != self.charge:
            return False
        if self.parity is not None and len(monomial) % 2 != sum(self.parity) % 2:
            return False
        return True

    def basis(self, weight2: int, diagonal: Sequence[QuadraticElement] = ()) -> List[FockVector]:
        """Spanning vectors of the ambient at one weight, restricted to the
        common zero eigenspace of the given diagonal Cartan elements."""
        if self.within is not None:
            if weight2 > self.within.max_weight2:
                raise ValueError(
                    f"restricted ambient only reaches weight {from_doubled(self.within.max_weight2)}"
                )
            return self.within.basis(weight2)
        monomials = [
            m for m in graded_basis(self.pairs, from_doubled(weight2), self.charge) if self._monomial_allowed(m)
        ]
        if diagonal:
            monomials = [m for m in monomials if all(diagonal_eigenvalue(h, m) == 0 for h in diagonal)]
        if self.parity is None:
            return [FockVector.from_monomial(m) for m in monomials]
        eigenvalue = -1 if self.parity[1] % 2 else 1
        allowed = set(monomials)
        vectors: List[FockVector] = []
        seen = set()
        for monomial in monomials:
            if monomial in seen:
                continue
            sign, image = theta_monomial(monomial, self.ell)
            seen.update((monomial, image))
            if image == monomial:
                if sign == eigenvalue:
                    vectors.append(FockVector.from_monomial(monomial))
                continue
            if image not in allowed:
                raise ValueError("diagonal filter is not theta-stable")
            vectors.append(FockVector({monomial: 1, image: eigenvalue * sign}))
        return vectors

    def contains(self, vector: FockVector) -> bool:
        if self.within is not None:
            return self.within.contains(vector)
        if vector.max_species() > self.pairs:
            return False
        if not all(self._monomial_allowed(m) for m in vector.terms):
            return False
        if self.parity is not None:
            eigenvalue = -1 if self.parity[1] % 2 else 1
            return theta(vector, self.ell) == vector * eigenvalue
        return True


def diagonal_eigenvalue(element: QuadraticElement, monomial: FockMonomial) -> Optional[Fraction]:
    """Zero-mode eigenvalue of a combination of a_s^+ a_s^- at depth 1/2 on a
    monomial; None for elements that are not of that shape."""
    total = Fraction(0)
    for (x, y), coeff in element.vector.terms.items():
        if x.species != y.species or x.charge == y.charge or x.depth2 != -1 or y.depth2 != -1:
            return None
        plus = sum(1 for f in monomial if f.species == x.species and f.charge > 0)
        minus = sum(1 for f in monomial if f.species == x.species and f.charge < 0)
        total += coeff * (minus - plus)
    return total


def _is_diagonal(element: QuadraticElement) -> bool:
    return all(
        x.species == y.species and x.charge != y.charge and x.depth2 == -1 and y.depth2 == -1
        for x, y in element.vector.terms
    )


def _usable_diagonals(table: GeneratorTable, ambient: AmbientSpec) -> List[QuadraticElement]:
    if ambient.within is not None:
        return []
    diagonals = []
    for element in table:
        if not _is_diagonal(element):
            continue
        if ambient.parity is not None and theta(element.vector, ambient.ell) != element.vector:
            continue
        diagonals.append(element)
    return diagonals


def _constraint_modes(element: QuadraticElement, weight2: int) -> range:
    """Borcherds indices m >= wt(u) - 1 with u_m non-zero on weight2."""
    return range(element.weight2 // 2 - 1, (weight2 + element.weight2) // 2)


@dataclass
class CommutantResult:
    max_weight2: int
    dims: Dict[int, int]
    bases: Dict[int, List[FockVector]]
    verified: bool

    def as_subspace(self) -> GradedSubspace:
        return GradedSubspace.from_vectors(
            (v for vectors in self.bases.values() for v in vectors), self.max_weight2
        )

    def dims_by_weight(self) -> Dict[str, int]:
        return {str(from_doubled(w)): d for w, d in sorted(self.dims.items())}


def _kills(table: GeneratorTable, vector: FockVector, weight2: int) -> bool:
    return all(
        not mode_action(element, m, vector) for element in table for m in _constraint_modes(element, weight2)
    )


def commutant_dims(
    table: GeneratorTable,
    ambient: AmbientSpec,
    max_weight: Number | str,
    max_columns: Optional[int] = None,
    verify: bool = True,
) -> CommutantResult:
    """Solve u_m w = 0 for every table element u and every m >= wt(u) - 1,
    weight by weight up to ``max_weight``.

    Table Cartan elements acting diagonally on monomials restrict the search
    to their common zero eigenspace, which contains every solution.
    """
    max_weight2 = to_half_integer(max_weight)
    diagonals = _usable_diagonals(table, ambient)
    dims: Dict[int, int] = {}
    bases: Dict[int, List[FockVector]] = {}
    verified = True
    for weight2 in range(max_weight2 + 1):
        columns = ambient.basis(weight2, diagonals)
        if max_columns is not None and len(columns) > max_columns:
            logger.warning(f"weight {from_doubled(weight2)} has {len(columns)} ambient vectors")
            raise ValueError(f"ambient piece of size {len(columns)} exceeds the limit {max_columns}")
        images: List[Dict[Tuple[int, int, FockMonomial], Fraction]] = []
        for column in columns:
            image: Dict[Tuple[int, int, FockMonomial], Fraction] = {}
            for index, element in enumerate(table):
                for m in _constraint_modes(element, weight2):
                    for monomial, value in mode_action(element, m, column).terms.items():
                        image[(index, m, monomial)] = value
            images.append(image)
        matrix, _ = SparseMatrix.from_columns(images)
        rank, kernel = nullspace(matrix)
        solutions = [
            FockVector.combine((c, columns[k]) for k, c in enumerate(vector) if c) for vector in kernel
        ]
        if verify:
            verified = verified and all(_kills(table, s, weight2) for s in solutions)
        dims[weight2] = len(solutions)
        bases[weight2] = solutions
        logger.info(
            f"commutant weight {from_doubled(weight2)}: {len(columns)} ambient vectors, rank {rank}, dim {len(solutions)}"
        )
    return CommutantResult(max_weight2, dims, bases, verified)


def subalgebra_span(
    table: GeneratorTable,
    seeds: Sequence[FockVector],
    max_weight: Number | str,
    ambient: Optional[AmbientSpec] = None,
) -> GradedSubspace:
    """Smallest graded subspace containing the seeds and closed under every
    table mode u_m whose target weight is at most ``max_weight``."""
    max_weight2 = to_half_integer(max_weight)
    if ambient is not None:
        for seed in seeds:
            if not ambient.contains(seed):
                raise ValueError("seed vector lies outside the ambient")
    space = GradedSubspace(max_weight2)
    queue = deque()
    for seed in seeds:
        for weight2, component in seed.weight_components().items():
            if weight2 <= max_weight2 and space.add(component):
                queue.append(component)
    applied = 0
    while queue:
        vector = queue.popleft()
        weight2 = vector.weight2
        for element in table:
            top = weight2 + element.weight2 - 2
            for m in range(-((max_weight2 - top) // 2), top // 2 + 1):
                image = mode_action(element, m, vector)
                applied += 1
                if image and space.add(image):
                    queue.append(image)
    logger.info(f"span saturated after {applied} mode applications: {space.dims()}")
    return space


@dataclass
class ThetaSplit:
    even: GradedSubspace
    odd: GradedSubspace

    @property
    def even_dims(self) -> Dict[int, int]:
        return self.even.dims()

    @property
    def odd_dims(self) -> Dict[int, int]:
        return self.odd.dims()


def theta_split(space: GradedSubspace, ell: int) -> ThetaSplit:
    even = GradedSubspace(space.max_weight2)
    odd = GradedSubspace(space.max_weight2)
    half = Fraction(1, 2)
    for weight2 in range(space.max_weight2 + 1):
        for vector in space.basis(weight2):
            image = theta(vector, ell)
            if not space.contains(image):
                raise ValueError(f"space is not theta-stable at weight {from_doubled(weight2)}")
            even.add((vector + image) * half)
            odd.add((vector - image) * half)
    return ThetaSplit(even, odd)


def parity_closure(odd: GradedSubspace, even: GradedSubspace, max_weight2: int, current_weight2: int = 2) -> Optional[str]:
    """Check that u_m v lies in ``even`` for every v of ``odd`` up to
    ``max_weight2``, sampling u from the basis of ``odd`` at doubled weight
    ``current_weight2`` only (weight-1 currents by default). Returns the
    first failure."""
    currents = [QuadraticElement(u, f"odd{i}") for i, u in enumerate(odd.basis(current_weight2))]
    for weight2 in range(max_weight2 + 1):
        for v in odd.basis(weight2):
            for u in currents:
                top = weight2 + u.weight2 - 2
                for m in range(-((max_weight2 - top) // 2), top // 2 + 1):
                    image = mode_action(u, m, v)
                    if image and not even.contains(image):
                        return f"{u.label}_{m} maps a weight-{from_doubled(weight2)} vector outside the even part"
    return None


@dataclass
class SeriesComparison:
    matches: bool
    mismatch: Optional[Tuple[Fraction, int, int]] = None

    def describe(self) -> str:
        if self.matches:
            return "match"
        weight, expected, found = self.mismatch  # type: ignore[misc]
        return f"weight {weight}: series {expected}, computed {found}"


def compare_series(dims: Mapping[int, int], series: QSeries) -> SeriesComparison:
    """Exact comparison of per-weight dimensions (keyed by doubled weight)
    against a series."""
    for weight2 in sorted(dims):
        expected = series.coefficient(from_doubled(weight2))
        if dims[weight2] != expected:
            return SeriesComparison(False, (from_doubled(weight2), expected, dims[weight2]))
    return SeriesComparison(True)
