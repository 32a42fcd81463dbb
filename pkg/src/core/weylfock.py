"""
Weyl Fock space: modes, canonical monomials, exact vectors and the single-mode
actions coming from [a_i^+(r), a_j^-(s)] = delta_{r+s,0} delta_{ij}.

Half-integers are stored doubled throughout: a mode of depth -3/2 carries
``depth2 == -3`` and a monomial of weight 2 carries ``weight2 == 4``.
"""
from __future__ import annotations

import logging
import re
from bisect import insort
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from .exact import Number, from_doubled, to_half_integer, to_scalar

logger = logging.getLogger(__name__)


class Mode(NamedTuple):
    """A single mode a_species^charge(depth2 / 2)."""

    species: int
    charge: int
    depth2: int

    @classmethod
    def make(cls, species: int, charge: int, depth: Number | str) -> "Mode":
        return cls.checked(species, charge, to_half_integer(depth))

    @classmethod
    def checked(cls, species: int, charge: int, depth2: int) -> "Mode":
        if species < 1:
            raise ValueError(f"species index must be positive, got {species}")
        if charge not in (1, -1):
            raise ValueError(f"charge must be +1 or -1, got {charge}")
        if depth2 % 2 == 0:
            raise ValueError(f"mode depth {from_doubled(depth2)} is not a half-odd-integer")
        return cls(species, charge, depth2)

    @property
    def depth(self) -> Fraction:
        return from_doubled(self.depth2)

    @property
    def is_creation(self) -> bool:
        return self.depth2 < 0

    def dual(self) -> "Mode":
        """The mode this one pairs with non-trivially."""
        return Mode(self.species, -self.charge, -self.depth2)

    def render(self) -> str:
        sign = "+" if self.charge > 0 else "-"
        return f"a{self.species}{sign}({self.depth})"


class FockMonomial(tuple):
    """Canonically ordered multiset of creation modes, the PBW basis of the
    Fock space. The empty monomial is the vacuum."""

    __slots__ = ()

    def __new__(cls, factors: Iterable[Mode] = ()):
        factors = [Mode(*f) for f in factors]
        for f in factors:
            if not f.is_creation:
                raise ValueError(f"{f.render()} is not a creation mode")
        return super().__new__(cls, sorted(factors))

    @classmethod
    def _sorted(cls, factors: Iterable[Mode]) -> "FockMonomial":
        return tuple.__new__(cls, factors)

    @property
    def weight2(self) -> int:
        return -sum(f.depth2 for f in self)

    @property
    def weight(self) -> Fraction:
        return from_doubled(self.weight2)

    @property
    def charge(self) -> int:
        return sum(f.charge for f in self)

    def with_factor(self, mode: Mode) -> "FockMonomial":
        factors = list(self)
        insort(factors, mode)
        return FockMonomial._sorted(factors)

    def without_factor(self, mode: Mode) -> "FockMonomial":
        factors = list(self)
        factors.remove(mode)
        return FockMonomial._sorted(factors)

    def species_count(self, species: Iterable[int]) -> int:
        group = set(species)
        return sum(1 for f in self if f.species in group)

    def render(self) -> str:
        if not self:
            return "|0>"
        return " ".join(f.render() for f in self) + " |0>"

    def __repr__(self) -> str:
        return f"FockMonomial({self.render()})"


VACUUM = FockMonomial()


def _accumulate(terms: Dict[FockMonomial, Fraction], monomial: FockMonomial, coeff: Fraction) -> None:
    updated = terms.get(monomial, 0) + coeff
    if updated:
        terms[monomial] = updated
    else:
        terms.pop(monomial, None)


class FockVector:
    """Finite rational combination of Fock monomials; zero coefficients are
    never stored. Treated as immutable once built."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[FockMonomial, Number]] = None):
        cleaned: Dict[FockMonomial, Fraction] = {}
        for monomial, coeff in (terms or {}).items():
            if not isinstance(monomial, FockMonomial):
                monomial = FockMonomial(monomial)
            _accumulate(cleaned, monomial, to_scalar(coeff))
        self.terms = cleaned

    @classmethod
    def _wrap(cls, terms: Dict[FockMonomial, Fraction]) -> "FockVector":
        vector = cls.__new__(cls)
        vector.terms = terms
        return vector

    @classmethod
    def zero(cls) -> "FockVector":
        return cls._wrap({})

    @classmethod
    def vacuum(cls) -> "FockVector":
        return cls._wrap({VACUUM: Fraction(1)})

    @classmethod
    def from_monomial(cls, monomial: FockMonomial, coeff: Number = 1) -> "FockVector":
        return cls({monomial: coeff})

    @classmethod
    def from_modes(cls, *modes: Mode, coeff: Number = 1) -> "FockVector":
        return cls({FockMonomial(modes): coeff})

    @classmethod
    def combine(cls, pieces: Iterable[Tuple[Number, "FockVector"]]) -> "FockVector":
        terms: Dict[FockMonomial, Fraction] = {}
        for coeff, vector in pieces:
            coeff = to_scalar(coeff)
            if not coeff:
                continue
            for monomial, value in vector.terms.items():
                _accumulate(terms, monomial, coeff * value)
        return cls._wrap(terms)

    def __add__(self, other: "FockVector") -> "FockVector":
        terms = dict(self.terms)
        for monomial, value in other.terms.items():
            _accumulate(terms, monomial, value)
        return FockVector._wrap(terms)

    def __sub__(self, other: "FockVector") -> "FockVector":
        terms = dict(self.terms)
        for monomial, value in other.terms.items():
            _accumulate(terms, monomial, -value)
        return FockVector._wrap(terms)

    def __neg__(self) -> "FockVector":
        return FockVector._wrap({m: -c for m, c in self.terms.items()})

    def __mul__(self, scalar: Number) -> "FockVector":
        scalar = to_scalar(scalar)
        if not scalar:
            return FockVector.zero()
        return FockVector._wrap({m: scalar * c for m, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FockVector):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Tuple[FockMonomial, Fraction]]:
        return iter(sorted(self.terms.items()))

    def coefficient(self, monomial: FockMonomial) -> Fraction:
        return self.terms.get(monomial, Fraction(0))

    def vacuum_coefficient(self) -> Fraction:
        return self.coefficient(VACUUM)

    def monomials(self) -> List[FockMonomial]:
        return sorted(self.terms)

    def weight2s(self) -> List[int]:
        return sorted({m.weight2 for m in self.terms})

    @property
    def weight2(self) -> int:
        weights = self.weight2s()
        if len(weights) != 1:
            raise ValueError(f"vector is not homogeneous in weight (weights {weights})")
        return weights[0]

    @property
    def weight(self) -> Fraction:
        return from_doubled(self.weight2)

    def weight_component(self, weight2: int) -> "FockVector":
        return FockVector._wrap({m: c for m, c in self.terms.items() if m.weight2 == weight2})

    def weight_components(self) -> Dict[int, "FockVector"]:
        return {w: self.weight_component(w) for w in self.weight2s()}

    def charge_component(self, charge: int) -> "FockVector":
        return FockVector._wrap({m: c for m, c in self.terms.items() if m.charge == charge})

    def max_species(self) -> int:
        return max((f.species for m in self.terms for f in m), default=0)

    def factor_counts(self) -> List[int]:
        return sorted({len(m) for m in self.terms})

    def render(self) -> str:
        return render_vector(self)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"FockVector({self.render()})"


def apply_mode(mode: Mode, vector: FockVector) -> FockVector:
    """Act with a single mode. Creation modes multiply; annihilation modes act
    as derivations through the Weyl relation and kill the vacuum."""
    terms: Dict[FockMonomial, Fraction] = {}
    if mode.is_creation:
        for monomial, coeff in vector.terms.items():
            _accumulate(terms, monomial.with_factor(mode), coeff)
        return FockVector._wrap(terms)
    target = mode.dual()
    sign = 1 if mode.charge > 0 else -1
    for monomial, coeff in vector.terms.items():
        multiplicity = monomial.count(target)
        if multiplicity:
            _accumulate(terms, monomial.without_factor(target), sign * multiplicity * coeff)
    return FockVector._wrap(terms)


def weyl_commutator(first: Mode, second: Mode) -> int:
    """Scalar value of [first, second] from the defining relations."""
    if first.species != second.species or first.depth2 + second.depth2 != 0:
        return 0
    if first.charge == second.charge:
        return 0
    return 1 if first.charge > 0 else -1


@lru_cache(maxsize=512)
def _creation_modes(pairs: int, max_weight2: int) -> Tuple[Mode, ...]:
    modes = [
        Mode(species, charge, -depth)
        for species in range(1, pairs + 1)
        for charge in (1, -1)
        for depth in range(1, max_weight2 + 1, 2)
    ]
    return tuple(sorted(modes))


@lru_cache(maxsize=1024)
def _graded_basis(pairs: int, weight2: int, charge: Optional[int]) -> Tuple[FockMonomial, ...]:
    modes = _creation_modes(pairs, weight2)
    found: List[FockMonomial] = []
    stack: List[Mode] = []

    def extend(start: int, remaining: int) -> None:
        if remaining == 0:
            if charge is None or sum(f.charge for f in stack) == charge:
                found.append(FockMonomial._sorted(stack))
            return
        for index in range(start, len(modes)):
            mode = modes[index]
            if -mode.depth2 <= remaining:
                stack.append(mode)
                extend(index, remaining + mode.depth2)
                stack.pop()

    extend(0, weight2)
    return tuple(found)


def graded_basis(pairs: int, weight: Number | str, charge_filter: Optional[int] = None) -> List[FockMonomial]:
    """All monomials of the given weight in the Fock space with ``pairs``
    pairs of generators, optionally restricted to one charge."""
    if pairs < 1:
        raise ValueError("Fock space needs at least one pair")
    weight2 = to_half_integer(weight)
    if weight2 < 0:
        raise ValueError("weight must be non-negative")
    return list(_graded_basis(pairs, weight2, charge_filter))


def partner(species: int, ell: int) -> int:
    if not 1 <= species <= 2 * ell:
        raise ValueError(f"species {species} outside 1..{2 * ell}")
    return 2 * ell + 1 - species


def theta_mode(mode: Mode, ell: int) -> Tuple[int, Mode]:
    """Signed image of a mode under the order-two automorphism pairing species
    i and 2*ell+1-i."""
    image = partner(mode.species, ell)
    first_half = mode.species <= ell
    sign = 1 if (first_half and mode.charge > 0) or (not first_half and mode.charge < 0) else -1
    return sign, Mode(image, -mode.charge, mode.depth2)


def theta_monomial(monomial: FockMonomial, ell: int) -> Tuple[int, FockMonomial]:
    sign = 1
    images = []
    for factor in monomial:
        factor_sign, image = theta_mode(factor, ell)
        sign *= factor_sign
        images.append(image)
    return sign, FockMonomial._sorted(sorted(images))


def theta(vector: FockVector, ell: int) -> FockVector:
    terms: Dict[FockMonomial, Fraction] = {}
    for monomial, coeff in vector.terms.items():
        sign, image = theta_monomial(monomial, ell)
        _accumulate(terms, image, sign * coeff)
    return FockVector._wrap(terms)


def parity_split(
    basis: Sequence[FockMonomial], grouping: Iterable[int]
) -> Tuple[List[FockMonomial], List[FockMonomial]]:
    """Split monomials by the parity of their factor count inside a species
    group."""
    group = set(grouping)
    even: List[FockMonomial] = []
    odd: List[FockMonomial] = []
    for monomial in basis:
        (odd if monomial.species_count(group) % 2 else even).append(monomial)
    return even, odd


@dataclass(frozen=True)
class BExpansion:
    """Image of a rescaled b-monomial. The genuine b-monomial equals
    ``vector * sqrt(2) ** sqrt2_exponent``."""

    vector: FockVector
    sqrt2_exponent: int


def b_mode_expansion(mode: Mode, ell: int) -> List[Tuple[int, Mode]]:
    """sqrt(2) * b_species^charge as a signed pair of a-modes at the same depth.

    Species 1..ell form the theta-fixed group, ell+1..2*ell the theta-odd one.
    """
    if ell < 1:
        raise ValueError("ell must be at least 1")
    low = min(mode.species, partner(mode.species, ell))
    high = 2 * ell + 1 - low
    fixed_group = mode.species <= ell
    if mode.charge > 0:
        return [(1, Mode(low, 1, mode.depth2)), (1 if fixed_group else -1, Mode(high, -1, mode.depth2))]
    return [(1, Mode(low, -1, mode.depth2)), (-1 if fixed_group else 1, Mode(high, 1, mode.depth2))]


def b_to_a(b_modes: Sequence[Mode], ell: int) -> BExpansion:
    """Expand a monomial in the rescaled b-modes over the a-monomial basis."""
    vector = FockVector.vacuum()
    for mode in b_modes:
        if not mode.is_creation:
            raise ValueError(f"b-monomials are built from creation modes, got {mode.render()}")
        vector = FockVector.combine(
            (coeff, apply_mode(a_mode, vector)) for coeff, a_mode in b_mode_expansion(mode, ell)
        )
    return BExpansion(vector=vector, sqrt2_exponent=-len(b_modes))


def b_parity_groups(ell: int) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    return tuple(range(1, ell + 1)), tuple(range(ell + 1, 2 * ell + 1))


_MODE_PATTERN = re.compile(r"a(\d+)([+-])\((-?\d+(?:/\d+)?)\)")
_TERM_SPLIT = re.compile(r"\s+([+-])\s+")


def render_vector(vector: FockVector) -> str:
    if not vector:
        return "0"
    pieces: List[str] = []
    for index, (monomial, coeff) in enumerate(vector):
        magnitude = abs(coeff)
        body = monomial.render() if magnitude == 1 else f"{magnitude}*{monomial.render()}"
        if index == 0:
            pieces.append(body if coeff > 0 else f"-{body}")
        else:
            pieces.append(f"{'+' if coeff > 0 else '-'} {body}")
    return " ".join(pieces)


def parse_monomial(text: str) -> FockMonomial:
    text = text.strip()
    if not text.endswith("|0>"):
        raise ValueError(f"monomial must end with |0>: {text!r}")
    body = text[: -len("|0>")].strip()
    modes: List[Mode] = []
    for token in body.split():
        match = _MODE_PATTERN.fullmatch(token)
        if not match:
            raise ValueError(f"cannot parse mode {token!r}")
        species, sign, depth = match.groups()
        modes.append(Mode.make(int(species), 1 if sign == "+" else -1, depth))
    return FockMonomial(modes)


def parse_vector(text: str) -> FockVector:
    """Inverse of :func:`render_vector`."""
    text = text.strip()
    if text == "0":
        return FockVector.zero()
    sign = 1
    if text.startswith("-"):
        sign, text = -1, text[1:].lstrip()
    pieces = _TERM_SPLIT.split(text)
    terms: Dict[FockMonomial, Fraction] = {}
    signs = [sign] + [1 if s == "+" else -1 for s in pieces[1::2]]
    for term_sign, term in zip(signs, pieces[0::2]):
        coeff = Fraction(1)
        if "*" in term:
            coeff_text, term = term.split("*", 1)
            coeff = Fraction(coeff_text)
        _accumulate(terms, parse_monomial(term), term_sign * coeff)
    return FockVector._wrap(terms)
