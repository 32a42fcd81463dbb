"""
Finite-dimensional representation theory of types A and C in epsilon
coordinates: Weyl dimensions, Freudenthal multiplicities, Klimyk tensor
products and the A_{2l-1} -> C_l restriction.

Invariant forms are normalized so that the highest root has squared length 2.
Type A weights are stored modulo (1, ..., 1) with the last coordinate zero.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Sequence, Tuple

from .exact import Number, to_scalar

logger = logging.getLogger(__name__)


class RootType(str, Enum):
    A = "A"
    C = "C"


@dataclass(frozen=True, order=True)
class WeightVector:
    coords: Tuple[Fraction, ...]

    @classmethod
    def of(cls, values: Iterable[Number]) -> "WeightVector":
        return cls(tuple(to_scalar(v) for v in values))

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, index: int) -> Fraction:
        return self.coords[index]

    def __add__(self, other: "WeightVector") -> "WeightVector":
        return WeightVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "WeightVector") -> "WeightVector":
        return WeightVector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "WeightVector":
        return WeightVector(tuple(-a for a in self.coords))

    def scale(self, factor: Number) -> "WeightVector":
        factor = to_scalar(factor)
        return WeightVector(tuple(factor * a for a in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


def render_dynkin(labels: Sequence[int]) -> str:
    """``(2, 0, 1) -> "2w1+w3"``; the zero weight renders as ``"0"``."""
    parts = []
    for index, label in enumerate(labels, start=1):
        if label == 1:
            parts.append(f"w{index}")
        elif label:
            parts.append(f"{label}w{index}")
    return "+".join(parts) or "0"


class RootSystem:
    """Root data of A_rank or C_rank in epsilon coordinates."""

    def __init__(self, root_type: RootType | str, rank: int):
        self.root_type = RootType(root_type)
        if rank < 1:
            raise ValueError("rank must be at least 1")
        self.rank = rank
        if self.root_type is RootType.A:
            self.dimension = rank + 1
            self.h_dual = rank + 1
            self.lie_dimension = rank * (rank + 2)
        else:
            self.dimension = rank
            self.h_dual = rank + 1
            self.lie_dimension = rank * (2 * rank + 1)
        self.simple_roots = self._simple_roots()
        self.positive_roots = self._positive_roots()
        self.fundamental_weights = [
            self.normalize(WeightVector.of([1] * k + [0] * (self.dimension - k))) for k in range(1, rank + 1)
        ]
        # (n, ..., 1) for C_n, (n, ..., 0) for A_n
        stop = 0 if self.root_type is RootType.C else -1
        self.rho = WeightVector.of(range(self.rank, stop, -1))

    def __repr__(self) -> str:
        return f"RootSystem({self.root_type.value}{self.rank})"

    @property
    def name(self) -> str:
        return f"{self.root_type.value}{self.rank}"

    def _unit(self, i: int, sign: int = 1) -> List[int]:
        vector = [0] * self.dimension
        vector[i] = sign
        return vector

    def _simple_roots(self) -> List[WeightVector]:
        roots = []
        for i in range(self.dimension - 1):
            vector = self._unit(i)
            vector[i + 1] = -1
            roots.append(WeightVector.of(vector))
        if self.root_type is RootType.C:
            roots.append(WeightVector.of(self._unit(self.rank - 1, 2)))
        return roots

    def _positive_roots(self) -> List[WeightVector]:
        roots = []
        for i in range(self.dimension):
            for j in range(i + 1, self.dimension):
                minus = self._unit(i)
                minus[j] = -1
                roots.append(WeightVector.of(minus))
                if self.root_type is RootType.C:
                    plus = self._unit(i)
                    plus[j] = 1
                    roots.append(WeightVector.of(plus))
            if self.root_type is RootType.C:
                roots.append(WeightVector.of(self._unit(i, 2)))
        return roots

    def normalize(self, weight: WeightVector) -> WeightVector:
        if len(weight) != self.dimension:
            raise ValueError(f"{self.name} weights have {self.dimension} coordinates, got {len(weight)}")
        if self.root_type is RootType.A:
            shift = weight[-1]
            return WeightVector(tuple(c - shift for c in weight))
        return weight

    def inner(self, a: WeightVector, b: WeightVector) -> Fraction:
        if self.root_type is RootType.A:
            total = sum((x * y for x, y in zip(a, b)), Fraction(0))
            return total - sum(a.coords, Fraction(0)) * sum(b.coords, Fraction(0)) / self.dimension
        return sum((x * y for x, y in zip(a, b)), Fraction(0)) / 2

    def coroot_pairing(self, weight: WeightVector, root: WeightVector) -> Fraction:
        return 2 * self.inner(weight, root) / self.inner(root, root)

    def dynkin_labels(self, weight: WeightVector) -> Tuple[Fraction, ...]:
        return tuple(self.coroot_pairing(weight, alpha) for alpha in self.simple_roots)

    def integral_labels(self, weight: WeightVector) -> Tuple[int, ...]:
        labels = self.dynkin_labels(weight)
        if any(label.denominator != 1 for label in labels):
            raise ValueError(f"{weight} is not integral for {self.name}")
        return tuple(int(label) for label in labels)

    def from_dynkin(self, labels: Sequence[Number]) -> WeightVector:
        if len(labels) != self.rank:
            raise ValueError(f"{self.name} needs {self.rank} Dynkin labels, got {len(labels)}")
        total = WeightVector.of([0] * self.dimension)
        for label, omega in zip(labels, self.fundamental_weights):
            total = total + omega.scale(label)
        return self.normalize(total)

    def is_dominant_integral(self, weight: WeightVector) -> bool:
        labels = self.dynkin_labels(weight)
        return all(label.denominator == 1 and label >= 0 for label in labels)

    def require_dominant(self, weight: WeightVector) -> WeightVector:
        weight = self.normalize(weight)
        if not self.is_dominant_integral(weight):
            raise ValueError(f"{weight} is not dominant integral for {self.name}")
        return weight

    def reflect(self, weight: WeightVector, root: WeightVector) -> WeightVector:
        return self.normalize(weight - root.scale(self.coroot_pairing(weight, root)))

    def dominant_conjugate(self, weight: WeightVector) -> Tuple[WeightVector, int]:
        """Dominant Weyl conjugate and the number of simple reflections used."""
        weight = self.normalize(weight)
        steps = 0
        while True:
            for alpha in self.simple_roots:
                if self.coroot_pairing(weight, alpha) < 0:
                    weight = self.reflect(weight, alpha)
                    steps += 1
                    break
            else:
                return weight, steps

    def weyl_orbit(self, weight: WeightVector) -> List[WeightVector]:
        start = self.normalize(weight)
        seen = {start}
        queue = deque([start])
        while queue:
            current = queue.popleft()
            for alpha in self.simple_roots:
                image = self.reflect(current, alpha)
                if image not in seen:
                    seen.add(image)
                    queue.append(image)
        return sorted(seen, reverse=True)

    def height(self, difference: WeightVector) -> Fraction:
        """Sum of simple-root coefficients of an element of the root lattice."""
        return sum((self.inner(difference, alpha) / self.inner(alpha, alpha) for alpha in self.positive_roots), Fraction(0))


@lru_cache(maxsize=64)
def root_system(root_type: str, rank: int) -> RootSystem:
    return RootSystem(root_type, rank)


def weyl_dim(rs: RootSystem, weight: WeightVector) -> int:
    weight = rs.require_dominant(weight)
    shifted = weight + rs.rho
    result = Fraction(1)
    for alpha in rs.positive_roots:
        result *= rs.inner(shifted, alpha) / rs.inner(rs.rho, alpha)
    if result.denominator != 1:
        raise ArithmeticError(f"Weyl dimension of {weight} is not integral: {result}")
    return int(result)


def _dominant_weights_below(rs: RootSystem, weight: WeightVector) -> List[WeightVector]:
    found = {weight}
    queue = deque([weight])
    while queue:
        current = queue.popleft()
        for alpha in rs.positive_roots:
            lower = rs.normalize(current - alpha)
            if lower not in found and rs.is_dominant_integral(lower):
                found.add(lower)
                queue.append(lower)
    return sorted(found, key=lambda mu: (rs.height(weight - mu), mu))


def dominant_character(rs: RootSystem, weight: WeightVector) -> Dict[WeightVector, int]:
    """Multiplicities of the dominant weights of V(weight), by Freudenthal's
    recursion processed in order of increasing depth below the top."""
    weight = rs.require_dominant(weight)
    return dict(_dominant_character(rs.root_type.value, rs.rank, weight))


@lru_cache(maxsize=256)
def _dominant_character(root_type: str, rank: int, weight: WeightVector) -> Tuple[Tuple[WeightVector, int], ...]:
    rs = root_system(root_type, rank)
    top = rs.inner(weight + rs.rho, weight + rs.rho)
    multiplicities: Dict[WeightVector, int] = {}
    for mu in _dominant_weights_below(rs, weight):
        if mu == weight:
            multiplicities[mu] = 1
            continue
        total = Fraction(0)
        for alpha in rs.positive_roots:
            k = 1
            while True:
                shifted = rs.normalize(mu + alpha.scale(k))
                dominant, _ = rs.dominant_conjugate(shifted)
                count = multiplicities.get(dominant, 0)
                if not count:
                    break
                total += count * rs.inner(shifted, alpha)
                k += 1
        denominator = top - rs.inner(mu + rs.rho, mu + rs.rho)
        value = 2 * total / denominator
        if value.denominator != 1:
            raise ArithmeticError(f"non-integral multiplicity {value} at {mu}")
        if value:
            multiplicities[mu] = int(value)
    return tuple(multiplicities.items())


def weight_multiplicities(rs: RootSystem, weight: WeightVector) -> Dict[WeightVector, int]:
    """Full character: every weight of V(weight) with its multiplicity."""
    result: Dict[WeightVector, int] = {}
    for dominant, multiplicity in dominant_character(rs, weight).items():
        for mu in rs.weyl_orbit(dominant):
            result[mu] = multiplicity
    return result


def _sorted_decomposition(rs: RootSystem, counts: Dict[WeightVector, int]) -> List[Tuple[WeightVector, int]]:
    return sorted(
        ((nu, m) for nu, m in counts.items() if m),
        key=lambda item: (-weyl_dim(rs, item[0]), tuple(-c for c in rs.integral_labels(item[0]))),
    )


def tensor_decompose(rs: RootSystem, left: WeightVector, right: WeightVector) -> List[Tuple[WeightVector, int]]:
    """Klimyk's rule: shift each weight of V(left) by right + rho, reflect into
    the dominant chamber with sign, drop weights on walls."""
    left = rs.require_dominant(left)
    right = rs.require_dominant(right)
    if weyl_dim(rs, left) > weyl_dim(rs, right):
        left, right = right, left
    counts: Dict[WeightVector, int] = {}
    shift = right + rs.rho
    for mu, multiplicity in weight_multiplicities(rs, left).items():
        dominant, steps = rs.dominant_conjugate(mu + shift)
        if any(label == 0 for label in rs.dynkin_labels(dominant)):
            continue
        nu = rs.normalize(dominant - rs.rho)
        counts[nu] = counts.get(nu, 0) + (-1) ** steps * multiplicity
    if any(m < 0 for m in counts.values()):
        raise ArithmeticError("negative multiplicity in tensor product decomposition")
    result = _sorted_decomposition(rs, counts)
    expected = weyl_dim(rs, left) * weyl_dim(rs, right)
    if sum(m * weyl_dim(rs, nu) for nu, m in result) != expected:
        raise ArithmeticError(f"dimension sum rule fails for {left} x {right}")
    return result


def fold_a_to_c(ell: int, weight: WeightVector) -> WeightVector:
    """Restrict an A_{2l-1} weight to the C_l Cartan: h_i = mu_i - mu_{2l+1-i}."""
    return WeightVector(tuple(weight[i] - weight[2 * ell - 1 - i] for i in range(ell)))


def branch_a_to_c(ell: int, weight: WeightVector) -> List[Tuple[WeightVector, int]]:
    """Decompose V_{A_{2l-1}}(weight) restricted to C_l by peeling highest
    weights off the folded character."""
    if ell < 1:
        raise ValueError("ell must be at least 1")
    a_type = root_system("A", 2 * ell - 1)
    c_type = root_system("C", ell)
    weight = a_type.require_dominant(weight)
    remaining: Dict[WeightVector, int] = {}
    for mu, multiplicity in weight_multiplicities(a_type, weight).items():
        folded = fold_a_to_c(ell, mu)
        remaining[folded] = remaining.get(folded, 0) + multiplicity
    result: Dict[WeightVector, int] = {}
    while any(remaining.values()):
        top = max(
            (nu for nu, m in remaining.items() if m),
            key=lambda nu: (c_type.inner(nu, c_type.rho), nu),
        )
        count = remaining[top]
        if count < 0 or not c_type.is_dominant_integral(top):
            raise ArithmeticError(f"branching peeled an invalid top weight {top}")
        result[top] = count
        for mu, multiplicity in weight_multiplicities(c_type, top).items():
            remaining[mu] = remaining.get(mu, 0) - count * multiplicity
        remaining = {nu: m for nu, m in remaining.items() if m}
    decomposition = _sorted_decomposition(c_type, result)
    if sum(m * weyl_dim(c_type, nu) for nu, m in decomposition) != weyl_dim(a_type, weight):
        raise ArithmeticError(f"dimension sum rule fails when restricting {weight}")
    return decomposition


def lowest_conformal_weight(rs: RootSystem, weight: WeightVector, k: Number) -> Fraction:
    """(lambda, lambda + 2 rho) / (2 (k + h_dual))."""
    k = to_scalar(k)
    if k + rs.h_dual == 0:
        raise ValueError(f"level {k} is critical for {rs.name}")
    weight = rs.normalize(weight)
    return rs.inner(weight, weight + rs.rho.scale(2)) / (2 * (k + rs.h_dual))
