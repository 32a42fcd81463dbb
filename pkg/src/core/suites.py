"""
Verification suites: each command fills a SuiteRunner with exact checks.
"""
import logging
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .commutant import (
    AmbientSpec,
    CommutantResult,
    GradedSubspace,
    commutant_dims,
    compare_series,
    parity_closure,
    subalgebra_span,
    theta_split,
)
from .exact import (
    QSeries,
    fock_series,
    from_doubled,
    heisenberg_plus_series,
    heisenberg_series,
    to_half_integer,
)
from .opcalc import (
    borcherds_commutator_defect,
    bracket,
    central_charge,
    free_virasoro,
    heisenberg_virasoro,
    translation_defect,
    virasoro_axioms,
    virasoro_mode,
)
from .realization import (
    GeneratorTable,
    TableTag,
    build_table,
    cartan_elements,
    classification_polys,
    classify_box,
    delta3_vector,
    estar,
    highest_weight,
    render_affine_label,
    singular_check,
    virasoro_decompositions,
)
from .rootdata import (
    RootSystem,
    branch_a_to_c,
    lowest_conformal_weight,
    render_dynkin,
    root_system,
    tensor_decompose,
)
from .suite_runner import SuiteRunner
from .weylfock import (
    FockMonomial,
    FockVector,
    Mode,
    apply_mode,
    graded_basis,
    render_vector,
    theta,
    weyl_commutator,
)

logger = logging.getLogger(__name__)

COMMANDS = ("virasoro", "singular", "delta3", "classify", "tensor", "branch", "commutant", "span", "chars", "all")
COSETS = ("sec5-full", "sec5-even", "sec6-full", "sec6-even", "sec9")


@dataclass
class SuiteParams:
    """Resolved suite parameters; ``max_weight`` is kept as text so reports
    show ``5/2`` rather than a float."""

    ell: int
    max_weight: str
    bound: int
    type: str = "C"
    rank: Optional[int] = None
    lhs: Optional[str] = None
    rhs: Optional[str] = None
    coset: Optional[str] = None
    max_columns: Optional[int] = None

    def __post_init__(self):
        if self.ell < 1:
            raise ValueError("ell must be at least 1")
        if to_half_integer(self.max_weight) < 0:
            raise ValueError("max weight must be non-negative")
        if self.type not in ("A", "C"):
            raise ValueError(f"unsupported root system type {self.type!r}")
        if self.coset is not None and self.coset not in COSETS:
            raise ValueError(f"unknown coset {self.coset!r}; choose from {', '.join(COSETS)}")

    @property
    def max_weight2(self) -> int:
        return to_half_integer(self.max_weight)

    def as_dict(self) -> Dict[str, object]:
        return {k: v for k, v in asdict(self).items() if v is not None and k != "max_columns"}


def parse_labels(text: str) -> Tuple[int, ...]:
    """``"0,1"`` -> (0, 1)."""
    try:
        labels = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ValueError(f"Dynkin labels must be comma separated integers, got {text!r}")
    if any(label < 0 for label in labels):
        raise ValueError(f"Dynkin labels must be non-negative, got {text!r}")
    return labels


def _decomposition_labels(rs: RootSystem, decomposition) -> Dict[str, int]:
    return {render_dynkin(rs.integral_labels(nu)): m for nu, m in decomposition}


def _power(species: int, charge: int, n: int) -> FockVector:
    return FockVector.from_monomial(FockMonomial([Mode(species, charge, -1)] * n))


def _l0_eigenvalue(omega, vector: FockVector) -> Optional[Fraction]:
    image = virasoro_mode(omega, 0, vector)
    monomial, coeff = next(iter(vector))
    value = image.coefficient(monomial) / coeff
    return value if image == vector * value else None


# ---------------------------------------------------------------- virasoro


def run_virasoro(runner: SuiteRunner, params: SuiteParams) -> None:
    ell = params.ell
    for check in virasoro_decompositions(ell):
        details = {"difference": render_vector(check.difference)}
        if check.sub_identities:
            details["expansions"] = {
                sub.anchor: "holds" if sub.holds else render_vector(sub.difference) for sub in check.sub_identities
            }
        runner.check(check.name, check.anchor, lambda check=check, details=details: (check.holds, details))
    if ell < 2:
        runner.skip("omega = omega_1 + omega_2 (C table)", "Vir-decomp-C", "needs ell >= 2")
        runner.skip("omega_1 = omega_1^A", "sec8-omega", "needs ell >= 2")

    cartans = cartan_elements(ell)

    def product_charges():
        c1 = central_charge(build_table(TableTag.SL2_PRODUCT, ell).sugawara())
        c2 = central_charge(
            heisenberg_virasoro(cartans.heisenberg, [[-2 * int(a == b) for b in range(ell)] for a in range(ell)])
        )
        return c1 + c2 == -2 * ell, {"c(omega_1)": c1, "c(omega_2)": c2, "expected_sum": -2 * ell}

    runner.check("central charges of the A1-product decomposition", "sec5-central-charge", product_charges)

    if ell >= 2:
        def symplectic_charges():
            c1 = central_charge(build_table(TableTag.SYMPLECTIC, ell).sugawara())
            c2 = central_charge(heisenberg_virasoro([cartans.total], [[-2 * ell]]))
            return c1 == -(2 * ell + 1) and c1 + c2 == -2 * ell, {"c(omega_1)": c1, "c(omega_2)": c2}

        runner.check("central charges of the C-table decomposition", "sec6-central-charge", symplectic_charges)

    def half_level():
        table = build_table(TableTag.SYMPLECTIC_HALF, ell)
        omega = table.sugawara()
        difference = omega.vector - free_virasoro(ell).vector
        c = central_charge(omega)
        return not difference and c == -ell, {"difference": render_vector(difference), "central_charge": c}

    runner.check("level -1/2 Sugawara vector is the free Virasoro vector of M_l", "thm-level-half", half_level)

    def axioms():
        report = virasoro_axioms(free_virasoro(2), 2, pairs=2)
        return report.passed, {
            "central_charge": report.central_charge,
            "identities_checked": report.identities_checked,
            "failure": report.failure,
        }

    runner.check("Virasoro relations for free_virasoro(2) through weight 2", "virasoro-axioms", axioms)

    def weyl_relations():
        pairs = min(ell, 2)
        modes = [Mode(s, c, d) for s in range(1, pairs + 1) for c in (1, -1) for d in (-5, -3, -1, 1, 3, 5)]
        states = [
            FockVector.from_monomial(m) for w2 in range(0, 3) for m in graded_basis(pairs, from_doubled(w2))
        ]
        checked = 0
        for x in modes:
            for y in modes:
                scalar = weyl_commutator(x, y)
                for state in states:
                    lhs = apply_mode(x, apply_mode(y, state)) - apply_mode(y, apply_mode(x, state))
                    checked += 1
                    if lhs != state * scalar:
                        return False, {"failure": f"[{x.render()}, {y.render()}] on {render_vector(state)}"}
        return True, {"identities_checked": checked}

    runner.check("Weyl relations as operator identities", "sec4-weyl", weyl_relations)

    def grading():
        omega = free_virasoro(2 * ell)
        table = build_table(TableTag.SL2_PRODUCT, ell)
        checked = 0
        for element in table:
            for m in range(-1, 3):
                for monomial in graded_basis(2 * ell, Fraction(1, 2)):
                    defect = translation_defect(omega, element, m, FockVector.from_monomial(monomial))
                    checked += 1
                    if defect:
                        return False, {"failure": f"translation fails for {element.label}_{m}"}
        return True, {"identities_checked": checked}

    runner.check("translation covariance of the A1-product currents", "sec4-fields", grading)


# ---------------------------------------------------------------- singular


def _singular_case(
    runner: SuiteRunner, name: str, anchor: str, vector: FockVector, table: GeneratorTable, expected: str
) -> None:
    def body():
        report = singular_check(vector, table)
        details = {"label": report.affine_label, "expected": expected, "reason": report.reason}
        if not report.is_singular:
            return False, details
        rs = table.root_system
        if rs is not None:
            weight = highest_weight(report, table)
            l0 = _l0_eigenvalue(table.sugawara(), vector)
            details["L(0)"] = l0
            details["lowest_conformal_weight"] = lowest_conformal_weight(rs, weight, table.level)
            if l0 != details["lowest_conformal_weight"]:
                return False, details
        return report.affine_label == expected, details

    runner.check(name, anchor, body)


def run_singular(runner: SuiteRunner, params: SuiteParams) -> None:
    ell = max(params.ell, 2)
    symplectic = build_table(TableTag.SYMPLECTIC, ell)
    special = build_table(TableTag.SPECIAL_LINEAR, ell)
    level = Fraction(-1)
    for n in (1, 2, 3):
        expected = render_affine_label(level, [n] + [0] * (ell - 1))
        _singular_case(
            runner, f"a1+(-1/2)^{n}|0> is singular for C{ell}", "sec7-singular",
            _power(1, 1, n), symplectic, expected,
        )
    _singular_case(
        runner, f"e* is singular for C{ell}", "sec7-estar",
        estar(ell).vector, symplectic, render_affine_label(level, [0, 1] + [0] * (ell - 2)),
    )

    def negative():
        report = singular_check(_power(1, -1, 1), symplectic)
        return not report.is_singular, {"reason": report.reason}

    runner.check("a1-(-1/2)|0> is not singular", "sec7-singular-control", negative)

    a_rank = 2 * ell - 1
    for n in (1, 2, 3):
        _singular_case(
            runner, f"a1+(-1/2)^{n}|0> is singular for A{a_rank}", "sec8-singular-A",
            _power(1, 1, n), special, render_affine_label(level, [n] + [0] * (a_rank - 1)),
        )
        _singular_case(
            runner, f"a{2 * ell}-(-1/2)^{n}|0> is singular for A{a_rank}", "sec8-singular-A",
            _power(2 * ell, -1, n), special, render_affine_label(level, [0] * (a_rank - 1) + [n]),
        )
        _singular_case(
            runner, f"a{2 * ell}-(-1/2)^{n}|0> is singular for C{ell}", "sec8-restriction",
            _power(2 * ell, -1, n), symplectic, render_affine_label(level, [n] + [0] * (ell - 1)),
        )

    def theta_invariance():
        fixed = [e.label for e in symplectic if theta(e.vector, ell) != e.vector]
        negated = theta(estar(ell).vector, ell) == -estar(ell).vector
        return not fixed and negated, {"not_fixed": fixed, "estar_negated": negated}

    runner.check("theta fixes the C table and negates e*", "sec3-theta", theta_invariance)


# ---------------------------------------------------------------- delta3 / classify


def _large_ells(ell: int) -> List[int]:
    return [ell] if ell >= 3 else [3, 4]


def run_delta3(runner: SuiteRunner, params: SuiteParams) -> None:
    for ell in _large_ells(params.ell):
        def vanishes(ell=ell):
            vector = delta3_vector(ell)
            return not vector, {"vector": render_vector(vector)}

        runner.check(f"Delta_3(-1)|0> = 0 in M_{2 * ell}", "sec7-delta3", vanishes)

        def controls(ell=ell):
            survivors = [index for index in range(6) if delta3_vector(ell, omit=index)]
            return len(survivors) == 6, {"nonzero_with_term_removed": survivors}

        runner.check(f"each truncated expansion is nonzero (l={ell})", "sec7-delta3-control", controls)


def _expected_solutions(ell: int, bound: int) -> List[Tuple[int, ...]]:
    solutions = {tuple([n] + [0] * (ell - 1)) for n in range(bound + 1)}
    if bound >= 1:
        solutions.add(tuple([1, 1] + [0] * (ell - 2)))
    return sorted(solutions)


def run_classify(runner: SuiteRunner, params: SuiteParams) -> None:
    bound = params.bound
    for ell in _large_ells(params.ell):
        def box(ell=ell):
            found = classify_box(ell, bound)
            expected = _expected_solutions(ell, bound)
            return found == expected, {"count": len(found), "solutions": [list(h) for h in found]}

        runner.check(f"classification box l={ell}, bound={bound}", "classif-C-0", box)

        def tail(ell=ell):
            smaller = classify_box(ell, bound)
            larger = classify_box(ell, bound + 1)
            extra = sorted(set(larger) - set(smaller))
            return set(smaller) <= set(larger) and extra == [tuple([bound + 1] + [0] * (ell - 1))], {
                "added": [list(h) for h in extra]
            }

        runner.check(f"raising the bound only appends (bound+1, 0, ...) (l={ell})", "classif-C-0-tail", tail)

    def control():
        values = classification_polys([0, 1, 0])
        return values["r3"] == -1, {"values": values}

    runner.check("h = (0, 1, 0) violates r_3", "classif-C-0-control", control)


# ---------------------------------------------------------------- tensor / branch


# (l, left labels, right labels, expected decomposition)
KNOWN_TENSOR_PRODUCTS: Tuple[Tuple[int, Tuple[int, ...], Tuple[int, ...], Dict[str, int]], ...] = (
    (2, (0, 1), (0, 1), {"2w2": 1, "2w1": 1, "0": 1}),
    (3, (0, 1, 0), (0, 1, 0), {"2w2": 1, "w1+w3": 1, "2w1": 1, "w2": 1, "0": 1}),
    (4, (0, 1, 0, 0), (0, 1, 0, 0), {"2w2": 1, "w1+w3": 1, "w4": 1, "2w1": 1, "w2": 1, "0": 1}),
    (3, (2, 0, 0), (0, 1, 0), {"2w1+w2": 1, "w1+w3": 1, "2w1": 1, "w2": 1}),
    (3, (3, 0, 0), (0, 1, 0), {"3w1+w2": 1, "2w1+w3": 1, "3w1": 1, "w1+w2": 1}),
    (3, (1, 0, 0), (0, 1, 0), {"w1+w2": 1, "w3": 1, "w1": 1}),
)


def run_tensor(runner: SuiteRunner, params: SuiteParams) -> None:
    if params.lhs and params.rhs:
        left_labels, right_labels = parse_labels(params.lhs), parse_labels(params.rhs)
        rank = params.rank or len(left_labels)
        rs = root_system(params.type, rank)

        def requested():
            decomposition = tensor_decompose(rs, rs.from_dynkin(left_labels), rs.from_dynkin(right_labels))
            return True, {"decomposition": _decomposition_labels(rs, decomposition)}

        runner.check(
            f"{rs.name}: {render_dynkin(left_labels)} x {render_dynkin(right_labels)}", "tensor", requested
        )
        return
    for ell, left, right, expected in KNOWN_TENSOR_PRODUCTS:
        rs = root_system("C", ell)

        def body(rs=rs, left=left, right=right, expected=expected):
            found = _decomposition_labels(rs, tensor_decompose(rs, rs.from_dynkin(left), rs.from_dynkin(right)))
            return found == expected, {"decomposition": found}

        runner.check(f"C{ell}: {render_dynkin(left)} x {render_dynkin(right)}", "tens-pr-decomp", body)


def _branch_cases(ell: int) -> List[Tuple[str, Tuple[int, ...], Dict[str, int]]]:
    rank = 2 * ell - 1
    adjoint = tuple([1] + [0] * (rank - 2) + [1])
    cases = [("decomp-fin1", adjoint, {"2w1": 1, "w2": 1})]
    for n in range(1, 5):
        first = tuple([n] + [0] * (rank - 1))
        last = tuple([0] * (rank - 1) + [n])
        target = {render_dynkin([n] + [0] * (ell - 1)): 1}
        cases.append(("decomp-fin2", first, target))
        cases.append(("decomp-fin3", last, target))
    return cases


def run_branch(runner: SuiteRunner, params: SuiteParams) -> None:
    if params.lhs:
        ell = max(params.ell, 1)
        labels = parse_labels(params.lhs)
        a_type = root_system("A", 2 * ell - 1)

        def requested():
            decomposition = branch_a_to_c(ell, a_type.from_dynkin(labels))
            return True, {"decomposition": _decomposition_labels(root_system("C", ell), decomposition)}

        runner.check(f"A{2 * ell - 1}({render_dynkin(labels)}) restricted to C{ell}", "branch", requested)
        return
    for ell in (2, 3):
        a_type = root_system("A", 2 * ell - 1)
        c_type = root_system("C", ell)
        for anchor, labels, expected in _branch_cases(ell):
            def body(ell=ell, a_type=a_type, c_type=c_type, labels=labels, expected=expected):
                found = _decomposition_labels(c_type, branch_a_to_c(ell, a_type.from_dynkin(labels)))
                return found == expected, {"decomposition": found}

            runner.check(f"A{2 * ell - 1}({render_dynkin(labels)}) restricted to C{ell}", anchor, body)
    _conformal_weight_checks(runner)


def _conformal_weight_checks(runner: SuiteRunner) -> None:
    cases = [
        (2, (0, 2), Fraction(5, 2)),
        (2, (2, 0), Fraction(3, 2)),
    ]
    for ell in (3, 4):
        cases.append((ell, tuple([2] + [0] * (ell - 1)), Fraction(ell + 1, ell)))
    for ell, labels, expected in cases:
        rs = root_system("C", ell)

        def body(rs=rs, labels=labels, expected=expected):
            value = lowest_conformal_weight(rs, rs.from_dynkin(labels), -1)
            return value == expected, {"value": value, "expected": expected}

        runner.check(f"lowest conformal weight of -Λ0+{render_dynkin(labels)} for C{ell}", "sec8-conformal-weight", body)


# ---------------------------------------------------------------- commutant


def _series_details(result: CommutantResult, series: QSeries) -> Dict[str, object]:
    comparison = compare_series(result.dims, series)
    return {
        "dims": result.dims_by_weight(),
        "series": {str(from_doubled(w)): series.coefficient(from_doubled(w)) for w in sorted(result.dims)},
        "comparison": comparison.describe(),
        "verified": result.verified,
    }


def _membership(result: CommutantResult, vectors: Sequence[Tuple[str, FockVector]]) -> List[str]:
    space = result.as_subspace()
    return [label for label, vector in vectors if vector.weight2 <= result.max_weight2 and not space.contains(vector)]


def symplectic_span(ell: int, max_weight2: int) -> GradedSubspace:
    return subalgebra_span(build_table(TableTag.SYMPLECTIC, ell), [FockVector.vacuum()], from_doubled(max_weight2))


def run_coset(runner: SuiteRunner, params: SuiteParams, coset: str) -> None:
    ell = params.ell
    n2 = params.max_weight2
    top = from_doubled(n2)
    cartans = cartan_elements(ell)
    sl2 = build_table(TableTag.SL2_PRODUCT, ell)

    def solve(table: GeneratorTable, ambient: AmbientSpec) -> CommutantResult:
        return commutant_dims(table, ambient, top, max_columns=params.max_columns)

    if coset == "sec5-full":
        def body():
            result = solve(sl2, AmbientSpec.full(2 * ell))
            details = _series_details(result, heisenberg_series(ell, top))
            missing = _membership(result, [(h.label, h.vector) for h in cartans.heisenberg])
            details["missing_generators"] = missing
            return compare_series(result.dims, heisenberg_series(ell, top)).matches and result.verified and not missing, details

        runner.check(f"Com(A1^{ell}, M_{2 * ell}) is a rank-{ell} Heisenberg algebra", "com-bos-higher", body)
    elif coset == "sec5-even":
        def body():
            result = solve(sl2, AmbientSpec.even_even(ell))
            series = heisenberg_plus_series(ell, top)
            quadratic_heisenberg = [
                (f"H({i + 1})H({i + 1})", heisenberg_virasoro([h], [[1]]).vector) for i, h in enumerate(cartans.heisenberg)
            ]
            details = _series_details(result, series)
            missing = _membership(result, quadratic_heisenberg)
            details["missing_generators"] = missing
            return compare_series(result.dims, series).matches and result.verified and not missing, details

        runner.check(f"Com(A1^{ell}, even-even part of M_{2 * ell}) matches M(1)^+ of rank {ell}", "coset-bos-r-higher", body)
    elif coset in ("sec6-full", "sec6-even"):
        if ell < 2:
            anchor = "com-bos-C" if coset == "sec6-full" else "coset-bos-r-C"
            runner.skip(f"C-table coset {coset}", anchor, "needs ell >= 2")
            return
        symplectic = build_table(TableTag.SYMPLECTIC, ell)
        if coset == "sec6-full":
            def body():
                result = solve(symplectic, AmbientSpec.full(2 * ell))
                series = heisenberg_series(1, top)
                details = _series_details(result, series)
                missing = _membership(result, [("H", cartans.total.vector)])
                details["missing_generators"] = missing
                return compare_series(result.dims, series).matches and result.verified and not missing, details

            runner.check(f"Com(C{ell} level -1, M_{2 * ell}) is the Heisenberg algebra of H", "com-bos-C", body)

            def antitone():
                base = solve(symplectic, AmbientSpec.full(2 * ell))
                enlarged = solve(symplectic.with_elements(list(cartans.heisenberg)), AmbientSpec.full(2 * ell))
                shrinks = all(enlarged.dims[w] <= base.dims[w] for w in base.dims)
                return shrinks, {"base": base.dims_by_weight(), "with_H(i)": enlarged.dims_by_weight()}

            runner.check("adding H(i) to the generators shrinks the commutant", "com-antitone", antitone)
        else:
            def body():
                result = solve(symplectic, AmbientSpec.even_even(ell))
                series = heisenberg_plus_series(1, top)
                details = _series_details(result, series)
                missing = _membership(result, [("HH", heisenberg_virasoro([cartans.total], [[1]]).vector)])
                details["missing_generators"] = missing
                return compare_series(result.dims, series).matches and result.verified and not missing, details

            runner.check(f"Com(C{ell}, even-even part of M_{2 * ell}) matches M(1)^+ of rank 1", "coset-bos-r-C", body)
    elif coset == "sec9":
        if ell < 2:
            runner.skip("A1 product inside the C-table span", "sec9-coset", "needs ell >= 2")
            return

        def body():
            span = symplectic_span(ell, n2)
            result = solve(sl2, AmbientSpec.restricted(span, 2 * ell))
            series = heisenberg_plus_series(ell - 1, top)
            details = _series_details(result, series)
            bar_squares = [
                (f"{h.label}^2", heisenberg_virasoro([h], [[1]]).vector) for h in cartans.differences
            ]
            missing = _membership(result, bar_squares)
            details["missing_generators"] = missing
            return compare_series(result.dims, series).matches and result.verified and not missing, details

        runner.check(f"Com(A1^{ell}, C-table span) matches M(1)^+ of rank {ell - 1}", "sec9-coset", body)


def default_cosets(ell: int) -> List[str]:
    return list(COSETS) if ell >= 2 else ["sec5-full", "sec5-even"]


def run_commutant(runner: SuiteRunner, params: SuiteParams) -> None:
    for coset in [params.coset] if params.coset else default_cosets(params.ell):
        run_coset(runner, params, coset)


# ---------------------------------------------------------------- span


def _parity_space(pairs: int, max_weight2: int, parity: int) -> GradedSubspace:
    return GradedSubspace.from_vectors(
        (
            FockVector.from_monomial(m)
            for w2 in range(max_weight2 + 1)
            for m in graded_basis(pairs, from_doubled(w2))
            if len(m) % 2 == parity
        ),
        max_weight2,
    )


def span_weight2(params: SuiteParams) -> int:
    return min(params.max_weight2, 4)


def run_span(runner: SuiteRunner, params: SuiteParams) -> None:
    ell = max(params.ell, 2)
    n2 = span_weight2(params)
    top = from_doubled(n2)
    symplectic = build_table(TableTag.SYMPLECTIC, ell)
    special = build_table(TableTag.SPECIAL_LINEAR, ell)
    spans: Dict[str, GradedSubspace] = {}

    def get(name: str) -> GradedSubspace:
        if name not in spans:
            if name == "C":
                spans[name] = subalgebra_span(symplectic, [FockVector.vacuum()], top)
            elif name == "A":
                spans[name] = subalgebra_span(special, [FockVector.vacuum()], top)
            else:
                spans[name] = subalgebra_span(symplectic, [estar(ell).vector], top)
        return spans[name]

    def containment():
        c_span, a_span = get("C"), get("A")
        strict = c_span.is_subspace_of(a_span) and any(
            a_span.dim(w) > c_span.dim(w) for w in range(n2 + 1)
        )
        return strict, {"C_span": c_span.dims(), "A_span": a_span.dims()}

    runner.check("the A-table span strictly contains the C-table span", "thm-ext", containment)

    def split():
        parts = theta_split(get("A"), ell)
        even_ok = parts.even.same_as(get("C"))
        odd_ok = parts.odd.same_as(get("estar"))
        return even_ok and odd_ok, {
            "even": parts.even_dims, "odd": parts.odd_dims, "estar_span": get("estar").dims(),
        }

    runner.check("theta splits the A-table span into the C span and the e* module", "thm-ext-split", split)

    def closure():
        parts = theta_split(get("A"), ell)
        failure = parity_closure(parts.odd, parts.even, n2)
        return failure is None, {"failure": failure}

    runner.check("odd currents map odd vectors into the even part", "lem-ext", closure)

    def bracket_closure(table: GeneratorTable):
        space = GradedSubspace.from_vectors([e.vector for e in table] + [FockVector.vacuum()], 2)
        failures = [f"[{u.label}, {v.label}]" for u in table for v in table if not space.contains(bracket(u, v))]
        return not failures, {"failures": failures[:5]}

    closure_anchors = ((symplectic, "gen-1-C"), (special, "sec8-eA"), (build_table(TableTag.SL2_PRODUCT, ell), "gen-1-higher"))
    for table, table_anchor in closure_anchors:
        runner.check(
            f"{table.tag.value} table closes under the bracket", table_anchor,
            lambda table=table: bracket_closure(table),
        )

    def borcherds():
        states = [FockVector.vacuum(), _power(1, 1, 1), _power(2 * ell, -1, 1)]
        checked = 0
        for table in (symplectic, special, build_table(TableTag.SL2_PRODUCT, ell)):
            elements = list(table)
            for u in elements:
                for v in elements:
                    for m in (0, 1):
                        for n in (-1, 0, 1):
                            for state in states:
                                checked += 1
                                if borcherds_commutator_defect(u, v, m, n, state):
                                    return False, {"failure": f"{u.label}_{m}, {v.label}_{n}"}
        return True, {"identities_checked": checked}

    runner.check("Borcherds commutator formula on every generator pair", "borcherds-commutator", borcherds)

    half_pairs = [p for p in (1, 2) if p <= params.ell] or [1]
    for pairs in half_pairs:
        def half_span(pairs=pairs):
            table = build_table(TableTag.SYMPLECTIC_HALF, pairs)
            limit = min(n2, 4)
            even = subalgebra_span(table, [FockVector.vacuum()], from_doubled(limit))
            odd = subalgebra_span(table, [_power(1, 1, 1)], from_doubled(limit))
            even_ok = even.same_as(_parity_space(pairs, limit, 0))
            odd_ok = odd.same_as(_parity_space(pairs, limit, 1))
            return even_ok and odd_ok, {"even": even.dims(), "odd": odd.dims()}

        runner.check(f"level -1/2 spans are the parity parts of M_{pairs}", "thm-level-half-spans", half_span)


# ---------------------------------------------------------------- chars


def run_chars(runner: SuiteRunner, params: SuiteParams) -> None:
    ell = params.ell
    n2 = params.max_weight2
    top = from_doubled(n2)

    def fock():
        dims = {w: len(graded_basis(2 * ell, from_doubled(w))) for w in range(n2 + 1)}
        comparison = compare_series(dims, fock_series(2 * ell, top))
        return comparison.matches, {"comparison": comparison.describe(), "dims": dims}

    runner.check(f"graded dimensions of M_{2 * ell}", "fock-character", fock)

    def reference():
        heis = heisenberg_series(1, 6).integer_coefficients()
        plus = heisenberg_plus_series(1, 6).integer_coefficients()
        return heis == [1, 1, 2, 3, 5, 7, 11] and plus == [1, 0, 1, 1, 3, 3, 6], {
            "heisenberg": heis, "heisenberg_plus": plus,
        }

    runner.check("rank-1 Heisenberg and M(1)^+ characters", "m1-plus-character", reference)

    def even_even():
        limit = min(n2, 6)
        even_half = _parity_counts(ell, limit, 0)
        ambient = AmbientSpec.even_even(ell)
        mismatches = []
        for w2 in range(limit + 1):
            # even b-parity in both groups: (even, even) pieces of M_l x M_l
            expected = sum(even_half[a] * even_half[w2 - a] for a in range(w2 + 1))
            found = len(ambient.basis(w2))
            if found != expected:
                mismatches.append({"weight": from_doubled(w2), "expected": expected, "found": found})
        return not mismatches, {"mismatches": mismatches}

    runner.check("even-even ambient has the character of M_l^0 x M_l^0", "weyl-parity-decomp", even_even)

    def split():
        full = GradedSubspace.from_vectors(
            (FockVector.from_monomial(m) for w2 in range(3) for m in graded_basis(2 * ell, from_doubled(w2))), 2
        )
        parts = theta_split(full, ell)
        sums_ok = all(parts.even.dim(w) + parts.odd.dim(w) == full.dim(w) for w in range(3))
        return sums_ok, {"even": parts.even_dims, "odd": parts.odd_dims}

    runner.check("theta eigenspaces of M_2l through weight 1", "theta-split", split)


def _parity_counts(pairs: int, max_weight2: int, parity: int) -> List[int]:
    return [
        sum(1 for m in graded_basis(pairs, from_doubled(w2)) if len(m) % 2 == parity)
        for w2 in range(max_weight2 + 1)
    ]


# ---------------------------------------------------------------- dispatch


SUITES: Dict[str, Callable[[SuiteRunner, SuiteParams], None]] = {
    "virasoro": run_virasoro,
    "singular": run_singular,
    "delta3": run_delta3,
    "classify": run_classify,
    "tensor": run_tensor,
    "branch": run_branch,
    "commutant": run_commutant,
    "span": run_span,
    "chars": run_chars,
}


def run_suite(command: str, params: SuiteParams, record_timings: bool = False) -> SuiteRunner:
    """Run one suite (or every suite for ``all``) and return the filled runner."""
    if command not in COMMANDS:
        raise ValueError(f"unknown command {command!r}")
    runner = SuiteRunner(command, params.as_dict(), record_timings)
    logger.info(f"Running suite {command} with {params.as_dict()}")
    names = [c for c in COMMANDS if c != "all"] if command == "all" else [command]
    for name in names:
        SUITES[name](runner, params)
    counts = runner.get_counts()
    logger.info(f"Suite {command} finished: {counts}")
    return runner
