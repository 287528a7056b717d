"""
Local analysis of foliation singularities.

A singularity of ``A dx + B dy`` is a zero of the dual vector field
``(B, -A)``. Its linear part gives the eigenvalue quotient λ, the reduced
nondegenerate test, and the Camacho-Sad indices of coordinate separatrices.
"""
import enum
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

from .errors import Degenerate, FieldMismatch, NotSeparatrix, NotSingular, PreconditionFailed
from .exactnum import Number, QuadraticNumber, qn_sqrt, root_of_unity_order, solve_monic_quadratic
from .symalg import OneForm, Poly2, curve_invariant, poly_gcd

logger = logging.getLogger(__name__)

BRANCH_Y0 = "y=0"
BRANCH_X0 = "x=0"

Point = Tuple[QuadraticNumber, QuadraticNumber]
Matrix2 = Tuple[Tuple[QuadraticNumber, QuadraticNumber], Tuple[QuadraticNumber, QuadraticNumber]]


class Classification(enum.Enum):
    REDUCED_NONDEGENERATE = "ReducedNondegenerate"
    SADDLE_NODE = "SaddleNode"
    NON_REDUCED = "NonReduced"
    DEGENERATE_LINEAR_PART = "DegenerateLinearPart"


class LambdaKind(enum.Enum):
    PRIMITIVE_ROOT = "PrimitiveRootCase"
    UNIT = "UnitCase"
    POSITIVE_IRRATIONAL = "PositiveIrrationalCase"


@dataclass(frozen=True)
class SingularityAnalysis:
    point: Point
    linearization: Matrix2
    trace: QuadraticNumber
    determinant: QuadraticNumber
    eigenvalue_quotients: Optional[Tuple[QuadraticNumber, QuadraticNumber]]
    classification: Classification

    @property
    def reduced_nondegenerate(self) -> bool:
        return self.classification is Classification.REDUCED_NONDEGENERATE


@dataclass(frozen=True)
class LambdaClassification:
    n: int
    roots: Tuple[QuadraticNumber, QuadraticNumber]
    kind: LambdaKind
    order: Optional[int] = None

    @property
    def reduced_nondegenerate(self) -> bool:
        return self.kind is not LambdaKind.UNIT

    def describe(self) -> str:
        if self.kind is LambdaKind.PRIMITIVE_ROOT:
            return f"-lambda is a primitive root of unity of order {self.order}"
        if self.kind is LambdaKind.UNIT:
            return "lambda = 1: not reduced nondegenerate"
        return "lambda is a positive irrational"


def dual_vector_field(omega: OneForm) -> Tuple[Poly2, Poly2]:
    return omega.b, -omega.a


def _coerce_point(point) -> Point:
    x, y = point
    return QuadraticNumber.coerce(x), QuadraticNumber.coerce(y)


def linearization(omega: OneForm, point) -> Matrix2:
    x, y = _coerce_point(point)
    p, q = dual_vector_field(omega)
    return (
        (p.partial("x").evaluate(x, y), p.partial("y").evaluate(x, y)),
        (q.partial("x").evaluate(x, y), q.partial("y").evaluate(x, y)),
    )


def quotients_from_sum(s: QuadraticNumber) -> Tuple[QuadraticNumber, QuadraticNumber]:
    """The roots of t^2 - s t + 1, i.e. the pair {λ, 1/λ} with λ + 1/λ = s."""
    s = QuadraticNumber.coerce(s)
    if s.is_rational:
        return solve_monic_quadratic(-s.a, 1)
    root = qn_sqrt(s * s - 4)
    if root is None:
        raise FieldMismatch(f"the eigenvalue quotients for lambda + 1/lambda = {s} leave Q(sqrt({s.d}))")
    return (s + root) / 2, (s - root) / 2


def analyze_singularity(omega: OneForm, point=(0, 0)) -> SingularityAnalysis:
    point = _coerce_point(point)
    p, q = dual_vector_field(omega)
    if p.evaluate(*point) or q.evaluate(*point):
        raise NotSingular(f"{omega} is regular at ({point[0]}, {point[1]})")
    jac = linearization(omega, point)
    trace = jac[0][0] + jac[1][1]
    det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0]
    quotients = None
    if not any(entry for row in jac for entry in row):
        classification = Classification.DEGENERATE_LINEAR_PART
    elif not det:
        classification = Classification.SADDLE_NODE
    else:
        quotients = quotients_from_sum(trace * trace / det - 2)
        if any(value.is_positive_rational for value in quotients):
            classification = Classification.NON_REDUCED
        else:
            classification = Classification.REDUCED_NONDEGENERATE
    logger.debug("singularity of %s at %s: trace=%s det=%s -> %s", omega, point, trace, det, classification.value)
    return SingularityAnalysis(point, jac, trace, det, quotients, classification)


def classify_lambda(n: int) -> LambdaClassification:
    """Roots of λ^2 + (2 - n)λ + 1 = 0 for a link of self-intersection n, and their case."""
    if n < 1:
        raise ValueError(f"self-intersection must be positive, got {n}")
    roots = solve_monic_quadratic(2 - n, 1)
    if n == 4:
        return LambdaClassification(n, roots, LambdaKind.UNIT)
    if n > 4:
        return LambdaClassification(n, roots, LambdaKind.POSITIVE_IRRATIONAL)
    return LambdaClassification(n, roots, LambdaKind.PRIMITIVE_ROOT, root_of_unity_order(-roots[0]))


def cs_node_index(lam: Number) -> QuadraticNumber:
    lam = QuadraticNumber.coerce(lam)
    return lam + 2 + lam.inverse()


def cs_corner_index(omega: OneForm, point, branch: str) -> QuadraticNumber:
    """Camacho-Sad index of the coordinate line ``branch`` through point: transverse over tangent eigenvalue."""
    x0, y0 = _coerce_point(point)
    if branch == BRANCH_Y0:
        curve = Poly2.var("y", omega.chart) - y0
    elif branch == BRANCH_X0:
        curve = Poly2.var("x", omega.chart) - x0
    else:
        raise ValueError(f"unknown branch {branch!r}")
    if not curve_invariant(omega, curve):
        raise NotSeparatrix(f"{branch} through ({x0}, {y0}) is not invariant for {omega}")
    jac = linearization(omega, (x0, y0))
    if branch == BRANCH_Y0:
        tangent, transverse = jac[0][0], jac[1][1]
    else:
        tangent, transverse = jac[1][1], jac[0][0]
    if not tangent:
        raise Degenerate(f"eigenvalue along {branch} vanishes at ({x0}, {y0})")
    try:
        kind = analyze_singularity(omega, (x0, y0)).classification
    except NotSingular:
        kind = None
    if kind is not Classification.REDUCED_NONDEGENERATE:
        raise PreconditionFailed(f"({x0}, {y0}) is not a reduced nondegenerate singularity of {omega}")
    return transverse / tangent


def singular_locus_on_axis(omega: OneForm, axis: str) -> Poly2:
    """gcd of A and B restricted to the axis; its roots are the singular points there (zero if the axis is singular)."""
    if axis == BRANCH_Y0:
        return poly_gcd(omega.a.restrict("y", 0), omega.b.restrict("y", 0))
    if axis == BRANCH_X0:
        return poly_gcd(omega.a.restrict("x", 0), omega.b.restrict("x", 0))
    raise ValueError(f"unknown axis {axis!r}")


def singular_only_at_origin(omega: OneForm, axis: str) -> bool:
    locus = singular_locus_on_axis(omega, axis)
    return not locus.is_zero and locus.is_monomial
