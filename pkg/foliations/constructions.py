"""
The three model foliations with an invariant cycle, their automorphisms, and
the exact checks run on them.

    L  on P2:        λ y dx - x dy with λ^2 - λ + 1 = 0, cycle of three lines,
                     γ(s:t:u) = (u:s:t) of order 3.
    M  on P1 x P1:   λ y dx - x dy with λ^2 + 1 = 0, cycle of four lines,
                     β(x, y) = (y, 1/x) of order 4.
    N  on P2 blown up at the three corners of L's triangle: a hexagon of
                     (-1)-curves, α the lift of γ∘f of order 6, f the
                     standard Cremona transformation.

Quotients by the automorphisms are not built; every check is made upstairs.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

import sympy

from .blowup import Crossing, Curve, CurveConfig, blow_down_config, blow_up_form
from .errors import FieldMismatch, FoliationError, WrongShape
from .exactnum import ROOT_OF_UNITY_BOUND, QuadraticNumber, nth_root_in_field, solve_monic_quadratic
from .localfol import BRANCH_X0, BRANCH_Y0, analyze_singularity, cs_corner_index, singular_only_at_origin
from .symalg import OneForm, Poly2, RationalFn2, RationalMap2, curve_invariant, pullback_form, wedge
from .surfaces import BlowupTower, ProductOfLines, ProjectivePlane, Surface

logger = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"

LAMBDA = sympy.Symbol("lambda")
_X, _Y = sympy.symbols("x y")

# anchors are fixed strings so stored reports stay comparable across runs
CLAIM_ANCHORS = {
    "cycle-shape": "the invariant cycle has the stated curves and self-intersections",
    "chart-overlap": "the chart forms agree on every overlap",
    "cycle-invariance": "every cycle curve is invariant in every chart where it is visible",
    "corner-singularities": "the corners of the cycle are reduced nondegenerate singularities",
    "singular-locus": "the corners are the only singularities on the cycle",
    "camacho-sad": "Camacho-Sad indices along each curve sum to its self-intersection",
    "invariance-condition": "invariance under the automorphism forces the quadratic relation on lambda",
    "sign-swap": "the involution (x, y) -> (y, x) exchanges the two sign choices",
    "invariance": "the foliation is invariant under the map",
    "order": "order of the map by iterated composition",
    "regular": "the map is regular at the corners and permutes them",
    "indeterminacy": "the Cremona map is undefined at the chart origin",
    "permutation": "the map permutes the cycle curves",
    "contraction": "contracting three disjoint (-1)-curves of the hexagon leaves a cycle of three (+1)-curves",
}


@dataclass(frozen=True)
class Claim:
    id: str
    anchor: str
    status: str
    evidence: Dict[str, str]

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def as_dict(self) -> dict:
        return {"id": self.id, "anchor": self.anchor, "status": self.status, "evidence": dict(self.evidence)}


def _claim(claim_id: str, ok: bool, evidence: Dict[str, object], anchor_key: Optional[str] = None) -> Claim:
    anchor = CLAIM_ANCHORS[anchor_key or claim_id]
    claim = Claim(claim_id, anchor, PASS if ok else FAIL, {k: str(v) for k, v in evidence.items()})
    logger.debug("claim %s: %s %s", claim_id, claim.status, claim.evidence)
    return claim


@dataclass(frozen=True)
class VerificationReport:
    model: str
    claims: Tuple[Claim, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.claims)

    def claim(self, claim_id: str) -> Claim:
        for c in self.claims:
            if c.id == claim_id:
                return c
        raise KeyError(claim_id)


# ---------------------------------------------------------------------------
# Models
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Corner:
    """A crossing of the cycle sitting at the origin of ``chart``, with x = 0 on ``x_curve``."""

    point: str
    chart: str
    x_curve: str
    y_curve: str


@dataclass(frozen=True)
class Automorphism:
    name: str
    surface: Surface
    base: RationalMap2  # reference chart -> reference chart
    expected_order: int
    regular: bool = True
    cyclic: bool = True

    def expression(self, source: str, target: str) -> RationalMap2:
        return self.surface.from_reference(target).compose(self.base.compose(self.surface.to_reference(source)))


@dataclass(frozen=True)
class FoliationModel:
    name: str
    kind: str  # L, M or N
    sign: int
    lam: QuadraticNumber
    surface: Surface
    forms: Dict[str, OneForm]
    cycle: CurveConfig
    order: Tuple[str, ...]  # cycle curves in cyclic order
    equations: Dict[str, Dict[str, Poly2]]
    corners: Tuple[Corner, ...]
    automorphisms: Tuple[Automorphism, ...]
    contractions: Tuple[int, ...] = field(default=())

    def form(self, chart: str) -> OneForm:
        return self.forms[chart]


def _lambda(sign: int, p: int, q: int) -> QuadraticNumber:
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    plus, minus = solve_monic_quadratic(p, q)
    return plus if sign == 1 else minus


def linear_form(lam: QuadraticNumber, chart: str) -> OneForm:
    x, y = Poly2.var("x", chart), Poly2.var("y", chart)
    return OneForm(y.scale(lam), -x, chart)


def _chart_forms(surface: Surface, omega: OneForm) -> Dict[str, OneForm]:
    forms = {}
    for chart in surface.charts:
        if chart == surface.reference:
            forms[chart] = omega.primitive()
        else:
            forms[chart] = pullback_form(surface.to_reference(chart), omega)
    return forms


def _cycle(forms: Dict[str, OneForm], order: Sequence[str], self_intersection: int,
           corners: Sequence[Corner], origins: Optional[Dict[str, str]] = None) -> CurveConfig:
    origins = origins or {}
    curves = tuple(Curve(c, self_intersection, origin=origins.get(c)) for c in order)
    crossings = tuple(
        Crossing(corner.y_curve, corner.x_curve, corner.point,
                 cs_corner_index(forms[corner.chart], (0, 0), BRANCH_Y0))
        for corner in corners
    )
    return CurveConfig(curves, crossings)


def _axes(chart: str) -> Tuple[Poly2, Poly2]:
    return Poly2.var("x", chart), Poly2.var("y", chart)


def build_cremona(surface: Optional[Surface] = None, name: str = "f") -> Automorphism:
    """[z1:z2:z3] -> [z2z3:z1z3:z1z2]; (x, y) -> (1/x, 1/y) in every chart of P2."""
    surface = surface or ProjectivePlane()
    x, y = _axes(surface.reference)
    base = RationalMap2(RationalFn2(1, x), RationalFn2(1, y), surface.reference, surface.reference)
    regular = isinstance(surface, BlowupTower)
    return Automorphism(name, surface, base, 2, regular=regular, cyclic=False)


def _gamma_map(chart: str) -> RationalMap2:
    x, y = _axes(chart)
    return RationalMap2(RationalFn2(1, y), RationalFn2(x, y), chart, chart)


def build_L(sign: int = 1) -> FoliationModel:
    lam = _lambda(sign, -1, 1)
    plane = ProjectivePlane()
    forms = _chart_forms(plane, linear_form(lam, plane.reference))
    order = ("C1", "C2", "C3")  # z1 = 0, z2 = 0, z3 = 0
    corners = (
        Corner("p3", "3", "C1", "C2"),
        Corner("p1", "1", "C2", "C3"),
        Corner("p2", "2", "C1", "C3"),
    )
    equations = {
        "C1": {"3": Poly2.var("x", "3"), "2": Poly2.var("x", "2")},
        "C2": {"3": Poly2.var("y", "3"), "1": Poly2.var("x", "1")},
        "C3": {"1": Poly2.var("y", "1"), "2": Poly2.var("y", "2")},
    }
    automorphisms = (
        Automorphism("gamma", plane, _gamma_map(plane.reference), 3),
        build_cremona(plane),
    )
    return FoliationModel(f"L{'+' if sign == 1 else '-'}", "L", sign, lam, plane, forms,
                          _cycle(forms, order, 1, corners), order, equations, corners, automorphisms)


def build_M(sign: int = 1) -> FoliationModel:
    lam = _lambda(sign, 0, 1)
    quadric = ProductOfLines()
    forms = _chart_forms(quadric, linear_form(lam, quadric.reference))
    # {0}xP1, P1x{0}, {inf}xP1, P1x{inf}
    order = ("C1", "C2", "C3", "C4")
    corners = (
        Corner("p00", "00", "C1", "C2"),
        Corner("p10", "10", "C3", "C2"),
        Corner("p11", "11", "C3", "C4"),
        Corner("p01", "01", "C1", "C4"),
    )
    equations = {
        "C1": {"00": Poly2.var("x", "00"), "01": Poly2.var("x", "01")},
        "C2": {"00": Poly2.var("y", "00"), "10": Poly2.var("y", "10")},
        "C3": {"10": Poly2.var("x", "10"), "11": Poly2.var("x", "11")},
        "C4": {"01": Poly2.var("y", "01"), "11": Poly2.var("y", "11")},
    }
    x, y = _axes(quadric.reference)
    beta = RationalMap2(y, RationalFn2(1, x), quadric.reference, quadric.reference)
    return FoliationModel(f"M{'+' if sign == 1 else '-'}", "M", sign, lam, quadric, forms,
                          _cycle(forms, order, 0, corners), order, equations, corners,
                          (Automorphism("beta", quadric, beta, 4),))


def build_N(sign: int = 1) -> FoliationModel:
    lam = _lambda(sign, -1, 1)
    plane = ProjectivePlane()
    tower = BlowupTower(plane, ("3", "1", "2"))
    base_forms = _chart_forms(plane, linear_form(lam, plane.reference))
    forms = {}
    for centre in tower.centres:
        result = blow_up_form(base_forms[centre])
        forms[result.chart1_form.chart] = result.chart1_form
        forms[result.chart2_form.chart] = result.chart2_form
    # strict transforms of the lines are C1, C3, C5; the exceptional curves C2, C4, C6
    order = ("C1", "C2", "C3", "C4", "C5", "C6")
    corners = (
        Corner("q1", "3/s", "C1", "C2"),
        Corner("q2", "3/u", "C2", "C3"),
        Corner("q3", "1/s", "C3", "C4"),
        Corner("q4", "1/u", "C4", "C5"),
        Corner("q5", "2/u", "C6", "C5"),
        Corner("q6", "2/s", "C1", "C6"),
    )
    x, y = Poly2.var("x"), Poly2.var("y")
    equations = {
        "C1": {"3/s": x, "2/s": x},
        "C2": {"3/u": x, "3/s": y},
        "C3": {"3/u": y, "1/s": x},
        "C4": {"1/u": x, "1/s": y},
        "C5": {"1/u": y, "2/u": y},
        "C6": {"2/u": x, "2/s": y},
    }
    equations = {c: {chart: p.with_chart(chart) for chart, p in eqs.items()} for c, eqs in equations.items()}
    origins = {"C2": "p3", "C4": "p1", "C6": "p2"}
    automorphisms = (build_alpha(tower), cremona_lift(tower))
    return FoliationModel("N", "N", sign, lam, tower, forms, _cycle(forms, order, -1, corners, origins),
                          order, equations, corners, automorphisms, contractions=(1, 2))


def build_alpha(tower: BlowupTower) -> Automorphism:
    """The lift of γ∘f, (x, y) -> (y, y/x) on the reference chart."""
    x, y = _axes(tower.reference)
    base = RationalMap2(y, RationalFn2(y, x), tower.reference, tower.reference)
    return Automorphism("alpha", tower, base, 6)


def cremona_lift(tower: BlowupTower) -> Automorphism:
    return build_cremona(tower, name="f~")


MODEL_BUILDERS = {"f1": build_N, "f2": build_M, "f3": build_L}


def build_model(key: str, sign: int = 1) -> FoliationModel:
    try:
        builder = MODEL_BUILDERS[key]
    except KeyError:
        raise ValueError(f"unknown model {key!r}; expected one of {sorted(MODEL_BUILDERS)}") from None
    return builder(sign)


# ---------------------------------------------------------------------------
# Map properties
# ---------------------------------------------------------------------------

def automorphism_order(phi: RationalMap2, bound: int = ROOT_OF_UNITY_BOUND) -> Optional[int]:
    current = phi
    for k in range(1, bound + 1):
        if current.is_identity():
            return k
        current = phi.compose(current)
    return None


def curve_permutation(model: FoliationModel, phi: Automorphism) -> Dict[str, List[str]]:
    """For each cycle curve, the curves containing its image: g divides h∘phi."""
    images = {}
    for source, source_eqs in model.equations.items():
        chart, g = next(iter(source_eqs.items()))
        found = []
        for target, target_eqs in model.equations.items():
            for target_chart, h in target_eqs.items():
                expr = phi.expression(chart, target_chart)
                pulled = h.substitute(expr.first, expr.second)
                if g.divides(pulled.num):
                    found.append(target)
                    break
        images[source] = found
    return images


def _rotation(order: Sequence[str], mapping: Dict[str, str]) -> Optional[Tuple[int, int]]:
    """(shift, direction) when mapping is a symmetry of the cyclic order; direction -1 for reflections."""
    k = len(order)
    position = {c: i for i, c in enumerate(order)}
    start = position[mapping[order[0]]]
    for direction in (1, -1):
        if all(position[mapping[c]] == (start + direction * i) % k for i, c in enumerate(order)):
            return start, direction
    return None


def invariance_residue(omega: OneForm, phi: RationalMap2):
    return wedge(omega, pullback_form(phi, omega))


@dataclass(frozen=True)
class InvarianceCondition:
    kind: str
    coefficient: sympy.Expr
    condition: sympy.Poly

    def matches(self, expected: sympy.Expr) -> bool:
        return self.condition == sympy.Poly(expected, LAMBDA)


EXPECTED_CONDITIONS = {"gamma": LAMBDA ** 2 - LAMBDA + 1, "beta": LAMBDA ** 2 + 1}


def invariance_condition(kind: str) -> InvarianceCondition:
    """Wedge of λ y dx - x dy with its pullback, λ left free; the factor in λ alone is the condition."""
    maps = {"gamma": (1 / _Y, _X / _Y), "beta": (_Y, 1 / _X)}
    if kind not in maps:
        raise ValueError(f"unknown automorphism {kind!r}")
    big_x, big_y = maps[kind]
    a, b = LAMBDA * _Y, -_X
    moved = {_X: big_x, _Y: big_y}
    a_s, b_s = a.subs(moved, simultaneous=True), b.subs(moved, simultaneous=True)
    pulled_a = a_s * sympy.diff(big_x, _X) + b_s * sympy.diff(big_y, _X)
    pulled_b = a_s * sympy.diff(big_x, _Y) + b_s * sympy.diff(big_y, _Y)
    coefficient = sympy.factor(a * pulled_b - pulled_a * b)
    _, factors = sympy.factor_list(sympy.numer(sympy.together(coefficient)))
    condition = sympy.Mul(*[f ** m for f, m in factors if f.free_symbols == {LAMBDA}])
    return InvarianceCondition(kind, coefficient, sympy.Poly(condition, LAMBDA))


def _evaluate_condition(condition: sympy.Poly, lam: QuadraticNumber) -> QuadraticNumber:
    total = QuadraticNumber(0)
    for coeff in condition.all_coeffs():
        total = total * lam + QuadraticNumber(Fraction(int(coeff.p), int(coeff.q)))
    return total


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------

def _check_cycle_shape(model: FoliationModel) -> Claim:
    config = model.cycle
    values = {c.id: c.self_intersection for c in config.curves}
    return _claim("cycle-shape", config.is_cycle(list(model.order)) and len(config.curves) == len(model.order),
                  {"curves": len(config.curves), "self-intersections": ",".join(f"{k}={v}" for k, v in values.items())})


def _check_overlaps(model: FoliationModel) -> Claim:
    bad = []
    for first, second in model.surface.chart_pairs():
        moved = pullback_form(model.surface.transition(first, second), model.forms[second])
        if not moved.proportional(model.forms[first]):
            bad.append(f"{first}|{second}")
    return _claim("chart-overlap", not bad, {"pairs": len(model.surface.chart_pairs()), "mismatched": ",".join(bad) or "none"})


def _check_invariance(model: FoliationModel) -> Claim:
    bad, checked = [], 0
    for curve_id, eqs in model.equations.items():
        for chart, g in eqs.items():
            checked += 1
            if not curve_invariant(model.forms[chart], g):
                bad.append(f"{curve_id}@{chart}")
    return _claim("cycle-invariance", not bad, {"checked": checked, "failed": ",".join(bad) or "none"})


def _check_corners(model: FoliationModel) -> Claim:
    evidence, ok = {}, True
    for corner in model.corners:
        analysis = analyze_singularity(model.forms[corner.chart], (0, 0))
        quotients = analysis.eigenvalue_quotients
        shown = "none" if quotients is None else f"{quotients[0]}, {quotients[1]}"
        evidence[corner.point] = f"{analysis.classification.value} ({shown})"
        ok = ok and analysis.reduced_nondegenerate
    return _claim("corner-singularities", ok, evidence)


def _check_singular_locus(model: FoliationModel) -> Claim:
    bad = [f"{corner.chart}:{axis}" for corner in model.corners for axis in (BRANCH_X0, BRANCH_Y0)
           if not singular_only_at_origin(model.forms[corner.chart], axis)]
    return _claim("singular-locus", not bad, {"axes": 2 * len(model.corners), "extra": ",".join(bad) or "none"})


def _check_camacho_sad(model: FoliationModel) -> Claim:
    sums: Dict[str, QuadraticNumber] = {c: QuadraticNumber(0) for c in model.order}
    for corner in model.corners:
        form = model.forms[corner.chart]
        sums[corner.x_curve] = sums[corner.x_curve] + cs_corner_index(form, (0, 0), BRANCH_X0)
        sums[corner.y_curve] = sums[corner.y_curve] + cs_corner_index(form, (0, 0), BRANCH_Y0)
    ok = all(total == model.cycle.curve(c).self_intersection for c, total in sums.items())
    annotated = model.cycle.camacho_sad_defects()
    ok = ok and all(total == value for total, value in annotated.values())
    return _claim("camacho-sad", ok, {c: f"{total} (self-intersection {model.cycle.curve(c).self_intersection})"
                                      for c, total in sums.items()})


def _check_condition(model: FoliationModel) -> Claim:
    kind = "beta" if model.kind == "M" else "gamma"
    found = invariance_condition(kind)
    expected = EXPECTED_CONDITIONS[kind]
    value = _evaluate_condition(found.condition, model.lam)
    return _claim("invariance-condition", found.matches(expected) and not value,
                  {"wedge": found.coefficient, "condition": found.condition.as_expr(), "at lambda": value,
                   "lambda": model.lam})


def sign_swap_conjugates(kind: str) -> bool:
    """Pulling the + model back under (x, y) -> (y, x) gives the - model up to a factor."""
    builder = {"L": build_L, "M": build_M}[kind]
    plus, minus = builder(1), builder(-1)
    chart = plus.surface.reference
    x, y = _axes(chart)
    swap = RationalMap2(y, x, chart, chart)
    return pullback_form(swap, plus.forms[chart]).proportional(minus.forms[chart])


def _check_map(model: FoliationModel, phi: Automorphism, bound: int) -> List[Claim]:
    claims = []
    bad = [chart for chart in model.surface.charts
           if not invariance_residue(model.forms[chart], phi.expression(chart, chart)).is_zero]
    claims.append(_claim(f"{phi.name}-invariance", not bad,
                         {"map": phi.base, "charts": len(model.surface.charts), "failed": ",".join(bad) or "none"},
                         "invariance"))
    order = automorphism_order(phi.base, bound)
    claims.append(_claim(f"{phi.name}-order", order == phi.expected_order,
                         {"order": order if order is not None else f"> {bound}", "expected": phi.expected_order},
                         "order"))
    if not phi.regular:
        x, y = phi.base.first, phi.base.second
        claims.append(_claim(f"{phi.name}-indeterminacy", not phi.base.defined_at(0, 0),
                             {"defined at origin": phi.base.defined_at(0, 0), "x": x, "y": y}, "indeterminacy"))
        return claims
    claims.append(_check_regular(model, phi))
    claims.append(_check_permutation(model, phi))
    return claims


def _check_regular(model: FoliationModel, phi: Automorphism) -> Claim:
    targets = {c.chart: c for c in model.corners}
    evidence, ok = {}, True
    for corner in model.corners:
        landed = None
        for chart, image in targets.items():
            expr = phi.expression(corner.chart, chart)
            if not expr.defined_at(0, 0) or any(expr(0, 0)):
                continue
            jac = expr.jacobian_at(0, 0)
            if jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0]:
                landed = image.point
                break
        evidence[corner.point] = landed or "not regular"
        ok = ok and landed is not None
    return _claim(f"{phi.name}-regular", ok, evidence, "regular")


def _check_permutation(model: FoliationModel, phi: Automorphism) -> Claim:
    images = curve_permutation(model, phi)
    single = all(len(found) == 1 for found in images.values())
    mapping = {c: found[0] for c, found in images.items() if found}
    symmetry = _rotation(model.order, mapping) if single and len(mapping) == len(model.order) else None
    ok = symmetry is not None
    k = len(model.order)
    if ok and phi.cyclic:
        shift, direction = symmetry
        ok = direction == 1 and gcd(shift, k) == 1
    shown = {c: "+".join(found) or "none" for c, found in images.items()}
    if symmetry is not None:
        shown["rotation"] = f"shift {symmetry[0]}" + ("" if symmetry[1] == 1 else " reflected")
    return _claim(f"{phi.name}-permutation", ok, shown, "permutation")


def contract_alternate(model: FoliationModel, start: int) -> Tuple[CurveConfig, List[str]]:
    """Contract curves start, start + 2, start + 4 of the hexagon, in that order."""
    config = model.cycle
    contracted = []
    for offset in (0, 2, 4):
        curve_id = model.order[(start - 1 + offset) % len(model.order)]
        config = blow_down_config(config, curve_id)
        contracted.append(curve_id)
    return config, contracted


def _check_contraction(model: FoliationModel, start: int) -> Claim:
    config, contracted = contract_alternate(model, start)
    values = [c.self_intersection for c in config.curves]
    ok = len(config.curves) == 3 and config.is_cycle(config.ids) and all(v == 1 for v in values)
    annotated = config.camacho_sad_defects()
    ok = ok and all(total == value for total, value in annotated.values())
    return _claim(f"contraction-{start}", ok, {"contracted": ",".join(contracted),
                                               "remaining": ",".join(f"{c.id}={c.self_intersection}" for c in config.curves)},
                  "contraction")


def verify_model(model: FoliationModel, order_bound: int = ROOT_OF_UNITY_BOUND) -> VerificationReport:
    claims = [
        _check_cycle_shape(model),
        _check_overlaps(model),
        _check_invariance(model),
        _check_corners(model),
        _check_singular_locus(model),
        _check_camacho_sad(model),
        _check_condition(model),
    ]
    if model.kind in ("L", "M"):
        claims.append(_claim("sign-swap", sign_swap_conjugates(model.kind), {"swap": "(x, y) -> (y, x)"}))
    for phi in model.automorphisms:
        claims.extend(_check_map(model, phi, order_bound))
    for start in model.contractions:
        claims.append(_check_contraction(model, start))
    report = VerificationReport(model.name, tuple(claims))
    logger.info("verified %s: %s of %s claims pass", model.name, sum(c.passed for c in claims), len(claims))
    return report


def model_document(model: FoliationModel) -> dict:
    return {
        "name": model.name,
        "lambda": str(model.lam),
        "surface": model.surface.describe(),
        "forms": {chart: str(form) for chart, form in model.forms.items()},
        "cycle": model.cycle.to_text(),
        "automorphisms": {phi.name: str(phi.base) for phi in model.automorphisms},
    }


# ---------------------------------------------------------------------------
# Normal forms
# ---------------------------------------------------------------------------

Matrix3 = List[List[QuadraticNumber]]

GAMMA_MATRIX = [[0, 0, 1], [1, 0, 0], [0, 1, 0]]


def _matrix(rows) -> Matrix3:
    return [[QuadraticNumber.coerce(v) for v in row] for row in rows]


def mat_mul(first: Matrix3, second: Matrix3) -> Matrix3:
    return [[sum((first[i][k] * second[k][j] for k in range(3)), QuadraticNumber(0)) for j in range(3)]
            for i in range(3)]


def proportional_matrices(first: Matrix3, second: Matrix3) -> bool:
    pairs = [(first[i][j], second[i][j]) for i in range(3) for j in range(3)]
    pivot = next(((a, b) for a, b in pairs if a or b), None)
    if pivot is None or not pivot[0] or not pivot[1]:
        return False
    ratio = pivot[0] / pivot[1]
    return all(a == ratio * b for a, b in pairs)


def _cyclic_entries(j: Matrix3) -> Tuple[QuadraticNumber, QuadraticNumber, QuadraticNumber]:
    """(x, y, z) for J e1 = x e2, J e2 = y e3, J e3 = z e1."""
    if len(j) != 3 or any(len(row) != 3 for row in j):
        raise WrongShape("J must be a 3x3 matrix")
    support = {(i, k) for i in range(3) for k in range(3) if j[i][k]}
    if support != {(1, 0), (2, 1), (0, 2)}:
        raise WrongShape("J does not permute the coordinate points cyclically (p1 -> p2 -> p3 -> p1)")
    return j[1][0], j[2][1], j[0][2]


def conjugate_to_gamma(j) -> Matrix3:
    """Diagonal A with A J A^-1 = κ γ, κ^3 = xyz; rows a = e1, b = (κ/x) e2, c = (κ^2/xy) e3."""
    j = _matrix(j)
    x, y, z = _cyclic_entries(j)
    product = x * y * z
    d = next((v.field for v in (x, y, z) if v.field is not None), None)
    kappa = nth_root_in_field(product, 3, d)
    if kappa is None:
        raise FieldMismatch(f"xyz = {product} has no cube root in the field of J")
    zero = QuadraticNumber(0)
    a = [[QuadraticNumber(1), zero, zero],
         [zero, kappa / x, zero],
         [zero, zero, kappa * kappa / (x * y)]]
    if not proportional_matrices(mat_mul(a, j), mat_mul(_matrix(GAMMA_MATRIX), a)):
        raise FoliationError(f"conjugation check failed for J = {j}")
    return a


def _beta_entries(j: RationalMap2) -> Tuple[QuadraticNumber, QuadraticNumber]:
    """(a, b) for J = (a y, b / x)."""
    first, second = j.first, j.second
    if not first.is_polynomial or not second.num.is_constant:
        raise WrongShape(f"{j} is not of the form (a*y, b/x)")
    head = first.as_poly()
    if set(head.terms) != {(0, 1)} or set(second.den.terms) != {(1, 0)} or second.num.is_zero:
        raise WrongShape(f"{j} is not of the form (a*y, b/x)")
    return head.coefficient(0, 1), second.num.constant_term() / second.den.coefficient(1, 0)


def conjugate_to_beta(j: RationalMap2) -> RationalMap2:
    """g = (p x, p a y) with p^2 ab = 1, so that g ∘ J ∘ g^-1 = β = (y, 1/x)."""
    a, b = _beta_entries(j)
    d = next((v.field for v in (a, b) if v.field is not None), None)
    p = nth_root_in_field((a * b).inverse(), 2, d)
    if p is None:
        raise FieldMismatch(f"ab = {a * b} is not a square in the field of J")
    chart = j.source
    x, y = _axes(chart)
    g = RationalMap2(x.scale(p), y.scale(p * a), chart, chart)
    g_inverse = RationalMap2(x.scale(p.inverse()), y.scale((p * a).inverse()), chart, chart)
    conjugated = g.compose(j.compose(g_inverse))
    beta = RationalMap2(y, RationalFn2(1, x), chart, chart)
    if not (conjugated.first == beta.first and conjugated.second == beta.second):
        raise FoliationError(f"conjugation check failed: g J g^-1 = {conjugated}")
    return g
