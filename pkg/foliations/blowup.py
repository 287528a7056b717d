"""
Blow-ups of 1-forms and combinatorial surgery on curve configurations.

The form side works in one affine chart centred at the origin: the two
standard charts of the blown-up plane are (x, y) = (u, uv) and (st, t).
The configuration side tracks curves, their self-intersections and their
crossings (a node is a crossing of a curve with itself) through blow-ups and
contractions of (-1)-curves, together with the Camacho-Sad quotient of every
crossing whenever it is known exactly.
"""
import hashlib
import logging
from dataclasses import dataclass, replace
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import sympy

from .errors import FormSyntaxError, NotContractible, NotSingular, NotSymmetric, UnknownIds, UnknownPoint
from .exactnum import QuadraticNumber
from .localfol import classify_lambda, cs_node_index
from .parsing import parse_number
from .symalg import OneForm, Poly2, RationalFn2, RationalMap2, poly_gcd, pullback_form

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Blow-up of a form at the chart origin
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BlowupResult:
    """``multiplicity`` is the order of omega at the centre, 0 when it is regular there."""

    multiplicity: int
    chart1_form: OneForm
    chart2_form: OneForm
    dicritical: bool
    regular_center: bool = False

    def exceptional_singularity_count(self) -> int:
        """Distinct singular points of the blown-up foliation on the exceptional divisor."""
        on_divisor = poly_gcd(self.chart1_form.a.restrict("x", 0), self.chart1_form.b.restrict("x", 0))
        count = _distinct_roots(on_divisor)
        a2, b2 = self.chart2_form.evaluate(0, 0)
        if not a2 and not b2:
            count += 1
        return count

    def transition(self) -> RationalMap2:
        """chart2 -> chart1, (s, t) -> (st, 1/s)."""
        s = Poly2.var("x", self.chart2_form.chart)
        t = Poly2.var("y", self.chart2_form.chart)
        return RationalMap2(s * t, RationalFn2(1, s), self.chart2_form.chart, self.chart1_form.chart)

    def gluing_consistent(self) -> bool:
        return pullback_form(self.transition(), self.chart1_form).proportional(self.chart2_form)


def _distinct_roots(p: Poly2) -> int:
    """Number of distinct roots of a polynomial in y alone, over the algebraic closure."""
    if p.is_zero or p.degree_in("y") <= 0:
        return 0
    repeated = poly_gcd(p, p.partial("y"))
    return p.degree_in("y") - max(repeated.degree_in("y"), 0)


def _divide_out(a: Poly2, b: Poly2, var: str) -> Tuple[Poly2, Poly2, int]:
    m = min(p.order_in(var) for p in (a, b) if not p.is_zero)
    divisor = Poly2.var(var, a.chart or b.chart) ** m
    return a.exact_div(divisor), b.exact_div(divisor), m


def blow_up_form(omega: OneForm, allow_regular: bool = False) -> BlowupResult:
    """Blow up the origin of omega's chart."""
    a0, b0 = omega.evaluate(0, 0)
    regular = bool(a0) or bool(b0)
    if regular and not allow_regular:
        raise NotSingular(f"{omega} is regular at the origin")
    base = omega.chart or "plane"
    chart1, chart2 = f"{base}/u", f"{base}/s"

    u, v = Poly2.var("x", chart1), Poly2.var("y", chart1)
    a_sub = omega.a.substitute(u, u * v).as_poly()
    b_sub = omega.b.substitute(u, u * v).as_poly()
    a1, b1, m = _divide_out(a_sub + v * b_sub, u * b_sub, "x")

    s, t = Poly2.var("x", chart2), Poly2.var("y", chart2)
    a_sub = omega.a.substitute(s * t, t).as_poly()
    b_sub = omega.b.substitute(s * t, t).as_poly()
    a2, b2, m2 = _divide_out(t * a_sub, s * a_sub + b_sub, "y")
    if m != m2:
        logger.warning("blow-up multiplicities disagree between charts: %s != %s", m, m2)

    dicritical = not u.divides(b1)
    # a dicritical centre of order m gives u^(m+1)
    multiplicity = m - 1 if dicritical else m
    result = BlowupResult(multiplicity, OneForm(a1, b1, chart1).primitive(), OneForm(a2, b2, chart2).primitive(),
                          dicritical, regular)
    logger.debug("blow-up of %s: m=%s dicritical=%s", omega, multiplicity, dicritical)
    return result


# ---------------------------------------------------------------------------
# Curve configurations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Curve:
    id: str
    self_intersection: int
    is_rational: bool = True
    is_invariant: bool = True
    origin: Optional[str] = None  # point id this curve replaced, for exceptional curves


@dataclass(frozen=True)
class Crossing:
    """A transversal crossing; ``lam`` is the Camacho-Sad index of ``first`` there (``second`` gets 1/lam)."""

    first: str
    second: str
    point: str
    lam: Optional[QuadraticNumber] = None

    @property
    def is_node(self) -> bool:
        return self.first == self.second

    def involves(self, curve_id: str) -> bool:
        return curve_id in (self.first, self.second)

    def other(self, curve_id: str) -> str:
        return self.second if self.first == curve_id else self.first

    def index_on(self, curve_id: str) -> Optional[QuadraticNumber]:
        if self.lam is None:
            return None
        if self.is_node:
            return cs_node_index(self.lam)
        return self.lam if self.first == curve_id else self.lam.inverse()

    def oriented(self) -> "Crossing":
        if self.first <= self.second:
            return self
        lam = None if self.lam is None else self.lam.inverse()
        return Crossing(self.second, self.first, self.point, lam)


@dataclass(frozen=True)
class MarkedPoint:
    """A smooth point on one curve; ``regular`` when the foliation is regular there."""

    curve: str
    point: str
    regular: bool = False


@dataclass(frozen=True, eq=False)
class CurveConfig:
    curves: Tuple[Curve, ...]
    crossings: Tuple[Crossing, ...] = ()
    marked: Tuple[MarkedPoint, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "curves", tuple(self.curves))
        object.__setattr__(self, "crossings", tuple(self.crossings))
        object.__setattr__(self, "marked", tuple(self.marked))
        ids = [c.id for c in self.curves]
        if len(set(ids)) != len(ids):
            raise ValueError(f"duplicate curve ids in {ids}")
        known = set(ids)
        for crossing in self.crossings:
            if crossing.first not in known or crossing.second not in known:
                raise UnknownIds(f"crossing {crossing.point} names an unknown curve")
        for mark in self.marked:
            if mark.curve not in known:
                raise UnknownIds(f"marked point {mark.point} lies on unknown curve {mark.curve}")

    # -- lookup ----------------------------------------------------------

    @property
    def ids(self) -> List[str]:
        return [c.id for c in self.curves]

    def curve(self, curve_id: str) -> Curve:
        for c in self.curves:
            if c.id == curve_id:
                return c
        raise UnknownIds(f"unknown curve {curve_id!r}")

    def crossings_of(self, curve_id: str) -> List[Crossing]:
        return [c for c in self.crossings if c.involves(curve_id)]

    def branches_at(self, curve_id: str) -> int:
        """Number of branches of other curves meeting curve_id, plus two per node of curve_id."""
        return sum(2 if c.is_node else 1 for c in self.crossings_of(curve_id))

    def has_node(self, curve_id: str) -> bool:
        return any(c.is_node for c in self.crossings_of(curve_id))

    def point_ids(self) -> List[str]:
        return [c.point for c in self.crossings] + [m.point for m in self.marked]

    def new_curve_id(self, prefix: str = "E") -> str:
        taken = set(self.ids)
        k = 1
        while f"{prefix}{k}" in taken:
            k += 1
        return f"{prefix}{k}"

    # -- views -----------------------------------------------------------

    def graph(self) -> nx.MultiGraph:
        g = nx.MultiGraph()
        for c in self.curves:
            g.add_node(c.id, self_intersection=c.self_intersection)
        for crossing in self.crossings:
            g.add_edge(crossing.first, crossing.second, key=crossing.point)
        return g

    def restrict(self, ids: Iterable[str]) -> "CurveConfig":
        keep = list(dict.fromkeys(ids))
        for curve_id in keep:
            self.curve(curve_id)
        wanted = set(keep)
        return CurveConfig(
            tuple(c for c in self.curves if c.id in wanted),
            tuple(c for c in self.crossings if c.first in wanted and c.second in wanted),
            tuple(m for m in self.marked if m.curve in wanted),
        )

    def is_cycle(self, ids: Sequence[str]) -> bool:
        """True iff the curves form a cycle of smooth curves (k = 2 means two curves meeting twice)."""
        if len(ids) < 2:
            return False
        sub = self.restrict(ids)
        if any(c.is_node for c in sub.crossings):
            return False
        g = sub.graph()
        return nx.is_connected(g) and all(deg == 2 for _, deg in g.degree())

    def camacho_sad_defects(self) -> Dict[str, Tuple[QuadraticNumber, int]]:
        """For each curve whose crossings are all annotated: (sum of indices, self-intersection)."""
        defects = {}
        for c in self.curves:
            crossings = self.crossings_of(c.id)
            if not crossings or any(x.lam is None for x in crossings):
                continue
            total = QuadraticNumber(0)
            for crossing in crossings:
                total = total + crossing.index_on(c.id)
            defects[c.id] = (total, c.self_intersection)
        return defects

    # -- canonical form, text, hashing ---------------------------------

    def canonical(self):
        curves = tuple(sorted(self.curves, key=lambda c: c.id))
        crossings = tuple(sorted((c.oriented() for c in self.crossings),
                                 key=lambda c: (c.first, c.second, c.point)))
        marked = tuple(sorted(self.marked, key=lambda m: (m.curve, m.point)))
        return curves, crossings, marked

    def __eq__(self, other):
        if not isinstance(other, CurveConfig):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def to_text(self) -> str:
        curves, crossings, marked = self.canonical()
        lines = []
        for c in curves:
            line = f"curve {c.id} self={c.self_intersection} rational={int(c.is_rational)}"
            if not c.is_invariant:
                line += " invariant=0"
            if c.origin is not None:
                line += f" origin={c.origin}"
            lines.append(line)
        for c in crossings:
            line = f"cross {c.first} {c.second} point={c.point}"
            if c.lam is not None:
                line += f" lambda={c.lam}"
            lines.append(line)
        for m in marked:
            lines.append(f"mark {m.curve} point={m.point}" + (" regular=1" if m.regular else ""))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "CurveConfig":
        curves, crossings, marked = [], [], []
        generated = 0
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            words = line.split()
            positional = [w for w in words[1:] if "=" not in w]
            options = dict(w.split("=", 1) for w in words[1:] if "=" in w)
            try:
                if words[0] == "curve" and len(positional) == 1:
                    curves.append(Curve(
                        positional[0],
                        int(options.get("self", "0")),
                        options.get("rational", "1") == "1",
                        options.get("invariant", "1") == "1",
                        options.get("origin"),
                    ))
                elif words[0] == "cross" and len(positional) == 2:
                    point = options.get("point")
                    if point is None:
                        generated += 1
                        point = f"q{generated}"
                    lam = parse_number(options["lambda"]) if "lambda" in options else None
                    crossings.append(Crossing(positional[0], positional[1], point, lam))
                elif words[0] == "mark" and len(positional) == 1:
                    marked.append(MarkedPoint(positional[0], options["point"], options.get("regular") == "1"))
                else:
                    raise ValueError(f"cannot read {line!r}")
            except (KeyError, ValueError, FormSyntaxError) as exc:
                raise ValueError(f"line {lineno}: {exc}") from exc
        return cls(tuple(curves), tuple(crossings), tuple(marked))

    def config_hash(self) -> str:
        return hashlib.sha256(self.to_text().encode("utf-8")).hexdigest()[:16]

    def replace_curve(self, curve: Curve) -> "CurveConfig":
        return CurveConfig(tuple(curve if c.id == curve.id else c for c in self.curves), self.crossings, self.marked)


def link_config(n: int, lam: Optional[QuadraticNumber] = None, annotate: bool = True) -> CurveConfig:
    """One rational curve C with a node at point p and C^2 = n."""
    if lam is None and annotate:
        lam = classify_lambda(n).roots[0]
    return CurveConfig((Curve("C", n),), (Crossing("C", "C", "p", lam),))


def cycle_config(k: int, l: int, prefix: str = "C") -> CurveConfig:
    """k smooth rational curves of self-intersection l, consecutive ones crossing once."""
    if k < 2:
        raise ValueError("a cycle needs at least two curves")
    ids = [f"{prefix}{i}" for i in range(1, k + 1)]
    crossings = tuple(Crossing(ids[i], ids[(i + 1) % k], f"p{i + 1}") for i in range(k))
    return CurveConfig(tuple(Curve(i, l) for i in ids), crossings)


def intersection_matrix(config: CurveConfig, order: Optional[Sequence[str]] = None) -> List[List[int]]:
    """(C_i . C_j); the diagonal is the stored self-intersection, nodes are not added to it."""
    ids = list(order) if order is not None else config.ids
    index = {curve_id: i for i, curve_id in enumerate(ids)}
    matrix = [[0] * len(ids) for _ in ids]
    for curve_id in ids:
        matrix[index[curve_id]][index[curve_id]] = config.curve(curve_id).self_intersection
    for crossing in config.crossings:
        if crossing.is_node or crossing.first not in index or crossing.second not in index:
            continue
        i, j = index[crossing.first], index[crossing.second]
        matrix[i][j] += 1
        matrix[j][i] += 1
    return matrix


# ---------------------------------------------------------------------------
# Surgery
# ---------------------------------------------------------------------------

def _shifted(lam: Optional[QuadraticNumber]) -> Tuple[Optional[QuadraticNumber], Optional[QuadraticNumber]]:
    """Indices of the two strict transforms at their new crossings with E: λ - 1 and 1/λ - 1."""
    if lam is None or lam == 1:
        return None, None
    return lam - 1, lam.inverse() - 1


def blow_up_config(config: CurveConfig, point: str) -> CurveConfig:
    crossing = next((c for c in config.crossings if c.point == point), None)
    mark = next((m for m in config.marked if m.point == point), None)
    if crossing is None and mark is None:
        raise UnknownPoint(f"no crossing or marked point named {point!r}")
    new_id = config.new_curve_id()
    exceptional = Curve(new_id, -1, True, True, point)
    curves = list(config.curves)

    def drop(curve_id: str, amount: int):
        for i, c in enumerate(curves):
            if c.id == curve_id:
                curves[i] = replace(c, self_intersection=c.self_intersection - amount)

    if crossing is not None:
        lam_first, lam_second = _shifted(crossing.lam)
        if crossing.is_node:
            drop(crossing.first, 4)
        else:
            drop(crossing.first, 1)
            drop(crossing.second, 1)
        added = (
            Crossing(crossing.first, new_id, f"{point}.1", lam_first),
            Crossing(crossing.second, new_id, f"{point}.2", lam_second),
        )
        crossings = tuple(c for c in config.crossings if c is not crossing) + added
        marked = config.marked
    else:
        drop(mark.curve, 1)
        lam = QuadraticNumber(-1) if mark.regular else None
        crossings = config.crossings + (Crossing(mark.curve, new_id, f"{point}.1", lam),)
        marked = tuple(m for m in config.marked if m is not mark)
    result = CurveConfig(tuple(curves) + (exceptional,), crossings, marked)
    logger.debug("blew up %s: %s", point, result.to_text().strip().replace("\n", "; "))
    return result


def blow_down_config(config: CurveConfig, curve_id: str) -> CurveConfig:
    curve = config.curve(curve_id)
    if not curve.is_rational:
        raise NotContractible(f"{curve_id} is not rational")
    if curve.self_intersection != -1:
        raise NotContractible(f"{curve_id} has self-intersection {curve.self_intersection}, not -1")
    if config.has_node(curve_id):
        raise NotContractible(f"{curve_id} crosses itself")
    touching = config.crossings_of(curve_id)
    branches = [(c.other(curve_id), c.index_on(c.other(curve_id))) for c in touching]
    point = curve.origin or curve_id

    gains: Dict[str, int] = {}
    for other, _ in branches:
        gains[other] = gains.get(other, 0) + 1
    curves = tuple(
        replace(c, self_intersection=c.self_intersection + gains.get(c.id, 0) ** 2)
        for c in config.curves if c.id != curve_id
    )
    crossings = [c for c in config.crossings if not c.involves(curve_id)]
    marked = [m for m in config.marked if m.curve != curve_id]

    if len(branches) == 1:
        other, index = branches[0]
        marked.append(MarkedPoint(other, point, index == -1))
    elif len(branches) == 2:
        (first, mu_first), (second, mu_second) = branches
        lam = None
        if mu_first is not None and mu_second is not None and mu_first != -1:
            candidate = mu_first + 1
            if mu_second == candidate.inverse() - 1:
                lam = candidate
        crossings.append(Crossing(first, second, point, lam))
    else:
        for i in range(len(branches)):
            for j in range(i + 1, len(branches)):
                crossings.append(Crossing(branches[i][0], branches[j][0], f"{point}.{i + 1}{j + 1}"))
    result = CurveConfig(curves, tuple(crossings), tuple(marked))
    logger.debug("contracted %s into %s", curve_id, point)
    return result


def contractible_curves(config: CurveConfig) -> List[str]:
    """Ids of the curves blow_down_config accepts."""
    return [c.id for c in config.curves
            if c.is_rational and c.self_intersection == -1 and not config.has_node(c.id)]


# ---------------------------------------------------------------------------
# Grauert's criterion
# ---------------------------------------------------------------------------

def _check_symmetric(matrix: Sequence[Sequence[int]]) -> sympy.Matrix:
    size = len(matrix)
    if any(len(row) != size for row in matrix):
        raise NotSymmetric("the matrix is not square")
    m = sympy.Matrix(matrix)
    if m != m.T:
        raise NotSymmetric("the matrix is not symmetric")
    return m


def grauert_minors(matrix: Sequence[Sequence[int]]) -> List[int]:
    """Leading principal minors det(M_1), ..., det(M_n)."""
    m = _check_symmetric(matrix)
    return [int(m[:k, :k].det()) for k in range(1, m.rows + 1)]


def grauert_is_contractible(matrix: Sequence[Sequence[int]]) -> bool:
    """Negative definite iff (-1)^k det(M_k) > 0 for every leading principal minor."""
    return all((-1) ** k * minor > 0 for k, minor in enumerate(grauert_minors(matrix), start=1))


# ---------------------------------------------------------------------------
# The exceptional chain over a link node
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExceptionalChain:
    config: CurveConfig
    exceptional: Tuple[str, ...]  # newest first
    strict_transform: str
    self_intersections: Tuple[int, ...]  # strict transform after each blow-up
    points: Tuple[str, ...] = ()  # blown-up points, in order

    def matrix(self) -> List[List[int]]:
        return intersection_matrix(self.config, self.exceptional)

    def exceptional_config(self) -> CurveConfig:
        return self.config.restrict(self.exceptional)


def build_exceptional_chain(n: int, choices: Optional[Sequence[int]] = None) -> ExceptionalChain:
    """Blow up the node of a link with C^2 = n, then n - 4 more crossings of the strict transform."""
    if n <= 4:
        raise ValueError(f"the exceptional chain needs n > 4, got {n}")
    total = n - 3
    choices = list(choices or [])
    config = blow_up_config(link_config(n), "p")
    newest = [config.ids[-1]]
    points = ["p"]
    history = [config.curve("C").self_intersection]
    for step in range(1, total):
        # crossings of the strict transform with the exceptional curves, newest curve first
        candidates = sorted(
            (c for c in config.crossings_of("C") if not c.is_node),
            key=lambda c: (newest[::-1].index(c.other("C")), c.point),
        )
        choice = choices[step - 1] if step - 1 < len(choices) else 0
        if not 0 <= choice < len(candidates):
            raise ValueError(f"choice {choice} out of range at blow-up {step + 1}")
        points.append(candidates[choice].point)
        config = blow_up_config(config, candidates[choice].point)
        newest.append(config.ids[-1])
        history.append(config.curve("C").self_intersection)
    return ExceptionalChain(config, tuple(reversed(newest)), "C", tuple(history), tuple(points))
