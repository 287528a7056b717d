"""
Riccati foliations near an invariant fibre, and which (k, l)-cycles can
carry a Riccati structure.

The cycle side is a search: starting from a cycle of k curves of
self-intersection l, blow up crossings (l > 0) or contract (-1)-curves
(l < 0). Whenever a state has a 0-curve D, D is a fibre of a rational
fibration and the foliation is Riccati for it, so every crossing off D must
lie on a fibre supported on the cycle, disjoint from D and from its two
neighbours (which meet D). Fibres through different crossings are disjoint,
so the curves between D's neighbours split into fibres separated by single
curves. A state where that is impossible is an obstruction.
"""
import itertools
import logging
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from .blowup import (
    CurveConfig,
    blow_down_config,
    blow_up_config,
    build_exceptional_chain,
    contractible_curves,
    cycle_config,
    grauert_is_contractible,
    grauert_minors,
    intersection_matrix,
    link_config,
)
from .errors import Degenerate, NotInvariantFibre, PreconditionFailed, TraceMismatch, UnknownIds
from .localfol import classify_lambda
from .symalg import OneForm, Poly2, RationalMap2, pullback_form

logger = logging.getLogger(__name__)

# The classification the search must reproduce; used as a cross-check only.
SPORADIC_CYCLES = frozenset({(2, -1), (3, -1), (3, 1), (6, -1)})


def known_feasible(k: int, l: int) -> bool:
    return (k, l) in SPORADIC_CYCLES or (l == 0 and k % 2 == 0)


# ---------------------------------------------------------------------------
# Riccati forms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RiccatiForm:
    """(a y^2 + b y + c) dx + h dy with a, b, c, h polynomials in x."""

    a: Poly2
    b: Poly2
    c: Poly2
    h: Poly2
    chart: Optional[str] = None

    def __post_init__(self):
        for name in ("a", "b", "c", "h"):
            value = Poly2.coerce(getattr(self, name))
            if value.degree_in("y") > 0:
                raise ValueError(f"{name} = {value} depends on y")
            object.__setattr__(self, name, value.with_chart(self.chart))
        if self.h.is_zero:
            raise Degenerate("h = 0: the fibration is not transverse to the foliation")

    def to_form(self) -> OneForm:
        y = Poly2.var("y", self.chart)
        return OneForm(self.a * y * y + self.b * y + self.c, self.h, self.chart)

    def __str__(self) -> str:
        return f"a={self.a}; b={self.b}; c={self.c}; h={self.h}"


def recognize_riccati(omega: OneForm) -> Optional[RiccatiForm]:
    """Read off a, b, c, h when deg_y A <= 2 and B does not involve y."""
    if omega.b.is_zero or omega.b.degree_in("y") > 0 or omega.a.degree_in("y") > 2:
        return None
    by_power = omega.a.coefficients_in("y")
    empty = Poly2({}, omega.chart)
    return RiccatiForm(by_power.get(2, empty), by_power.get(1, empty), by_power.get(0, empty), omega.b, omega.chart)


def fibre_multiplicity(r: RiccatiForm) -> int:
    """Order of vanishing of h along the fibre x = 0."""
    if r.h.constant_term():
        raise NotInvariantFibre(f"h(0) = {r.h.constant_term()} is not zero: x = 0 is not invariant")
    return r.h.order_in("x")


def _flip_preconditions(r: RiccatiForm) -> Optional[str]:
    if fibre_multiplicity(r) <= 1:
        return "fibre multiplicity > 1"
    if not r.a.constant_term():
        return "a(0) != 0"
    if r.b.constant_term():
        return "b(0) = 0"
    if r.c.constant_term():
        return "c(0) = 0"
    if r.c.partial("x").constant_term():
        return "c'(0) = 0"
    return None


def flip_fibre(r: RiccatiForm) -> RiccatiForm:
    """Blow up (0, 0) and contract the strict transform of the fibre: y -> x*y on the form."""
    broken = _flip_preconditions(r)
    if broken is not None:
        raise PreconditionFailed(broken)
    x = Poly2.var("x", r.chart)
    y = Poly2.var("y", r.chart)
    flipped = pullback_form(RationalMap2(x, x * y, r.chart, r.chart), r.to_form())
    result = recognize_riccati(flipped)
    if result is None:
        raise AssertionError(f"flip left the Riccati class: {flipped}")
    logger.debug("flipped fibre: %s -> %s", r, result)
    return result


def flip_until_reduced(r: RiccatiForm) -> List[int]:
    """Flip while the preconditions hold; the strictly decreasing multiplicities seen."""
    multiplicities = [fibre_multiplicity(r)]
    while _flip_preconditions(r) is None:
        r = flip_fibre(r)
        multiplicities.append(fibre_multiplicity(r))
    return multiplicities


# ---------------------------------------------------------------------------
# Fibres supported on a cycle
# ---------------------------------------------------------------------------

def contracts_to_zero(config: CurveConfig) -> bool:
    """Some order of (-1)-contractions ends in a single smooth rational 0-curve."""
    seen = set()

    def visit(state: CurveConfig) -> bool:
        if len(state.curves) == 1:
            only = state.curves[0]
            return only.is_rational and only.self_intersection == 0 and not state.has_node(only.id)
        if state in seen:
            return False
        seen.add(state)
        return any(visit(blow_down_config(state, curve_id)) for curve_id in contractible_curves(state))

    return bool(config.curves) and visit(config)


def fibre_support_check(config: CurveConfig, cycle: Sequence[str], candidate: Sequence[str],
                        regular_fibre: Sequence[str] = ()) -> bool:
    """Whether candidate can be a fibre: inside the cycle, connected, away from the regular fibre, contracting to a 0-curve."""
    known = set(config.ids)
    unknown = sorted({*cycle, *candidate, *regular_fibre} - known)
    if unknown:
        raise UnknownIds(f"unknown curves {unknown}")
    chosen = set(candidate)
    if not chosen or not chosen <= set(cycle):
        return False
    sub = config.restrict(candidate)
    if not nx.is_connected(sub.graph()):
        return False
    fibre = set(regular_fibre)
    if fibre and chosen != fibre:
        if chosen & fibre:
            return False
        if any((c.first in chosen and c.second in fibre) or (c.first in fibre and c.second in chosen)
               for c in config.crossings):
            return False
    return contracts_to_zero(sub)


def cycle_order(config: CurveConfig, start: str) -> List[str]:
    """Curves of a cycle in cyclic order beginning at start."""
    order, used, current = [start], set(), start
    while True:
        step = next((c for c in config.crossings_of(current) if c.point not in used), None)
        if step is None:
            return order
        used.add(step.point)
        current = step.other(current)
        if current == start:
            return order
        order.append(current)


def assign_fibres(config: CurveConfig, zero_curve: str) -> Tuple[bool, List[List[str]], str]:
    """Fibres through every crossing, given the fibre zero_curve; (ok, fibres, reason)."""
    order = cycle_order(config, zero_curve)
    if len(order) == 2:
        return True, [[zero_curve]], ""
    path = order[2:-1]
    if not path:
        return False, [], f"the crossing of {order[1]} and {order[-1]} lies on no fibre disjoint from {zero_curve}"

    @lru_cache(maxsize=None)
    def cover(i: int):
        for j in range(i + 1, len(path) + 1):
            arc = path[i:j]
            if not fibre_support_check(config, order, arc, [zero_curve]):
                continue
            if j == len(path):
                return (tuple(arc),)
            if j + 1 < len(path):
                rest = cover(j + 1)
                if rest is not None:
                    return (tuple(arc),) + rest
        return None

    arcs = cover(0)
    if arcs is None:
        return False, [], (f"with {zero_curve} a fibre, no disjoint fibres supported on "
                           f"{'-'.join(path)} pass through all of its crossings")
    return True, [[zero_curve]] + [list(arc) for arc in arcs], ""


# ---------------------------------------------------------------------------
# (k, l)-cycles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CycleSpec:
    k: int
    l: int

    def __post_init__(self):
        if self.k < 2:
            raise ValueError(f"a cycle has at least two curves, got k={self.k}")

    def __str__(self) -> str:
        return f"({self.k},{self.l})"


@dataclass(frozen=True)
class TraceStep:
    action: str  # blow_up, blow_down, fibres, candidate, obstruction
    target: str
    before: str
    after: str
    note: str = ""

    def as_dict(self) -> dict:
        return {"action": self.action, "target": self.target, "before": self.before,
                "after": self.after, "note": self.note}


@dataclass(frozen=True)
class FeasibilityReport:
    subject: str
    feasible: bool
    initial: CurveConfig
    trace: Tuple[TraceStep, ...]
    conclusion: str
    spec: Optional[CycleSpec] = None
    fibres: Tuple[Tuple[str, ...], ...] = ()
    states_explored: int = 0

    def replay(self) -> CurveConfig:
        return replay_trace(self.initial, self.trace)


def replay_trace(config: CurveConfig, trace: Iterable[TraceStep]) -> CurveConfig:
    """Re-run every surgery step, checking the config hash before and after each one."""
    for index, step in enumerate(trace):
        if config.config_hash() != step.before:
            raise TraceMismatch(f"step {index} ({step.action} {step.target}) starts from another configuration")
        if step.action == "blow_up":
            config = blow_up_config(config, step.target)
        elif step.action == "blow_down":
            config = blow_down_config(config, step.target)
        if config.config_hash() != step.after:
            raise TraceMismatch(f"step {index} ({step.action} {step.target}) ends in another configuration")
    return config


def _dihedral_key(config: CurveConfig):
    if not config.is_cycle(config.ids):
        return ("other", config.to_text())
    order = cycle_order(config, config.ids[0])
    values = tuple(config.curve(i).self_intersection for i in order)
    variants = []
    for seq in (values, values[::-1]):
        variants.extend(seq[i:] + seq[:i] for i in range(len(seq)))
    return ("cycle", min(variants))


def _moves(config: CurveConfig, l: int) -> List[Tuple[str, str]]:
    if l > 0:
        return [("blow_up", c.point) for c in config.crossings
                if config.curve(c.first).self_intersection > 0 or config.curve(c.second).self_intersection > 0]
    if l < 0:
        return [("blow_down", curve_id) for curve_id in contractible_curves(config)]
    return []


def _check_state(config: CurveConfig):
    """(obstruction step or None, witness step or None) for one search state."""
    if not config.is_cycle(config.ids):
        return None, None
    witness = None
    digest = config.config_hash()
    for curve_id in cycle_order(config, config.ids[0]):
        if config.curve(curve_id).self_intersection != 0:
            continue
        ok, fibres, reason = assign_fibres(config, curve_id)
        if not ok:
            return TraceStep("obstruction", curve_id, digest, digest, reason), None
        if witness is None:
            note = "fibres " + " | ".join("+".join(f) for f in fibres)
            witness = TraceStep("fibres", curve_id, digest, digest, note), fibres
    return None, witness


def kl_cycle_feasible(spec: CycleSpec, max_depth: Optional[int] = None) -> FeasibilityReport:
    """Search blow-ups or contractions of a (k, l)-cycle for a state that forbids a Riccati fibration."""
    k, l = spec.k, spec.l
    initial = cycle_config(k, l)
    subject = f"cycle({k},{l})"
    digest = initial.config_hash()
    total = k * (l + 2)
    if total <= 0:
        step = TraceStep("obstruction", "cycle", digest, digest,
                         f"the cycle has C^2 = k(l+2) = {total}, not positive")
        report = FeasibilityReport(subject, False, initial, (step,), step.note, spec)
        _cross_check(report)
        return report

    depth = max_depth if max_depth is not None else 2 * (k + abs(l) + 4)
    queue = deque([(initial, ())])
    seen = {_dihedral_key(initial)}
    explored = 0
    witness = None
    terminal = None
    while queue:
        config, trace = queue.popleft()
        explored += 1
        obstruction, found = _check_state(config)
        if obstruction is not None:
            report = FeasibilityReport(subject, False, initial, trace + (obstruction,), obstruction.note,
                                       spec, states_explored=explored)
            logger.debug("%s: obstruction after %s states", subject, explored)
            _cross_check(report)
            return report
        if found is not None and witness is None:
            witness = (trace + (found[0],), found[1])
        moves = _moves(config, l) if len(trace) < depth and config.is_cycle(config.ids) else []
        if not moves and terminal is None:
            terminal = trace
        before = config.config_hash()
        for action, target in moves:
            after = blow_up_config(config, target) if action == "blow_up" else blow_down_config(config, target)
            key = _dihedral_key(after)
            if key in seen:
                continue
            seen.add(key)
            queue.append((after, trace + (TraceStep(action, target, before, after.config_hash()),)))

    if witness is not None:
        trace, fibres = witness
        conclusion = f"no obstruction in {explored} states; {trace[-1].note} with {trace[-1].target} a fibre"
    else:
        trace, fibres = terminal or (), []
        conclusion = f"no obstruction in {explored} states; no state carries a 0-curve"
    report = FeasibilityReport(subject, True, initial, trace, conclusion, spec,
                               tuple(tuple(f) for f in fibres), explored)
    _cross_check(report)
    return report


def _cross_check(report: FeasibilityReport):
    spec = report.spec
    if spec is not None and known_feasible(spec.k, spec.l) != report.feasible:
        logger.warning("search verdict for %s disagrees with the closed-form classification", spec)


def enumerate_cycles(kmax: int, lmin: int, lmax: int) -> List[FeasibilityReport]:
    return [kl_cycle_feasible(CycleSpec(k, l)) for k in range(2, kmax + 1) for l in range(lmin, lmax + 1)]


# ---------------------------------------------------------------------------
# Links
# ---------------------------------------------------------------------------

def _connected_subsets(config: CurveConfig, ids: Sequence[str]) -> List[List[str]]:
    subsets = []
    for size in range(1, len(ids) + 1):
        for combo in itertools.combinations(ids, size):
            if nx.is_connected(config.restrict(combo).graph()):
                subsets.append(list(combo))
    return subsets


def not_riccati_witness(n: int) -> FeasibilityReport:
    """Blow up the node of a link with C^2 = n in {1, 2, 3}: no fibre can pass through the new crossings."""
    if n not in (1, 2, 3):
        raise ValueError(f"the witness covers self-intersections 1, 2 and 3, got {n}")
    initial = link_config(n)
    config = blow_up_config(initial, "p")
    trace = [TraceStep("blow_up", "p", initial.config_hash(), config.config_hash(),
                       f"strict transform C^2 = {config.curve('C').self_intersection}")]
    cycle = config.ids
    digest = config.config_hash()
    fibres = []
    for candidate in _connected_subsets(config, cycle):
        ok = fibre_support_check(config, cycle, candidate)
        trace.append(TraceStep("candidate", "+".join(candidate), digest, digest,
                               "contracts to a 0-curve" if ok else "cannot be a fibre"))
        if ok:
            fibres.append(tuple(candidate))
    feasible = bool(fibres)
    conclusion = ("a fibre candidate survives" if feasible else
                  f"no curve supported on {' + '.join(cycle)} is a fibre: not Riccati")
    if not feasible:
        trace.append(TraceStep("obstruction", "+".join(cycle), digest, digest, conclusion))
    return FeasibilityReport(f"link-{n}", feasible, initial, tuple(trace), conclusion, fibres=tuple(fibres))


def link_covering_cycle(n: int) -> Tuple[CycleSpec, FeasibilityReport]:
    """The (k, n-2)-cycle upstairs of the order-k cyclic cover, k the order of -λ."""
    classification = classify_lambda(n)
    if classification.order is None:
        raise ValueError(f"-lambda is not a root of unity for n={n}")
    spec = CycleSpec(classification.order, n - 2)
    return spec, kl_cycle_feasible(spec)


def large_link_obstruction(n: int) -> FeasibilityReport:
    """For n > 4 the strict transform over the exceptional chain is a fibre; the fibres through the chain crossings cannot exist."""
    chain = build_exceptional_chain(n)
    initial = link_config(n)
    config = initial
    trace = []
    for point in chain.points:
        after = blow_up_config(config, point)
        trace.append(TraceStep("blow_up", point, config.config_hash(), after.config_hash()))
        config = after
    digest = config.config_hash()
    strict = chain.strict_transform
    neighbours = {c.other(strict) for c in config.crossings_of(strict)}
    allowed = [e for e in chain.exceptional if e not in neighbours]
    matrix = intersection_matrix(config, chain.exceptional)
    minors = grauert_minors(matrix)
    trace.append(TraceStep("fibres", strict, digest, digest,
                           f"{strict}^2 = {config.curve(strict).self_intersection}: {strict} is a fibre"))
    blocked = True
    for crossing in config.crossings:
        if crossing.involves(strict):
            continue
        candidates = [s for s in _connected_subsets(config, allowed)
                      if crossing.first in s or crossing.second in s]
        if any(fibre_support_check(config, config.ids, s, [strict]) for s in candidates):
            blocked = False
    conclusion = (f"fibres through the chain crossings must lie on {', '.join(allowed) or 'no curve'}; "
                  f"the exceptional matrix is negative definite (minors {minors})")
    if blocked and grauert_is_contractible(matrix):
        trace.append(TraceStep("obstruction", "+".join(chain.exceptional), digest, digest, conclusion))
        return FeasibilityReport(f"link-{n}", False, initial, tuple(trace), conclusion)
    return FeasibilityReport(f"link-{n}", True, initial, tuple(trace), "a fibre candidate survives")
