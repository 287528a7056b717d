"""
Structured reports shared by the management commands, the views and the
stored runs: a command echo, an optional timestamp, claim entries and the
exit status, rendered as text, JSON or Markdown.
"""
import json
import logging
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Mapping, Optional

from .blowup import BlowupResult, blow_up_form, grauert_is_contractible, grauert_minors
from .constructions import FAIL, PASS, Claim, VerificationReport, build_model, model_document, verify_model
from .errors import TraceMismatch
from .exactnum import ROOT_OF_UNITY_BOUND, QuadraticNumber
from .localfol import LambdaClassification, classify_lambda, cs_node_index
from .parsing import parse_form, parse_matrix, parse_point
from .riccati_cycles import (
    CycleSpec, FeasibilityReport, known_feasible, enumerate_cycles, kl_cycle_feasible,
    large_link_obstruction, link_covering_cycle, not_riccati_witness, replay_trace,
)
from .symalg import translate_form

logger = logging.getLogger(__name__)

FORMATS = ("text", "json", "md")
EXTENSIONS = {"text": "txt", "json": "json", "md": "md"}


@dataclass
class Report:
    command: str
    claims: List[Claim] = field(default_factory=list)
    timestamp: Optional[str] = None
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def exit_status(self) -> int:
        return 0 if all(c.passed for c in self.claims) else 1

    def stamp(self, deterministic: bool) -> "Report":
        self.timestamp = None if deterministic else datetime.now(timezone.utc).isoformat(timespec="seconds")
        return self

    def add(self, claims: Iterable[Claim]) -> "Report":
        self.claims.extend(claims)
        return self

    # -- rendering ---------------------------------------------------------

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "timestamp": self.timestamp,
            "claims": [c.as_dict() for c in self.claims],
            "exit_status": self.exit_status,
            "details": self.details,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, ensure_ascii=False)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        data = json.loads(text)
        claims = [Claim(c["id"], c["anchor"], c["status"], dict(c["evidence"])) for c in data.get("claims", [])]
        report = cls(data["command"], claims, data.get("timestamp"), data.get("details") or {})
        if "exit_status" in data and data["exit_status"] != report.exit_status:
            raise ValueError(f"exit status {data['exit_status']} does not match the claims")
        return report

    def to_text(self) -> str:
        lines = [f"command: {self.command}"]
        if self.timestamp:
            lines.append(f"timestamp: {self.timestamp}")
        for claim in self.claims:
            lines.append(f"[{claim.status.upper()}] {claim.id}: {claim.anchor}")
            for key, value in claim.evidence.items():
                lines.append(f"    {key}: {value}")
        for key, value in self.details.items():
            if isinstance(value, (dict, list)):
                continue
            lines.append(f"{key}: {value}")
        passed = sum(c.passed for c in self.claims)
        lines.append(f"{passed}/{len(self.claims)} claims pass; exit status {self.exit_status}")
        return "\n".join(lines) + "\n"

    def to_markdown(self) -> str:
        lines = [f"# `{self.command}`", ""]
        if self.timestamp:
            lines += [f"_{self.timestamp}_", ""]
        lines += ["| claim | anchor | status | evidence |", "| --- | --- | --- | --- |"]
        for claim in self.claims:
            evidence = "<br>".join(f"{k}: `{v}`" for k, v in claim.evidence.items())
            lines.append(f"| {claim.id} | {claim.anchor} | {claim.status} | {evidence} |")
        lines += ["", f"exit status: {self.exit_status}"]
        return "\n".join(lines) + "\n"

    def render(self, fmt: str = "text") -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "md":
            return self.to_markdown()
        return self.to_text()


def _status(ok: bool) -> str:
    return PASS if ok else FAIL


# ---------------------------------------------------------------------------
# Claims from the other modules' results
# ---------------------------------------------------------------------------

def verification_claims(result: VerificationReport) -> List[Claim]:
    return list(result.claims)


def lambda_claims(result: LambdaClassification) -> List[Claim]:
    n = result.n
    satisfied = all(root * root + (2 - n) * root + 1 == 0 for root in result.roots)
    indices = [cs_node_index(root) for root in result.roots]
    evidence = {
        "n": n,
        "roots": f"{result.roots[0]}, {result.roots[1]}",
        "case": result.kind.value,
        "reduced nondegenerate": "yes" if result.reduced_nondegenerate else "no",
        "description": result.describe(),
        "lambda + 2 + 1/lambda": ", ".join(str(i) for i in indices),
    }
    if result.order is not None:
        evidence["order of -lambda"] = result.order
    ok = satisfied and all(i == n for i in indices)
    return [Claim("lambda-roots", "roots of the node quotient and their case", _status(ok),
                  {k: str(v) for k, v in evidence.items()})]


def trace_document(report: FeasibilityReport) -> dict:
    return {
        "subject": report.subject,
        "feasible": report.feasible,
        "conclusion": report.conclusion,
        "states_explored": report.states_explored,
        "initial": report.initial.to_text(),
        "fibres": [list(f) for f in report.fibres],
        "trace": [step.as_dict() for step in report.trace],
    }


def _replays(report: FeasibilityReport) -> bool:
    try:
        replay_trace(report.initial, report.trace)
    except TraceMismatch as exc:
        logger.error("trace of %s does not replay: %s", report.subject, exc)
        return False
    return True


def feasibility_claims(report: FeasibilityReport) -> List[Claim]:
    verdict = "feasible" if report.feasible else "infeasible"
    claims = [Claim(
        f"feasibility-{report.subject}", "surgery search for a fibration compatible with the cycle",
        _status(_replays(report)),
        {"verdict": verdict, "conclusion": report.conclusion, "steps": str(len(report.trace)),
         "states": str(report.states_explored)},
    )]
    if report.spec is not None:
        expected = known_feasible(report.spec.k, report.spec.l)
        claims.append(Claim(
            f"classification-{report.subject}", "agreement with the closed-form list of Riccati cycles",
            _status(expected == report.feasible),
            {"search": verdict, "closed form": "feasible" if expected else "infeasible"},
        ))
    return claims


def obstruction_claims(report: FeasibilityReport) -> List[Claim]:
    """A link report passes when an obstruction was found and the trace replays."""
    return [Claim(
        f"not-riccati-{report.subject}", "no fibration through the cycle after blowing up the node",
        _status(not report.feasible and _replays(report)),
        {"conclusion": report.conclusion, "steps": str(len(report.trace))},
    )]


def blowup_claims(result: BlowupResult, point: str) -> List[Claim]:
    consistent = result.gluing_consistent()
    return [Claim("blowup", "blow-up of the form at the point", _status(consistent), {
        "point": point,
        "multiplicity": "none (regular centre)" if result.regular_center else str(result.multiplicity),
        "dicritical": "yes" if result.dicritical else "no",
        "regular centre": "yes" if result.regular_center else "no",
        "chart u": str(result.chart1_form),
        "chart s": str(result.chart2_form),
        "singularities on E": "infinitely many" if result.dicritical else str(result.exceptional_singularity_count()),
        "charts glue": "yes" if consistent else "no",
    })]


def grauert_claims(matrix) -> List[Claim]:
    minors = grauert_minors(matrix)
    contractible = grauert_is_contractible(matrix)
    return [Claim("grauert", "negative definiteness by leading principal minors", PASS, {
        "matrix": "[" + ";".join(",".join(str(v) for v in row) for row in matrix) + "]",
        "minors": ", ".join(str(m) for m in minors),
        "contractible": "yes" if contractible else "no",
    })]


# ---------------------------------------------------------------------------
# One report per command; the management commands and the views call these
# ---------------------------------------------------------------------------

def default_constants() -> Dict[str, QuadraticNumber]:
    """Names the form grammar knows without --const: L = (1+sqrt(-3))/2 and i = sqrt(-1)."""
    return {
        "L": QuadraticNumber(Fraction(1, 2), Fraction(1, 2), -3),
        "i": QuadraticNumber.sqrt(-1),
    }


def verify_report(key: str, sign: int = 1, order_bound: int = ROOT_OF_UNITY_BOUND) -> Report:
    model = build_model(key, sign)
    result = verify_model(model, order_bound)
    report = Report(f"verify {key}" + (" --sign -1" if sign < 0 else ""), verification_claims(result))
    report.details["model"] = model_document(model)
    return report


def classify_lambda_report(n: int) -> Report:
    classification = classify_lambda(n)
    return Report(f"classify_lambda {n}", lambda_claims(classification))


def cycle_feasible_report(k: int, l: int) -> Report:
    feasibility = kl_cycle_feasible(CycleSpec(k, l))
    report = Report(f"cycle_feasible {k} {l}", feasibility_claims(feasibility))
    report.details["verdict"] = "feasible" if feasibility.feasible else "infeasible"
    report.details["trace"] = trace_document(feasibility)
    return report


def enumerate_report(kmax: int, lmin: int, lmax: int) -> Report:
    if kmax < 2 or lmin > lmax:
        raise ValueError(f"empty range: k in 2..{kmax}, l in {lmin}..{lmax}")
    report = Report(f"enumerate {kmax} {lmin} {lmax}")
    feasible = []
    for feasibility in enumerate_cycles(kmax, lmin, lmax):
        report.add(feasibility_claims(feasibility))
        if feasibility.feasible:
            feasible.append(str(feasibility.spec))
    report.details["feasible cycles"] = ", ".join(feasible) or "none"
    return report


def blowup_report(form: str, point: str, constants: Optional[Mapping[str, QuadraticNumber]] = None) -> Report:
    constants = default_constants() if constants is None else constants
    omega = parse_form(form, constants)
    centre = parse_point(point, constants)
    result = blow_up_form(translate_form(omega, centre), allow_regular=True)
    return Report(f'blowup --form "{form}" --point {point}', blowup_claims(result, point))


def _integer_matrix(rows) -> List[List[int]]:
    matrix = []
    for row in rows:
        entries = []
        for entry in row:
            if not entry.is_rational or Fraction(entry.a).denominator != 1:
                raise ValueError(f"intersection numbers are integers, got {entry}")
            entries.append(int(entry.a))
        matrix.append(entries)
    return matrix


def grauert_report(text: str) -> Report:
    matrix = _integer_matrix(parse_matrix(text))
    return Report(f'grauert --matrix "{text}"', grauert_claims(matrix))


def links_report(n: int) -> Report:
    """Obstructions for a link of self-intersection n: the witness and covering cycle for n < 4, the chain for n > 4."""
    if n < 1 or n == 4:
        raise ValueError(f"no link with lambda reduced nondegenerate has self-intersection {n}")
    report = Report(f"links {n}")
    if n < 4:
        witness = not_riccati_witness(n)
        report.add(obstruction_claims(witness))
        report.details["witness"] = trace_document(witness)
        spec, cover = link_covering_cycle(n)
        report.add(feasibility_claims(cover))
        report.details["covering cycle"] = str(spec)
    else:
        obstruction = large_link_obstruction(n)
        report.add(obstruction_claims(obstruction))
        report.details["obstruction"] = trace_document(obstruction)
    return report
