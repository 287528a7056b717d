import io
import logging
from datetime import datetime
from typing import Any, List, Tuple

from django.conf import settings
from django.http import HttpRequest, HttpResponse, JsonResponse
from django.views.decorators.http import require_GET, require_http_methods

from reportlab.lib.colors import HexColor, white
from reportlab.lib.pagesizes import A4, landscape
from reportlab.pdfbase import pdfmetrics
from reportlab.pdfgen import canvas

from .errors import FoliationError
from .models import VerificationRun
from .reports import classify_lambda_report, cycle_feasible_report, verify_report

logger = logging.getLogger(__name__)

FONT = "Helvetica"
LINE_H = 11     # one text line inside a cell (points)
CELL_PAD = 4    # top + bottom inner padding (points)
ROW_H = 18
DATA_SZ = 8
HDR_SZ = 10

TITLE_BLUE = HexColor("#1565C0")
HEADER_BG = HexColor("#E0F7FA")
GREY_LIGHT = HexColor("#F5F5F5")
PASS_BG = HexColor("#E8F5E9")
FAIL_BG = HexColor("#FFE0B2")


# -----------------------------
# Request helpers
# -----------------------------

def _to_int(value: Any, default: int = 0) -> int:
    try:
        return int(value)
    except (TypeError, ValueError):
        return default


def _param(request: HttpRequest, name: str):
    return request.POST.get(name, request.GET.get(name))


def _deterministic(request: HttpRequest) -> bool:
    flag = _param(request, "deterministic")
    if flag is None:
        return settings.FOLIATIONS_DETERMINISTIC
    return flag.lower() in ("1", "true", "yes")


def _report_response(request: HttpRequest, build, *args) -> JsonResponse:
    try:
        report = build(*args)
    except (FoliationError, ValueError) as exc:
        return JsonResponse({"success": False, "message": str(exc)}, status=400)

    deterministic = _deterministic(request)
    report.stamp(deterministic)
    out = {"success": report.exit_status == 0, "report": report.as_dict()}
    # only POST stores a run
    if request.method == "POST":
        run = VerificationRun.store(report, deterministic)
        out["runId"] = run.id
    return JsonResponse(out)


# -----------------------------
# Report endpoints
# -----------------------------

@require_http_methods(["GET", "POST"])
def verify_view(request: HttpRequest, model: str):
    sign = _to_int(_param(request, "sign"), 1)
    if sign not in (1, -1):
        return JsonResponse({"success": False, "message": "sign must be 1 or -1"}, status=400)
    return _report_response(request, verify_report, model, sign, settings.FOLIATIONS_ORDER_BOUND)


@require_http_methods(["GET", "POST"])
def classify_lambda_view(request: HttpRequest, n: int):
    return _report_response(request, classify_lambda_report, n)


@require_http_methods(["GET", "POST"])
def cycle_feasible_view(request: HttpRequest, k: int, l: str):
    try:
        l_value = int(l)
    except ValueError:
        return JsonResponse({"success": False, "message": f"l must be an integer, got {l!r}"}, status=400)
    return _report_response(request, cycle_feasible_report, k, l_value)


# -----------------------------
# Stored runs
# -----------------------------

def _run_or_404(run_id: int):
    run = VerificationRun.objects.filter(id=run_id).first()
    if run is None:
        return None, JsonResponse({"success": False, "message": f"run {run_id} not found"}, status=404)
    return run, None


@require_GET
def runs_view(request: HttpRequest):
    out = [
        {
            "id": r.id,
            "command": r.command,
            "exitStatus": r.exit_status,
            "deterministic": r.deterministic,
            "createdAt": r.created_at.strftime("%Y-%m-%d %H:%M:%S"),
            "claims": r.claims.count(),
        }
        for r in VerificationRun.objects.all()
    ]
    return JsonResponse(out, safe=False)


@require_GET
def run_detail_view(request: HttpRequest, run_id: int):
    run, error = _run_or_404(run_id)
    if error:
        return error
    return JsonResponse({
        "success": True,
        "id": run.id,
        "command": run.command,
        "exitStatus": run.exit_status,
        "claims": [
            {"id": c.claim_id, "anchor": c.anchor, "status": c.status, "evidence": c.evidence_dict()}
            for c in run.claims.all()
        ],
    })


# -----------------------------
# PDF helpers (ReportLab)
# -----------------------------

def _wrap_text(text: str, font_name: str, font_size: float, max_width: float) -> List[str]:
    """Word-wrap ``text`` so each line fits within ``max_width`` points."""
    usable = max_width - 6
    words = (text or "").split()
    if not words:
        return [""]
    lines, current = [], ""
    for word in words:
        candidate = f"{current} {word}" if current else word
        if pdfmetrics.stringWidth(candidate, font_name, font_size) <= usable:
            current = candidate
        else:
            if current:
                lines.append(current)
            current = word
    if current:
        lines.append(current)
    return [piece for line in lines for piece in _split_token(line, font_name, font_size, usable)]


def _split_token(text: str, font_name: str, font_size: float, usable: float) -> List[str]:
    """Break a line with no room to wrap at spaces into pieces that fit."""
    pieces, current = [], ""
    for ch in text:
        if current and pdfmetrics.stringWidth(current + ch, font_name, font_size) > usable:
            pieces.append(current)
            current = ch
        else:
            current += ch
    pieces.append(current)
    return pieces


def _cell_h(n_lines: int) -> float:
    return max(ROW_H, n_lines * LINE_H + CELL_PAD * 2)


def _draw_cell(c: canvas.Canvas, x: float, y: float, w: float, h: float, lines: List[str],
               font: str, font_size: float, bg=None):
    if bg is not None:
        c.setFillColor(bg)
        c.rect(x, y - h, w, h, stroke=0, fill=1)
    c.setStrokeColor(HexColor("#000000"))
    c.rect(x, y - h, w, h, stroke=1, fill=0)
    c.setFillColor(HexColor("#000000"))
    c.setFont(font, font_size)
    text_y = y - CELL_PAD - LINE_H + 2
    for line in lines:
        if text_y > y - h + 2:
            c.drawString(x + 3, text_y, line)
        text_y -= LINE_H


def _build_claims_pdf(run: VerificationRun) -> bytes:
    columns: List[Tuple[str, float]] = [("Claim", 2), ("Anchor", 3), ("Status", 1), ("Evidence", 6)]
    rows = []
    for claim in run.claims.all():
        evidence = "; ".join(f"{k}: {v}" for k, v in claim.evidence_dict().items())
        rows.append([claim.claim_id, claim.anchor, claim.status, evidence])

    buf = io.BytesIO()
    page_w, page_h = landscape(A4)
    margin = 28.35
    available_w = page_w - 2 * margin
    total_weight = sum(w for _, w in columns)
    widths = [available_w * w / total_weight for _, w in columns]
    c = canvas.Canvas(buf, pagesize=(page_w, page_h))

    page_num = 0

    def new_page() -> float:
        nonlocal page_num
        if page_num:
            c.showPage()
        page_num += 1
        y = page_h - margin
        c.setFont(FONT + "-Bold", 12)
        c.setFillColor(TITLE_BLUE)
        c.drawString(margin, y, f"Run {run.id}: {run.command}")
        c.setFont(FONT, 10)
        c.setFillColor(HexColor("#000000"))
        c.drawRightString(page_w - margin, y, run.created_at.strftime("%d/%m/%Y %H:%M"))
        y -= 14
        c.drawString(margin, y, f"Exit status {run.exit_status}  |  page {page_num}")
        y -= 10
        x = margin
        for (name, _), w in zip(columns, widths):
            _draw_cell(c, x, y, w, ROW_H, [name], FONT + "-Bold", HDR_SZ, bg=HEADER_BG)
            x += w
        return y - ROW_H

    y = new_page()
    for i, row in enumerate(rows):
        wrapped = [_wrap_text(text, FONT, DATA_SZ, w) for text, w in zip(row, widths)]
        height = max(_cell_h(len(lines)) for lines in wrapped)
        if y - height < margin:
            y = new_page()
        bg = white if i % 2 == 0 else GREY_LIGHT
        x = margin
        for col, (lines, w) in enumerate(zip(wrapped, widths)):
            cell_bg = (PASS_BG if row[2] == "pass" else FAIL_BG) if col == 2 else bg
            _draw_cell(c, x, y, w, height, lines, FONT, DATA_SZ, bg=cell_bg)
            x += w
        y -= height

    c.setFont(FONT, 8)
    c.drawRightString(page_w - margin, margin / 2, f"generated {datetime.now().strftime('%Y-%m-%d %H:%M')}")
    c.save()
    return buf.getvalue()


@require_GET
def run_pdf_view(request: HttpRequest, run_id: int):
    run, error = _run_or_404(run_id)
    if error:
        return error
    pdf_bytes = _build_claims_pdf(run)
    resp = HttpResponse(pdf_bytes, content_type="application/pdf")
    resp["Content-Disposition"] = f'attachment; filename="run_{run.id}.pdf"'
    return resp
