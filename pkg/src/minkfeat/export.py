"""CSV and SVG emitters for traced curves and sweep frames."""
from __future__ import annotations

import csv
import io

from .scene import DEFAULT_COLORS
from .tracer import Rect, TracedCurve

__all__ = ["curves_to_csv", "curves_to_svg"]


def curves_to_csv(curves: list[TracedCurve]) -> str:
    """One row per vertex: curve_id, x, y, residual.

    curve_id is kind#index; isolated zeros get the id kind#iso with
    residual 0 recomputed at export."""
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["curve_id", "x", "y", "residual"])
    for tc in curves:
        for ci, (pl, res) in enumerate(zip(tc.polylines, tc.residuals)):
            for (x, y), r in zip(pl, res):
                wr.writerow([f"{tc.kind}#{ci}", repr(float(x)), repr(float(y)), repr(float(r))])
        for x, y in tc.isolated:
            wr.writerow([f"{tc.kind}#iso", repr(float(x)), repr(float(y)), repr(0.0)])
    return buf.getvalue()


def curves_to_svg(curves: list[TracedCurve], colors=None, size: int = 480,
                  title: str = "", annotations: list[str] | None = None) -> str:
    """Standalone SVG with the conventional colors (LD black, LPL red,
    PC blue, MCNC green); the domain rectangle maps to the viewport."""
    colors = {**DEFAULT_COLORS, **(colors or {})}
    rect = curves[0].domain if curves else Rect(-0.25, 0.25, -0.25, 0.25)
    pad = 10.0
    span_x = rect.xmax - rect.xmin
    span_y = rect.ymax - rect.ymin

    def to_px(p):
        x = pad + (p[0] - rect.xmin) / span_x * (size - 2 * pad)
        y = size - pad - (p[1] - rect.ymin) / span_y * (size - 2 * pad)
        return x, y

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="white"/>',
    ]
    if title:
        parts.append(f'<text x="{pad}" y="{pad + 4}" font-size="11">{title}</text>')
    for k, line in enumerate(annotations or []):
        parts.append(f'<text x="{pad}" y="{pad + 18 + 12 * k}" font-size="10">{line}</text>')
    for tc in curves:
        color = colors.get(tc.kind, "#888888")
        for pl in tc.polylines:
            pts = " ".join(f"{x:.2f},{y:.2f}" for x, y in (to_px(p) for p in pl))
            parts.append(
                f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>'
            )
        for p in tc.isolated:
            x, y = to_px(p)
            parts.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3" fill="{color}"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
