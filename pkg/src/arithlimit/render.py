"""SVG pictures of rank-two samples.

The upper square shows Furstenberg points (alpha1, alpha2) in the unit
square; the segment below it carries one tick per projective direction at
theta = w2 / (w1 + w2).
"""

from .errors import UnsupportedRank

SIZE = 800
SQ_X, SQ_Y, SQ = 100, 40, 600  # square origin (top left) and side
SEG_Y = 720


def _num(v):
    return f"{v:.3f}".rstrip("0").rstrip(".")


def render_svg(F=None, D=None, title=""):
    """SVG 1.1 document for a Furstenberg sample and/or a direction sample."""
    for pts in ((F.points if F else []), (D.points if D else [])):
        for p, _ in pts:
            r = len(p) if isinstance(p, tuple) else p.r
            if r != 2:
                raise UnsupportedRank(f"rendering needs r = 2, got r = {r}")
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" '
        f'height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>',
        f'<rect x="{SQ_X}" y="{SQ_Y}" width="{SQ}" height="{SQ}" fill="none" '
        'stroke="black" stroke-width="1"/>',
        f'<text x="{SQ_X + SQ / 2}" y="{SQ_Y + SQ + 25}" text-anchor="middle" '
        'font-size="14">alpha1</text>',
        f'<text x="{SQ_X - 30}" y="{SQ_Y + SQ / 2}" text-anchor="middle" font-size="14" '
        f'transform="rotate(-90 {SQ_X - 30} {SQ_Y + SQ / 2})">alpha2</text>',
        f'<line x1="{SQ_X}" y1="{SEG_Y}" x2="{SQ_X + SQ}" y2="{SEG_Y}" stroke="black" '
        'stroke-width="1"/>',
        f'<text x="{SQ_X + SQ / 2}" y="{SEG_Y + 40}" text-anchor="middle" '
        'font-size="14">theta = w2/(w1+w2)</text>',
    ]
    if title:
        out.append(f'<text x="{SIZE / 2}" y="25" text-anchor="middle" font-size="16">{title}</text>')
    if F:
        pts = sorted((xi[0].alpha, xi[1].alpha) for xi, _ in F.points)
        out.append('<g class="furstenberg" fill="navy">')
        for a1, a2 in pts:
            x = SQ_X + a1 * SQ
            y = SQ_Y + (1 - a2) * SQ
            out.append(f'<circle cx="{_num(x)}" cy="{_num(y)}" r="1.5"/>')
        out.append("</g>")
    if D:
        ths = sorted(d.coords[1] for d, _ in D.points)
        out.append('<g class="directions" stroke="darkred" stroke-width="1">')
        for th in ths:
            x = SQ_X + th * SQ
            out.append(f'<line x1="{_num(x)}" y1="{SEG_Y - 10}" x2="{_num(x)}" y2="{SEG_Y + 10}"/>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
