"""Text and SVG pictures of tours and their lifts.

Three views are offered:

* ``BoardAscii`` prints the board with each square's visit index, followed
  by the move list; moves that cross an identified border are drawn with a
  dotted arrow.
* ``LiftAscii`` prints the lifted path in the strip (cylinder) or plane
  (torus), numbering lift points in order and ruling off fundamental domains.
* ``LiftSvg`` draws the same lift as an SVG 1.1 polyline with a dot on the
  base point.

All coordinates are integers; rows grow upwards, as in the usual figures.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Union
from xml.sax.saxutils import escape

from .boardgraph import Topology, apply_jump, is_wrap_jump
from .lift import classify, lift_points, lift_tour
from .tour import Tour


class RenderMode(str, enum.Enum):
    BOARD_ASCII = "BoardAscii"
    LIFT_ASCII = "LiftAscii"
    LIFT_SVG = "LiftSvg"


@dataclass(frozen=True)
class RenderOptions:
    mode: RenderMode = RenderMode.BOARD_ASCII
    show_fundamental_domains: bool = True
    cell_px: int = 24

    def __post_init__(self) -> None:
        object.__setattr__(self, "mode", RenderMode(self.mode))
        if self.cell_px < 4:
            raise ValueError(f"cell_px must be at least 4, got {self.cell_px}")


def _headline(tour: Tour) -> str:
    kind = "closed" if tour.closed else "open"
    line = f"{tour.spec} {kind} tour from {tuple(tour.start)}"
    if tour.closed and tour.spec.is_surface:
        line += f", class {classify(tour.spec, tour)}"
    return line


def board_ascii(tour: Tour) -> str:
    spec = tour.spec
    squares = tour.squares()
    order = {sq: i for i, sq in enumerate(squares[: spec.size])}
    width = len(str(max(spec.size - 1, 0)))
    lines = [_headline(tour)]
    for b in reversed(range(spec.n)):
        cells = " ".join(str(order[(a, b)]).rjust(width) for a in range(spec.m))
        lines.append(f"{str(b).rjust(3)} | {cells}")
    lines.append("    +-" + "-" * (spec.m * (width + 1) - 1))
    lines.append("      " + " ".join(str(a).rjust(width) for a in range(spec.m)))
    lines.append("moves ('..>' crosses a border):")
    for i, jump in enumerate(tour.jumps):
        to = apply_jump(spec, jump)
        arrow = "..>" if is_wrap_jump(spec, jump) else "-->"
        lines.append(f"  {i:>{width}}: {tuple(jump.frm)} {arrow} {tuple(to)}  via {tuple(jump.pair)}")
    return "\n".join(lines) + "\n"


def _lift(tour: Tour) -> list[tuple[int, int]]:
    if tour.spec.is_surface:
        return [tuple(p) for p in lift_tour(tour.spec, tour).points]
    return [tuple(p) for p in lift_points(tour.start, tour.pairs)]


def _columns(tour: Tour, pts) -> range:
    """Horizontal extent: the whole strip on cylinders, the path's hull otherwise (padded to whole domains)."""
    spec = tour.spec
    if spec.topology is not Topology.TORUS:
        return range(0, spec.m)
    lo = min(a for a, _ in pts) // spec.m * spec.m
    hi = (max(a for a, _ in pts) // spec.m + 1) * spec.m
    return range(lo, hi)


def _rows(tour: Tour, pts) -> range:
    spec = tour.spec
    if spec.topology is Topology.REGULAR:
        return range(0, spec.n)
    lo = min(b for _, b in pts) // spec.n * spec.n
    hi = (max(b for _, b in pts) // spec.n + 1) * spec.n
    return range(lo, hi)


def lift_ascii(tour: Tour, show_domains: bool = True) -> str:
    spec = tour.spec
    pts = _lift(tour)
    label: dict[tuple[int, int], int] = {}
    for i, p in enumerate(pts):
        label.setdefault(p, i)
    cols, rows = _columns(tour, pts), _rows(tour, pts)
    width = max(len(str(len(pts) - 1)), max(len(str(a)) for a in (cols.start, cols.stop - 1)))
    ruled_cols = show_domains and spec.topology is Topology.TORUS

    def row_text(cells: list[str], fill: str) -> str:
        out = []
        for a, cell in zip(cols, cells):
            if ruled_cols and a % spec.m == 0 and a != cols.start:
                out.append("|" if fill == " " else "+")
            out.append(cell)
        return fill.join(out)

    lines = [_headline(tour), f"lift: {pts[0]} -> {pts[-1]}, {len(pts) - 1} moves"]
    for b in reversed(rows):
        cells = [str(label[(a, b)]).rjust(width) if (a, b) in label else ".".rjust(width) for a in cols]
        lines.append(f"{str(b).rjust(4)} | {row_text(cells, ' ')}")
        if show_domains and spec.topology is not Topology.REGULAR and b % spec.n == 0 and b != rows.start:
            lines.append("     | " + row_text(["-" * width] * len(cols), "-"))
    lines.append("       " + row_text([str(a).rjust(width) for a in cols], " "))
    return "\n".join(lines) + "\n"


def lift_svg(tour: Tour, show_domains: bool = True, cell_px: int = 24) -> bytes:
    spec = tour.spec
    pts = _lift(tour)
    cols, rows = _columns(tour, pts), _rows(tour, pts)
    margin = cell_px
    width = len(cols) * cell_px + 2 * margin
    height = len(rows) * cell_px + 2 * margin

    def x_of(a: int) -> int:
        return margin + (a - cols.start) * cell_px + cell_px // 2

    def y_of(b: int) -> int:
        return margin + (rows.stop - 1 - b) * cell_px + cell_px // 2

    left, right = margin, margin + len(cols) * cell_px
    top, bottom = margin, margin + len(rows) * cell_px
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f"<title>{escape(_headline(tour))}</title>",
        f'<rect x="{left}" y="{top}" width="{right - left}" height="{bottom - top}" fill="none" stroke="#bbbbbb"/>',
        '<g fill="#dddddd">',
    ]
    dot_r = max(1, cell_px // 8)
    for a in cols:
        for b in rows:
            parts.append(f'<circle cx="{x_of(a)}" cy="{y_of(b)}" r="{dot_r}"/>')
    parts.append("</g>")
    if show_domains and spec.topology is not Topology.REGULAR:
        parts.append('<g stroke="#888888" stroke-width="1">')
        for b in rows:
            if b % spec.n == 0 and b != rows.start:
                y = margin + (rows.stop - b) * cell_px
                parts.append(f'<line x1="{left}" y1="{y}" x2="{right}" y2="{y}"/>')
        if spec.topology is Topology.TORUS:
            for a in cols:
                if a % spec.m == 0 and a != cols.start:
                    x = margin + (a - cols.start) * cell_px
                    parts.append(f'<line x1="{x}" y1="{top}" x2="{x}" y2="{bottom}"/>')
        parts.append("</g>")
    coords = " ".join(f"{x_of(a)},{y_of(b)}" for a, b in pts)
    stroke = max(1, cell_px // 12)
    parts.append(f'<polyline points="{coords}" fill="none" stroke="#1f4e9c" stroke-width="{stroke}"/>')
    base = pts[0]
    parts.append(f'<circle cx="{x_of(base[0])}" cy="{y_of(base[1])}" r="{max(2, cell_px // 5)}" fill="#000000"/>')
    end = pts[-1]
    if end != base:
        parts.append(
            f'<circle cx="{x_of(end[0])}" cy="{y_of(end[1])}" r="{max(2, cell_px // 5)}" '
            f'fill="none" stroke="#000000"/>'
        )
    parts.append("</svg>")
    return ("\n".join(parts) + "\n").encode("utf-8")


def render(tour: Tour, opts: RenderOptions = RenderOptions()) -> Union[str, bytes]:
    """Text for the ASCII modes, SVG bytes for ``LiftSvg``."""
    tour.validate()
    if opts.mode is RenderMode.BOARD_ASCII:
        return board_ascii(tour)
    if opts.mode is RenderMode.LIFT_ASCII:
        return lift_ascii(tour, opts.show_fundamental_domains)
    return lift_svg(tour, opts.show_fundamental_domains, opts.cell_px)
