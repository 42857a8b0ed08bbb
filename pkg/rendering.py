"""
Graded Root Rendering
ASCII, JSON and SVG views of the graded root of a knot expression
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple
import io
import logging

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
from matplotlib.collections import LineCollection

from config import get_config
from exceptions import InvariantViolation
from knots import KnotExpr, TorusKnot, format_knot, is_pure_staircase, knot_homology
from laurent import torus_gaps
from schemas import GradedRootSchema
from staircase import Branch, GradedRootSummary, graded_root_branches, graded_root_summary

logger = logging.getLogger(__name__)

FORMATS = ('ascii', 'json', 'svg')


@dataclass(frozen=True)
class GradedRootView:
    knot: str
    summary: GradedRootSummary
    branches: Optional[Tuple[Branch, ...]] = None

    @property
    def tower_count(self) -> int:
        return self.summary.tower_count

    @property
    def branch_exponents(self) -> Tuple[int, ...]:
        return self.summary.branch_exponents


def graded_root_view(k: KnotExpr) -> GradedRootView:
    """
    Graded root of k

    Pure staircases (unknot, torus knots) also get merge heights anchored at
    chi(y0) = 0, cross-checked against the torsion exponents.
    """
    summary = graded_root_summary(knot_homology(k))
    branches = None
    if is_pure_staircase(k):
        gaps = torus_gaps(k.p, k.q) if isinstance(k, TorusKnot) else ()
        branches = graded_root_branches(gaps)
        lengths = tuple(sorted(b.length for b in branches if b.merge_height is not None))
        if lengths != summary.branch_exponents:
            raise InvariantViolation(
                f"graded root of {format_knot(k)}: branch lengths {lengths} "
                f"disagree with torsion exponents {summary.branch_exponents}"
            )
    return GradedRootView(knot=format_knot(k), summary=summary, branches=branches)


# ============= ASCII =============

def _chain(dots: int) -> str:
    return "--".join(["o"] * dots)


def render_ascii(view: GradedRootView) -> str:
    lines = [f"graded root of {view.knot}"]
    if view.branches is None:
        lines.append(f"  tower   {_chain(3)}-- ...")
        for e in view.branch_exponents:
            lines.append(f"  branch  {_chain(e + 1)}  length {e}")
        return "\n".join(lines) + "\n"

    for b in view.branches:
        if b.merge_height is None:
            lines.append(f"  tower   {b.leaf:<4} height {b.height:>3}  {_chain(3)}-- ...")
    for b in sorted(view.branches, key=lambda b: (b.merge_height is None, -(b.length or 0), b.leaf)):
        if b.merge_height is None:
            continue
        lines.append(
            f"  branch  {b.leaf:<4} height {b.height:>3}  {_chain(b.length + 1)}"
            f"  length {b.length}, joins {b.parent} at {b.merge_height}"
        )
    return "\n".join(lines) + "\n"


# ============= JSON =============

def render_json(view: GradedRootView) -> dict:
    return GradedRootSchema().dump(view)


# ============= SVG =============

def _layout(view: GradedRootView):
    """Dots and edges in (column, height) coordinates"""
    dots: List[Tuple[float, float]] = []
    edges: List[List[Tuple[float, float]]] = []
    tails: List[List[Tuple[float, float]]] = []

    if view.branches is None:
        # schematic: all leaves at level 0, tower in column 0
        depth = max(view.branch_exponents, default=0) + 2
        dots.extend((0, -y) for y in range(depth))
        edges.extend([(0, -y), (0, -y - 1)] for y in range(depth - 1))
        tails.append([(0, -depth + 1), (0, -depth - 0.5)])
        for column, e in enumerate(view.branch_exponents, start=1):
            dots.extend((column, -y) for y in range(e))
            edges.extend([(column, -y), (column, -y - 1)] for y in range(e - 1))
            edges.append([(column, -e + 1), (0, -e)])
        return dots, edges, tails

    column: Dict[str, int] = {b.leaf: i for i, b in enumerate(view.branches)}
    by_leaf = {b.leaf: b for b in view.branches}
    bottom = min(b.height if b.merge_height is None else b.merge_height for b in view.branches) - 1

    for b in view.branches:
        x = column[b.leaf]
        low = bottom if b.merge_height is None else b.merge_height + 1
        dots.extend((x, y) for y in range(low, b.height + 1))
        edges.extend([(x, y), (x, y + 1)] for y in range(low, b.height))
        if b.merge_height is None:
            tails.append([(x, bottom), (x, bottom - 1.5)])
            continue
        owner = by_leaf[b.parent]
        while owner.merge_height is not None and owner.merge_height >= b.merge_height:
            owner = by_leaf[owner.parent]
        edges.append([(x, low), (column[owner.leaf], b.merge_height)])
    return dots, edges, tails


def render_svg(view: GradedRootView) -> str:
    """Static tree figure: dots joined by edges, height is the relative grading"""
    cfg = get_config()
    dots, edges, tails = _layout(view)

    with plt.rc_context({'svg.hashsalt': cfg.SVG_HASHSALT, 'svg.fonttype': 'none'}):
        width = max(3.0, 0.6 * (max(x for x, _ in dots) + 2))
        height = max(3.0, 0.4 * (max(y for _, y in dots) - min(y for _, y in dots) + 4))
        fig, ax = plt.subplots(figsize=(width, height))
        try:
            ax.add_collection(LineCollection(edges, colors="0"))
            ax.add_collection(LineCollection(tails, colors="0", linestyles=":"))
            ax.scatter([x for x, _ in dots], [y for _, y in dots], s=18, c="0", zorder=3)
            ax.autoscale_view()
            ax.margins(0.15)
            ax.set_xticks([])
            if view.branches is None:
                ax.set_yticks([])
                ax.set_title(f"{view.knot} (schematic)")
            else:
                ax.set_ylabel("relative grading")
                ax.set_title(view.knot)
            for side in ('top', 'right', 'bottom'):
                ax.spines[side].set_visible(False)

            buf = io.StringIO()
            fig.savefig(buf, format="svg", metadata={'Date': None})
        finally:
            plt.close(fig)
    logger.debug(f"rendered svg for {view.knot}: {len(dots)} vertices")
    return buf.getvalue()


def render(view: GradedRootView, fmt: str):
    """Dispatch on one of FORMATS; json returns a dict, the others text"""
    if fmt == 'ascii':
        return render_ascii(view)
    if fmt == 'json':
        return render_json(view)
    if fmt == 'svg':
        return render_svg(view)
    raise ValueError(f"unknown graded root format {fmt!r}")
