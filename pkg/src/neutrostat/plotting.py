"""SVG export of set-valued histograms and scatter plots.

Output is deterministic: fixed hash salt, no date metadata.
"""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import Rectangle  # noqa: E402

from . import setval as sv  # noqa: E402
from .regression import LinearModel, ScatterKind, scatter_objects, strip_lines  # noqa: E402

_RC = {
    "svg.hashsalt": "neutrostat",
    "svg.fonttype": "none",
    "font.size": 10,
    "axes.spines.top": False,
    "axes.spines.right": False,
}


def _save(fig, path):
    fig.savefig(path, format="svg", metadata={"Date": None, "Creator": None})
    plt.close(fig)


def export_histogram_svg(bars, path, xlabel="", ylabel="frequency", title=None):
    """Bars given as (left edge, right edge, frequency set).

    Each bar is solid up to the smallest frequency and hatched from there to
    the largest; crisp frequencies give ordinary bars.
    """
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(6, 4))
        for left, right, freq in bars:
            freq = sv.as_setvalue(freq)
            width = right - left
            ax.add_patch(Rectangle((left, 0), width, freq.inf, facecolor="0.55", edgecolor="black"))
            if freq.sup > freq.inf:
                ax.add_patch(
                    Rectangle(
                        (left, freq.inf), width, freq.sup - freq.inf,
                        facecolor="white", edgecolor="black", hatch="///",
                    )
                )
        if bars:
            ax.set_xlim(min(b[0] for b in bars), max(b[1] for b in bars))
            ax.set_ylim(0, 1.1 * max(sv.as_setvalue(b[2]).sup for b in bars) or 1)
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
        if title:
            ax.set_title(title)
        _save(fig, path)


def export_scatter_svg(points, path, model: LinearModel = None, title=None):
    """Points as dots, one-sided sets as segments, two-sided sets as boxes.

    With a model, the strip between its lower and upper lines is shaded over
    the non-negative part of the data's x range.
    """
    objects = scatter_objects(points)
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(6, 4))
        for ob in objects:
            x0, x1, y0, y1 = ob.x.inf, ob.x.sup, ob.y.inf, ob.y.sup
            if ob.kind is ScatterKind.POINT:
                ax.plot([x0], [y0], "o", color="black", markersize=4)
            elif ob.kind is ScatterKind.RECTANGLE:
                ax.add_patch(Rectangle((x0, y0), x1 - x0, y1 - y0, fill=False, edgecolor="black"))
            else:
                ax.plot([x0, x1], [y0, y1], "-", color="black", linewidth=2)
        if objects:
            xs = [v for ob in objects for v in (ob.x.inf, ob.x.sup)]
            ys = [v for ob in objects for v in (ob.y.inf, ob.y.sup)]
            if model is not None:
                (a_lo, b_lo), (a_hi, b_hi) = strip_lines(model)
                left, right = max(0.0, min(xs)), max(xs)
                if right > left:
                    gx = [left, right]
                    ax.fill_between(
                        gx, [a_lo + b_lo * x for x in gx], [a_hi + b_hi * x for x in gx],
                        color="tab:blue", alpha=0.2, linewidth=0,
                    )
            pad_x = 0.05 * (max(xs) - min(xs) or 1)
            pad_y = 0.05 * (max(ys) - min(ys) or 1)
            ax.set_xlim(min(xs) - pad_x, max(xs) + pad_x)
            if model is None:
                ax.set_ylim(min(ys) - pad_y, max(ys) + pad_y)
        ax.set_xlabel("x")
        ax.set_ylabel("y")
        if title:
            ax.set_title(title)
        _save(fig, path)
    return objects
