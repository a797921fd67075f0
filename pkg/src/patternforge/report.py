"""Figure and report rendering.

Matplotlib (Agg backend) draws point sets with optional translucent
witness polygons, and the verification report path writes a ledger as
JSON + CSV next to a one-page summary figure.
"""

from __future__ import annotations

import csv
import math
import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .geom import PointSet
from .ledger import VerdictLedger
from .patterns import CountReport

__all__ = ["render_point_set", "write_ledger_report"]


def _embed(points: PointSet) -> list[complex]:
    return [p.to_float() for p in points]


def render_point_set(points: PointSet, out_path: str,
                     witnesses=None, title: str | None = None,
                     max_polygons: int = 64, dpi: int = 144) -> str:
    """Draw the set and return the output path.

    witnesses: iterable of index tuples into the set; each is drawn as a
    translucent polygon with vertices ordered by angle around the
    centroid, so similar copies read as shapes rather than zigzags.
    """
    zs = _embed(points)
    fig, ax = plt.subplots(figsize=(6, 6))
    if witnesses:
        cmap = plt.get_cmap("viridis")
        shown = list(witnesses)[:max_polygons]
        for i, w in enumerate(shown):
            poly = [zs[j] for j in w]
            cx = sum(z.real for z in poly) / len(poly)
            cy = sum(z.imag for z in poly) / len(poly)
            poly.sort(key=lambda z: math.atan2(z.imag - cy, z.real - cx))
            xs = [z.real for z in poly] + [poly[0].real]
            ys = [z.imag for z in poly] + [poly[0].imag]
            color = cmap(i / max(1, len(shown) - 1)) if len(shown) > 1 \
                else cmap(0.5)
            ax.fill(xs, ys, alpha=0.15, color=color, zorder=1)
            ax.plot(xs, ys, alpha=0.5, color=color, linewidth=0.8, zorder=2)
    ax.scatter([z.real for z in zs], [z.imag for z in zs], s=18, zorder=3,
               color="black")
    ax.set_aspect("equal")
    if title:
        ax.set_title(title)
    ax.grid(True, alpha=0.2)
    fig.tight_layout()
    fig.savefig(out_path, dpi=dpi)
    plt.close(fig)
    return out_path


def render_build(points: PointSet, count: CountReport | None,
                 out_path: str, title: str | None = None) -> str:
    wits = count.witness_sample if count is not None else None
    return render_point_set(points, out_path, witnesses=wits, title=title)


def write_ledger_report(ledger: VerdictLedger, out_dir: str,
                        figure_name: str = "summary.png") -> list[str]:
    """Write ledger.json, ledger.csv and a summary figure; return paths."""
    os.makedirs(out_dir, exist_ok=True)
    paths = []

    json_path = os.path.join(out_dir, "ledger.json")
    with open(json_path, "w", encoding="utf-8") as fh:
        fh.write(ledger.to_json())
    paths.append(json_path)

    csv_path = os.path.join(out_dir, "ledger.csv")
    with open(csv_path, "w", encoding="utf-8", newline="") as fh:
        wr = csv.writer(fh)
        wr.writerow(["claim_id", "kind", "expected", "computed", "tolerance",
                     "passed"])
        for c in ledger.claims:
            wr.writerow([c.claim_id, c.kind, c.expected, c.computed,
                         c.tolerance, c.passed])
    paths.append(csv_path)

    groups: dict[str, list[int]] = {}
    for c in ledger.claims:
        head = c.claim_id.split(".", 1)[0]
        bucket = groups.setdefault(head, [0, 0])
        bucket[0 if c.passed else 1] += 1
    names = sorted(groups)
    passed = [groups[n][0] for n in names]
    failed = [groups[n][1] for n in names]
    fig, ax = plt.subplots(figsize=(7, max(2.5, 0.6 * len(names) + 1.5)))
    ypos = range(len(names))
    ax.barh(ypos, passed, color="#2a9d8f", label="passed")
    ax.barh(ypos, failed, left=passed, color="#e76f51", label="failed")
    ax.set_yticks(list(ypos), names)
    ax.invert_yaxis()
    ax.set_xlabel("claims")
    s = ledger.summary()
    ax.set_title(f"{s['passed']}/{s['checked']} claims passed"
                 + (f", {s['informational']} informational"
                    if s["informational"] else ""))
    ax.legend(loc="lower right")
    fig.tight_layout()
    fig_path = os.path.join(out_dir, figure_name)
    fig.savefig(fig_path, dpi=144)
    plt.close(fig)
    paths.append(fig_path)
    return paths
