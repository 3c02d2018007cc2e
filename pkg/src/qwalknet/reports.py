"""CSV, JSON and SVG serialisation of experiment results.

CSV numbers use 12 significant digits (``format(x, ".12g")``) so they
re-serialise identically after parsing. JSON floats use Python's shortest
round-trip repr. All writes go through :func:`atomic_write`.
"""

import csv
import io
import json
import os
import tempfile
from pathlib import Path

import numpy as np

from .experiments import EdgeRemoval, SweepResult
from .graph import Graph

SWEEP_FORMAT = "qwalknet-sweep/1"


def fmt(x):
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".12g")


def atomic_write(path, text):
    """Write ``text`` to ``path`` via a temporary file and rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def csv_text(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(x) if not isinstance(x, str) else x for x in row])
    return buf.getvalue()


def parse_csv(text):
    """Header plus rows of floats. ``fmt`` maps integral floats back to bare integers."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    return header, [[float(x) for x in row] for row in reader]


def centrality_csv(report):
    rows = [(j, c, p) for j, (c, p) in enumerate(zip(report.centrality, report.population), start=1)]
    return csv_text(["node", "centrality", "population"], rows)


def centrality_json(report, manifest):
    return _dumps({
        "nodes": [
            {"node": j, "centrality": float(c), "population": float(p)}
            for j, (c, p) in enumerate(zip(report.centrality, report.population), start=1)
        ],
        "spearman_rho": report.spearman_rho,
        "manifest": manifest,
    })


def baseline_csv(sweep):
    return csv_text(["node", "population"], [(j, p) for j, p in enumerate(sweep.baseline, start=1)])


def _edge_rows(sweep, values):
    for rec, row in zip(sweep.per_edge, values):
        yield [rec.k, rec.pair[0], rec.pair[1], *row]


def deltas_csv(sweep):
    n = len(sweep.baseline)
    header = ["k", "u", "v", *map(str, range(1, n + 1))]
    return csv_text(header, _edge_rows(sweep, [r.deltas for r in sweep.per_edge]))


def signs_csv(sweep):
    n = len(sweep.baseline)
    header = ["k", "u", "v", *map(str, range(1, n + 1))]
    return csv_text(header, _edge_rows(sweep, [[int(x) for x in row] for row in sweep.flow_signs]))


def affinity_csv(alpha):
    n = alpha.shape[0]
    header = ["node", *map(str, range(1, n + 1))]
    return csv_text(header, ([i, *alpha[i - 1]] for i in range(1, n + 1)))


def comparison_csv(cmp):
    rows = [
        (j, a, b, a - b)
        for j, (a, b) in enumerate(zip(cmp.adjacency, cmp.laplacian), start=1)
    ]
    return csv_text(["node", "pop_adjacency", "pop_laplacian", "diff"], rows)


def _dumps(obj):
    return json.dumps(obj, indent=1, sort_keys=False) + "\n"


def sweep_to_dict(sweep, graph, manifest=None):
    return {
        "format": SWEEP_FORMAT,
        "n": graph.n,
        "edges": [list(p) for p in graph.edge_pairs()],
        "baseline": [float(x) for x in sweep.baseline],
        "per_edge": [
            {
                "k": r.k,
                "pair": list(r.pair),
                "disconnected": r.disconnected,
                "near_zero_count": r.near_zero_count,
                "populations": [float(x) for x in r.populations],
                "deltas": [float(x) for x in r.deltas],
            }
            for r in sweep.per_edge
        ],
        "flow_signs": [[int(x) for x in row] for row in sweep.flow_signs],
        "manifest": manifest,
    }


def sweep_json(sweep, graph, manifest):
    return _dumps(sweep_to_dict(sweep, graph, manifest))


def sweep_from_dict(data):
    """Inverse of :func:`sweep_to_dict`; returns ``(sweep, graph, manifest)``."""
    if data.get("format") != SWEEP_FORMAT:
        raise ValueError(f"not a sweep file (format={data.get('format')!r})")
    edges = tuple(sorted((u - 1, v - 1) for u, v in data["edges"]))
    graph = Graph(int(data["n"]), edges)
    per_edge = tuple(
        EdgeRemoval(
            k=int(r["k"]),
            pair=tuple(r["pair"]),
            populations=np.array(r["populations"], dtype=np.float64),
            deltas=np.array(r["deltas"], dtype=np.float64),
            near_zero_count=int(r["near_zero_count"]),
            disconnected=bool(r["disconnected"]),
        )
        for r in data["per_edge"]
    )
    signs = np.array(data["flow_signs"], dtype=np.int8).reshape(len(per_edge), graph.n)
    sweep = SweepResult(np.array(data["baseline"], dtype=np.float64), per_edge, signs)
    return sweep, graph, data.get("manifest")


def read_sweep(path):
    return sweep_from_dict(json.loads(Path(path).read_text()))


# -- SVG heatmap -------------------------------------------------------------

_NEG = (33, 102, 172)
_MID = (247, 247, 247)
_POS = (178, 24, 43)


def diverging_color(value):
    """Blue-white-red colour for ``value`` in [-1, 1] (clipped)."""
    x = min(1.0, max(-1.0, float(value)))
    end = _POS if x >= 0 else _NEG
    f = abs(x)
    r, g, b = (round(m + (e - m) * f) for m, e in zip(_MID, end))
    return f"#{r:02x}{g:02x}{b:02x}"


def heatmap_svg(matrix, cell=14, title="node affinity"):
    """Render a square matrix with values in [-1, 1] as an SVG grid with a legend.

    Rows and columns are labelled with 1-based node ids.
    """
    m = np.asarray(matrix, dtype=float)
    n = m.shape[0]
    margin = 34
    grid = n * cell
    legend_w = 70
    width = margin + grid + 20 + legend_w
    height = margin + grid + 20
    font = max(6, min(11, cell - 3))
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif">',
        f"<title>{title}</title>",
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>',
        '<g id="cells">',
    ]
    for i in range(n):
        for j in range(n):
            out.append(
                f'<rect x="{margin + j * cell}" y="{margin + i * cell}" width="{cell}" '
                f'height="{cell}" fill="{diverging_color(m[i, j])}"/>'
            )
    out.append("</g>")
    out.append(f'<g id="labels" font-size="{font}" fill="#333333">')
    for i in range(n):
        c = margin + i * cell + cell / 2
        out.append(f'<text x="{margin - 3}" y="{c:.1f}" text-anchor="end" dominant-baseline="middle">{i + 1}</text>')
        out.append(f'<text x="{c:.1f}" y="{margin - 4}" text-anchor="middle">{i + 1}</text>')
    out.append("</g>")

    lx = margin + grid + 20
    steps = 40
    bar_h = grid
    out.append('<g id="legend">')
    for s in range(steps):
        value = 1.0 - 2.0 * (s + 0.5) / steps
        y0 = margin + bar_h * s / steps
        out.append(
            f'<rect x="{lx}" y="{y0:.2f}" width="16" height="{bar_h / steps + 0.5:.2f}" '
            f'fill="{diverging_color(value)}"/>'
        )
    out.append(f'<rect x="{lx}" y="{margin}" width="16" height="{bar_h}" fill="none" stroke="#333333"/>')
    for tick in (1.0, 0.5, 0.0, -0.5, -1.0):
        y = margin + bar_h * (1.0 - tick) / 2.0
        out.append(f'<line x1="{lx + 16}" y1="{y:.2f}" x2="{lx + 20}" y2="{y:.2f}" stroke="#333333"/>')
        out.append(f'<text x="{lx + 23}" y="{y:.2f}" font-size="{font}" dominant-baseline="middle">{tick:g}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
