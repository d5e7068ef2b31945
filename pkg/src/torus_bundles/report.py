# report.py
#
# Human-readable renderings. Every pretty view is built from the JSON payload
# the CLI prints, never from a separate computation. FamilyTable tabulates
# the m,n family over a grid of (m, n).

from __future__ import annotations

import json

from .catalog import mn_family
from .classification import classify, enumerate_admissible


# ----------------------------------------------------------------------
# Text table helpers
# ----------------------------------------------------------------------

def format_table(header: list[str], rows: list[list]) -> str:
    cells = [[str(v) for v in header]] + [[_cell(v) for v in row] for row in rows]
    widths = [max(len(r[j]) for r in cells) for j in range(len(header))]
    lines = []
    for i, row in enumerate(cells):
        lines.append("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip())
        if i == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _cell(value) -> str:
    if isinstance(value, (list, dict)):
        return json.dumps(value, sort_keys=True)
    if value is None:
        return "-"
    return str(value)


def _group_line(group: dict) -> str:
    order = group.get("order")
    suffix = f" (order {order})" if order is not None else " (infinite)"
    return f"{group['description']}{suffix}  factors {group['invariant_factors']}"


# ----------------------------------------------------------------------
# Per-command renderers
# ----------------------------------------------------------------------

def _render_classify(payload):
    return "\n".join([
        f"surface  {payload['surface_label']}",
        f"H^2      {_group_line(payload['h2'])}",
        f"ρ symplectic: {payload['symplectic']}",
    ])


def _render_decide(payload):
    verdict = payload["verdict"]
    rows = [
        ["surface", payload["surface_label"]],
        ["H^2", payload["h2"]["description"]],
        ["class", payload["class"]["representative"]],
        ["coords", payload["class"]["coords"]],
        ["branch", verdict["branch"]],
        ["admits", verdict["admits"]],
    ]
    rows += [[key, value] for key, value in sorted(verdict["detail"].items())]
    return format_table(["field", "value"], rows)


def _render_enumerate(payload):
    head = f"{payload['count']} admissible classes in {payload['h2']['description']}"
    rows = [[c["coords"], c["representative"]] for c in payload["classes"]]
    return head + "\n\n" + format_table(["coords", "representative"], rows)


def _render_cohomology(payload):
    rows = [[f"H^{p}", payload[f"h{p}"]["description"], payload[f"h{p}"]["invariant_factors"]] for p in range(3)]
    out = [f"surface  {payload['surface_label']}", "", format_table(["degree", "group", "factors"], rows)]
    if "rational_image" in payload:
        out += ["", f"rational image of class: {payload['rational_image']}"]
    return "\n".join(out)


def _render_verify(payload):
    rows = [
        ["t", payload["t"]],
        ["seed", payload["seed"]],
        ["bound", payload["bound"]],
        ["samples", payload["samples"]],
        ["passed", payload["passed"]],
        ["failed", payload["failed"]],
        ["cocycle failures", payload["cocycle_failures"]],
        ["σ-lift tops", payload["lift_tops"]],
        ["class coords", payload["class"]["coords"]],
        ["class torsion", payload["class"]["is_torsion"]],
        ["rational image", payload["class"]["rational_image"]],
        ["ok", payload["ok"]],
    ]
    return format_table(["field", "value"], rows)


def _render_heis(payload):
    r = payload["result"]
    return f"{payload['expression']} = ({r['a']},{r['b']},{r['c']})  central={payload['central']}"


def _render_selftest(payload):
    rows = [[c["name"], "PASS" if c["passed"] else "FAIL", c["detail"]] for c in payload["checks"]]
    tail = f"\n\n{payload['passed']} passed, {payload['failed']} failed"
    return format_table(["check", "result", "detail"], rows) + tail


RENDERERS = {
    "classify": _render_classify,
    "decide": _render_decide,
    "enumerate": _render_enumerate,
    "cohomology": _render_cohomology,
    "verify-huebschmann": _render_verify,
    "heis-eval": _render_heis,
    "selftest": _render_selftest,
}


def render(payload: dict) -> str:
    renderer = RENDERERS.get(payload.get("command"))
    if renderer is None:
        raise ValueError(f"no renderer for command {payload.get('command')!r}")
    return renderer(payload)


# ----------------------------------------------------------------------
# m,n family table
# ----------------------------------------------------------------------

class FamilyTable:
    """
    Classification of the m,n family over a grid of parameters.

    Public builders:
        - text_grid()
        - latex_grid()
    """

    def __init__(self, ms, ns):
        self.ms = list(ms)
        self.ns = list(ns)
        self.representations = {}
        self.grid = {}

    def load(self):
        for m in self.ms:
            for n in self.ns:
                self.representations[(m, n)] = mn_family(m, n)
        return self

    def classify(self):
        """grid[(m, n)] = (H², number of admissible classes)."""
        for key, rho in self.representations.items():
            h2 = classify(rho.surface, rho)
            count = len(enumerate_admissible(rho.surface, rho))
            self.grid[key] = (h2, count)
        return self

    def _cell(self, m, n):
        h2, count = self.grid[(m, n)]
        return f"{h2.describe()} [{count}]"

    def text_grid(self):
        header = ["m \\ n"] + [str(n) for n in self.ns]
        rows = [[m] + [self._cell(m, n) for n in self.ns] for m in self.ms]
        return format_table(header, rows)

    def latex_grid(self):
        out = []
        out.append(r"\begin{tabular}{r|" + "l" * len(self.ns) + "}")
        out.append(r"$m \backslash n$ & " + " & ".join(str(n) for n in self.ns) + r" \\ \hline")
        for m in self.ms:
            cells = []
            for n in self.ns:
                h2, count = self.grid[(m, n)]
                group = _latex_group(h2)
                cells.append(f"${group}$ ({count})")
            out.append(f"{m} & " + " & ".join(cells) + r" \\")
        out.append(r"\end{tabular}")
        return "\n".join(out)


def _latex_group(h2) -> str:
    if h2.is_trivial():
        return "0"
    parts = [r"\mathbb{Z}"] * h2.free_rank
    parts += [rf"\mathbb{{Z}}_{{{d}}}" for d in h2.torsion_factors]
    return r" \oplus ".join(parts)
