"""Command-line front end orchestrating the full pipeline.

Subcommands mirror the library modules (caseio, netmat, resistance,
eadj, place, structural) plus `table` and `export` which reproduce the
published placement-count table and the per-figure data series.  All
output is deterministic: fixed 12-significant-digit CSV, fixed row
order, canonical JSON.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import click
import numpy as np

from . import caseio, eadj, netmat, placement, resistance, structural

#: published minimum PMU counts (topological, electrical) per system size
PUBLISHED_COUNTS = {
    9: (3, 4), 14: (4, 7), 30: (10, 17), 39: (13, 22),
    57: (17, 35), 118: (32, 93), 162: (43, 125),
}

BUNDLED = ("case9", "case14", "case30", "case57", "case118")

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_UNPROVEN = 2


def fmt(v):
    """Fixed 12-significant-digit rendering for CSV output."""
    return f"{v:.12g}"


def resolve_case(case_ref, case_dir=None):
    """Find a case by path, bundled name, or name inside --case-dir."""
    p = Path(case_ref)
    if p.is_file():
        return p.stem, p.read_text()
    name = p.stem
    if case_dir is not None:
        candidate = Path(case_dir) / f"{name}.m"
        if candidate.is_file():
            return name, candidate.read_text()
    if name in BUNDLED:
        ref = resources.files("gridpmu.data") / f"{name}.m"
        return name, ref.read_text()
    raise click.ClickException(
        f"cannot find case {case_ref!r} (not a file, not bundled"
        + (", not in --case-dir" if case_dir else "")
        + ")"
    )


def load_case(case_ref, case_dir=None):
    name, text = resolve_case(case_ref, case_dir)
    try:
        return caseio.parse_case(text, name=name)
    except caseio.CaseError as exc:
        raise SystemExit(f"error: {case_ref}: {exc}") from exc


def load_profile_opt(case, profile_path):
    if profile_path is None:
        return netmat.flat_profile(case)
    return netmat.load_profile(profile_path)


def ground_index(case, ground):
    if ground is None:
        return case.slack_index
    return case.bus_index(ground)


def electrical_adjacency(case, profile=None, ground=None, edges=None):
    """Case -> Jacobian -> resistance matrix -> thresholded adjacency."""
    prof = profile if profile is not None else netmat.flat_profile(case)
    h = netmat.power_angle_jacobian(case, prof)
    e = resistance.resistance_matrix(h.matrix, ground_index(case, ground))
    return eadj.threshold_adjacency(e, edges if edges else case.m)


def emit(text, out):
    if out is None:
        click.echo(text, nl=False)
    else:
        Path(out).write_text(text)


def matrix_csv(mat, labels):
    lines = ["bus," + ",".join(str(l) for l in labels)]
    for label, row in zip(labels, mat):
        lines.append(str(label) + "," + ",".join(fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def bus_labels(case):
    return [b.id for b in case.buses]


@click.group()
def main():
    """Electrical-structure analysis and PMU placement for power grids."""


# ------------------------------------------------------------------ caseio

@main.group("caseio")
def caseio_group():
    """Case file inspection."""


@caseio_group.command("dump")
@click.argument("case")
@click.option("--case-dir", type=click.Path(exists=True), default=None)
@click.option("--out", type=click.Path(), default=None)
def caseio_dump(case, case_dir, out):
    """Dump the parsed case as canonical JSON."""
    pc = load_case(case, case_dir)
    for w in caseio.validate_case(pc):
        click.echo(f"warning: {w.code}: {w.message}", err=True)
    emit(caseio.case_to_json(pc) + "\n", out)


# ------------------------------------------------------------------ netmat

@main.group("netmat")
def netmat_group():
    """Network matrices."""


@netmat_group.command("ybus")
@click.argument("case")
@click.option("--case-dir", type=click.Path(exists=True), default=None)
@click.option("--format", "fmt_", type=click.Choice(["json", "csv"]),
              default="csv")
@click.option("--out", type=click.Path(), default=None)
def netmat_ybus(case, case_dir, fmt_, out):
    """Bus admittance matrix."""
    pc = load_case(case, case_dir)
    y = netmat.build_ybus(pc).matrix
    labels = bus_labels(pc)
    if fmt_ == "json":
        payload = {
            "case": pc.name,
            "bus_labels": labels,
            "real": [[v for v in row] for row in y.real.tolist()],
            "imag": [[v for v in row] for row in y.imag.tolist()],
        }
        emit(json.dumps(payload, indent=2) + "\n", out)
    else:
        lines = ["bus," + ",".join(str(l) for l in labels)]
        for label, row in zip(labels, y):
            cells = [f"{fmt(v.real)}{v.imag:+.12g}j" for v in row]
            lines.append(str(label) + "," + ",".join(cells))
        emit("\n".join(lines) + "\n", out)


@netmat_group.command("jacobian")
@click.argument("case")
@click.option("--case-dir", type=click.Path(exists=True), default=None)
@click.option("--profile", type=click.Path(exists=True), default=None,
              help="JSON voltage profile (v_mag, v_ang_deg); default flat")
@click.option("--out", type=click.Path(), default=None)
def netmat_jacobian(case, case_dir, profile, out):
    """dP/dtheta Jacobian block as CSV."""
    pc = load_case(case, case_dir)
    prof = load_profile_opt(pc, profile)
    h = netmat.power_angle_jacobian(pc, prof)
    emit(matrix_csv(h.matrix, bus_labels(pc)), out)


# -------------------------------------------------------------- resistance

class DefaultCommandGroup(click.Group):
    """Group that forwards unknown first arguments to a default command."""

    default_command = None

    def resolve_command(self, ctx, args):
        if args and args[0] not in self.commands:
            args = [self.default_command, *args]
        return super().resolve_command(ctx, args)


class ResistanceGroup(DefaultCommandGroup):
    default_command = "matrix"


@main.group("resistance", cls=ResistanceGroup)
def resistance_group():
    """Resistance-distance matrix (default: emit the matrix)."""


@resistance_group.command("matrix")
@click.argument("case")
@click.option("--case-dir", type=click.Path(exists=True), default=None)
@click.option("--ground", type=int, default=None,
              help="external bus label to ground; default slack bus")
@click.option("--profile", type=click.Path(exists=True), default=None)
@click.option("--out", type=click.Path(), default=None)
def resistance_matrix_cmd(case, case_dir, ground, profile, out):
    """Full resistance-distance matrix as CSV."""
    pc = load_case(case, case_dir)
    prof = load_profile_opt(pc, profile)
    h = netmat.power_angle_jacobian(pc, prof)
    e = resistance.resistance_matrix(h.matrix, ground_index(pc, ground))
    emit(matrix_csv(e.entries, bus_labels(pc)), out)


@resistance_group.command("check")
@click.argument("case")
@click.option("--case-dir", type=click.Path(exists=True), default=None)
@click.option("--ground", type=int, default=None)
@click.option("--profile", type=click.Path(exists=True), default=None)
@click.option("--out", type=click.Path(), default=None)
def resistance_check_cmd(case, case_dir, ground, profile, out):
    """Metric-property report as JSON."""
    pc = load_case(case, case_dir)
    prof = load_profile_opt(pc, profile)
    h = netmat.power_angle_jacobian(pc, prof)
    e = resistance.resistance_matrix(h.matrix, ground_index(pc, ground))
    report = resistance.check_metric(e)
    payload = {
        "case": pc.name,
        "n": report.n,
        "max_symmetry_violation": report.max_symmetry_violation,
        "min_entry": report.min_entry,
        "max_triangle_violation": report.max_triangle_violation,
        "worst_triple": list(report.worst_triple),
        "tolerance": report.tolerance,
        "passed": report.passed,
    }
    emit(json.dumps(payload, indent=2) + "\n", out)
    if not report.passed:
        raise SystemExit(EXIT_INVALID)


# ------------------------------------------------------------------ eadj

@main.command("eadj")
@click.argument("case")
@click.option("--case-dir", type=click.Path(exists=True), default=None)
@click.option("--edges", type=int, default=None,
              help="edge target; default: in-service branch count")
@click.option("--ground", type=int, default=None)
@click.option("--profile", type=click.Path(exists=True), default=None)
@click.option("--format", "fmt_", type=click.Choice(["csv", "dot"]),
              default="csv")
@click.option("--out", type=click.Path(), default=None)
def eadj_cmd(case, case_dir, edges, ground, profile, fmt_, out):
    """Electrical adjacency matrix from thresholded resistance distances."""
    pc = load_case(case, case_dir)
    prof = load_profile_opt(pc, profile)
    result = electrical_adjacency(pc, prof, ground, edges)
    adj = result.adjacency
    if fmt_ == "dot":
        decomp = structural.connected_components(adj)
        emit(eadj.to_dot(adj, labels=bus_labels(pc), components=decomp), out)
    else:
        emit(matrix_csv(adj.matrix, bus_labels(pc)), out)


# ------------------------------------------------------------------ place

def _adjacency_for(pc, structure, profile, ground, edges):
    if structure == "topo":
        return netmat.topological_adjacency(pc)
    return electrical_adjacency(pc, profile, ground, edges).adjacency


@main.command("place")
@click.argument("case")
@click.option("--case-dir", type=click.Path(exists=True), default=None)
@click.option("--structure", type=click.Choice(["topo", "elec"]),
              default="topo")
@click.option("--edges", type=int, default=None)
@click.option("--ground", type=int, default=None)
@click.option("--profile", type=click.Path(exists=True), default=None)
@click.option("--budget", type=float, default=600.0,
              help="solver time budget in seconds")
@click.option("--out", type=click.Path(), default=None)
def place_cmd(case, case_dir, structure, edges, ground, profile, budget,
              out):
    """Solve the minimum placement integer program; JSON result."""
    pc = load_case(case, case_dir)
    prof = load_profile_opt(pc, profile)
    adj = _adjacency_for(pc, structure, prof, ground, edges)
    result = placement.solve_placement(adj, time_budget=budget)
    labels = bus_labels(pc)
    payload = {
        "case": pc.name,
        "structure": structure,
        "count": result.count,
        "status": result.status,
        "lower_bound": result.lower_bound,
        "node_count": result.node_count,
        "elapsed_s": round(result.elapsed, 3),
        "pmu_buses": [labels[i] for i in result.sites],
        "x": list(result.x),
    }
    emit(json.dumps(payload, indent=2) + "\n", out)
    if result.status != placement.OPTIMAL:
        raise SystemExit(EXIT_UNPROVEN)


# -------------------------------------------------------------- structural

class StructuralGroup(DefaultCommandGroup):
    default_command = "analyze"


@main.group("structural", cls=StructuralGroup)
def structural_group():
    """Average-distance and component analysis (default: analyze)."""


def _structural_payload(pc, prof, ground, edges):
    result = electrical_adjacency(pc, prof, ground, edges)
    adj = result.adjacency
    lam = structural.lambda_vector(adj)
    decomp = structural.connected_components(adj)
    heur = structural.heuristic_placement(adj, lam, decomp)
    labels = bus_labels(pc)
    return adj, {
        "case": pc.name,
        "edge_count": adj.edge_count,
        "tau": result.tau if result.tau != float("inf") else None,
        "ties_broken": result.ties_broken,
        "lambda": {
            str(labels[i]): lam.values[i] for i in range(pc.n)
        },
        "lambda_min": lam.lambda_min,
        "lambda_argmin_buses": [labels[i] for i in lam.argmin_set],
        "components": [[labels[v] for v in comp]
                       for comp in decomp.components],
        "isolated_buses": [labels[c[0]] for c in decomp.isolated],
        "clique_components": [[labels[v] for v in comp]
                              for comp in decomp.clique_components],
        "heuristic_count": heur.count,
        "heuristic_buses": [labels[i] for i in heur.sites],
    }


@structural_group.command("analyze")
@click.argument("case")
@click.option("--case-dir", type=click.Path(exists=True), default=None)
@click.option("--edges", type=int, default=None)
@click.option("--ground", type=int, default=None)
@click.option("--profile", type=click.Path(exists=True), default=None)
@click.option("--out", type=click.Path(), default=None)
def structural_analyze(case, case_dir, edges, ground, profile, out):
    """Lambda vector, components and heuristic placement as JSON."""
    pc = load_case(case, case_dir)
    prof = load_profile_opt(pc, profile)
    _, payload = _structural_payload(pc, prof, ground, edges)
    emit(json.dumps(payload, indent=2) + "\n", out)


@structural_group.command("compare")
@click.argument("case")
@click.option("--case-dir", type=click.Path(exists=True), default=None)
@click.option("--edges", type=int, default=None)
@click.option("--ground", type=int, default=None)
@click.option("--profile", type=click.Path(exists=True), default=None)
@click.option("--budget", type=float, default=600.0)
@click.option("--out", type=click.Path(), default=None)
def structural_compare(case, case_dir, edges, ground, profile, budget, out):
    """Run heuristic and integer program; print the consistency verdict."""
    pc = load_case(case, case_dir)
    prof = load_profile_opt(pc, profile)
    adj, payload = _structural_payload(pc, prof, ground, edges)
    ilp = placement.solve_placement(adj, time_budget=budget)
    lam = structural.lambda_vector(adj)
    decomp = structural.connected_components(adj)
    heur = structural.heuristic_placement(adj, lam, decomp)
    report = structural.consistency_check(heur, ilp)
    payload.update({
        "ilp_count": ilp.count,
        "ilp_status": ilp.status,
        "consistent": report.matches,
        "detail": report.detail,
    })
    emit(json.dumps(payload, indent=2) + "\n", out)
    if ilp.status != placement.OPTIMAL:
        raise SystemExit(EXIT_UNPROVEN)


# ------------------------------------------------------------------ table

@dataclass(frozen=True)
class TableOneRow:
    case_name: str
    n_buses: int
    topo_count: int
    elec_count: int
    topo_status: str
    elec_status: str
    topo_elapsed: float
    elec_elapsed: float
    error: str | None = None


def run_table(cases, budget=600.0):
    """Per case: topological and electrical placement counts.

    ``cases`` is a list of PowerCase.  Per-case failures produce a row
    with the error recorded; remaining rows are still computed.
    """
    rows = []
    for pc in cases:
        try:
            topo = placement.solve_placement(
                netmat.topological_adjacency(pc), time_budget=budget)
            elec = placement.solve_placement(
                electrical_adjacency(pc).adjacency, time_budget=budget)
            rows.append(TableOneRow(
                case_name=pc.name, n_buses=pc.n,
                topo_count=topo.count, elec_count=elec.count,
                topo_status=topo.status, elec_status=elec.status,
                topo_elapsed=topo.elapsed, elec_elapsed=elec.elapsed,
            ))
        except Exception as exc:  # noqa: BLE001 - keep remaining rows going
            rows.append(TableOneRow(
                case_name=pc.name, n_buses=pc.n,
                topo_count=0, elec_count=0,
                topo_status="error", elec_status="error",
                topo_elapsed=0.0, elec_elapsed=0.0, error=str(exc),
            ))
    return rows


def render_table(rows):
    """Fixed-width table plus the diff against the published counts."""
    out = ["case      N    topo  elec  topo-status            elec-status"]
    for r in rows:
        if r.error:
            out.append(f"{r.case_name:<9} {r.n_buses:<4} error: {r.error}")
        else:
            out.append(
                f"{r.case_name:<9} {r.n_buses:<4} {r.topo_count:<5} "
                f"{r.elec_count:<5} {r.topo_status:<22} {r.elec_status}"
            )
    out.append("")
    out.append("diff against published counts "
               "(electrical column assumes a flat-start Jacobian):")
    for r in rows:
        if r.error:
            continue
        published = PUBLISHED_COUNTS.get(r.n_buses)
        if published is None:
            out.append(f"  {r.case_name}: no published row")
            continue
        pt, pe = published
        topo_verdict = "match" if r.topo_count == pt else \
            f"MISMATCH (published {pt})"
        elec_verdict = "match" if r.elec_count == pe else \
            f"MISMATCH (published {pe}; operating point unstated in source)"
        out.append(f"  {r.case_name}: topological {r.topo_count} "
                   f"{topo_verdict}; electrical {r.elec_count} "
                   f"{elec_verdict}")
    return "\n".join(out) + "\n"


@main.command("table")
@click.argument("cases", nargs=-1)
@click.option("--case-dir", type=click.Path(exists=True), default=None)
@click.option("--budget", type=float, default=600.0)
@click.option("--format", "fmt_", type=click.Choice(["text", "json"]),
              default="text")
@click.option("--out", type=click.Path(), default=None)
def table_cmd(cases, case_dir, budget, fmt_, out):
    """Placement counts for both structures across cases.

    With no arguments, runs every bundled case.
    """
    names = list(cases) if cases else list(BUNDLED)
    parsed = [load_case(name, case_dir) for name in names]
    rows = run_table(parsed, budget=budget)
    if fmt_ == "json":
        payload = []
        for r in rows:
            published = PUBLISHED_COUNTS.get(r.n_buses)
            payload.append({
                "case": r.case_name, "n": r.n_buses,
                "topo_count": r.topo_count, "elec_count": r.elec_count,
                "topo_status": r.topo_status, "elec_status": r.elec_status,
                "published_topo": published[0] if published else None,
                "published_elec": published[1] if published else None,
                "error": r.error,
            })
        emit(json.dumps(payload, indent=2) + "\n", out)
    else:
        emit(render_table(rows), out)
    if any(r.error for r in rows):
        raise SystemExit(EXIT_INVALID)
    if any(r.topo_status != placement.OPTIMAL
           or r.elec_status != placement.OPTIMAL for r in rows):
        raise SystemExit(EXIT_UNPROVEN)


# ------------------------------------------------------------------ export

@main.command("export")
@click.argument("case")
@click.option("--which",
              type=click.Choice(["lambda-elec", "lambda-topo",
                                 "graph-elec", "graph-topo"]),
              required=True)
@click.option("--case-dir", type=click.Path(exists=True), default=None)
@click.option("--edges", type=int, default=None)
@click.option("--ground", type=int, default=None)
@click.option("--profile", type=click.Path(exists=True), default=None)
@click.option("--out", type=click.Path(), default=None)
def export_cmd(case, which, case_dir, edges, ground, profile, out):
    """Figure data: per-bus average distance CSV or graph DOT."""
    pc = load_case(case, case_dir)
    prof = load_profile_opt(pc, profile)
    if which.endswith("topo"):
        adj = netmat.topological_adjacency(pc)
    else:
        adj = electrical_adjacency(pc, prof, ground, edges).adjacency
    labels = bus_labels(pc)
    if which.startswith("lambda"):
        lam = structural.lambda_vector(adj)
        ilp = placement.solve_placement(adj)
        lines = ["bus,lambda,is_argmin,x"]
        argmin = set(lam.argmin_set)
        for i, label in enumerate(labels):
            lines.append(
                f"{label},{fmt(lam.values[i])},"
                f"{1 if i in argmin else 0},{ilp.x[i]}"
            )
        emit("\n".join(lines) + "\n", out)
    else:
        decomp = structural.connected_components(adj)
        emit(eadj.to_dot(adj, labels=labels, components=decomp), out)


if __name__ == "__main__":
    main()
