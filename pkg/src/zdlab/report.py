"""Task execution and report emission.

``run`` executes a scenario's tasks in order, never letting one task's
failure abort its siblings, and returns a :class:`Report`.  Reports emit in
three formats: an aligned human table, CSV (one block per convergence
table), and a structured JSON mirror with stable field names.  The
structured form is deterministic: floats are canonicalized to 12
significant digits when records are built, and per-task wall-clock time is
kept out of it (and out of report equality), so identical scenario text
yields byte-identical structured reports.
"""

from __future__ import annotations

import json
import re
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import divisors
from .divisors import (
    Verdict,
    Witness,
    classify_left_zd,
    classify_right_zd,
    classify_zd,
    faithful_col_window,
    faithful_row_window,
    oracle_annihilator,
    synth_left_witness,
    synth_right_witness,
    verify_witness,
)
from .linalg import rank
from .operators import (
    NormInterval,
    OperatorSpec,
    TruncatedOperator,
    assemble,
    exponent_key,
    operator_norm,
)
from .rational import canonical_float, format_float, format_rational
from .scenario import AtomicSpace, CxSpace, Scenario, Task
from .sequences import (
    ConvergenceTable,
    OperatorSequenceRule,
    TableRow,
    check_tdz_implies_strong,
    default_probes,
    diagonal_tdz_demo,
    named_probe,
    strongly_tdz_demo,
)
from .spaces import (
    AtomWitness,
    cx_is_tdz,
    ess_range,
    linf_is_tdz,
    lp_comp_left_zd,
    mult_op_tdz,
    poly_tdz_witness,
    radon_nikodym,
    verify_atomic_witness,
)

DEFAULT_ORACLE_SIZES = (8, 12)
DEFAULT_NORM_SIZES = (8, 16, 32, 64, 128)
DEFAULT_N_MAX = 30


@dataclass(frozen=True)
class VerdictRecord:
    target: str
    status: str
    rule: str | None
    explanation: str


@dataclass(frozen=True)
class WitnessRecord:
    side: str
    kind: str
    rule: str
    indices: tuple[int, ...]
    coefficients: tuple[str, ...]
    anchor: int | None
    required_window: int
    verified: bool


@dataclass(frozen=True)
class AtomWitnessRecord:
    atoms: tuple[str, ...]
    anchor: str
    verified: bool


@dataclass(frozen=True)
class NormRecord:
    dim: int
    p: str
    method: str
    value: float | None = None
    lo: float | None = None
    hi: float | None = None


@dataclass(frozen=True)
class CheckRecord:
    name: str
    passed: bool
    detail: str


@dataclass
class TaskResult:
    task: str
    status: str = "ok"
    error: str | None = None
    verdicts: tuple[VerdictRecord, ...] = ()
    witnesses: tuple[WitnessRecord, ...] = ()
    atom_witnesses: tuple[AtomWitnessRecord, ...] = ()
    norms: tuple[NormRecord, ...] = ()
    tables: tuple[ConvergenceTable, ...] = ()
    checks: tuple[CheckRecord, ...] = ()
    notes: tuple[str, ...] = ()
    wall_ms: float = field(default=0.0, compare=False)


@dataclass
class Report:
    scenario_id: str
    results: tuple[TaskResult, ...]

    def all_ok(self) -> bool:
        return all(
            r.status == "ok" and all(c.passed for c in r.checks) for r in self.results
        )


def _witness_record(w: Witness, verified: bool) -> WitnessRecord:
    if w.kind == "coordinate_projection":
        indices: tuple[int, ...] = (w.index,)
        coefficients = (format_rational(1),)
        anchor = None
    elif w.kind == "span_projection":
        indices = w.support
        coefficients = tuple(format_rational(1) for _ in w.support)
        anchor = None
    elif w.kind == "functional_tensor":
        indices = tuple(i for i, _ in w.coeffs)
        coefficients = tuple(format_rational(c) for _, c in w.coeffs)
        anchor = w.target
    else:  # kernel_tensor
        indices = tuple(i for i, _ in w.vector)
        coefficients = tuple(format_rational(c) for _, c in w.vector)
        anchor = w.source
    return WitnessRecord(
        side=w.side,
        kind=w.kind,
        rule=w.rule,
        indices=indices,
        coefficients=coefficients,
        anchor=anchor,
        required_window=w.required_window,
        verified=verified,
    )


def _verdict_record(target: str, v: Verdict) -> VerdictRecord:
    return VerdictRecord(target, v.status, v.rule, v.explanation)


# ---------------------------------------------------------------------------
# Task execution


@dataclass(frozen=True)
class _Config:
    n_max: int | None = None
    tol: Fraction = Fraction(0)


def _lp_spec(scenario: Scenario) -> OperatorSpec:
    from .symbols import WeightSeq

    weight = scenario.symbols.weight or WeightSeq.one()
    return OperatorSpec(weight, scenario.symbols.map, scenario.space.p)


def _synth_for_side(spec: OperatorSpec, side: str) -> Witness:
    return synth_right_witness(spec) if side == "right" else synth_left_witness(spec)


_RIGHT_RULES = (divisors.RULE_ANURAG31, divisors.RULE_HC31, divisors.RULE_U_ZERO)


def _attach_witness(spec: OperatorSpec, verdict: Verdict, side: str) -> WitnessRecord:
    w = _synth_for_side(spec, side)
    res = verify_witness(spec, w)
    return _witness_record(w, bool(res))


def _classify_lp(scenario: Scenario, which: str) -> TaskResult:
    spec = _lp_spec(scenario)
    if which == "right":
        verdict = classify_right_zd(spec)
        target = "right-zd"
    elif which == "left":
        verdict = classify_left_zd(spec)
        target = "left-zd"
    else:
        verdict = classify_zd(spec)
        target = "zd"
    witnesses: tuple[WitnessRecord, ...] = ()
    if verdict.status == "Yes":
        if which == "zd":
            side = "right" if classify_right_zd(spec).status == "Yes" else "left"
        else:
            side = which
        witnesses = (_attach_witness(spec, verdict, side),)
    return TaskResult(
        task=f"classify_{which}",
        verdicts=(_verdict_record(target, verdict),),
        witnesses=witnesses,
    )


def _classify_left_atomic(scenario: Scenario) -> TaskResult:
    verdict, witness = lp_comp_left_zd(
        scenario.symbols.atom_map, scenario.symbols.atom_weight
    )
    records: tuple[AtomWitnessRecord, ...] = ()
    if witness is not None:
        ok = verify_atomic_witness(
            scenario.symbols.atom_map, scenario.symbols.atom_weight, witness
        )
        records = (AtomWitnessRecord(witness.atoms, witness.anchor, ok),)
    return TaskResult(
        task="classify_left",
        verdicts=(_verdict_record("left-zd", verdict),),
        atom_witnesses=records,
    )


def _witness_task(scenario: Scenario, task: Task) -> TaskResult:
    if isinstance(scenario.space, AtomicSpace):
        return _classify_left_atomic(scenario)
    spec = _lp_spec(scenario)
    side = task.params.get("side", "both")
    sides = ("left", "right") if side == "both" else (side,)
    witnesses = []
    notes = []
    for s in sides:
        verdict = classify_right_zd(spec) if s == "right" else classify_left_zd(spec)
        if verdict.status == "Yes":
            witnesses.append(_attach_witness(spec, verdict, s))
        else:
            notes.append(f"{s}: no witness, verdict is {verdict.status}")
    return TaskResult(task="witness", witnesses=tuple(witnesses), notes=tuple(notes))


def _resolve_probes(task: Task, dim: int) -> list[tuple[str, list[Fraction]]]:
    raw = task.params.get("probes")
    if raw is None:
        return default_probes(dim)
    probes = []
    for i, entry in enumerate(raw):
        if isinstance(entry, str):
            probes.append((entry, named_probe(entry, dim)))
        else:
            vec = list(entry)[:dim]
            vec += [Fraction(0)] * (dim - len(vec))
            probes.append((f"custom{i + 1}", vec))
    return probes


def _tdz_demo(scenario: Scenario, task: Task, cfg: _Config) -> TaskResult:
    n_max = cfg.n_max or task.params.get("n_max", DEFAULT_N_MAX)
    if isinstance(scenario.space, CxSpace):
        return _tdz_demo_cx(scenario, n_max, cfg)
    if isinstance(scenario.space, AtomicSpace):
        return _tdz_demo_atomic(scenario)
    rule_name = task.params.get("rule")
    if rule_name is None:
        rule_name = (
            "diagonal_tail" if scenario.symbols.diagonal is not None else "tail_projection"
        )
    dim = task.params.get("N", n_max + 10)
    if dim <= n_max:
        dim = n_max + 10
    p = scenario.space.p
    if rule_name == "diagonal_tail":
        coeffs = scenario.symbols.diagonal
        table = diagonal_tdz_demo(coeffs, n_max, dim, p)
        rule = OperatorSequenceRule("diagonal_tail", coeffs)
        from .sequences import diagonal_operator

        T = diagonal_operator(coeffs, dim, p)
        probes = _resolve_probes(task, dim)
        ok = check_tdz_implies_strong(T, rule, probes, min(n_max, 25))
        verdict = VerdictRecord(
            "diagonal-tdz",
            "Yes",
            "Ex-comp",
            "the diagonal coefficients vanish, so the tail norms decay to zero",
        )
        return TaskResult(
            task="tdz_demo",
            verdicts=(verdict,),
            tables=(table,),
            checks=(
                CheckRecord(
                    "tdz-implies-strong", ok, "row-wise norm inequality holds"
                ),
            ),
        )
    spec = _lp_spec(scenario)
    T = assemble(spec, dim)
    rule = OperatorSequenceRule(rule_name)
    probes = _resolve_probes(task, dim)
    tables = strongly_tdz_demo(T, rule, probes, n_max)
    ok = check_tdz_implies_strong(T, rule, probes, min(n_max, 25))
    rule_id = "Thm-STD2" if rule_name == "tail_projection" else "Ex-single-hole"
    verdict = VerdictRecord(
        "strongly-tdz",
        "Yes",
        rule_id,
        "norm-one members act pointwise; probe columns decay within the window",
    )
    return TaskResult(
        task="tdz_demo",
        verdicts=(verdict,),
        tables=tuple(tables),
        checks=(
            CheckRecord("tdz-implies-strong", ok, "row-wise norm inequality holds"),
        ),
    )


def _tdz_demo_cx(scenario: Scenario, n_max: int, cfg: _Config) -> TaskResult:
    h = scenario.symbols.multiplier
    hit = cx_is_tdz(h, cfg.tol)
    if hit.is_tdz:
        loc = format_rational(hit.location)
        kind = "exact root" if hit.exact else "approximate zero"
        cx_verdict = VerdictRecord(
            "cx-tdz", "Yes", "Thm-anurag20", f"{kind} at x = {loc} ({hit.via})"
        )
    else:
        cx_verdict = VerdictRecord(
            "cx-tdz", "No", "Thm-anurag20", "no zero on the grid"
        )
    mult = mult_op_tdz(h, n_max)
    mult_verdict = VerdictRecord(
        "mult-op-tdz",
        "Yes" if mult.is_tdz else "No",
        mult.rule,
        mult.note or "multiplier sequence built from grid hats",
    )
    poly = poly_tdz_witness(h)
    notes = (f"poly-tdz: {poly.polynomial()} makes the shifted function singular",)
    tables = (mult.table,) if mult.table is not None else ()
    return TaskResult(
        task="tdz_demo",
        verdicts=(cx_verdict, mult_verdict),
        tables=tables,
        notes=notes,
    )


def _tdz_demo_atomic(scenario: Scenario) -> TaskResult:
    h = scenario.symbols.multiplier
    res = linf_is_tdz(h)
    values = ", ".join(format_rational(v) for v in ess_range(h))
    linf_verdict = VerdictRecord(
        "linf-tdz",
        "Yes" if res.is_tdz else "No",
        "Thm-ess-range",
        f"essential range {{{values}}}",
    )
    mult = mult_op_tdz(h)
    mult_verdict = VerdictRecord(
        "mult-op-tdz",
        "Yes" if mult.is_tdz else "No",
        mult.rule,
        mult.note or "norm-one indicator of the zero atoms annihilates exactly",
    )
    poly = poly_tdz_witness(h)
    shifted_values = ", ".join(format_rational(v) for v in poly.evidence)
    notes = (
        f"poly-tdz: {poly.polynomial()} gives essential range {{{shifted_values}}}",
    )
    tables = (mult.table,) if mult.table is not None else ()
    return TaskResult(
        task="tdz_demo",
        verdicts=(linf_verdict, mult_verdict),
        tables=tables,
        notes=notes,
    )


def _norm_task(scenario: Scenario, task: Task) -> TaskResult:
    spec = _lp_spec(scenario)
    sizes = task.params.get("sizes", DEFAULT_NORM_SIZES)
    records = []
    for dim in sizes:
        T = assemble(spec, dim)
        norm = operator_norm(T)
        p_key = exponent_key(spec.p)
        if isinstance(norm, NormInterval):
            records.append(
                NormRecord(
                    dim,
                    p_key,
                    "interval",
                    lo=canonical_float(norm.lo),
                    hi=canonical_float(norm.hi),
                )
            )
        else:
            method = "power-iteration" if spec.p == 2 else "exact"
            records.append(NormRecord(dim, p_key, method, value=canonical_float(norm)))
    return TaskResult(task="norm", norms=tuple(records))


def _submatrix_rank_ok(A: TruncatedOperator, window: int, axis: str) -> bool:
    """Full-rank test for the faithful leading rows/columns of a truncation."""
    if window == 0:
        return True
    dense = A.to_dense()
    if axis == "rows":
        block = dense[:window]
    else:
        block = [row[:window] for row in dense]
    return rank(block) == window


def _verify_all_lp(scenario: Scenario, task: Task) -> TaskResult:
    spec = _lp_spec(scenario)
    sizes = task.params.get("sizes", DEFAULT_ORACLE_SIZES)
    checks: list[CheckRecord] = []
    notes: list[str] = []
    witnesses: list[WitnessRecord] = []
    side_status = {}
    for side in ("right", "left"):
        verdict = classify_right_zd(spec) if side == "right" else classify_left_zd(spec)
        side_status[side] = verdict.status
        if verdict.status == "Yes":
            w = _synth_for_side(spec, side)
            res = verify_witness(spec, w)
            witnesses.append(_witness_record(w, bool(res)))
            checks.append(
                CheckRecord(
                    f"{side}-witness-exact",
                    bool(res),
                    f"window {res.window}"
                    + ("" if res.ok else f", failing {res.failing}"),
                )
            )
            for dim in sizes:
                use = max(dim, w.required_window)
                found = oracle_annihilator(assemble(spec, use), side)
                checks.append(
                    CheckRecord(
                        f"{side}-oracle-N{dim}",
                        found is not None,
                        f"elimination window {use}",
                    )
                )
        elif verdict.status == "No":
            for dim in sizes:
                A = assemble(spec, dim)
                if side == "right":
                    window = faithful_row_window(spec, dim)
                    ok = _submatrix_rank_ok(A, window, "rows")
                else:
                    window = faithful_col_window(spec, dim)
                    ok = _submatrix_rank_ok(A, window, "cols")
                checks.append(
                    CheckRecord(
                        f"{side}-no-annihilator-N{dim}",
                        ok,
                        f"faithful window {window}",
                    )
                )
        else:
            notes.append(f"{side}: verdict Unknown, oracle cross-check skipped")
    zd = classify_zd(spec)
    yes_sides = [s for s, st in side_status.items() if st == "Yes"]
    if zd.status == "Yes":
        consistent = bool(yes_sides)
    elif zd.status == "No":
        consistent = all(st == "No" for st in side_status.values())
    else:
        consistent = not yes_sides and any(
            st == "Unknown" for st in side_status.values()
        )
    checks.append(
        CheckRecord(
            "zd-consistency",
            consistent,
            f"zd={zd.status}, right={side_status['right']}, left={side_status['left']}",
        )
    )
    return TaskResult(
        task="verify_all",
        witnesses=tuple(witnesses),
        checks=tuple(checks),
        notes=tuple(notes),
    )


def _verify_all_atomic(scenario: Scenario) -> TaskResult:
    phi = scenario.symbols.atom_map
    weight = scenario.symbols.atom_weight
    verdict, witness = lp_comp_left_zd(phi, weight)
    checks = []
    if witness is not None:
        checks.append(
            CheckRecord(
                "left-witness-exact",
                verify_atomic_witness(phi, weight, witness),
                f"projection onto {{{', '.join(witness.atoms)}}}",
            )
        )
    rn = radon_nikodym(phi)
    total = sum((phi.space.mass(a) for a in phi.space.ids), Fraction(0))
    pushed = sum((rn(a) * phi.space.mass(a) for a in phi.space.ids), Fraction(0))
    checks.append(
        CheckRecord(
            "pushforward-mass",
            pushed == total,
            f"density-weighted mass {pushed} vs total {total}",
        )
    )
    return TaskResult(
        task="verify_all",
        verdicts=(_verdict_record("left-zd", verdict),),
        checks=tuple(checks),
    )


def _run_task(scenario: Scenario, task: Task, cfg: _Config) -> TaskResult:
    if task.name == "classify_right":
        return _classify_lp(scenario, "right")
    if task.name == "classify_left":
        if isinstance(scenario.space, AtomicSpace):
            return _classify_left_atomic(scenario)
        return _classify_lp(scenario, "left")
    if task.name == "classify_zd":
        return _classify_lp(scenario, "zd")
    if task.name == "witness":
        return _witness_task(scenario, task)
    if task.name == "tdz_demo":
        return _tdz_demo(scenario, task, cfg)
    if task.name == "norm":
        return _norm_task(scenario, task)
    if task.name == "verify_all":
        if isinstance(scenario.space, AtomicSpace):
            return _verify_all_atomic(scenario)
        return _verify_all_lp(scenario, task)
    raise ValueError(f"unknown task {task.name!r}")  # pragma: no cover


def run(
    scenario: Scenario,
    *,
    n_max: int | None = None,
    tol: Fraction | None = None,
) -> Report:
    """Execute every task; a task-level failure is captured in its result and
    never aborts the remaining tasks."""
    cfg = _Config(n_max=n_max, tol=Fraction(tol) if tol is not None else Fraction(0))
    results = []
    for task in scenario.tasks:
        start = time.perf_counter()
        try:
            result = _run_task(scenario, task, cfg)
        except Exception as exc:  # noqa: BLE001 - task isolation is the contract
            result = TaskResult(
                task=task.name,
                status="error",
                error=f"{type(exc).__name__}: {exc}",
            )
        result.wall_ms = round((time.perf_counter() - start) * 1000.0, 3)
        results.append(result)
    return Report(scenario.id, tuple(results))


# ---------------------------------------------------------------------------
# Emission


def _table_to_data(table: ConvergenceTable) -> dict:
    return {
        "label": table.label,
        "rows": [
            {
                "n": r.n,
                "value": r.value,
                "bound": r.bound,
                "exact_zero": r.exact_zero,
            }
            for r in table.rows
        ],
    }


def _report_to_data(report: Report) -> dict:
    results = []
    for r in report.results:
        results.append(
            {
                "task": r.task,
                "status": r.status,
                "error": r.error,
                "verdicts": [
                    {
                        "target": v.target,
                        "status": v.status,
                        "rule": v.rule,
                        "explanation": v.explanation,
                    }
                    for v in r.verdicts
                ],
                "witnesses": [
                    {
                        "side": w.side,
                        "kind": w.kind,
                        "rule": w.rule,
                        "indices": list(w.indices),
                        "coefficients": list(w.coefficients),
                        "anchor": w.anchor,
                        "required_window": w.required_window,
                        "verified": w.verified,
                    }
                    for w in r.witnesses
                ],
                "atom_witnesses": [
                    {"atoms": list(w.atoms), "anchor": w.anchor, "verified": w.verified}
                    for w in r.atom_witnesses
                ],
                "norms": [
                    {
                        "dim": n.dim,
                        "p": n.p,
                        "method": n.method,
                        "value": n.value,
                        "lo": n.lo,
                        "hi": n.hi,
                    }
                    for n in r.norms
                ],
                "tables": [_table_to_data(t) for t in r.tables],
                "checks": [
                    {"name": c.name, "passed": c.passed, "detail": c.detail}
                    for c in r.checks
                ],
                "notes": list(r.notes),
            }
        )
    return {"scenario": report.scenario_id, "results": results}


def _emit_table(report: Report) -> str:
    lines = [f"scenario: {report.scenario_id}"]
    for i, r in enumerate(report.results, start=1):
        lines.append(f"task {i}: {r.task}  [{r.status}]  ({r.wall_ms:.3f} ms)")
        if r.error:
            lines.append(f"  error: {r.error}")
        for v in r.verdicts:
            rule = v.rule or "-"
            lines.append(f"  verdict {v.target:<14} {v.status:<8} rule={rule}")
            lines.append(f"    {v.explanation}")
        for w in r.witnesses:
            flag = "verified" if w.verified else "UNVERIFIED"
            lines.append(
                f"  witness {w.side} {w.kind} rule={w.rule} window={w.required_window} [{flag}]"
            )
            pairs = ", ".join(
                f"{i}:{c}" for i, c in zip(w.indices, w.coefficients)
            )
            anchor = f" anchor={w.anchor}" if w.anchor is not None else ""
            lines.append(f"    coefficients {pairs}{anchor}")
        for w in r.atom_witnesses:
            flag = "verified" if w.verified else "UNVERIFIED"
            lines.append(
                f"  witness projection onto {{{', '.join(w.atoms)}}} anchor={w.anchor} [{flag}]"
            )
        for n in r.norms:
            if n.method == "interval":
                lines.append(
                    f"  norm N={n.dim:<4} p={n.p:<4} in [{format_float(n.lo)}, {format_float(n.hi)}]"
                )
            else:
                lines.append(
                    f"  norm N={n.dim:<4} p={n.p:<4} {format_float(n.value)}  ({n.method})"
                )
        for t in r.tables:
            lines.append(f"  table: {t.label}  ({len(t.rows)} rows)")
            lines.append("    n      value          bound          exact")
            for row in t.rows:
                bound = format_float(row.bound) if row.bound is not None else "-"
                zero = "zero" if row.exact_zero else ""
                lines.append(
                    f"    {row.n:<6} {format_float(row.value):<14} {bound:<14} {zero}"
                )
        for c in r.checks:
            mark = "pass" if c.passed else "FAIL"
            lines.append(f"  check {c.name}: {mark}  ({c.detail})")
        for note in r.notes:
            lines.append(f"  note: {note}")
    return "\n".join(lines) + "\n"


def _slug(text: str) -> str:
    return re.sub(r"[^a-z0-9]+", "-", text.lower()).strip("-")


def csv_blocks(report: Report) -> list[tuple[str, ConvergenceTable]]:
    """(file stem, table) for every table-bearing task, in report order."""
    blocks = []
    for i, r in enumerate(report.results, start=1):
        for t in r.tables:
            stem = f"{_slug(report.scenario_id)}__task{i}-{_slug(r.task)}__{_slug(t.label)}"
            blocks.append((stem, t))
    return blocks


def _emit_csv(report: Report) -> str:
    blocks = csv_blocks(report)
    if not blocks:
        return "# no table-bearing tasks\n"
    parts = []
    for stem, table in blocks:
        parts.append(f"# {stem}\n{table.to_csv()}")
    return "\n".join(parts)


def emit_report(report: Report, fmt: str = "table") -> str:
    """Render a report as an aligned table, CSV blocks, or structured JSON."""
    if fmt == "table":
        return _emit_table(report)
    if fmt == "csv":
        return _emit_csv(report)
    if fmt == "structured":
        return json.dumps(_report_to_data(report), indent=2) + "\n"
    raise ValueError(f"unknown format {fmt!r} (expected table, csv or structured)")


# ---------------------------------------------------------------------------
# Parsing the structured form back


def _table_from_data(data: dict) -> ConvergenceTable:
    rows = tuple(
        TableRow(row["n"], row["value"], row["bound"], row["exact_zero"])
        for row in data["rows"]
    )
    return ConvergenceTable(data["label"], rows)


def parse_report(text: str) -> Report:
    """Inverse of the structured emission, field for field."""
    data = json.loads(text)
    results = []
    for r in data["results"]:
        results.append(
            TaskResult(
                task=r["task"],
                status=r["status"],
                error=r["error"],
                verdicts=tuple(
                    VerdictRecord(v["target"], v["status"], v["rule"], v["explanation"])
                    for v in r["verdicts"]
                ),
                witnesses=tuple(
                    WitnessRecord(
                        w["side"],
                        w["kind"],
                        w["rule"],
                        tuple(w["indices"]),
                        tuple(w["coefficients"]),
                        w["anchor"],
                        w["required_window"],
                        w["verified"],
                    )
                    for w in r["witnesses"]
                ),
                atom_witnesses=tuple(
                    AtomWitnessRecord(tuple(w["atoms"]), w["anchor"], w["verified"])
                    for w in r["atom_witnesses"]
                ),
                norms=tuple(
                    NormRecord(
                        n["dim"], n["p"], n["method"], n["value"], n["lo"], n["hi"]
                    )
                    for n in r["norms"]
                ),
                tables=tuple(_table_from_data(t) for t in r["tables"]),
                checks=tuple(
                    CheckRecord(c["name"], c["passed"], c["detail"]) for c in r["checks"]
                ),
                notes=tuple(r["notes"]),
            )
        )
    return Report(data["scenario"], tuple(results))
