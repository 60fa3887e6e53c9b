"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines as the
criteria execute.
"""

import itertools
import math
import random
from fractions import Fraction as F
from pathlib import Path

import pytest

from zdlab.divisors import (
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
from zdlab.linalg import rank
from zdlab.operators import OperatorSpec, assemble, operator_norm
from zdlab.report import emit_report, parse_report, run
from zdlab.scenario import parse_scenario
from zdlab.sequences import C0Sequence, diagonal_tdz_demo
from zdlab.spaces import (
    Affine,
    AtomicMeasureSpace,
    GridFunction,
    SimpleFunction,
    ess_range,
    linf_is_tdz,
    poly_tdz_witness,
    urysohn_sequence,
)
from zdlab.symbols import Block, Geom, Inv, SelfMap, Shift
from _family import random_spec

ROOT = Path(__file__).resolve().parents[1]
SCENARIOS = ROOT / "scenarios"


def _load(name):
    return parse_scenario((SCENARIOS / name).read_text())


def _report(criterion, passed, detail=""):
    mark = "PASS" if passed else "FAIL"
    suffix = f"  [{detail}]" if detail else ""
    print(f"\nACCEPTANCE {criterion}: {mark}{suffix}")
    assert passed, f"criterion {criterion} failed: {detail}"


def _verdict(report, task_name, target):
    for result in report.results:
        if result.task == task_name:
            for v in result.verdicts:
                if v.target == target:
                    return v
    raise AssertionError(f"no verdict {target} in task {task_name}")


def test_criterion_1_paper_example_suite():
    """Eight worked examples reproduce their published verdicts."""
    hits = 0
    # right zero divisors
    v = _verdict(run(_load("hc31_right_zd.yaml")), "classify_right", "right-zd")
    assert (v.status, v.rule) == ("Yes", "Thm-hc31")
    hits += 1
    v = _verdict(run(_load("anurag31_right_zd.yaml")), "classify_right", "right-zd")
    assert (v.status, v.rule) == ("Yes", "Thm-Anurag31")
    hits += 1
    # left zero divisors
    v = _verdict(run(_load("square_map_left_zd.yaml")), "classify_left", "left-zd")
    assert (v.status, v.rule) == ("Yes", "Thm-anurag13")
    hits += 1
    v = _verdict(run(_load("one_plus_inv_not_left_zd.yaml")), "classify_left", "left-zd")
    assert (v.status, v.rule) == ("No", "Thm-anurag13")
    hits += 1
    v = _verdict(
        run(_load("block2_zero_weights_left_zd.yaml")), "classify_left", "left-zd"
    )
    assert (v.status, v.rule) == ("Yes", "Thm-fiber-zero")
    hits += 1
    v = _verdict(
        run(_load("square_map_unit_weight_left_zd.yaml")), "classify_left", "left-zd"
    )
    assert (v.status, v.rule) == ("Yes", "Thm-anurag13")
    hits += 1
    # identity operator: probe columns decay, norm column constant one
    report = run(_load("identity_strongly_tdz.yaml"))
    demo = report.results[0]
    assert demo.verdicts[0].status == "Yes"
    tables = {t.label: t for t in demo.tables}
    norm_col = tables["operator norm"].values()
    assert norm_col == [1.0] * len(norm_col)
    harmonic = tables["probe harmonic"].values()
    assert all(a > b for a, b in zip(harmonic, harmonic[1:]))
    assert harmonic[-1] < harmonic[0] / 10
    hits += 1
    # vanishing diagonal: a TDZ with matching measured and analytic columns
    report = run(_load("diagonal_c0_tdz.yaml"))
    demo = report.results[0]
    assert (demo.verdicts[0].status, demo.verdicts[0].rule) == ("Yes", "Ex-comp")
    for row in demo.tables[0].rows:
        assert row.value == pytest.approx(row.bound, abs=1e-12)
    hits += 1
    _report(1, hits == 8, f"paper-example suite {hits}/8")


def test_criterion_2_witness_exactness():
    """Every Yes verdict over 1000 random specs yields an exactly verified
    witness (zero product on the window plus tail certificate)."""
    rng = random.Random(20260810)
    failures = 0
    yes_count = 0
    for _ in range(1000):
        spec = random_spec(rng)
        for side, classify, synth in (
            ("right", classify_right_zd, synth_right_witness),
            ("left", classify_left_zd, synth_left_witness),
        ):
            verdict = classify(spec)
            if verdict.status != "Yes":
                continue
            yes_count += 1
            witness = synth(spec)
            result = verify_witness(spec, witness)
            if not result.ok:
                failures += 1
    _report(2, failures == 0, f"{yes_count} witnesses over 1000 specs, {failures} failures")


def _no_right_annihilator(spec, dim):
    A = assemble(spec, dim)
    window = faithful_row_window(spec, dim)
    if window == 0:
        return True
    return rank(A.to_dense()[:window]) == window


def _no_left_annihilator(spec, dim):
    A = assemble(spec, dim)
    window = faithful_col_window(spec, dim)
    if window == 0:
        return True
    return rank([row[:window] for row in A.to_dense()]) == window


def test_criterion_3_oracle_agreement():
    """Classifier verdicts agree with the elimination oracle at truncation
    level: Yes finds an annihilator (window enlarged to hold the witness),
    No admits none over the faithful support block."""
    rng = random.Random(31415)
    checks = 0
    disagreements = 0
    for _ in range(1000):
        spec = random_spec(rng)
        for side in ("right", "left"):
            verdict = (classify_right_zd if side == "right" else classify_left_zd)(spec)
            if verdict.status == "Yes":
                witness = (synth_right_witness if side == "right" else synth_left_witness)(spec)
                for dim in (8, 12):
                    use = max(dim, witness.required_window)
                    found = oracle_annihilator(assemble(spec, use), side)
                    checks += 1
                    if found is None:
                        disagreements += 1
            elif verdict.status == "No":
                ok_fn = _no_right_annihilator if side == "right" else _no_left_annihilator
                for dim in (8, 12):
                    checks += 1
                    if not ok_fn(spec, dim):
                        disagreements += 1
    _report(3, disagreements == 0, f"{checks} oracle cross-checks, {disagreements} disagreements")


def test_criterion_4_norm_law():
    """Measured composition-operator norms equal fiber_bound ** (1/p)."""
    worst = 0.0
    for tail, bound in ((Shift(0), 1), (Shift(1), 1), (Block(2), 2), (Block(3), 3)):
        phi = SelfMap(tail=tail)
        for p in (F(1), F(2), math.inf):
            A = assemble(OperatorSpec.composition(phi, p), 24)
            measured = operator_norm(A)
            expected = 1.0 if p == math.inf else float(bound) ** (1.0 / float(p))
            worst = max(worst, abs(measured - expected))
    _report(4, worst <= 1e-9, f"worst deviation {worst:.3e}")


def test_criterion_5_diagonal_decay():
    """Tail-projected diagonal norms match the analytic sups to 1e-12."""
    worst = 0.0
    table = diagonal_tdz_demo(C0Sequence(tail=Inv(F(1))), 100, 110)
    for row in table.rows:
        worst = max(worst, abs(row.value - 1.0 / (row.n + 1)))
    table = diagonal_tdz_demo(C0Sequence(tail=Geom(F(1), F(1, 2))), 100, 110)
    for row in table.rows:
        worst = max(worst, abs(row.value - 2.0 ** -(row.n + 1)))
    _report(5, worst <= 1e-12, f"worst deviation {worst:.3e}")


def test_criterion_6_grid_hats():
    """Hats on a 10001-point grid: norm exactly one, products under 1/n,
    nonincreasing in n."""
    f = GridFunction.from_form(F(0), F(1), 10001, Affine(F(1), F(-1, 2)))
    ok = True
    previous = None
    for n in range(1, 101):
        hat = urysohn_sequence(f, F(1, 2), n)
        if hat.sup_norm() != 1:
            ok = False
            break
        product = f.multiply(hat).sup_norm()
        if not product < F(1, n):
            ok = False
            break
        if previous is not None and product > previous:
            ok = False
            break
        previous = product
    _report(6, ok, "norm-one hats, products < 1/n, nonincreasing, n <= 100")


def test_criterion_7_linf_polynomial_universality():
    """Exhaustively over simple functions with up to 4 atoms and values in
    {-2..2}: TDZ iff zero attained, and the degree-one shift always lands the
    essential range on zero."""
    values = [F(v) for v in (-2, -1, 0, 1, 2)]
    masses = [F(1), F(1, 2), F(3), F(2, 5)]
    count = 0
    for size in range(1, 5):
        space = AtomicMeasureSpace(tuple((f"a{i}", masses[i]) for i in range(size)))
        for combo in itertools.product(values, repeat=size):
            h = SimpleFunction(space, {f"a{i}": combo[i] for i in range(size)})
            count += 1
            expected = F(0) in combo
            res = linf_is_tdz(h)
            assert res.is_tdz == expected
            assert (0 in ess_range(h)) == expected
            if res.is_tdz:
                assert h.multiply(res.witness).sup_norm() == 0
            cert = poly_tdz_witness(h)
            assert 0 in ess_range(cert.shifted)
    _report(7, True, f"{count} simple functions checked exhaustively")


def test_criterion_8_scaling_invariance():
    """Classifier outputs are invariant under nonzero rescaling of the weight."""
    rng = random.Random(271828)
    mismatches = 0
    scales = (F(1, 3), F(-1, 3), F(2), F(-2), F(5))
    for _ in range(200):
        spec = random_spec(rng)
        base = (
            classify_right_zd(spec).key(),
            classify_left_zd(spec).key(),
            classify_zd(spec).key(),
        )
        for c in scales:
            scaled = spec.scaled(c)
            got = (
                classify_right_zd(scaled).key(),
                classify_left_zd(scaled).key(),
                classify_zd(scaled).key(),
            )
            if got != base:
                mismatches += 1
    _report(8, mismatches == 0, f"200 specs x {len(scales)} scales, {mismatches} mismatches")


def test_criterion_9_determinism_and_round_trip():
    """Structured reports are byte-identical across runs and survive
    parse-emit round trips."""
    names = [
        "hc31_right_zd.yaml",
        "anurag31_right_zd.yaml",
        "square_map_left_zd.yaml",
        "one_plus_inv_not_left_zd.yaml",
        "block2_zero_weights_left_zd.yaml",
        "square_map_unit_weight_left_zd.yaml",
        "identity_strongly_tdz.yaml",
        "diagonal_c0_tdz.yaml",
        "atomic_left_zd.yaml",
        "grid_multiplier_tdz.yaml",
    ]
    ok = True
    for name in names:
        scenario = _load(name)
        first = emit_report(run(scenario), "structured")
        second = emit_report(run(scenario), "structured")
        if first != second:
            ok = False
            break
        report = run(scenario)
        if parse_report(emit_report(report, "structured")) != report:
            ok = False
            break
        if emit_report(parse_report(first), "structured") != first:
            ok = False
            break
    _report(9, ok, f"{len(names)} scenario reports, byte-stable and round-trip exact")
