"""Acceptance suite: one test per release criterion, each printing a verdict line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines.  All tolerances are pinned here, not configurable.
"""

import random
import time
from fractions import Fraction

import pytest

from slicelab.capacities import analyze, connect_sum_analysis
from slicelab.catalog import realize
from slicelab.cobordism import RelationQuery, check_relation
from slicelab.diagram import EMPTY_DIAGRAM, sum_diagrams
from slicelab.morse import SUBMANIFOLD, capping_index_offset, capping_value, morse_table
from slicelab.oracle import compare_with_analyzer, oracle_table
from slicelab.presets import all_presets, load_preset
from slicelab.slicer import NonGenericLevel, extract_slice, sweep, witness_relation

from conftest import random_catalog_spec


def report(num: int, ok: bool, text: str):
    print(f"\n[criterion {num:02d}] {'PASS' if ok else 'FAIL'}: {text}")
    assert ok, f"criterion {num} failed: {text}"


def test_criterion_01_morse_table_exactness():
    t0 = time.time()
    table = morse_table(realize("C(-,+,-;3,1,2)"))
    rows = {
        (r.location, r.index_offset, r.value)
        for r in table.data
        if r.source != SUBMANIFOLD
    }
    expected = {
        ("P-", 3, Fraction(3)),
        ("P+", 0, Fraction(-3)),
        ("P-", 2, Fraction(2)),
        ("P+", 1, Fraction(-2)),
        ("P-", 3, Fraction(4)),
        ("P+", 0, Fraction(-4)),
    }
    elapsed = time.time() - t0
    report(
        1,
        rows == expected and elapsed < 1.0,
        f"C(-,+,-;3,1,2) table matches the six fixture rows exactly ({elapsed:.2f}s)",
    )


def test_criterion_02_figure_eight_capacities():
    t0 = time.time()
    rep, verdict = analyze(realize("8+(1)"))
    d = rep.diagonal().status
    ok = (
        verdict.kind == "no-obstruction"
        and d["c+"].forced_value() == 0
        and d["c-"].forced_value() == Fraction(-1)
        and d["C+"].forced_value() == 0
        and d["C-"].forced_value() == 0
        and rep.get("H1[0]", "C+").forced_value() == Fraction(1)
        and rep.get("H1[0]", "C-").forced_value() == 0
    )
    _, v_minus = analyze(realize("8-(1)"), assume_negative_slice=True)
    ok = ok and v_minus.kind == "impossible"
    rep2, v2 = analyze(realize("8-(1)"), assume_negative_slice=False)
    ok = (
        ok
        and v2.kind == "no-obstruction"
        and rep2.diagonal().status["c+"].candidate_set() == {Fraction(-1)}
        and rep2.get("H1[0]", "C-").candidate_set() == {Fraction(1)}
    )
    elapsed = time.time() - t0
    report(
        2,
        ok and elapsed < 1.0,
        "8+(1) forces (0, -1, +1, 0); 8-(1) impossible with the slice assumption, "
        f"candidates {{-1}}/{{+1}} without ({elapsed:.2f}s)",
    )


def test_criterion_03_impossible_caterpillars():
    ok = True
    times = []
    for expr in ("C(-,+,-;3,1,2)", "C(-,-,-;3,1,2)", "C(-,-,-;1,3,3)"):
        t0 = time.time()
        rep, verdict = analyze(realize(expr))
        times.append(time.time() - t0)
        ok = ok and verdict.kind == "impossible" and times[-1] < 1.0
        if expr == "C(-,-,-;3,1,2)":
            chain = rep.diagonal().status["C+"].chain
            ok = ok and any("rank-surjection" in s for s in chain)
    report(
        3,
        ok,
        "all three caterpillar variants impossible, rank-surjection branch used "
        f"for C(-,-,-;3,1,2) (times {', '.join(f'{t:.2f}s' for t in times)})",
    )


def test_criterion_04_capcat_and_double_eight():
    rep, verdict = analyze(realize("C(+,-,+;1,2,2)"))
    ok = verdict.kind == "no-obstruction" and rep.diagonal().status[
        "c-"
    ].forced_value() == Fraction(-1)
    rep2, v2 = analyze(sum_diagrams(realize("8+(1)"), realize("8+(1)")))
    ok = ok and v2.kind == "no-obstruction" and rep2.diagonal().status[
        "c-"
    ].forced_value() == Fraction(-1)
    report(4, ok, "c-(diagonal) = -1 forced for C(+,-,+;1,2,2) and for 8+(1) + 8+(1)")


def test_criterion_05_connect_sum_corollary():
    _, verdict = connect_sum_analysis(realize("8-(1)"), realize("8+(2)"))
    report(
        5,
        verdict.kind == "impossible" and verdict.as_connect_sum,
        "8-(1) + 8+(2) impossible as a connect-sum slice",
    )


def test_criterion_06_relation_fixtures():
    up = check_relation(RelationQuery(realize("8+(1)"), realize("8+(2)")))
    down = check_relation(RelationQuery(realize("8+(2)"), realize("8+(1)")))
    fwd = check_relation(RelationQuery(realize("8+(1)"), realize("C(+,-,+;1,2,2)")))
    bwd = check_relation(RelationQuery(realize("C(+,-,+;1,2,2)"), realize("8+(1)")))
    dbl = check_relation(
        RelationQuery(realize("8+(1)"), sum_diagrams(realize("8+(1)"), realize("8+(1)")))
    )
    empties = [
        check_relation(RelationQuery(EMPTY_DIAGRAM, realize(e))).kind
        for e in ("8+(1)", "8-(3)", "C(-,+,-;3,1,2)")
    ]
    ok = (
        up.kind == "no-obstruction-found"
        and down.kind == "obstructed"
        and fwd.kind == "obstructed"
        and bwd.kind == "obstructed"
        and dbl.kind == "obstructed"
        and all(k == "no-obstruction-found" for k in empties)
    )
    report(
        6,
        ok,
        "ordered eights one-way, eight/caterpillar both ways obstructed, doubling "
        "obstructed, empty bottom never obstructed",
    )


def test_criterion_07_pair_symmetry_property():
    t0 = time.time()
    rng = random.Random(1729)
    checked_pairs = 0
    diagrams = 0
    while diagrams < 200:
        spec = random_catalog_spec(rng)
        d = realize(spec)
        diagrams += 1
        for ci in range(len(d.crossings)):
            v0 = capping_value(d, ci, 0)
            v1 = capping_value(d, ci, 1)
            assert v0 + v1 == 0, (spec, ci)
            o0 = capping_index_offset(d, ci, 0)
            o1 = capping_index_offset(d, ci, 1)
            assert o0 + o1 == 3, (spec, ci)
            for b in (0, 1):
                va = capping_value(d, ci, b, "forward")
                vb = capping_value(d, ci, b, "other")
                assert abs(float(va - vb)) <= 1e-9 * max(1.0, abs(float(va)))
            checked_pairs += 1
    elapsed = time.time() - t0
    report(
        7,
        diagrams >= 200 and elapsed < 30.0,
        f"{diagrams} random catalog diagrams, {checked_pairs} crossing pairs: "
        f"value sums 0, offset sums 3, arc choice within 1e-9 ({elapsed:.1f}s)",
    )


def test_criterion_08_oracle_agreement_on_presets():
    t0 = time.time()
    crossings_checked = 0
    for preset in all_presets():
        res = extract_slice(preset.family, preset.level, grid_n=512)
        pairs = oracle_table(preset.family, res)
        for row in compare_with_analyzer(res, pairs, rtol=0.02):
            assert row["offset_match"], (preset.name, row)
            assert row["location_match"], (preset.name, row)
            if row["analyzer_value"] is not None:
                assert row["value_match"], (preset.name, row)
            crossings_checked += 1
    elapsed = time.time() - t0
    report(
        8,
        crossings_checked >= 10 and elapsed < 60.0,
        f"oracle offsets exact and values within 2% on {crossings_checked} preset "
        f"crossing branches at 512^2 ({elapsed:.1f}s)",
    )


def test_criterion_09_p_eight_realization():
    t0 = time.time()
    preset = load_preset("P-eight")
    res = extract_slice(preset.family, preset.level, grid_n=preset.grid)
    ok = res.classification.family == "8+" and res.classification.areas[0] > 0

    swp = sweep(
        preset.family,
        preset.sweep_from,
        preset.sweep_to,
        preset.sweep_steps,
        grid_n=preset.grid,
    )
    birth = [
        e for e in swp.events if e.before.endswith("empty") and e.after.endswith("8+")
    ]
    ok = ok and len(birth) == 1

    areas = [
        float(s["classification"].split("(")[1].rstrip(")"))
        for s in swp.summaries
        if s["family"] == "8+"
    ]
    ok = ok and areas == sorted(areas) and len(areas) >= 5

    res_coarse = extract_slice(preset.family, preset.level, grid_n=128)
    res_fine = extract_slice(preset.family, preset.level, grid_n=256)
    r_coarse = res_coarse.diagram.validity_report()[0].area_residual
    r_fine = res_fine.diagram.validity_report()[0].area_residual
    ok = ok and r_fine <= r_coarse / 2.0
    elapsed = time.time() - t0
    report(
        9,
        ok and elapsed < 120.0,
        f"P-eight classifies 8+({res.classification.areas[0]:.4g}), birth bracketed in "
        f"[{birth[0].bracket[0]:.4f},{birth[0].bracket[1]:.4f}], areas nondecreasing, "
        f"area residual {r_coarse:.2e} -> {r_fine:.2e} on grid doubling ({elapsed:.1f}s)",
    )


def test_criterion_10_theory_numerics_consistency():
    t0 = time.time()
    eight_minus_seen = 0
    witnesses_obstructed = 0
    witness_count = 0
    for preset in all_presets():
        swp = sweep(
            preset.family,
            preset.sweep_from,
            preset.sweep_to,
            preset.sweep_steps,
            grid_n=preset.grid,
        )
        for s in swp.summaries:
            if s["components"] == 1 and s["family"] == "8-":
                eight_minus_seen += 1
        w = witness_relation(
            preset.family, preset.witness[0], preset.witness[1], grid_n=preset.grid
        )
        verdict = check_relation(RelationQuery(w.bottom.diagram, w.top.diagram))
        witness_count += 1
        if verdict.kind == "obstructed":
            witnesses_obstructed += 1
    elapsed = time.time() - t0
    report(
        10,
        eight_minus_seen == 0 and witnesses_obstructed == 0 and elapsed < 120.0,
        f"no connected slice classified 8- across all preset sweeps; "
        f"{witness_count} witness pairs never obstructed ({elapsed:.1f}s)",
    )
