"""End-to-end acceptance criteria. Each test records one PASS/FAIL line, shown
in the terminal summary (and printed when this file is run as a script)."""

from functools import lru_cache

from bisplit_dbe.bisplit import check_distance_pattern, find_max_partition, refine
from bisplit_dbe.enumeration import (
    FULL_PROOF,
    SweepConfig,
    gen_all_connected_graphs,
    gen_bisplit_witnessed,
    gen_connected_bipartite_graphs,
    verify_theorem,
)
from bisplit_dbe.families import closed_form_sweep
from bisplit_dbe.graph import all_pairs_distances, bridges
from bisplit_dbe.lemmas import LemmaDomain, lemma2_solution_set, trinomial_implication_check
from bisplit_dbe.lines import Fails, all_lines, has_dbe_property

from conftest import load

MAX_N = 8
RESULTS: dict[int, str] = {}


def record(num: int, ok: bool, text: str) -> None:
    RESULTS[num] = f"acceptance {num}: {'PASS' if ok else 'FAIL'}  {text}"
    assert ok, RESULTS[num]


@lru_cache(maxsize=None)
def bisplit_with_witness():
    return [pair for n in range(2, MAX_N + 1) for pair in gen_bisplit_witnessed(n)]


@lru_cache(maxsize=None)
def connected_up_to_7():
    return [g for n in range(2, 8) for g in gen_all_connected_graphs(n)]


def test_1_theorem_sweep():
    rep = verify_theorem(SweepConfig(max_n=MAX_N))
    record(1, rep.counterexamples == [] and rep.total > 0,
           f"{rep.total} connected bisplit graphs on 2..{MAX_N} vertices, "
           f"{len(rep.counterexamples)} counterexamples")


def test_2_exceptional_graphs():
    counts = {}
    ok = True
    for name in ("exceptional-full.txt", "exceptional-partial.txt"):
        g = load(name)
        ls = all_lines(g)
        counts[name] = len(ls)
        ok &= g.n == 7 and len(ls) >= 8
    record(2, ok, f"line counts {counts}")


def test_3_second_lemma_grid():
    dom = LemmaDomain(100, 100)
    sol = lemma2_solution_set(dom)
    ok = sol == {(1, 2), (2, 2), (3, 3)} and trinomial_implication_check(dom)
    record(3, ok, f"solutions on 1..100 x 1..100: {sorted(sol)}, trinomial implication holds")


def test_4_closed_forms():
    graphs = compared = 0
    mismatches = []
    for g, _ in bisplit_with_witness():
        p = find_max_partition(g)
        if not (p.Y and p.Z):
            continue
        r = refine(g, p)
        d = all_pairs_distances(g)
        if r.XY or r.XZ or d.max_distance < 3:
            continue
        graphs += 1
        c, bad = closed_form_sweep(g, r, d)
        compared += c
        mismatches += bad
    record(4, graphs > 0 and compared > 0 and not mismatches,
           f"{compared} closed-form lines on {graphs} graphs, {len(mismatches)} mismatches")


def test_5_facts_and_tables():
    rep = verify_theorem(SweepConfig(max_n=MAX_N, mode=FULL_PROOF))
    tally = {}
    for t in rep.per_n.values():
        for k, v in t.proof.items():
            tally[k] = tally.get(k, 0) + v
    record(5, rep.mismatches == [] and rep.counterexamples == [],
           f"case analysis replayed on {rep.total} graphs: {tally}, "
           f"{len(rep.mismatches)} PROOF_MISMATCH")


def test_6_distance_pattern():
    violations = too_far = checked = 0
    for g, witness in bisplit_with_witness():
        d = all_pairs_distances(g)
        too_far += d.max_distance > 4
        parts = [witness]
        p = find_max_partition(g)
        if p.Y and p.Z:
            parts.append(p)
        for part in parts:
            r = refine(g, part)
            if part is witness and (r.XY or r.XZ):
                # rows on X_Y and X_Z rely on Y u Z being maximum
                continue
            checked += 1
            violations += len(check_distance_pattern(g, r, d))
    record(6, violations == 0 and too_far == 0,
           f"{checked} partitions checked, {violations} pattern violations, "
           f"{too_far} graphs of diameter > 4")


def test_7_bipartite_and_bridges():
    bad_bip = bip = 0
    for n in range(2, MAX_N + 1):
        for g in gen_connected_bipartite_graphs(n):
            bip += 1
            ls = all_lines(g)
            bad_bip += any(ls.generator_index[e] != g.full_mask for e in g.edges())
    bad_bridge = bridged = 0
    for g in connected_up_to_7():
        if bridges(g):
            bridged += 1
            bad_bridge += not all_lines(g).universal_pairs()
    record(7, bad_bip == 0 and bad_bridge == 0 and bip and bridged,
           f"{bip} bipartite graphs with all edge lines universal, "
           f"{bridged} bridged graphs with a universal line (failures {bad_bip}/{bad_bridge})")


def test_8_connected_graphs():
    fails = [g for g in connected_up_to_7() if isinstance(has_dbe_property(g), Fails)]
    record(8, not fails, f"{len(connected_up_to_7())} connected graphs on 2..7 vertices, {len(fails)} fail")


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in sorted((k, v) for k, v in globals().items() if k.startswith("test_")):
        try:
            fn()
        except AssertionError:
            failed += 1
    for num in sorted(RESULTS):
        print(RESULTS[num])
    sys.exit(1 if failed else 0)
