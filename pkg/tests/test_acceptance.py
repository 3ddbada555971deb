"""Acceptance gate: one check per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py`` (the lines appear in the
terminal summary) or ``python3 tests/test_acceptance.py``.
"""

import random
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from graphtoeplitz.analysis import (  # noqa: E402
    core_norm,
    expectation_contractivity,
    faithfulness_verdict,
    gauge_average,
    independence_rank,
    partition_residual,
)
from graphtoeplitz.fock import build_fock, family_from_matrices, represent, verify_tck  # noqa: E402
from graphtoeplitz.graph import parse_graph  # noqa: E402
from graphtoeplitz.linalg import spectral_norm  # noqa: E402
from graphtoeplitz.ppi import (  # noqa: E402
    direct_sum,
    is_power_partial_isometry,
    truncated_shift,
    verify_ppi_rep,
)
from graphtoeplitz.staralg import defect, gauge_expect, random_polynomial  # noqa: E402
from graphtoeplitz.words import INFINITY, d_st, join, le, longest_common_prefix  # noqa: E402

from conftest import BOUQUET3, CYCLE2, EDGE, LOOP, THETA  # noqa: E402
from oracles import d_st_bf, join_bf, lcp_bf, le_bf, words_upto  # noqa: E402

CYCLE3 = "vertex u\nvertex v\nvertex w\nedge f u v\nedge g v w\nedge h w u\n"
CHAIN = "vertex u\nvertex v\nvertex w\nedge f u v\nedge g v w\nedge h u w\n"
UP_TO_THREE_EDGES = [LOOP, EDGE, CYCLE2, THETA, BOUQUET3, CYCLE3, CHAIN]

RESULTS: list[str] = []


def record(number, title, passed, detail, elapsed, limit):
    on_time = elapsed < limit
    ok = passed and on_time
    line = f"criterion {number} [{'PASS' if ok else 'FAIL'}] {title}: {detail} ({elapsed:.2f}s, limit {limit}s)"
    RESULTS.append(line)
    print(line)
    return ok


def timed(fn):
    start = time.perf_counter()
    passed, detail = fn()
    return passed, detail, time.perf_counter() - start


def c1_defect_norm():
    g = parse_graph(LOOP)
    value = core_norm(g, defect(g, "v"))
    return abs(value - 1.0) <= 1e-12, f"core_norm = {value!r}"


def c2_core_norm_oracle():
    rng = random.Random(0)
    worst = 0.0
    for text in (LOOP, EDGE, CYCLE2, THETA):
        g = parse_graph(text)
        for _ in range(100):
            r = random_polynomial(g, 2, rng, core=True)
            K = r.degree
            fock_norm = spectral_norm(represent(build_fock(g, K + 2), r))
            worst = max(worst, abs(core_norm(g, r) - fock_norm))
    return worst <= 1e-8, f"max |core_norm - fock_norm| = {worst:.3g}"


def c3_tck_relations():
    worst = 0.0
    ok = True
    for text in UP_TO_THREE_EDGES:
        g = parse_graph(text)
        for N in (2, 3, 4):
            report = verify_tck(build_fock(g, N).family(), tol=1e-12)
            ok = ok and report.passed
            worst = max([worst] + [float(f.value) for f in report.findings])
    return ok, f"max violation = {worst:.3g} over 7 graphs, N in {{2,3,4}}"


def c4_partition():
    rng = random.Random(0)
    worst = 0.0
    graphs = [parse_graph(t) for t in UP_TO_THREE_EDGES]
    reps = {g: build_fock(g, 4) for g in graphs}
    for _ in range(50):
        g = rng.choice(graphs)
        alphabet = list(g.edge_ids)
        F = [()] + [
            tuple(rng.choice(alphabet) for _ in range(rng.randint(1, 4))) for _ in range(rng.randint(0, 6))
        ]
        worst = max(worst, partition_residual(reps[g], F))
    return worst == 0.0, f"max residual = {worst!r}"


def c5_expectations():
    rng = random.Random(0)
    N = 4
    modes = 2 * N + 3
    graphs = [parse_graph(t) for t in (LOOP, EDGE, CYCLE2, THETA)]
    reps = {g: build_fock(g, N) for g in graphs}
    worst, contractive = 0.0, True
    for i in range(100):
        g = graphs[i % len(graphs)]
        p = random_polynomial(g, 3, rng, n_terms=6)
        rep = reps[g]
        avg = gauge_average(rep, represent(rep, p), modes)
        want = represent(rep, gauge_expect(p))
        worst = max(worst, float(np.abs((avg - want).toarray()).max(initial=0.0)))
        contractive = contractive and expectation_contractivity(g, p, N, tol=1e-8).passed
    return worst <= 1e-12 and contractive, f"max |average - E| = {worst:.3g}, contractive = {contractive}"


def c6_faithfulness():
    loop = parse_graph(LOOP)
    fock_ok = all(
        faithfulness_verdict(build_fock(parse_graph(t), 3).family()).verdict == "faithful"
        for t in UP_TO_THREE_EDGES
    )
    shift = np.roll(np.eye(4), 1, axis=0)
    unitary = faithfulness_verdict(family_from_matrices(loop, {"f": shift}, {"v": np.eye(4)})).verdict
    zero = faithfulness_verdict(family_from_matrices(loop, {"f": np.zeros((3, 3))}, {"v": np.zeros((3, 3))}))
    ok = fock_ok and unitary == "criterion fails" and "fails" in zero.verdict
    return ok, f"fock: faithful={fock_ok}; cyclic shift: {unitary!r}; P_v = 0: {zero.verdict!r}"


def c7_independence():
    details, ok = [], True
    for text in UP_TO_THREE_EDGES:
        report = independence_rank(parse_graph(text), 2, 5, tol=1e-8)
        ok = ok and report.passed
        details.append(f"{report.finding('smallest singular value').value:.3g}")
    return ok, "smallest singular values " + ", ".join(details)


def c8_ppi():
    shifts = all(is_power_partial_isometry(truncated_shift(n), n + 1, 1e-12).passed for n in range(1, 9))
    sums = is_power_partial_isometry(direct_sum(truncated_shift(2), truncated_shift(4)), 5, 1e-12).passed
    witness = np.array([[0, 1], [0, 1]]) / np.sqrt(2)
    rejected = not is_power_partial_isometry(witness, 2, 1e-12).passed
    rep_ok = verify_ppi_rep(direct_sum(*(truncated_shift(n) for n in range(1, 5))), tol=1e-12).passed
    loop = parse_graph(LOOP)
    bridge = all(
        np.array_equal(build_fock(loop, N).S["f"].toarray(), truncated_shift(N + 1)) for N in range(1, 9)
    )
    ok = shifts and sums and rejected and rep_ok and bridge
    return ok, f"J_n ppi={shifts}, sums={sums}, witness rejected={rejected}, rep={rep_ok}, loop bridge={bridge}"


def c9_word_order():
    # joins, prefixes and quotients of these words never leave this set
    words = words_upto("ab", 4)
    universe = words
    mismatches = 0
    for s in words:
        for t in words:
            mismatches += le(s, t) != le_bf(s, t, universe)
            j = join(s, t)
            mismatches += (None if j is INFINITY else j) != join_bf(s, t, universe)
            mismatches += longest_common_prefix(s, t) != lcp_bf(s, t, universe)
    for c in words:
        below = [s for s in words if le(s, c)]
        for s in below:
            for t in below:
                want = d_st_bf(s, t, c, universe)
                try:
                    got = d_st(s, t, c)
                except ValueError:
                    got = None
                mismatches += got != want
    return mismatches == 0, f"{mismatches} mismatches over {len(words)} words"


CRITERIA = [
    (1, "defect norm", c1_defect_norm, 1),
    (2, "core-norm oracle", c2_core_norm_oracle, 30),
    (3, "TCK relations", c3_tck_relations, 5),
    (4, "partition of unity", c4_partition, 10),
    (5, "expectation agreement", c5_expectations, 30),
    (6, "faithfulness criterion", c6_faithfulness, 1),
    (7, "finite-degree independence", c7_independence, 60),
    (8, "power partial isometries", c8_ppi, 5),
    (9, "word-order oracle", c9_word_order, 5),
]


@pytest.mark.parametrize("number,title,check,limit", CRITERIA, ids=[f"criterion{n}" for n, *_ in CRITERIA])
def test_criterion(number, title, check, limit):
    passed, detail, elapsed = timed(check)
    assert record(number, title, passed, detail, elapsed, limit), RESULTS[-1]


if __name__ == "__main__":
    outcomes = [record(n, title, *timed(check), limit) for n, title, check, limit in CRITERIA]
    sys.exit(0 if all(outcomes) else 1)
