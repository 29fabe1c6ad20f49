"""Acceptance gate: every release criterion, one pass/fail line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the summary lines;
each criterion is also a separate test, so plain `pytest -v` reports the
same verdicts through test outcomes.
"""

import itertools
import random
import time

import pytest

from ncsm import (
    CnfFormula,
    Instance,
    Matching,
    assignment_from_matching,
    augment,
    brute_exist_ssnm,
    brute_max_wsnm,
    build_first_choice_graph,
    build_gadget_instance,
    build_tables,
    classify,
    conflicting,
    conflicting_naive,
    exist_ssnm,
    generate,
    generate_len1,
    max_wsnm_detailed,
    noncrossing_blocking_pairs,
    rural_hospitals_check,
    validate_tovey,
    weak_ssnm_len1,
)


def report(num: int, title: str, failures: list) -> None:
    status = "FAIL" if failures else "PASS"
    print(f"\nACCEPTANCE {num}: {status} - {title}")
    assert not failures, f"criterion {num}: {failures[:5]}"


def notions_for(inst: Instance) -> list:
    out = ["weak", "super", "strong"]
    if inst.is_smi_kind:
        out.append("smi-strict")
    return out


# -- criteria 1 and 7 share one sweep ------------------------------------


@pytest.fixture(scope="session")
def dp_sweep():
    """Solve every configuration of criterion 1 once; collect what both
    criteria need.  Ties rule smi-strict out, so that notion runs on the
    instances that happen to be strict."""
    rng = random.Random(20240801)
    size_mismatch = []
    weak_missing = []
    classify_bad = []
    sentinel_bad = []
    prefix_bad = []
    runs = 0
    for n in range(3, 8):
        for tie_prob in (0.0, 0.3, 0.6):
            for trial in range(200):
                inst = generate(
                    n, n, max_list_len=None, tie_prob=tie_prob,
                    seed=rng.randint(0, 2**31),
                )
                for notion in notions_for(inst):
                    found, state = max_wsnm_detailed(inst, notion)
                    ref = brute_max_wsnm(inst, notion)
                    runs += 1
                    if (found is None) != (ref is None) or (
                        found is not None and found[0] != ref[0]
                    ):
                        size_mismatch.append((inst, notion))
                        continue
                    if notion == "weak" and inst.is_smi_kind and found is None:
                        weak_missing.append(inst)
                    if found is None:
                        continue
                    if classify(inst, notion, found[1]) not in ("wsnm", "ssnm"):
                        classify_bad.append((inst, notion))
                    chain = state.chain
                    aug = state.tables.aug
                    if (
                        chain[0] != aug.top
                        or chain[-1] != aug.bottom
                        or any(
                            not (a[0] < b[0] and a[1] < b[1])
                            for a, b in zip(chain, chain[1:])
                        )
                        or any(not aug.acceptable(i, j) for i, j in chain)
                    ):
                        sentinel_bad.append((inst, notion))
                        continue
                    inner = aug.to_instance()
                    for k in range(2, len(chain) + 1):
                        prefix = [(i + 1, j + 1) for i, j in chain[:k]]
                        m = Matching(inner, prefix)
                        i_max, j_max = prefix[-1]
                        for s, t in noncrossing_blocking_pairs(inner, notion, m):
                            if s <= i_max and t <= j_max:
                                prefix_bad.append((inst, notion, k, (s, t)))
    return {
        "size_mismatch": size_mismatch,
        "weak_missing": weak_missing,
        "classify_bad": classify_bad,
        "sentinel_bad": sentinel_bad,
        "prefix_bad": prefix_bad,
        "runs": runs,
    }


def test_criterion_1_oracle_equivalence(dp_sweep):
    assert dp_sweep["runs"] >= 9000
    report(
        1,
        "max_wsnm equals the brute-force oracle on 200 instances per "
        "configuration, n in 3..7, tie_prob in {0, 0.3, 0.6}, all notions",
        dp_sweep["size_mismatch"],
    )


def test_criterion_2_conflict_predicate():
    rng = random.Random(20240802)
    failures = []
    for trial in range(200):
        n_m = rng.randint(2, 7)
        n_w = rng.randint(2, 7)
        tie_prob = (0.0, 0.3, 0.6)[trial % 3]
        inst = generate(
            n_m, n_w, max_list_len=None, tie_prob=tie_prob,
            seed=rng.randint(0, 2**31),
        )
        aug = augment(inst)
        tables = build_tables(aug)
        pairs = sorted(
            [aug.top, aug.bottom]
            + [
                (i, j)
                for i in range(1, aug.n_men - 1)
                for j in range(1, aug.n_women - 1)
                if aug.acceptable(i, j)
            ]
        )
        for a, b in itertools.combinations(pairs, 2):
            if not (a[0] < b[0] and a[1] < b[1]):
                continue
            for notion in notions_for(inst):
                if conflicting(tables, notion, a, b) != conflicting_naive(
                    aug, notion, a, b
                ):
                    failures.append((inst, notion, a, b))
    report(
        2,
        "conflicting equals conflicting_naive on every chainable pair of "
        "200 random instances, n <= 7, all notions",
        failures,
    )


def test_criterion_3_ssnm_existence():
    rng = random.Random(20240803)
    failures = []
    for notion in ("smi-strict", "super", "strong"):
        for trial in range(200):
            tie_prob = 0.0 if notion == "smi-strict" else (0.0, 0.3, 0.6)[trial % 3]
            inst = generate(
                rng.randint(2, 7), rng.randint(2, 7),
                max_list_len=3, tie_prob=tie_prob, seed=rng.randint(0, 2**31),
            )
            if notion == "smi-strict" and not inst.is_smi_kind:
                continue
            res = exist_ssnm(inst, notion)
            ref = brute_exist_ssnm(inst, notion)
            if (res.outcome == "found") != (ref is not None):
                failures.append((inst, notion, res.outcome))
            elif res.outcome == "found" and classify(inst, notion, res.matching) != "ssnm":
                failures.append((inst, notion, "found non-ssnm"))
    report(
        3,
        "exist_ssnm agrees with brute_exist_ssnm on 200 instances per "
        "notion in {smi-strict, super, strong}, n <= 7",
        failures,
    )


def test_criterion_4_rural_hospitals():
    rng = random.Random(20240804)
    failures = []
    for tie_prob, label in ((0.0, "strict"), (0.5, "ties")):
        for trial in range(100):
            inst = generate(
                rng.randint(1, 6), rng.randint(1, 6),
                max_list_len=3, tie_prob=tie_prob, seed=rng.randint(0, 2**31),
            )
            for notion in ("super", "strong"):
                if not rural_hospitals_check(inst, notion):
                    failures.append((inst, notion, label))
    report(
        4,
        "rural_hospitals_check holds on 100 strict and 100 tied instances "
        "under super and strong notions, n <= 6",
        failures,
    )


def test_criterion_5_greedy_length1():
    rng = random.Random(20240805)
    failures = []
    for trial in range(200):
        inst = generate_len1(rng.randint(1, 7), seed=rng.randint(0, 2**31))
        got = weak_ssnm_len1(inst)
        ref = brute_exist_ssnm(inst, "weak")
        if (got is None) != (ref is None):
            failures.append((inst, "existence"))
            continue
        if got is None:
            continue
        if classify(inst, "weak", got) != "ssnm":
            failures.append((inst, "classify"))
        g = build_first_choice_graph(inst)
        if not set(got.pairs) <= g.edges:
            failures.append((inst, "non-first-choice edge"))
        matched = {j for _, j in got.pairs}
        if any(
            g.degree(j) > 0 and j not in matched
            for j in range(1, inst.n_women + 1)
        ):
            failures.append((inst, "listed woman left single"))
    report(
        5,
        "weak_ssnm_len1 agrees with the oracle on 200 length-1 instances "
        "and every output satisfies the first-choice conditions",
        failures,
    )


# -- criterion 6 ----------------------------------------------------------


def all_small_tovey_formulas():
    """Every Tovey formula over at most 3 variables with at most 3 clauses,
    clauses drawn without repetition from the distinct 2- and 3-literal
    clauses up to literal order."""
    lits = [1, -1, 2, -2, 3, -3]
    # distinct literals never repeat a signed literal, so every 2- or
    # 3-subset is a syntactically valid clause (tautologies included)
    pool = [c for size in (2, 3) for c in itertools.combinations(lits, size)]
    out = []
    for k in range(4):
        for combo in itertools.combinations(pool, k):
            n_vars = max((abs(l) for c in combo for l in c), default=1)
            cnf = CnfFormula(n_vars, [list(c) for c in combo])
            if validate_tovey(cnf) == []:
                out.append(cnf)
    return out


def random_tovey(rng, n_vars):
    """One random Tovey formula; rejection sampling over small drafts.
    Needs n_vars >= 2: distinct-variable sampling cannot fill a 2-literal
    clause from a single variable."""
    assert n_vars >= 2
    while True:
        n_clauses = rng.randint(1, 4)
        clauses = []
        for _ in range(n_clauses):
            size = rng.choice((2, 2, 3))
            vs = rng.sample(range(1, n_vars + 1), min(size, n_vars))
            clause = [v if rng.random() < 0.5 else -v for v in vs]
            if len(clause) < 2:
                continue
            clauses.append(clause)
        if not clauses:
            continue
        cnf = CnfFormula(n_vars, clauses)
        if validate_tovey(cnf) == []:
            return cnf


def brute_satisfiable(cnf):
    for bits in itertools.product([False, True], repeat=cnf.n_vars):
        if all(
            any((lit > 0) == bits[abs(lit) - 1] for lit in clause)
            for clause in cnf.clauses
        ):
            return True
    return False


def test_criterion_6_reduction():
    rng = random.Random(20240806)
    corpus = all_small_tovey_formulas()
    assert len(corpus) > 2000
    corpus += [random_tovey(rng, rng.randint(2, 4)) for _ in range(50)]
    failures = []
    for cnf in corpus:
        n = cnf.n_vars
        m2 = sum(1 for c in cnf.clauses if len(c) == 2)
        m3 = sum(1 for c in cnf.clauses if len(c) == 3)
        inst, plan = build_gadget_instance(cnf)
        if plan.men_unpadded != 6 * n + m2 + 7 * m3 + 1:
            failures.append((cnf, "men count"))
            continue
        if plan.women_unpadded != 4 * n + 2 * m2 + 9 * m3 + 1:
            failures.append((cnf, "women count"))
            continue
        found = brute_exist_ssnm(inst, "weak", method="search")
        sat = brute_satisfiable(cnf)
        if (found is not None) != sat:
            failures.append((cnf, "equisatisfiability"))
            continue
        if found is not None:
            assign = assignment_from_matching(plan, found)
            if not all(
                any((lit > 0) == assign[abs(lit) - 1] for lit in clause)
                for clause in cnf.clauses
            ):
                failures.append((cnf, "extracted assignment"))
    report(
        6,
        f"gadget instances are equisatisfiable with their formulas on "
        f"{len(corpus)} Tovey formulas and extraction returns a model",
        failures,
    )


def test_criterion_7_structural_guarantees(dp_sweep):
    failures = (
        [("weak missing", x) for x in dp_sweep["weak_missing"]]
        + [("classify", x) for x in dp_sweep["classify_bad"]]
        + [("sentinel", x) for x in dp_sweep["sentinel_bad"]]
        + [("prefix", x) for x in dp_sweep["prefix_bad"]]
    )
    report(
        7,
        "weak solutions exist on strict instances; outputs classify as "
        "wsnm/ssnm; sentinel and prefix invariants hold on every criterion-1 run",
        failures,
    )


# -- scaling smoke tests ----------------------------------------------------


def complete_random_instance(n, seed):
    rng = random.Random(seed)
    men = []
    women = []
    for _ in range(n):
        order = list(range(1, n + 1))
        rng.shuffle(order)
        men.append([(j,) for j in order])
    for _ in range(n):
        order = list(range(1, n + 1))
        rng.shuffle(order)
        women.append([(i,) for i in order])
    return Instance(men_prefs=men, women_prefs=women)


def best_of(times):
    return min(times)


def test_criterion_8_dp_scaling():
    from ncsm import max_wsnm

    times = {}
    for n in (50, 100):
        inst = complete_random_instance(n, seed=7)
        runs = []
        for _ in range(2):
            t0 = time.perf_counter()
            found = max_wsnm(inst, "smi-strict")
            runs.append(time.perf_counter() - t0)
            assert found is not None and found[0] >= 1
        times[n] = best_of(runs)
    failures = []
    if times[100] >= 60.0:
        failures.append(f"n=100 took {times[100]:.1f}s")
    ratio = times[100] / max(times[50], 1e-9)
    if ratio >= 24.0:
        failures.append(f"n=50 -> n=100 ratio {ratio:.1f}")
    report(
        8,
        f"n=100 complete-list solve in {times[100]:.2f}s (< 60s), "
        f"n=50 -> n=100 ratio {ratio:.1f}x (< 24x)",
        failures,
    )


def test_criterion_9_greedy_scaling():
    times = {}
    for n in (10**5, 10**6):
        inst = Instance(
            men_prefs=[[(i,)] for i in range(1, n + 1)],
            women_prefs=[[(i,)] for i in range(1, n + 1)],
        )
        runs = []
        for _ in range(3):
            t0 = time.perf_counter()
            m = weak_ssnm_len1(inst)
            runs.append(time.perf_counter() - t0)
            assert m is not None and len(m.pairs) == n
        times[n] = best_of(runs)
    failures = []
    if times[10**6] >= 2.0:
        failures.append(f"n=1e6 took {times[10**6]:.2f}s")
    ratio = times[10**6] / max(times[10**5], 1e-9)
    if ratio >= 15.0:
        failures.append(f"n=1e5 -> n=1e6 ratio {ratio:.1f}")
    report(
        9,
        f"n=1e6 length-1 solve in {times[10**6]:.2f}s (< 2s), "
        f"n=1e5 -> n=1e6 ratio {ratio:.1f}x (< 15x)",
        failures,
    )
