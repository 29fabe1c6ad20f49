"""Instance/Matching plumbing, blocking predicates, and classification."""

import random

import pytest

from ncsm import (
    ContractViolation,
    Instance,
    Matching,
    blocks,
    check_notion,
    classify,
    compare,
    crosses,
    noncrossing_blocking_pairs,
)
from ncsm.generate import generate

from conftest import complete_instance, crossing_instance, tie_instance


def test_instance_normalizes_entries():
    # bare ints and any iterable of ints are accepted; ties are sorted
    a = Instance(men_prefs=[[2, (3, 1)]], women_prefs=[[1], [1], [1]])
    b = Instance(men_prefs=[[(2,), [3, 1]]], women_prefs=[[(1,)], [(1,)], [(1,)]])
    assert a == b
    assert a.man_list(1) == ((2,), (1, 3))


def test_instance_rejects_one_sided_listing():
    with pytest.raises(ContractViolation, match="man 1 lists woman 2"):
        Instance(men_prefs=[[(2,)]], women_prefs=[[], []])
    with pytest.raises(ContractViolation, match="woman 1 lists man 1"):
        Instance(men_prefs=[[]], women_prefs=[[(1,)]])


def test_instance_rejects_duplicates_and_range():
    with pytest.raises(ContractViolation):
        Instance(men_prefs=[[(1,), (1,)]], women_prefs=[[(1,)]])
    with pytest.raises(ContractViolation):
        Instance(men_prefs=[[(2,)]], women_prefs=[[(1,)]])
    with pytest.raises(ContractViolation):
        Instance(men_prefs=[[(0,)]], women_prefs=[[(1,)]])


def test_rank_lookups():
    inst = tie_instance()
    assert inst.man_rank_of(2, 1) == 0
    assert inst.man_rank_of(2, 2) == 1
    assert inst.man_rank_of(1, 2) is None
    # tied entries share a rank
    assert inst.woman_rank_of(1, 1) == 0
    assert inst.woman_rank_of(1, 2) == 0
    assert inst.acceptable(2, 2)
    assert not inst.acceptable(1, 2)


def test_acceptable_pairs_sorted():
    inst = tie_instance()
    assert inst.acceptable_pairs() == ((1, 1), (2, 1), (2, 2))


def test_is_smi_kind():
    assert not tie_instance().is_smi_kind
    assert complete_instance(3).is_smi_kind


def test_transposed_round_trip():
    inst = tie_instance()
    flipped = inst.transposed()
    assert flipped.n_men == inst.n_women
    assert flipped.man_list(1) == ((1, 2),)
    assert flipped.transposed() == inst


def test_matching_validation():
    inst = tie_instance()
    m = Matching(inst, [(2, 2), (1, 1)])
    assert m.pairs == ((1, 1), (2, 2))
    assert m.partner_of_man(1) == 1
    assert m.partner_of_woman(2) == 2
    assert m.partner_of_man(3 - 1) == 2
    assert (1, 1) in m
    assert (2, 1) not in m
    with pytest.raises(ContractViolation):
        Matching(inst, [(1, 2)])  # unacceptable
    with pytest.raises(ContractViolation):
        Matching(inst, [(1, 1), (2, 1)])  # w1 used twice


def test_crosses():
    assert crosses((1, 2), (2, 1))
    assert crosses((2, 1), (1, 2))
    assert not crosses((1, 1), (2, 2))
    # sharing an index never counts as a crossing
    assert not crosses((1, 1), (1, 2))
    assert not crosses((2, 1), (3, 1))


def test_is_noncrossing():
    inst = complete_instance(3)
    assert Matching(inst, [(1, 1), (2, 2), (3, 3)]).is_noncrossing()
    assert Matching(inst, [(1, 2), (3, 3)]).is_noncrossing()
    assert not Matching(inst, [(1, 2), (2, 1)]).is_noncrossing()
    assert Matching(inst, []).is_noncrossing()


def test_check_notion():
    inst = tie_instance()
    check_notion(inst, "weak")
    check_notion(inst, "super")
    with pytest.raises(ContractViolation, match="strict"):
        check_notion(inst, "smi-strict")
    with pytest.raises(ContractViolation):
        check_notion(inst, "bogus")
    check_notion(complete_instance(2), "smi-strict")


def test_compare():
    inst = tie_instance()
    # w1 is indifferent between her two listed men
    assert compare(inst, "w", 1, 1, 2) == 0
    assert compare(inst, "m", 2, 1, 2) == 1
    assert compare(inst, "m", 2, 2, 1) == -1
    with pytest.raises(ContractViolation):
        compare(inst, "m", 1, 1, 2)  # m1 does not list w2


def test_blocks_per_notion():
    inst = tie_instance()
    empty = Matching(inst, [])
    # mutually acceptable and both unmatched: blocks under every notion
    for notion in ("weak", "strong", "super"):
        assert blocks(inst, notion, empty, (1, 1))

    m = Matching(inst, [(1, 1)])
    # m2 strictly prefers w1 to being single, but w1 is indifferent
    # between m2 and her current partner m1
    assert blocks(inst, "super", m, (2, 1))
    assert blocks(inst, "strong", m, (2, 1))
    assert not blocks(inst, "weak", m, (2, 1))
    # (2, 2): both unmatched on their ends
    assert blocks(inst, "weak", m, (2, 2))

    with pytest.raises(ContractViolation):
        blocks(inst, "weak", m, (1, 1))  # already matched
    with pytest.raises(ContractViolation):
        blocks(inst, "weak", m, (1, 2))  # unacceptable


def test_blocks_strict_improvement_required_for_weak():
    # both sides indifferent to current partners: super blocks, weak does not
    inst = Instance(
        men_prefs=[[(1, 2)]],
        women_prefs=[[(1,)], [(1,)]],
    )
    m = Matching(inst, [(1, 1)])
    assert blocks(inst, "super", m, (1, 2))
    # w2 gains strictly (she was single), so strong blocks too
    assert blocks(inst, "strong", m, (1, 2))
    assert not blocks(inst, "weak", m, (1, 2))


def test_noncrossing_blocking_pairs_filters_crossers():
    inst = crossing_instance()
    m = Matching(inst, [(1, 2)])
    # (2, 1) blocks but crosses the matched edge
    assert blocks(inst, "weak", m, (2, 1))
    assert noncrossing_blocking_pairs(inst, "weak", m) == set()


def test_classify_labels():
    inst = complete_instance(2)
    assert classify(inst, "weak", Matching(inst, [(1, 2), (2, 1)])) == "not-noncrossing"
    assert classify(inst, "weak", Matching(inst, [])) == "unstable"
    assert classify(inst, "weak", Matching(inst, [(1, 1), (2, 2)])) == "ssnm"

    xinst = crossing_instance()
    assert classify(xinst, "weak", Matching(xinst, [(1, 2)])) == "wsnm"

    # empty instance: the empty matching is vacuously super stable
    empty = Instance(men_prefs=[[]], women_prefs=[[]])
    assert classify(empty, "super", Matching(empty, [])) == "ssnm"


def test_classify_tie_fixture():
    inst = tie_instance()
    both = Matching(inst, [(1, 1), (2, 2)])
    assert classify(inst, "weak", both) == "ssnm"
    # under super, m2 + w1 block even though both are matched
    assert classify(inst, "super", both) == "unstable"


def test_blocks_agrees_with_direct_definition():
    # re-derive the predicate from compare() on random instances
    rng = random.Random(11)
    for trial in range(60):
        inst = generate(
            rng.randint(1, 5), rng.randint(1, 5),
            max_list_len=4, tie_prob=0.4, seed=rng.randint(0, 10**6),
        )
        pairs = list(inst.acceptable_pairs())
        chosen = []
        for i, j in pairs:
            if all(i != a and j != b for a, b in chosen) and rng.random() < 0.4:
                chosen.append((i, j))
        m = Matching(inst, chosen)

        def gain(side, agent, candidate, current):
            if current is None:
                return 1
            return compare(inst, side, agent, candidate, current)

        for i, j in pairs:
            if m.partner_of_man(i) == j:
                continue
            gm = gain("m", i, j, m.partner_of_man(i))
            gw = gain("w", j, i, m.partner_of_woman(j))
            assert blocks(inst, "weak", m, (i, j)) == (gm > 0 and gw > 0)
            assert blocks(inst, "super", m, (i, j)) == (gm >= 0 and gw >= 0)
            expected_strong = (gm >= 0 and gw >= 0) and (gm > 0 or gw > 0)
            assert blocks(inst, "strong", m, (i, j)) == expected_strong
            if inst.is_smi_kind:
                assert blocks(inst, "smi-strict", m, (i, j)) == blocks(
                    inst, "weak", m, (i, j)
                )
