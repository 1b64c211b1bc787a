import random

import pytest

from atamkit.core import TileAssemblyError, explore, is_valid_sequence, random_sequence
from atamkit.systems import (
    KEYSTONE_ROLES,
    corpus,
    keystone_arm_lengths,
    keystone_glues,
    keystone_system,
    random_system,
    scaled_keystone_fixture,
)
from keystone_checks import keystone_facts, pruned_random_sequences


def test_keystone_tile_and_glue_counts():
    ks = keystone_system()
    assert len(ks.tiles) == 18
    assert ks.temperature == 2
    assert set(KEYSTONE_ROLES) == {t.name for t in ks.tiles}
    g = keystone_glues()
    assert len(g) == 15
    assert g["g11"].strength == 1 and g["g14"].strength == 1
    assert all(v.strength == 2 for k, v in g.items() if k not in ("g11", "g14"))


def test_keystone_semantics_small_arms():
    facts = keystone_facts(max_arm=3)
    assert facts.flag_iff_equal
    assert facts.keystone_needs_tips
    assert facts.order_dependency
    assert facts.equal_terminals >= 1 and facts.unequal_terminals >= 1


def test_keystone_is_not_directed():
    terms = {random_sequence(keystone_system(), 60, rng_seed=s).result() for s in range(40)}
    flagged = [t for t in terms if any(x.name == "flag" for x in t.values())]
    assert len(terms) >= 2
    assert flagged and len(flagged) < len(terms)


def test_flagged_terminal_geometry():
    facts = keystone_facts(max_arm=2)
    for term in facts.terminals:
        names = {t.name: p for p, t in term.items()}
        if "flag" not in names:
            continue
        a = names["keystone"][0]
        assert names["keystone"] == (a, 0)
        assert names["top_tip"] == (a, 1) and names["bot_tip"] == (a, -1)
        assert names["flagpole"] == (a - 1, 0) and names["flag"] == (a - 1, 1)
        top, bot = keystone_arm_lengths(term)
        assert top == bot == a - 2


def test_order_dependency_over_sampled_sequences():
    flagged = 0
    for seq in pruned_random_sequences(300, max_arm=2, rng_seed=4):
        assert is_valid_sequence(seq)
        seen = {t.name: i for i, (_, t) in enumerate(seq.steps)}
        if "flag" in seen:
            flagged += 1
            assert seen["top_tip"] < seen["keystone"] and seen["bot_tip"] < seen["keystone"]
            assert seen["keystone"] < seen["flagpole"] < seen["flag"]
    assert flagged > 0


def test_corpus_systems_are_well_formed():
    for system in corpus():
        assert system.name
        explore(system, 6)


def test_random_system_generator_is_reproducible():
    a = random_system(random.Random(5))
    b = random_system(random.Random(5))
    assert a.tiles == b.tiles and a.temperature == b.temperature


def test_scaled_keystone_places_supertiles_on_even_cells():
    ks, sim, rep = scaled_keystone_fixture()
    assert rep.scale == 2
    assert set(sim.seed) == {(0, 0)}
    with pytest.raises(ValueError):
        scaled_keystone_fixture(3)


def test_tile_system_rejects_mixed_dimensions():
    from atamkit.core import Assembly, TileSystem, tile

    a = tile("a")
    b = tile("b", dim=3)
    with pytest.raises(TileAssemblyError):
        TileSystem((a, b), Assembly({(0, 0): a}), 1)
