import json
import xml.etree.ElementTree as ET

from atamkit.core import explore, random_sequence
from atamkit.gadgets import bit_string_gadget
from atamkit.render import count_roles, render_svg
from atamkit.serialize import (
    configuration_from_json,
    configuration_to_json,
    movie_from_json,
    movie_to_json,
    representation_from_json,
    representation_to_json,
    sequence_from_json,
    sequence_to_json,
    system_from_json,
    system_to_json,
    to_jsonable,
    window_from_json,
    window_to_json,
)
from atamkit.simulation import check_equivalent_productions
from atamkit.systems import (
    corpus,
    corrupted_table_fixture,
    keystone_system,
    scaled_keystone_fixture,
    single_tile_system,
)
from atamkit.windows import vertical_window, window_movie
from keystone_checks import arm_limit


def _via_text(obj):
    return json.loads(json.dumps(obj))


def test_system_round_trip():
    for system in corpus() + [bit_string_gadget("01").system]:
        back = system_from_json(_via_text(system_to_json(system)))
        assert back.tiles == system.tiles
        assert back.seed == system.seed
        assert back.temperature == system.temperature


def test_configuration_and_sequence_round_trip():
    ks = keystone_system()
    seq = random_sequence(ks, 30, rng_seed=1)
    assert sequence_from_json(_via_text(sequence_to_json(seq))) == seq
    conf = seq.result()
    assert configuration_from_json(_via_text(configuration_to_json(conf))) == conf
    assert configuration_from_json(_via_text(configuration_to_json(conf)), ks) == conf


def test_window_and_movie_round_trip():
    ks = keystone_system()
    seq = random_sequence(ks, 20, rng_seed=2)
    w = vertical_window(1, -3, 3)
    assert window_from_json(_via_text(window_to_json(w))) == w
    movie = window_movie(seq, w)
    assert movie_from_json(_via_text(movie_to_json(movie))) == movie


def test_representation_round_trip():
    ks, sim, rep = scaled_keystone_fixture()
    back = representation_from_json(_via_text(representation_to_json(rep)), ks, sim)
    assert back.table == rep.table and back.scale == 2


def test_report_to_json():
    report = check_equivalent_productions(*corrupted_table_fixture(), 4)
    doc = _via_text(to_jsonable(report))
    assert doc["verdict"] == "fail" and doc["witnesses"]


def test_single_tile_renders_one_square():
    svg = render_svg(single_tile_system().seed)
    assert svg.count("<rect") == 1


def test_keystone_roles_get_distinct_colours():
    term = next(t for t in explore(keystone_system(), 30, budget=None,
                                   prune=arm_limit(1)).terminals()
                if any(x.name == "flag" for x in t.values()))
    svg = render_svg(term)
    counts = count_roles(svg)
    assert counts == {"seed": 1, "arm": 6, "finger": 6, "keystone": 1, "flagpole": 1, "flag": 1}
    colours = {}
    for rect in ET.fromstring(svg).iter("{http://www.w3.org/2000/svg}rect"):
        role = rect.get("class").split()[1]
        colours.setdefault(role, set()).add(rect.get("fill"))
    assert all(len(c) == 1 for c in colours.values())
    colours = {role: c.pop() for role, c in colours.items()}
    assert len(set(colours.values())) == len(colours)


def test_glue_marks_scale_with_strength():
    svg = render_svg(keystone_system().seed)
    assert 'stroke-width="2"' in svg


def test_gadget_renders_two_planes():
    gadget = bit_string_gadget("1")
    term = explore(gadget.system, gadget.max_tiles()).terminals()[0]
    svg = render_svg(term)
    assert svg.count('class="plane"') == 2
    assert 'data-z="0"' in svg and 'data-z="1"' in svg


def test_render_is_deterministic():
    a = random_sequence(keystone_system(), 25, rng_seed=9).result()
    assert render_svg(a) == render_svg(a)
