import math
import re
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from atamkit.encoding import (
    SIDES,
    BindingRelation,
    EncodingError,
    arm_length_bound,
    decode_tileset,
    encode_tileset,
    encoding_length,
    normalize_display,
    example_relation,
)
from atamkit.systems import line_system

GOLDEN = Path(__file__).resolve().parents[1] / "fixtures" / "paper_encoding.txt"


@st.composite
def relations(draw, max_size=8):
    n = draw(st.integers(0, max_size))
    side = st.frozensets(st.integers(0, n - 1)) if n else st.just(frozenset())
    return BindingRelation(tuple(tuple(draw(side) for _ in SIDES) for _ in range(n)))


def test_golden_display_string():
    assert encode_tileset(example_relation(), "display") == normalize_display(GOLDEN.read_text())


def test_decode_golden_file():
    r = decode_tileset(GOLDEN.read_text())
    assert r == example_relation()
    assert r.side(1, "N") == {1, 2, 4}


def test_empty_and_single_tile():
    assert encode_tileset(BindingRelation(())) == "BF"
    assert decode_tileset("BF") == BindingRelation(())
    one = BindingRelation.from_lists([{}])
    assert encode_tileset(one, "display") == "B 0 Nn0 En0 Sn0 Wn0 D F"
    assert encode_tileset(one) == "B00Nn0En0Sn0Wn0DF"


def test_binary_indices_are_padded():
    s = encode_tileset(example_relation())
    assert s.startswith("B0000Nn000y001y010n011f100E")
    assert len(s) == encoding_length(5) == 447


def test_example_is_not_symmetric():
    # Tile 0 lists tile 2 as a north binder, but tile 2 lists no south binder but 4.
    assert (0, "N", 2) in example_relation().asymmetries()


def test_relation_from_system():
    r = BindingRelation.from_system(line_system())
    assert r.side(0, "E") == {1}
    assert r.side(1, "W") == {0, 1}
    assert r.is_symmetric()


@settings(max_examples=150, deadline=None)
@given(relations())
def test_round_trip_both_modes(r):
    assert decode_tileset(encode_tileset(r)) == r
    assert decode_tileset(encode_tileset(r, "display")) == r


@settings(max_examples=100, deadline=None)
@given(relations())
def test_final_marker_appears_once_per_binding_side(r):
    s = encode_tileset(r, "display")
    for token in s.split():
        if token[0] in SIDES and len(token) > 1:
            markers = re.findall(r"[yfn]", token)
            binders = markers.count("y") + markers.count("f")
            assert markers.count("f") == (1 if binders else 0)
            if binders:
                assert markers[-1 - markers[::-1].index("f")] == "f"
                assert "y" not in markers[markers.index("f"):]


@settings(max_examples=60, deadline=None)
@given(relations(max_size=12))
def test_length_is_relation_independent(r):
    if len(r):
        assert len(encode_tileset(r)) == encoding_length(len(r))


def test_length_growth_is_quadratic_log():
    ratios = [encoding_length(n) / (n * n * math.log2(n)) for n in range(2, 65)]
    assert 4 <= min(ratios) and max(ratios) <= 20
    for k in (2, 4, 8, 16, 32, 64):
        assert 3.5 < encoding_length(2 * k) / encoding_length(k) < 6


@pytest.mark.parametrize("bad, offset", [("", 0), ("BX", 1), ("B0Nn0En0Sn0Wn0DF", 1), ("B00Nn0En0Sn0Wn0DFx", 17),
                                          ("B00Nn0En0Sn0Wn0D", 16), ("B00Ny0En0Sn0Wn0DF", 6)])
def test_malformed_strings_report_offsets(bad, offset):
    with pytest.raises(EncodingError) as err:
        decode_tileset(bad)
    assert err.value.offset == offset


def test_arm_length_bound():
    assert arm_length_bound(0, 1) == 2169
    assert arm_length_bound(1, 1) == 138_249
    with pytest.raises(ValueError):
        arm_length_bound(0, 0)
