"""Finite abelian groups, stems tables, and the stable-range assembly."""

import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fourfold import (
    DomainError,
    FinAbGroup,
    InsufficientStemsData,
    MarkerSum,
    ParseError,
    StemsTable,
    ValidationError,
    bundled_stems_table,
    integral_low_homotopy,
    load_stems_table,
    stable_homotopy_finite_pi1,
    stable_homotopy_simply_connected,
)


def test_group_canonical_order_is_primary_decomposition():
    g = FinAbGroup.from_orders(0, [12, 2])
    # 12 splits into prime powers 4 and 3; sort key is (prime, exponent)
    assert g.torsion == (2, 4, 3)
    assert g.free_rank == 0


def test_from_orders_zero_means_a_free_summand():
    g = FinAbGroup.from_orders(0, [0, 0, 6])
    assert g.free_rank == 2
    assert g.torsion == (2, 3)


def test_from_orders_drops_trivial_factors():
    assert FinAbGroup.from_orders(0, [1, 1]) == FinAbGroup.trivial()
    assert FinAbGroup.trivial().is_trivial()


def test_torsion_entries_must_be_prime_powers():
    with pytest.raises(DomainError):
        FinAbGroup(free_rank=0, torsion=(6,))


def test_invariant_factor_rendering():
    assert str(FinAbGroup.from_orders(0, [24, 24, 2, 0])) == "(Z/24)^2 + Z/2 + Z"
    assert str(FinAbGroup.trivial()) == "0"
    assert str(FinAbGroup(free_rank=3)) == "Z^3"
    assert str(FinAbGroup.from_orders(0, [2])) == "Z/2"


def test_invariant_factors_recover_orders():
    g = FinAbGroup.from_orders(0, [240, 240, 2])
    assert g.invariant_factors() == [240, 240, 2]
    assert g.torsion == (2, 16, 16, 3, 3, 5, 5)


@given(st.lists(st.integers(min_value=0, max_value=60), max_size=6))
def test_direct_sum_is_commutative_and_canonical(orders):
    a = FinAbGroup.from_orders(0, orders)
    b = FinAbGroup.from_orders(0, [8, 9])
    assert a.direct_sum(b) == b.direct_sum(a)


def test_power_repeats_every_summand():
    g = FinAbGroup.from_orders(0, [0, 4])
    assert g.power(3) == FinAbGroup.from_orders(0, [0, 0, 0, 4, 4, 4])
    assert g.power(0) == FinAbGroup.trivial()


def test_group_json_shape():
    assert FinAbGroup.from_orders(0, [24, 0]).to_json_dict() == {
        "free_rank": 1,
        "torsion": [8, 3],
    }


def test_marker_sum_merges_and_renders():
    a = MarkerSum((("G1", 2),))
    b = MarkerSum((("G0", 1), ("G1", 1)))
    s = a.direct_sum(b)
    assert str(s) == "G0 + G1^3"
    assert str(s.power(2)) == "G0^2 + G1^6"


def test_mixing_symbolic_and_concrete_is_rejected():
    with pytest.raises(DomainError):
        FinAbGroup.from_orders(0, [2]).direct_sum(MarkerSum((("G0", 1),)))


# stems tables


def test_bundled_table_spans_0_to_19():
    t = bundled_stems_table()
    assert t.max_index == 19
    assert str(t.lookup(0)) == "Z"
    assert str(t.lookup(1)) == "Z/2"
    assert str(t.lookup(3)) == "Z/24"
    assert t.lookup(4).is_trivial()
    assert str(t.lookup(7)) == "Z/240"
    assert str(t.lookup(11)) == "Z/504"
    assert t.lookup(15) == FinAbGroup.from_orders(0, [480, 2])
    assert t.lookup(19) == FinAbGroup.from_orders(0, [264, 2])


def test_lookup_below_zero_is_trivial():
    assert bundled_stems_table().lookup(-3).is_trivial()


def test_lookup_past_the_table_is_an_error():
    t = bundled_stems_table()
    with pytest.raises(InsufficientStemsData) as exc:
        t.lookup(20)
    assert exc.value.index == 20
    assert exc.value.max_index == 19


def test_line_format_parsing():
    text = "# comment\n0: Z\n1: Z/2\n2: Z/2 + Z/2\n"
    t = load_stems_table(text, source_note="inline")
    assert t.max_index == 2
    assert t.lookup(2) == FinAbGroup.from_orders(0, [2, 2])


def test_json_format_parsing():
    blob = json.dumps({"0": "Z", "1": "Z/2", "2": "0"})
    t = load_stems_table(blob)
    assert t.max_index == 2
    assert t.lookup(2).is_trivial()


def test_parse_rejects_gaps():
    with pytest.raises(ValidationError):
        load_stems_table("0: Z\n2: Z/2\n")


def test_parse_rejects_duplicates():
    with pytest.raises(ParseError):
        load_stems_table("0: Z\n0: Z/2\n")


def test_parse_rejects_garbage_group_expression():
    with pytest.raises(ParseError):
        load_stems_table("0: Z\n1: Z/\n")


def test_index_zero_must_be_infinite_cyclic():
    with pytest.raises(ValidationError):
        load_stems_table("0: Z/2\n1: Z/2\n")


def test_symbolic_table_substitution():
    t = StemsTable.symbolic_table(12)
    assert str(t.lookup(4)) == "G4"
    out = stable_homotopy_simply_connected(3, 6, t)
    assert str(out) == "G1 + G3^2 + G4^3"


# assembly


def test_assembly_matches_hand_computation():
    stems = bundled_stems_table()
    g5 = stable_homotopy_simply_connected(2, 5, stems)
    assert g5.free_rank == 1
    assert g5.torsion == (2, 8, 8, 3, 3)
    assert str(g5) == "(Z/24)^2 + Z/2 + Z"

    g2 = stable_homotopy_simply_connected(2, 2, stems)
    assert g2 == FinAbGroup(free_rank=2)


def test_assembly_rejects_bad_betti():
    with pytest.raises(DomainError):
        stable_homotopy_simply_connected(0, 5, bundled_stems_table())


def test_assembly_raises_when_stems_run_out():
    stems = bundled_stems_table()
    with pytest.raises(InsufficientStemsData):
        stable_homotopy_simply_connected(2, 22, stems)
    # n = 21 only needs stems up to 19
    assert stable_homotopy_simply_connected(2, 21, stems) is not None


def test_finite_fundamental_group_adds_one_block():
    stems = bundled_stems_table()
    plain = stable_homotopy_finite_pi1(2, 6, 1, stems)
    assert plain == stable_homotopy_simply_connected(2, 6, stems)

    with_pi1 = stable_homotopy_finite_pi1(2, 6, 5, stems)
    # four extra copies of the (n-1)-stem
    extra = stems.lookup(5).power(4)
    assert with_pi1 == plain.direct_sum(extra)


def test_finite_pi1_symbolic_bookkeeping():
    t = StemsTable.symbolic_table(10)
    out = stable_homotopy_finite_pi1(2, 6, 3, t)
    assert str(out) == "G1 + G3 + G4^2 + G5^2"


def test_integral_low_degrees():
    pi3, pi4 = integral_low_homotopy(3)
    assert str(pi3) == "Z^5"
    assert str(pi4) == "(Z/2)^4 + Z^5"
    with pytest.raises(DomainError):
        integral_low_homotopy(2)
