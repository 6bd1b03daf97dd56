import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import (
    F3_T2, F9_TWISTED, GR_TWISTED, SUITE, Z9_T2, Z9_T2_MINUS_3, Z9_TRIVIAL, Z9_TRUNCATED, ring_for,
)
from skewunitary import orders, quotient_ring
from skewunitary.errors import BranchUnavailable, NotProper
from skewunitary.ring import RingStats

UNITARY_ORDERS = {
    F3_T2: 72, Z9_TRIVIAL: 648, Z9_T2_MINUS_3: 5832, Z9_TRUNCATED: 1944,
    F9_TWISTED: 58320, Z9_T2: 5832,
}


def test_sp_order():
    assert orders.sp_order(3, 1) == 24
    assert orders.sp_order(3, 2) == 51840
    assert orders.sp_order(9, 1) == 720
    assert orders.sp_order(3, 0) == 1


@pytest.mark.parametrize("spec", list(UNITARY_ORDERS), ids=lambda s: s.label())
def test_unitary_orders(spec):
    stats = ring_for(spec).stats
    assert orders.unitary_order_radical_form(stats, 1) == UNITARY_ORDERS[spec]
    assert orders.unitary_order_skew_form(stats, 1) == UNITARY_ORDERS[spec]


def test_unitary_order_m2():
    stats = ring_for(F3_T2).stats
    assert orders.unitary_order_radical_form(stats, 2) == 37791360
    assert orders.symplectic_pair_count(stats, 2) == 524880
    assert 524880 * 72 == 37791360


@st.composite
def synthetic_stats(draw):
    """Statistics of the shape the counting formulas assume: |A| = q|r|, |R| = q|m|,
    |A| = |R||S|, with everything a power of q."""
    q = draw(st.sampled_from([3, 5, 9, 25, 27]))
    rad = draw(st.integers(0, 6))
    m = draw(st.integers(0, rad))
    s = rad - m
    return RingStats(card_A=q ** (rad + 1), card_rad=q**rad, e=rad + 1, q=q,
                     card_R=q ** (m + 1), card_S=q**s, card_m=q**m)


@given(synthetic_stats(), st.integers(1, 4))
def test_two_order_formulas_agree(stats, m):
    assert orders.unitary_order_radical_form(stats, m) == orders.unitary_order_skew_form(stats, m)
    assert (orders.stabilizer_order(stats, m) * orders.basis_vector_count(stats, m)
            == orders.unitary_order_radical_form(stats, m))


@pytest.mark.parametrize("spec", SUITE + [GR_TWISTED], ids=lambda s: s.label())
def test_identities_on_desk_rings(spec):
    ring = ring_for(spec)
    stats = ring.stats
    assert orders.basis_vector_count(stats, 1) == orders.basis_vector_count_rank1(stats)
    for m in (1, 2, 3):
        total = orders.unitary_order_radical_form(stats, m)
        assert orders.unitary_order_skew_form(stats, m) == total
        assert orders.stabilizer_order(stats, m) * orders.basis_vector_count(stats, m) == total
        for j in range(1, ring.e):
            down = orders.unitary_order_radical_form(quotient_ring(ring, j).stats, m)
            assert orders.ring_kernel_order(ring, j, m) * down == total
        if m >= 2:
            assert orders.basis_vector_recursion(stats, m) == orders.basis_vector_count(stats, m)


def test_kernel_orders():
    assert orders.ring_kernel_order(ring_for(F3_T2), 1, 1) == 3
    assert orders.ring_kernel_order(ring_for(Z9_T2_MINUS_3), 2, 1) == 81
    assert orders.ring_kernel_order(ring_for(Z9_TRIVIAL), 1, 1) == 27
    assert orders.kernel_order(9, 3, 1) == 81
    with pytest.raises(NotProper):
        orders.ring_kernel_order(ring_for(F3_T2), 2, 1)


def test_counts():
    f3 = ring_for(F3_T2).stats
    assert orders.basis_vector_count(f3, 1) == 24 == orders.basis_vector_count_rank1(f3)
    assert orders.basis_vector_count(ring_for(F9_TWISTED).stats, 1) == 2160
    assert orders.symplectic_pair_count(f3, 1) == 72
    assert orders.symplectic_pair_count(ring_for(Z9_T2_MINUS_3).stats, 1) == 5832
    assert orders.stabilizer_order(f3, 1) == 3
    assert orders.stabilizer_order(ring_for(Z9_TRIVIAL).stats, 1) == 9


def test_principal_case_branches():
    assert orders.principal_case_order(3, 2, 1, star_trivial=True) == 648
    assert orders.principal_case_order(3, 4, 1, star_trivial=False) == 5832
    assert orders.principal_case_order(3, 3, 1, star_trivial=False) == 1944
    with pytest.raises(BranchUnavailable):
        orders.principal_case_order(3, 1, 1, star_trivial=False)


@pytest.mark.parametrize("spec", [F3_T2, Z9_TRIVIAL, Z9_T2_MINUS_3, Z9_TRUNCATED],
                         ids=lambda s: s.label())
@pytest.mark.parametrize("m", [1, 2, 3])
def test_principal_order_matches_general(spec, m):
    ring = ring_for(spec)
    assert orders.ring_principal_order(ring, m) == orders.unitary_order_radical_form(ring.stats, m)


def test_principal_structure_principal_even():
    ring = ring_for(Z9_T2_MINUS_3)
    rep = orders.principal_structure(ring)
    assert rep.conditions() == {"A7": True, "A8": True, "A9": True, "A10": True}
    assert ring.element(rep.generator) == ring.t and rep.generator_type == "skew-hermitian"
    assert rep.kernel_size == rep.expected_kernel_size == 1
    assert rep.parity_ok and rep.card_A == rep.card_R**2 == 81
    assert rep.principal_branch() == "even"


def test_principal_structure_principal_odd():
    ring = ring_for(Z9_TRUNCATED)
    rep = orders.principal_structure(ring)
    assert rep.all_hold and rep.principal_branch() == "odd"
    assert rep.kernel_size == rep.expected_kernel_size == 3
    assert rep.parity_ok and rep.card_A == rep.card_R**2 // 3


def test_principal_structure_not_principal():
    rep = orders.principal_structure(ring_for(Z9_T2))
    assert rep.conditions()["A7"] is False
    assert rep.principal_branch() is None
    assert "A7 fails" in rep.reason_unavailable()
    with pytest.raises(BranchUnavailable, match="A7 fails"):
        orders.ring_principal_order(ring_for(Z9_T2), 1)


def test_principal_structure_galois_note_ring():
    ring = ring_for(GR_TWISTED)
    rep = orders.principal_structure(ring)
    assert rep.principal and rep.star_nontrivial
    assert rep.r_cap_rx_trivial is False and rep.r_is_subring is False
    w = ring.element(rep.r_cap_rx_witness)
    assert w.star() == w and not w.is_zero()
    x, y = (ring.element(c) for c in rep.r_not_closed_witness)
    assert x.star() == x and y.star() == y and (x * y).star() != x * y
    doc = rep.to_json(ring)
    assert doc["conditions"]["A10"] is False


def test_noncommutative_ring_is_outside_principal_case():
    rep = orders.principal_structure(ring_for(F9_TWISTED))
    assert not rep.commutative and rep.conditions()["A8"] is False
    assert rep.principal_branch() is None


def test_count_report_json():
    r = orders.CountReport("x", 2**70, 2**70)
    assert r.match and r.status == "match"
    doc = json.loads(r.dumps())
    assert doc["formula_value"] == str(2**70)
    assert orders.CountReport("y", 1).status == "skipped"
    assert orders.CountReport("z", 1, 2).status == "MISMATCH"
