"""Acceptance suite: one printed PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py`` (the lines bypass output
capture) or directly as ``python tests/test_acceptance.py``.  Exact
equality is required everywhere; the only tolerances are the wall-clock
limits of criterion 1.
"""

import time

import numpy as np
import pytest

from conftest import (
    F3_T2, F9_TWISTED, GR_TWISTED, SUITE, Z9_T2, Z9_T2_MINUS_3, Z9_TRIVIAL, Z9_TRUNCATED, ring_for,
)
from skewunitary import FormSpace, Matrix, orders, oracle, quotient_ring, standard_gram
from skewunitary import symplectic as sy
from skewunitary.errors import BranchUnavailable
from skewunitary.linalg import is_unitary, reduce_matrix, standard_j

SEED = 20240601
SAMPLES = 500

# (spec, m, expected order, time limit in seconds)
ORDER_ROWS = [
    (F3_T2, 1, 72, 1.0),
    (Z9_TRIVIAL, 1, 648, 1.0),
    (Z9_T2_MINUS_3, 1, 5832, 60.0),
    (Z9_TRUNCATED, 1, 1944, 5.0),
    (F9_TWISTED, 1, 58320, 60.0),
    (Z9_T2, 1, 5832, 60.0),
    (F3_T2, 2, 37791360, 120.0),
]


def report(capsys, number, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}"
    with capsys.disabled():
        print("\n" + line)


# -- 1 ------------------------------------------------------------------------


def _order_row(spec, m):
    ring = ring_for(spec)
    stats = ring.stats
    space = standard_gram(ring, m)
    values = {
        "radical form": orders.unitary_order_radical_form(stats, m),
        "skew form": orders.unitary_order_skew_form(stats, m),
    }
    notes = []
    try:
        values["principal case"] = orders.ring_principal_order(ring, m)
    except BranchUnavailable as exc:
        notes.append(str(exc))
    if m == 1:
        values["pair count"] = oracle.enumerate_symplectic_pairs(space)
        values["group"] = len(oracle.enumerate_unitary_group(space))
        if ring.order**4 <= oracle.DEFAULT_BUDGET.max_matrices:
            values["naive filter"] = len(oracle.unitary_group_naive(space))
    else:
        pairs = oracle.enumerate_symplectic_pairs(space)
        values["pair count x |U_2|"] = pairs * oracle.oracle_unitary_order(ring, m - 1)
        notes.append(f"rank-{2 * m} pair count {pairs}")
    return values, notes


@pytest.mark.parametrize("spec,m,expected,limit", ORDER_ROWS,
                         ids=[f"{s.label()} m={m}" for s, m, _, _ in ORDER_ROWS])
def test_criterion_1_orders(spec, m, expected, limit, capsys):
    start = time.perf_counter()
    values, notes = _order_row(spec, m)
    elapsed = time.perf_counter() - start
    ok = all(v == expected for v in values.values()) and elapsed < limit
    if spec == Z9_T2:
        ok = ok and any("A7 fails" in n for n in notes)
    shown = ", ".join(f"{k}={v}" for k, v in values.items())
    extra = f"; {'; '.join(notes)}" if notes else ""
    report(capsys, 1, ok, f"{spec.label()} m={m}: expected {expected}; {shown}{extra} "
                          f"({elapsed:.2f}s < {limit:.0f}s)")
    assert ok


# -- 2 ------------------------------------------------------------------------


@pytest.mark.parametrize("spec", SUITE, ids=lambda s: s.label())
def test_criterion_2_reduction_maps(spec, capsys):
    ring = ring_for(spec)
    space = standard_gram(ring, 1)
    group = oracle.enumerate_unitary_group(space)
    total = len(group)
    parts, ok = [], True
    for j in range(1, ring.e):
        quotient = quotient_ring(ring, j)
        downstairs = oracle.oracle_unitary_order(quotient, 1)
        res = oracle.reduction_image_and_kernel(space, j, group)
        kernel_formula = orders.ring_kernel_order(ring, j, 1)
        ok &= res.image_size == downstairs
        ok &= res.kernel_size == kernel_formula
        ok &= res.kernel_size * downstairs == total
        if 2 * j >= ring.e:
            ok &= oracle.kernel_satisfies_linear_condition(space, res.kernel)
        parts.append(f"j={j}: image {res.image_size} = |U(A/r^{j})| {downstairs}, "
                     f"kernel {res.kernel_size} = formula {kernel_formula}, "
                     f"{total} = {res.kernel_size}*{downstairs}")
    report(capsys, 2, ok, f"{spec.label()}: " + "; ".join(parts))
    assert ok


# -- 3 ------------------------------------------------------------------------


def test_criterion_3_lift_all_of_sp2_3(capsys):
    ring = ring_for(F3_T2)
    quotient = quotient_ring(ring, 1)
    space = standard_gram(ring, 1)
    group = oracle.enumerate_unitary_group(standard_gram(quotient, 1))
    lifted = 0
    for codes in group:
        xbar = Matrix(quotient, codes)
        x = sy.lift_unitary(space, xbar)
        lifted += is_unitary(space, x) and reduce_matrix(x, quotient) == xbar
    ok = len(group) == 24 and lifted == 24
    report(capsys, 3, ok, f"F_3[t]/(t^2) -> Sp_2(3): {lifted}/{len(group)} elements lifted and verified")
    assert ok


@pytest.mark.parametrize("spec", SUITE, ids=lambda s: s.label())
def test_criterion_3_random_lifts(spec, capsys):
    ring = ring_for(spec)
    rng = np.random.default_rng(SEED)
    space = standard_gram(ring, 1)
    quotients = [quotient_ring(ring, j) for j in range(1, ring.e)]
    qspaces = [standard_gram(q, 1) for q in quotients]
    good = 0
    for i in range(SAMPLES):
        q, qspace = quotients[i % len(quotients)], qspaces[i % len(quotients)]
        xbar = sy.random_unitary(qspace, rng)
        x = sy.lift_unitary(space, xbar)
        good += is_unitary(space, x) and reduce_matrix(x, q) == xbar
    ok = good == SAMPLES
    report(capsys, 3, ok, f"{spec.label()}: {good}/{SAMPLES} seeded lifts over j=1..{ring.e - 1} verified")
    assert ok


# -- 4 ------------------------------------------------------------------------


@pytest.mark.parametrize("m", [1, 2])
@pytest.mark.parametrize("spec", SUITE, ids=lambda s: s.label())
def test_criterion_4_symplectic_bases(spec, m, capsys):
    ring = ring_for(spec)
    rng = np.random.default_rng(SEED + m)
    j_std = standard_j(ring, m)
    ideals = [np.flatnonzero(ring.radical_power_mask(j)) for j in range(1, ring.e)]
    exact = corrected = 0
    for i in range(SAMPLES):
        y = sy.random_invertible(ring, 2 * m, rng)
        space = FormSpace(ring, y.H @ j_std @ y)
        basis = sy.symplectic_basis(space)
        exact += basis.transform.H @ space.gram @ basis.transform == j_std
        j = 1 + i % len(ideals)
        noise = Matrix(ring, rng.choice(ideals[j - 1], size=(2 * m, 2 * m)))
        approx = (basis.transform + noise).columns()
        fixed = sy.correct_basis_mod_ideal(space, approx, j)
        corrected += fixed.is_symplectic(space) and all(
            a.congruent(b, j) for a, b in zip(fixed.vectors, approx))
    ok = exact == corrected == SAMPLES
    report(capsys, 4, ok, f"{spec.label()} m={m}: symplectic_basis exact {exact}/{SAMPLES}, "
                          f"correct_basis_mod_ideal exact and congruent {corrected}/{SAMPLES}")
    assert ok


# -- 5 ------------------------------------------------------------------------

RECURSION_VECTOR_BUDGET = oracle.EnumerationBudget(max_vectors=10**6)


@pytest.mark.parametrize("spec", SUITE, ids=lambda s: s.label())
def test_criterion_5_counting(spec, capsys):
    ring = ring_for(spec)
    stats = ring.stats
    census = oracle.enumerate_vectors_by_length(standard_gram(ring, 1))
    skew = {ring.element(int(s)) for s in np.flatnonzero(ring.skew_mask)}
    counts = {census.buckets.get(s, (0, 0))[0] for s in skew}
    n1 = orders.basis_vector_count(stats, 1)
    ok = counts == {n1} and set(census.buckets) <= skew
    rank1 = orders.basis_vector_count_rank1(stats)
    ok &= rank1 == n1
    detail = (f"{spec.label()}: buckets over |S|={len(skew)} lengths all {sorted(counts)}, "
              f"formula {n1}, rank-1 identity {rank1}")
    if ring.order**4 <= RECURSION_VECTOR_BUDGET.max_vectors:
        buckets2 = oracle.enumerate_vectors_by_length(standard_gram(ring, 2),
                                                      RECURSION_VECTOR_BUDGET).buckets
        how = "direct rank-4 census"
    else:
        # the standard rank-4 form is the orthogonal sum of two standard planes
        buckets2 = oracle.orthogonal_sum_buckets(census, census)
        how = "rank-4 census as a sum of two planes"
    counts2 = {buckets2.get(s, (0, 0))[0] for s in skew}
    n_zero = census.buckets[ring.element(ring.zero)][0]
    recursion = n_zero * stats.card_A**2 + stats.card_rad**2 * n_zero
    n2 = orders.basis_vector_count(stats, 2)
    ok &= counts2 == {n2} == {recursion}
    ok &= sum(b + o for b, o in buckets2.values()) == stats.card_A**4
    detail += f"; m=2 {how}: buckets {sorted(counts2)} = recursion {recursion} = formula {n2}"
    report(capsys, 5, ok, detail)
    assert ok


# -- 6 ------------------------------------------------------------------------


@pytest.mark.parametrize("spec", SUITE, ids=lambda s: s.label())
def test_criterion_6_orbits_and_stabilizers(spec, capsys):
    ring = ring_for(spec)
    space = standard_gram(ring, 1)
    group = oracle.enumerate_unitary_group(space)
    census = oracle.enumerate_vectors_by_length(space)
    expected_stab = orders.stabilizer_order(ring.stats, 1)
    ok = expected_stab == ring.order // ring.stats.card_S
    stabs = set()
    for s in census.buckets:
        members = census.vectors[census.is_basis & (census.lengths == s.code)]
        bucket = census.bucket(s)
        for rep in members[:: max(1, len(members) // 4)]:
            ok &= np.array_equal(oracle.orbit_of(space, group, rep), bucket)
            stab = oracle.stabilizer_size(space, group, rep)
            stabs.add(stab)
            ok &= stab * bucket.size == len(group)
    ok &= stabs == {expected_stab}
    report(capsys, 6, ok, f"{spec.label()}: orbits = length buckets, stabilizers {sorted(stabs)} "
                          f"= |A|/|S| = {expected_stab}, group order {len(group)}")
    assert ok


# -- 7 ------------------------------------------------------------------------

PRINCIPAL_EXPECTED = {
    F3_T2: dict(A7=True, A8=True, A9=True, A10=True),
    Z9_T2_MINUS_3: dict(A7=True, A8=True, A9=True, A10=True),
    Z9_TRUNCATED: dict(A7=True, A8=True, A9=True, A10=True),
    Z9_T2: dict(A7=False),
    GR_TWISTED: dict(A7=True, A9=True, A10=False),
}


@pytest.mark.parametrize("spec", list(PRINCIPAL_EXPECTED), ids=lambda s: s.label())
def test_criterion_7_principal_structure(spec, capsys):
    ring = ring_for(spec)
    rep = orders.principal_structure(ring)
    cond = rep.conditions()
    ok = all(cond[k] == v for k, v in PRINCIPAL_EXPECTED[spec].items())
    detail = ", ".join(f"{k}={'holds' if v else 'fails'}" for k, v in cond.items() if v is not None)
    if spec == GR_TWISTED:
        ok &= rep.r_is_subring is False and rep.r_cap_rx_witness is not None
        detail += (f"; R not a subring ({' * '.join(ring.format_code(c) for c in rep.r_not_closed_witness)}"
                   f" not hermitian); {ring.format_code(rep.r_cap_rx_witness)} in R cap Rx")
    if rep.all_hold:
        ok &= bool(rep.parity_ok)
        detail += (f"; x={ring.format_code(rep.generator)} ({rep.generator_type}), e={rep.e}, "
                   f"kernel {rep.kernel_size}, |r|={rep.card_rad} |m|={rep.card_m} |A|={rep.card_A} "
                   f"match the parity prediction")
    report(capsys, 7, ok, f"{spec.label()}: {detail}")
    assert ok


# -- 8 ------------------------------------------------------------------------


@pytest.mark.parametrize("spec", SUITE + [GR_TWISTED], ids=lambda s: s.label())
def test_criterion_8_ring_axioms(spec, capsys):
    ring = ring_for(spec)
    ring.validate_axioms()
    herm = np.flatnonzero(ring.hermitian_mask)
    skew = np.flatnonzero(ring.skew_mask)
    sums = ring.add(herm[:, None], skew[None, :]).ravel()
    ok = sums.size == ring.order == np.unique(sums).size
    detail = f"{spec.label()}: axioms hold, R x S -> A bijective ({herm.size}*{skew.size}={ring.order})"
    if ring.order <= 81:
        codes = np.arange(ring.order)
        diff = ring.sub(codes, ring.star(codes))
        for s in skew:
            solutions = np.flatnonzero(diff == s)
            expected = np.unique(ring.add(ring.mul(s, ring.two_inv), herm))
            ok &= np.array_equal(solutions, expected)
        detail += f"; y - y* = s solved by s/2 + R for all {skew.size} s"
    report(capsys, 8, ok, detail)
    assert ok


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
