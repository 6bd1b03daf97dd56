"""Closed-form counts for unitary groups of skew-hermitian forms.

Every function takes the ring statistics (see :class:`RingStats`) and the
half-rank ``m`` and returns an exact Python int.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import BranchUnavailable, NotProper
from .ring import Ring, RingStats


CSV_COLUMNS = ("name", "formula_value", "oracle_value", "match", "elapsed_ms")


@dataclass
class CountReport:
    name: str
    formula_value: int | None
    oracle_value: int | None = None
    match: bool | None = None
    note: str = ""
    elapsed_ms: float | None = None

    def __post_init__(self):
        if self.oracle_value is not None and self.formula_value is not None and self.match is None:
            self.match = self.formula_value == self.oracle_value

    @property
    def status(self) -> str:
        if self.match is None:
            return "skipped"
        return "match" if self.match else "MISMATCH"

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "formula_value": None if self.formula_value is None else str(self.formula_value),
            "oracle_value": None if self.oracle_value is None else str(self.oracle_value),
            "match": self.match,
            "status": self.status,
            "note": self.note,
        }

    def csv_row(self) -> list[str]:
        return [
            self.name,
            "" if self.formula_value is None else str(self.formula_value),
            "" if self.oracle_value is None else str(self.oracle_value),
            "" if self.match is None else str(self.match).lower(),
            "" if self.elapsed_ms is None else f"{self.elapsed_ms:.3f}",
        ]

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _symplectic_factor(q: int, m: int) -> int:
    """``(q^(2m) - 1)(q^(2(m-1)) - 1) ... (q^2 - 1)``."""
    out = 1
    for i in range(1, m + 1):
        out *= q ** (2 * i) - 1
    return out


def sp_order(q: int, m: int) -> int:
    """Order of Sp_2m(F_q)."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return q ** (m * m) * _symplectic_factor(q, m)


def unitary_order_radical_form(stats: RingStats, m: int) -> int:
    """``|r|^(2m^2 - m) |m|^(2m) |Sp_2m(q)|`` (successive reductions)."""
    return stats.card_rad ** (2 * m * m - m) * stats.card_m ** (2 * m) * sp_order(stats.q, m)


def unitary_order_skew_form(stats: RingStats, m: int) -> int:
    """``|r|^(m(m+1)) |A|^(m^2) (q^2m - 1)...(q^2 - 1) / |S|^(2m)`` (pair counting)."""
    num = stats.card_rad ** (m * (m + 1)) * stats.card_A ** (m * m) * _symplectic_factor(stats.q, m)
    den = stats.card_S ** (2 * m)
    if num % den:
        raise ArithmeticError("skew-form order is not an integer; stats are inconsistent")
    return num // den


def unitary_order(stats: RingStats, m: int) -> int:
    return unitary_order_radical_form(stats, m)


def kernel_order(ideal_size: int, ideal_hermitian_size: int, m: int) -> int:
    """Order of the congruence kernel for an ideal with ``|i|`` and ``|i cap m|`` given."""
    return ideal_size ** (2 * m * m - m) * ideal_hermitian_size ** (2 * m)


def ring_kernel_order(ring: Ring, j: int, m: int) -> int:
    """Congruence kernel of ``U_2m(A) -> U_2m(A/r^j)``, sizes read off the ring."""
    if not 1 <= j < ring.e:
        raise NotProper(f"r^{j} is not a proper nonzero power (e={ring.e})")
    ideal = ring.radical_power_mask(j)
    return kernel_order(int(ideal.sum()), int((ideal & ring.hermitian_mask).sum()), m)


def basis_vector_count(stats: RingStats, m: int) -> int:
    """Basis vectors of any fixed length: ``(|A|^2m - |r|^2m)/|S|``."""
    num = stats.card_A ** (2 * m) - stats.card_rad ** (2 * m)
    if num % stats.card_S:
        raise ArithmeticError("basis vector count is not an integer")
    return num // stats.card_S


def basis_vector_count_rank1(stats: RingStats) -> int:
    """``(|A| - |r|)(|R| + |m|)``, the rank-2 count by unit/non-unit first coordinate."""
    return (stats.card_A - stats.card_rad) * (stats.card_R + stats.card_m)


def basis_vector_recursion(stats: RingStats, m: int) -> int:
    """``N(1,0) |A|^(2(m-1)) + |r|^2 N(m-1,0)`` for ``m >= 2``."""
    if m < 2:
        raise ValueError("the recursion needs m >= 2")
    n1 = basis_vector_count(stats, 1)
    return n1 * stats.card_A ** (2 * (m - 1)) + stats.card_rad**2 * basis_vector_count(stats, m - 1)


def symplectic_pair_count(stats: RingStats, m: int) -> int:
    """``(|A|^2m - |r|^2m) |A|^(2m-1) / |S|^2``."""
    num = (stats.card_A ** (2 * m) - stats.card_rad ** (2 * m)) * stats.card_A ** (2 * m - 1)
    if num % stats.card_S**2:
        raise ArithmeticError("symplectic pair count is not an integer")
    return num // stats.card_S**2


def stabilizer_order(stats: RingStats, m: int) -> int:
    """Stabiliser of a basis vector: ``|U_2(m-1)(A)| |A|^(2m-1) / |S|``."""
    if m < 1:
        raise ValueError("m must be positive")
    smaller = unitary_order_radical_form(stats, m - 1)
    num = smaller * stats.card_A ** (2 * m - 1)
    if num % stats.card_S:
        raise ArithmeticError("stabilizer order is not an integer")
    return num // stats.card_S


def principal_case_order(q: int, e: int, m: int, star_trivial: bool) -> int:
    """Unitary order for a commutative principal ring, keyed on ``*`` and the parity of e."""
    if e < 1:
        raise BranchUnavailable("nilpotency degree must be positive")
    tail = _symplectic_factor(q, m)
    if star_trivial:
        return q ** ((e - 1) * (2 * m * m + m) + m * m) * tail
    if e == 1:
        raise BranchUnavailable("a nontrivial involution needs e >= 2")
    if e % 2 == 0:
        ell = e // 2
        return q ** ((2 * ell - 1) * (2 * m * m - m)) * q ** (2 * (ell - 1) * m) * q ** (m * m) * tail
    ell = (e + 1) // 2
    return q ** ((2 * ell - 2) * (2 * m * m - m)) * q ** (2 * (ell - 1) * m) * q ** (m * m) * tail


# -- principal structure ------------------------------------------------------


@dataclass
class PrincipalReport:
    commutative: bool
    principal: bool                # a in r with Aa = aA = r exists
    hermitian_commute: bool        # elements of R commute pairwise
    star_nontrivial: bool
    r_is_subring: bool
    generator: int | None          # code of the chosen generator x
    generator_type: str | None     # "hermitian" / "skew-hermitian"
    r_cap_rx_trivial: bool | None  # R cap Rx = 0
    r_cap_rx_witness: int | None
    r_not_closed_witness: tuple[int, int] | None
    kernel_size: int | None        # |{r in R : r x = 0}|
    expected_kernel_size: int | None
    card_A: int
    card_R: int
    card_rad: int
    card_m: int
    e: int
    q: int
    predicted_card_rad: int | None
    predicted_card_m: int | None
    predicted_card_A: int | None

    @property
    def all_hold(self) -> bool:
        return bool(self.principal and self.hermitian_commute and self.star_nontrivial
                    and self.r_cap_rx_trivial)

    @property
    def parity_ok(self) -> bool | None:
        if self.predicted_card_rad is None:
            return None
        return (self.card_rad == self.predicted_card_rad and self.card_m == self.predicted_card_m
                and self.card_A == self.predicted_card_A
                and self.kernel_size == self.expected_kernel_size)

    def principal_branch(self) -> str | None:
        """Which closed form applies, or None when the ring is outside its scope."""
        if not (self.commutative and self.principal):
            return None
        if not self.star_nontrivial:
            return "trivial"
        return "even" if self.e % 2 == 0 else "odd"

    def conditions(self) -> dict[str, bool | None]:
        """The four hypotheses of the principal case, keyed by their conventional tags.

        A7: r = Aa = aA for some a.  A8: hermitian elements commute.
        A9: the involution is not the identity.  A10: R meets Rx only in 0.
        """
        return {
            "A7": self.principal,
            "A8": self.hermitian_commute,
            "A9": self.star_nontrivial,
            "A10": self.r_cap_rx_trivial,
        }

    def reason_unavailable(self) -> str:
        if not self.principal:
            return "not applicable (A7 fails: no two-sided principal generator of the radical)"
        if not self.commutative:
            failed = [k for k, v in self.conditions().items() if v is False]
            return f"not applicable ({', '.join(failed)} fail: ring is not commutative)"
        return ""

    def to_json(self, ring: Ring) -> dict:
        fmt = ring.format_code
        return {
            "conditions": self.conditions(),
            "commutative": self.commutative,
            "principal_generator_exists": self.principal,
            "hermitian_elements_commute": self.hermitian_commute,
            "involution_nontrivial": self.star_nontrivial,
            "hermitian_elements_form_subring": self.r_is_subring,
            "generator": None if self.generator is None else fmt(self.generator),
            "generator_type": self.generator_type,
            "hermitian_meets_hermitian_times_generator_trivially": self.r_cap_rx_trivial,
            "witness_in_intersection": (None if self.r_cap_rx_witness is None
                                        else fmt(self.r_cap_rx_witness)),
            "witness_not_closed": (None if self.r_not_closed_witness is None
                                   else [fmt(c) for c in self.r_not_closed_witness]),
            "kernel_size": self.kernel_size,
            "expected_kernel_size": self.expected_kernel_size,
            "predicted_card_rad": self.predicted_card_rad,
            "predicted_card_m": self.predicted_card_m,
            "predicted_card_A": self.predicted_card_A,
            "parity_cardinalities_match": self.parity_ok,
        }


def principal_structure(ring: Ring) -> PrincipalReport:
    """Exhaustive checks of principality, commuting hermitian elements, ``* != 1``
    and ``R cap Rx = 0``, plus the parity cardinalities they imply."""
    ring._check_budget()
    codes = np.arange(ring.order, dtype=np.int64)
    rad = ring.radical_mask
    n_rad = int(rad.sum())
    herm = np.flatnonzero(ring.hermitian_mask)
    stats = ring.stats

    generator = None
    principal = False
    for a in np.flatnonzero(rad):
        left = np.unique(ring.mul(codes, a))
        if left.size != n_rad:
            continue
        right = np.unique(ring.mul(a, codes))
        if right.size != n_rad or not np.all(rad[left]):
            continue
        # Aa = aA = r; prefer a generator that is hermitian or skew-hermitian
        principal = True
        if ring.hermitian_mask[a] or ring.skew_mask[a]:
            generator = int(a)
            break

    commutative = ring.is_commutative()
    herm_products = ring.mul(herm[:, None], herm[None, :])
    hermitian_commute = bool(np.array_equal(herm_products, herm_products.T))
    closed = ring.hermitian_mask[herm_products]
    r_is_subring = bool(np.all(closed))
    not_closed = None
    if not r_is_subring:
        i, j = np.argwhere(~closed)[0]
        not_closed = (int(herm[i]), int(herm[j]))
    star_nontrivial = not np.array_equal(ring.star(codes), codes)

    gen_type = r_cap_rx_trivial = witness = kernel = expected_kernel = None
    pred_rad = pred_m = pred_A = None
    if generator is not None:
        gen_type = "hermitian" if ring.hermitian_mask[generator] else "skew-hermitian"
        rx = ring.mul(herm, generator)
        in_both = rx[ring.hermitian_mask[rx] & (rx != ring.zero)]
        r_cap_rx_trivial = in_both.size == 0
        witness = None if r_cap_rx_trivial else int(in_both.min())
        kernel = int(np.sum(rx == ring.zero))
        e, q = stats.e, stats.q
        if star_nontrivial and r_cap_rx_trivial:
            expected_kernel = 1 if e % 2 == 0 else q
            if e % 2 == 0:
                ell = e // 2
                pred_rad, pred_A = q ** (2 * ell - 1), stats.card_R**2
            else:
                ell = (e + 1) // 2
                pred_rad, pred_A = q ** (2 * ell - 2), stats.card_R**2 // q
            pred_m = q ** (ell - 1)

    return PrincipalReport(
        commutative=commutative,
        principal=principal,
        hermitian_commute=hermitian_commute,
        star_nontrivial=star_nontrivial,
        r_is_subring=r_is_subring,
        generator=generator,
        generator_type=gen_type,
        r_cap_rx_trivial=r_cap_rx_trivial,
        r_cap_rx_witness=witness,
        r_not_closed_witness=not_closed,
        kernel_size=kernel,
        expected_kernel_size=expected_kernel,
        card_A=stats.card_A,
        card_R=stats.card_R,
        card_rad=stats.card_rad,
        card_m=stats.card_m,
        e=stats.e,
        q=stats.q,
        predicted_card_rad=pred_rad,
        predicted_card_m=pred_m,
        predicted_card_A=pred_A,
    )


def ring_principal_order(ring: Ring, m: int, report: PrincipalReport | None = None) -> int:
    """Closed form for a commutative principal ring; BranchUnavailable otherwise."""
    report = report or principal_structure(ring)
    branch = report.principal_branch()
    if branch is None:
        raise BranchUnavailable(report.reason_unavailable())
    return principal_case_order(ring.q, ring.e, m, star_trivial=branch == "trivial")
