"""Exhaustive enumeration over small rings: the ground truth for every count.

Nothing here uses a closed formula.  Vectors of ``A^n`` are enumerated in
lexicographic order of their coordinate codes and identified with the integer
``sum(c_i * |A|^(n-1-i))``; matrices are code arrays of shape ``(G, n, n)``.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import orders
from .errors import BranchUnavailable, BudgetExceeded, NotProper
from .linalg import FormSpace, standard_gram, standard_j
from .ring import Element, QuotientRing, Ring, quotient_ring

CHUNK_CELLS = 1 << 21


@dataclass(frozen=True)
class EnumerationBudget:
    max_vectors: int = 10**5
    max_pairs: int = 10**8
    max_matrices: int = 10**7

    def __post_init__(self):
        if min(self.max_vectors, self.max_pairs, self.max_matrices) <= 0:
            raise ValueError("budgets must be positive")


DEFAULT_BUDGET = EnumerationBudget()


# -- vectors -------------------------------------------------------------------


def all_vectors(ring: Ring, n: int, budget: EnumerationBudget = DEFAULT_BUDGET) -> np.ndarray:
    total = ring.order**n
    if total > budget.max_vectors:
        raise BudgetExceeded(f"|A|^{n} = {total} vectors exceeds max_vectors={budget.max_vectors}")
    idx = np.arange(total, dtype=np.int64)
    powers = ring.order ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return (idx[:, None] // powers[None, :]) % ring.order


def encode_vectors(ring: Ring, vecs: np.ndarray) -> np.ndarray:
    n = vecs.shape[-1]
    powers = ring.order ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return vecs @ powers


def _left_coefficients(space: FormSpace, us: np.ndarray) -> np.ndarray:
    """Row vectors ``u* J`` so that ``h(u, v) = sum_j (u* J)_j v_j``."""
    ring = space.ring
    star_u = ring.star(us)
    out = np.zeros_like(us)
    gram = space.gram.codes
    for i in range(space.rank):
        for j in range(space.rank):
            if gram[i, j] != ring.zero:
                out[:, j] = ring.add(out[:, j], ring.mul(star_u[:, i], gram[i, j]))
    return out


def pairings(space: FormSpace, us: np.ndarray, vs: np.ndarray) -> np.ndarray:
    """``h(u, v)`` for every u in ``us`` (rows) against every v in ``vs`` (columns)."""
    ring = space.ring
    coeffs = _left_coefficients(space, us)
    out = np.zeros((us.shape[0], vs.shape[0]), dtype=np.int64)
    for j in range(space.rank):
        out = ring.add(out, ring.mul(coeffs[:, j][:, None], vs[:, j][None, :]))
    return out


def lengths(space: FormSpace, vecs: np.ndarray) -> np.ndarray:
    ring = space.ring
    coeffs = _left_coefficients(space, vecs)
    out = np.zeros(vecs.shape[0], dtype=np.int64)
    for j in range(space.rank):
        out = ring.add(out, ring.mul(coeffs[:, j], vecs[:, j]))
    return out


@dataclass
class VectorCensus:
    """Every vector of the space with its length and basis-vector flag."""

    space: FormSpace
    vectors: np.ndarray
    lengths: np.ndarray
    is_basis: np.ndarray
    buckets: dict[Element, tuple[int, int]] = field(default_factory=dict)

    def bucket(self, s: Element) -> np.ndarray:
        """Sorted encodings of the basis vectors of length ``s``."""
        sel = self.is_basis & (self.lengths == s.code)
        return encode_vectors(self.space.ring, self.vectors[sel])


def enumerate_vectors_by_length(
    space: FormSpace, budget: EnumerationBudget = DEFAULT_BUDGET
) -> VectorCensus:
    """Scan all of ``A^n``, bucketing by exact length into (basis, non-basis) counts."""
    ring = space.ring
    vecs = all_vectors(ring, space.rank, budget)
    lens = lengths(space, vecs)
    is_basis = np.any(ring.unit_mask[vecs], axis=1)
    census = VectorCensus(space, vecs, lens, is_basis)
    for s in np.unique(lens):
        sel = lens == s
        census.buckets[ring.element(int(s))] = (
            int(np.sum(is_basis & sel)),
            int(np.sum(~is_basis & sel)),
        )
    return census


def _histograms(census: VectorCensus) -> tuple[np.ndarray, np.ndarray]:
    order = census.space.ring.order
    basis = np.bincount(census.lengths[census.is_basis], minlength=order)
    other = np.bincount(census.lengths[~census.is_basis], minlength=order)
    return basis, other


def orthogonal_sum_buckets(first: VectorCensus, second: VectorCensus) -> dict[Element, tuple[int, int]]:
    """Exact length buckets of ``V1 + V2`` (orthogonal sum) from the censuses of the parts.

    A vector ``(x, y)`` has length ``h(x,x) + h(y,y)`` and is a basis vector iff
    ``x`` or ``y`` is, so every pair of part vectors is accounted for once.  This
    covers all ``|V1||V2|`` vectors without materialising them.
    """
    ring = first.space.ring
    b1, n1 = _histograms(first)
    b2, n2 = _histograms(second)
    sums = ring.add(np.arange(ring.order)[:, None], np.arange(ring.order)[None, :])
    basis = np.zeros(ring.order, dtype=object)
    other = np.zeros(ring.order, dtype=object)
    np.add.at(basis, sums, np.outer(b1, b2 + n2).astype(object) + np.outer(n1, b2).astype(object))
    np.add.at(other, sums, np.outer(n1, n2).astype(object))
    return {
        ring.element(s): (int(basis[s]), int(other[s]))
        for s in range(ring.order)
        if basis[s] or other[s]
    }


# -- symplectic pairs ------------------------------------------------------------


def _pair_budget(space: FormSpace, budget: EnumerationBudget) -> None:
    scan = space.ring.order ** (2 * space.rank)
    if scan > budget.max_pairs:
        raise BudgetExceeded(f"{scan} ordered pairs exceeds max_pairs={budget.max_pairs}")


def _isotropic_vectors(space: FormSpace, budget: EnumerationBudget) -> np.ndarray:
    vecs = all_vectors(space.ring, space.rank, budget)
    return vecs[lengths(space, vecs) == space.ring.zero]


def _pair_chunk(space: FormSpace, iso: np.ndarray, lo: int, hi: int, collect: bool):
    h = pairings(space, iso[lo:hi], iso)
    hit = h == space.ring.one
    if collect:
        rows, cols = np.nonzero(hit)
        return int(hit.sum()), np.stack([rows + lo, cols], axis=1)
    return int(hit.sum()), None


def _chunks(total: int, width: int) -> list[tuple[int, int]]:
    size = max(1, CHUNK_CELLS // max(width, 1))
    return [(lo, min(lo + size, total)) for lo in range(0, total, size)]


def enumerate_symplectic_pairs(
    space: FormSpace,
    budget: EnumerationBudget = DEFAULT_BUDGET,
    workers: int = 1,
    collect: bool = False,
):
    """Count ordered pairs ``(u, v)`` with ``h(u,u) = h(v,v) = 0`` and ``h(u,v) = 1``.

    Both vectors are first restricted to the isotropic ones; the scan over the
    first vector is partitioned into chunks and the chunk counts are summed,
    so the result does not depend on ``workers``.  With ``collect=True`` the
    pairs are also returned as an array of shape ``(P, 2, n)``.
    """
    _pair_budget(space, budget)
    iso = _isotropic_vectors(space, budget)
    spans = _chunks(len(iso), len(iso))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda s: _pair_chunk(space, iso, *s, collect), spans))
    else:
        parts = [_pair_chunk(space, iso, lo, hi, collect) for lo, hi in spans]
    count = sum(c for c, _ in parts)
    if not collect:
        return count
    idx = np.concatenate([p for _, p in parts]) if parts else np.zeros((0, 2), dtype=np.int64)
    return count, np.stack([iso[idx[:, 0]], iso[idx[:, 1]]], axis=1)


# -- the unitary group ------------------------------------------------------------


def _unitary_mask(space: FormSpace, mats: np.ndarray) -> np.ndarray:
    """``X* J X == J`` for a stack of matrices."""
    ring = space.ring
    n = space.rank
    gram = space.gram.codes
    # (J X)_{kj} then (X* J X)_{ij} = sum_k star(X_ki) (J X)_kj
    jx = np.zeros_like(mats)
    for k in range(n):
        for l in range(n):
            if gram[k, l] != ring.zero:
                jx[:, k, :] = ring.add(jx[:, k, :], ring.mul(gram[k, l], mats[:, l, :]))
    ok = np.ones(mats.shape[0], dtype=bool)
    star = ring.star(mats)
    for i in range(n):
        for j in range(n):
            acc = np.zeros(mats.shape[0], dtype=np.int64)
            for k in range(n):
                acc = ring.add(acc, ring.mul(star[:, k, i], jx[:, k, j]))
            ok &= acc == gram[i, j]
    return ok


def unitary_group_naive(space: FormSpace, budget: EnumerationBudget = DEFAULT_BUDGET) -> np.ndarray:
    """Filter every ``n x n`` matrix by ``X* J X = J``."""
    ring, n = space.ring, space.rank
    total = ring.order ** (n * n)
    if total > budget.max_matrices:
        raise BudgetExceeded(f"{total} matrices exceeds max_matrices={budget.max_matrices}")
    powers = ring.order ** np.arange(n * n - 1, -1, -1, dtype=np.int64)
    found = []
    step = max(1, CHUNK_CELLS // (n * n))
    for lo in range(0, total, step):
        idx = np.arange(lo, min(lo + step, total), dtype=np.int64)
        mats = ((idx[:, None] // powers[None, :]) % ring.order).reshape(-1, n, n)
        found.append(mats[_unitary_mask(space, mats)])
    return _canonical_order(ring, np.concatenate(found))


def unitary_group_from_pairs(
    space: FormSpace, budget: EnumerationBudget = DEFAULT_BUDGET, workers: int = 1
) -> np.ndarray:
    """For rank 2, a symplectic pair ``(u, v)`` is exactly the column pair of a unitary."""
    if space.rank != 2:
        raise BudgetExceeded("the pair bijection only yields the group in rank 2")
    _, pairs = enumerate_symplectic_pairs(space, budget, workers=workers, collect=True)
    mats = np.transpose(pairs, (0, 2, 1))  # columns u, v
    mats = mats[_unitary_mask(space, mats)] if space.gram != standard_j(space.ring, 1) else mats
    return _canonical_order(space.ring, mats)


def _canonical_order(ring: Ring, mats: np.ndarray) -> np.ndarray:
    keys = encode_matrices(ring, mats)
    return mats[np.argsort(keys, kind="stable")]


def encode_matrices(ring: Ring, mats: np.ndarray) -> np.ndarray:
    n2 = mats.shape[1] * mats.shape[2]
    if ring.order**n2 >= 2**63:
        raise BudgetExceeded("matrix encoding does not fit in 64 bits")
    powers = ring.order ** np.arange(n2 - 1, -1, -1, dtype=np.int64)
    return mats.reshape(len(mats), -1) @ powers


def enumerate_unitary_group(
    space: FormSpace,
    budget: EnumerationBudget = DEFAULT_BUDGET,
    method: str = "auto",
    workers: int = 1,
) -> np.ndarray:
    """The full group as an array ``(G, n, n)`` in canonical order.

    ``method`` is ``"naive"``, ``"pairs"`` or ``"auto"`` (naive when affordable,
    else the rank-2 pair bijection).
    """
    if method == "naive":
        return unitary_group_naive(space, budget)
    if method == "pairs":
        return unitary_group_from_pairs(space, budget, workers)
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    if space.ring.order ** (space.rank**2) <= budget.max_matrices:
        return unitary_group_naive(space, budget)
    return unitary_group_from_pairs(space, budget, workers)


def apply_group(ring: Ring, group: np.ndarray, v: np.ndarray) -> np.ndarray:
    """``g v`` for every ``g`` in the group; result shape ``(G, n)``."""
    out = np.zeros(group.shape[:2], dtype=np.int64)
    for j in range(group.shape[2]):
        out = ring.add(out, ring.mul(group[:, :, j], v[j]))
    return out


def multiply_groups(ring: Ring, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Batched matrix products ``x[i] @ y[i]``."""
    out = np.zeros(x.shape[:2] + y.shape[2:], dtype=np.int64)
    for k in range(x.shape[2]):
        out = ring.add(out, ring.mul(x[:, :, k][:, :, None], y[:, k, :][:, None, :]))
    return out


def orbit_of(space: FormSpace, group: np.ndarray, v) -> np.ndarray:
    """Sorted unique encodings of ``{g v}``."""
    codes = v.codes if hasattr(v, "codes") else np.asarray(v)
    images = apply_group(space.ring, group, codes)
    return np.unique(encode_vectors(space.ring, images))


def stabilizer_size(space: FormSpace, group: np.ndarray, v) -> int:
    codes = v.codes if hasattr(v, "codes") else np.asarray(v)
    images = apply_group(space.ring, group, codes)
    return int(np.sum(np.all(images == codes[None, :], axis=1)))


@dataclass
class ReductionResult:
    quotient: QuotientRing
    image_size: int
    kernel_size: int
    kernel: np.ndarray


def reduction_image_and_kernel(space: FormSpace, j: int, group: np.ndarray) -> ReductionResult:
    """Reduce every group element modulo ``r^j``; count images and the kernel."""
    ring = space.ring
    if not 1 <= j < ring.e:
        raise NotProper(f"r^{j} is not a proper nonzero power (e={ring.e})")
    quotient = quotient_ring(ring, j)
    reduced = quotient.reduction[group]
    image = np.unique(encode_matrices(quotient, reduced)).size
    identity = quotient.reduction[np.eye(space.rank, dtype=np.int64) * ring.one]
    in_kernel = np.all(reduced == identity[None], axis=(1, 2))
    return ReductionResult(quotient, image, int(in_kernel.sum()), group[in_kernel])


def kernel_satisfies_linear_condition(space: FormSpace, kernel: np.ndarray) -> bool:
    """``M* J + J M = 0`` for every kernel element ``1 + M`` (valid when the ideal squares to 0)."""
    ring, n = space.ring, space.rank
    ident = np.eye(n, dtype=np.int64) * ring.one
    m = ring.sub(kernel, ident[None])
    gram = space.gram.codes
    star_m = np.transpose(ring.star(m), (0, 2, 1))
    left = multiply_groups(ring, star_m, np.broadcast_to(gram, m.shape))
    right = multiply_groups(ring, np.broadcast_to(gram, m.shape), m)
    return bool(np.all(ring.add(left, right) == ring.zero))


# -- the combined verification --------------------------------------------------


def _timed(fn):
    start = time.perf_counter()
    value = fn()
    return value, (time.perf_counter() - start) * 1000.0


def _oracle_report(name, formula, oracle_fn, note=""):
    """Run an oracle; a BudgetExceeded turns the row into a skipped one."""
    try:
        value, ms = _timed(oracle_fn)
    except BudgetExceeded as exc:
        return orders.CountReport(name, formula, None, None, note=f"skipped: {exc}")
    if isinstance(value, tuple):
        value, match, extra = value
        return orders.CountReport(name, formula, value, match, note=extra or note, elapsed_ms=ms)
    return orders.CountReport(name, formula, value, note=note, elapsed_ms=ms)


def oracle_unitary_order(ring: Ring, m: int, budget: EnumerationBudget = DEFAULT_BUDGET,
                         workers: int = 1) -> int:
    """``|U_2m(A)|`` from the full group when m = 1, else as the product of
    symplectic-pair counts in ranks 2, 4, ..., 2m (transitivity on pairs)."""
    if m == 1:
        return len(enumerate_unitary_group(standard_gram(ring, 1), budget, workers=workers))
    total = 1
    for i in range(1, m + 1):
        total *= enumerate_symplectic_pairs(standard_gram(ring, i), budget, workers=workers)
    return total


def verify_all(ring: Ring, m: int, budget: EnumerationBudget = DEFAULT_BUDGET,
               workers: int = 1, run_oracle: bool = True) -> list[orders.CountReport]:
    """Every closed form for ``(ring, m)`` next to its oracle value when affordable.

    With ``run_oracle=False`` only the formula values (and the formula-vs-formula
    identities) are produced.
    """
    stats = ring.stats
    space = standard_gram(ring, m)
    reports: list[orders.CountReport] = []
    add = reports.append

    zxz = orders.unitary_order_radical_form(stats, m)
    zxz2 = orders.unitary_order_skew_form(stats, m)
    cache: dict = {}

    def _report(name, formula, oracle_fn, note=""):
        if not run_oracle:
            return orders.CountReport(name, formula, note="oracle not requested")
        return _oracle_report(name, formula, oracle_fn, note)

    def group():
        if "group" not in cache:
            if m != 1 and ring.order ** (4 * m * m) > budget.max_matrices:
                raise BudgetExceeded("full group enumeration is infeasible for m > 1")
            cache["group"] = enumerate_unitary_group(space, budget, workers=workers)
        return cache["group"]

    def unitary_oracle():
        if "order" not in cache:
            cache["order"] = oracle_unitary_order(ring, m, budget, workers)
        return cache["order"]

    def census(rank_m):
        key = ("census", rank_m)
        if key not in cache:
            cache[key] = enumerate_vectors_by_length(standard_gram(ring, rank_m), budget)
        return cache[key]

    residue = ring if ring.e == 1 else quotient_ring(ring, 1)
    add(_report("sp_order", orders.sp_order(stats.q, m),
                lambda: oracle_unitary_order(residue, m, budget, workers)))
    add(_report("unitary_order_radical_form", zxz, unitary_oracle))
    add(_report("unitary_order_skew_form", zxz2, unitary_oracle))
    add(orders.CountReport("formulas_agree", zxz2, zxz, note="radical form vs skew form"))

    try:
        principal = orders.principal_structure(ring)
        value = orders.ring_principal_order(ring, m, principal)
        add(_report("principal_case_order", value, unitary_oracle,
                    note=f"branch {principal.principal_branch()}"))
    except BranchUnavailable as exc:
        add(orders.CountReport("principal_case_order", None, None, None, note=str(exc)))
    except BudgetExceeded as exc:
        add(orders.CountReport("principal_case_order", None, None, None, note=f"skipped: {exc}"))

    pairs_formula = orders.symplectic_pair_count(stats, m)
    add(_report("symplectic_pairs", pairs_formula,
                lambda: enumerate_symplectic_pairs(space, budget, workers=workers)))

    n_formula = orders.basis_vector_count(stats, m)
    try:
        if not run_oracle:
            raise BudgetExceeded("oracle not requested")
        cen = census(m)
        skew = np.flatnonzero(ring.skew_mask)
        for s in skew:
            s_el = ring.element(int(s))
            count = cen.buckets.get(s_el, (0, 0))[0]
            add(orders.CountReport(f"basis_vectors[s={ring.format_code(int(s))}]",
                                   n_formula, count))
        total = int(cen.is_basis.sum())
        add(orders.CountReport("basis_vectors_total", n_formula * stats.card_S, total))
        stray = [s for s in cen.buckets if not ring.skew_mask[s.code]]
        add(orders.CountReport("lengths_are_skew", 0, len(stray),
                               note="number of observed lengths outside S"))
    except BudgetExceeded as exc:
        note = str(exc) if not run_oracle else f"skipped: {exc}"
        add(orders.CountReport("basis_vectors", n_formula, None, None, note=note))

    add(orders.CountReport("basis_vectors_rank1_identity",
                           orders.basis_vector_count(stats, 1),
                           orders.basis_vector_count_rank1(stats),
                           note="(|A|^2-|r|^2)/|S| vs (|A|-|r|)(|R|+|m|)"))
    if m >= 2:
        def recursion():
            n1 = census(1).buckets.get(ring.element(ring.zero), (0, 0))[0]
            nm1 = census(m - 1).buckets.get(ring.element(ring.zero), (0, 0))[0]
            return n1 * stats.card_A ** (2 * (m - 1)) + stats.card_rad**2 * nm1
        add(_report("basis_vector_recursion", n_formula, recursion))

    stab_formula = orders.stabilizer_order(stats, m)

    def stabilizer_oracle():
        grp = group()
        cen = census(m)
        sizes = set()
        ok = True
        for s_el in sorted(cen.buckets, key=lambda e: e.code):
            sel = np.flatnonzero(cen.is_basis & (cen.lengths == s_el.code))
            if sel.size == 0:
                continue
            rep = cen.vectors[sel[0]]
            sizes.add(stabilizer_size(space, grp, rep))
            if not np.array_equal(orbit_of(space, grp, rep), cen.bucket(s_el)):
                ok = False
        value = sizes.pop() if len(sizes) == 1 else -1
        note = "orbits equal length buckets" if ok else "an orbit differs from its length bucket"
        return value, ok and value == stab_formula, note

    add(_report("stabilizer_order", stab_formula, stabilizer_oracle))

    for j in range(1, ring.e):
        quotient = quotient_ring(ring, j)
        down = orders.unitary_order_radical_form(quotient.stats, m)
        kern = orders.ring_kernel_order(ring, j, m)
        add(orders.CountReport(f"chain_product[j={j}]", kern * down, zxz,
                               note="kernel order x order modulo r^j vs order of U(A)"))
        add(_report(f"quotient_order[j={j}]", down,
                    lambda q=quotient: oracle_unitary_order(q, m, budget, workers)))

        def reduction(j=j):
            res = reduction_image_and_kernel(space, j, group())
            cache[("reduction", j)] = res
            return res.image_size

        add(_report(f"reduction_image[j={j}]", down, reduction))

        def kernel(j=j):
            res = cache.get(("reduction", j)) or reduction_image_and_kernel(space, j, group())
            return res.kernel_size

        add(_report(f"kernel_order[j={j}]", kern, kernel))
    return reports
