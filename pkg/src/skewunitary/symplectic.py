"""Constructive symplectic bases, transport of vectors and lifting of unitaries.

Every routine works in the coordinates of the ``FormSpace`` it is given and
checks its own postcondition exactly before returning; a failed check raises
:class:`InternalDefect`.  Subspaces are handled by building a new
``FormSpace`` on the Gram matrix of a spanning list and mapping results back
through the matrix whose columns are that list.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    InternalDefect,
    LengthMismatch,
    NotABasisVector,
    NotApproximatelySymplectic,
    NotCongruentToOne,
    NotExtendable,
    NotUnitaryDownstairs,
    OddRank,
    PreconditionFailed,
    RingMismatch,
    Singular,
    SingularGram,
)
from .linalg import (
    FormSpace,
    Matrix,
    Vector,
    form_eval,
    gram_of,
    is_unitary,
    lift_matrix,
    mat_inv,
    reduce_matrix,
    standard_j,
)
from .ring import QuotientRing


@dataclass
class SymplecticBasis:
    """``u_1..u_m, v_1..v_m`` with ``h(u_i, v_j) = delta_ij`` and all other pairings 0."""

    us: list[Vector]
    vs: list[Vector]

    @property
    def vectors(self) -> list[Vector]:
        return self.us + self.vs

    @property
    def transform(self) -> Matrix:
        """Columns ``u_1..u_m, v_1..v_m``; ``X.H @ J @ X`` is the standard J."""
        return Matrix.from_columns(self.vectors)

    def is_symplectic(self, space: FormSpace) -> bool:
        return gram_of(space, self.vectors) == standard_j(space.ring, len(self.us))


def _subspace(space: FormSpace, vectors: list[Vector]) -> tuple[FormSpace, Matrix]:
    return FormSpace(space.ring, gram_of(space, vectors)), Matrix.from_columns(vectors)


def _in_power(space: FormSpace, value, j: int) -> bool:
    return bool(space.ring.in_radical_power(value.code, j))


def _max_passes(space: FormSpace) -> int:
    return math.ceil(math.log2(max(space.ring.e, 1))) + 1


def complete_to_basis(space: FormSpace, vecs: list[Vector]) -> list[Vector]:
    """Extend ``vecs`` to a basis by replacing standard vectors one at a time.

    Each new vector is written in the current basis and replaces the
    lowest-index remaining standard vector on which it has a unit coefficient.
    The result is ``vecs`` followed by the surviving standard vectors in index
    order.
    """
    n = space.rank
    current = Matrix.identity(space.ring, n)
    replaced = [False] * n
    for u in vecs:
        space._check_vector(u)
        try:
            coords = mat_inv(current) @ u
        except Singular:
            raise InternalDefect("intermediate basis became singular") from None
        units = space.ring.unit_mask[coords.codes]
        pivot = next((i for i in range(n) if not replaced[i] and units[i]), None)
        if pivot is None:
            raise NotExtendable("no unit pivot: the list is not linearly independent")
        codes = current.codes.copy()
        codes[:, pivot] = u.codes
        current = Matrix(space.ring, codes)
        replaced[pivot] = True
    basis = list(vecs) + [space.basis_vector(i) for i in range(n) if not replaced[i]]
    return basis


def find_unit_partner(space: FormSpace, v: Vector) -> Vector:
    """Some ``w`` with ``h(v, w) = 1``: ``w = sum b_j a_j`` with ``a = G^-1 e_1``."""
    try:
        basis = complete_to_basis(space, [v])
    except NotExtendable:
        raise NotABasisVector("vector is not part of a basis") from None
    g = gram_of(space, basis)
    a = mat_inv(g) @ Vector.basis(space.ring, space.rank, 0)
    w = Matrix.from_columns(basis) @ a
    if form_eval(space, v, w) != space.ring(1):
        raise InternalDefect("unit partner does not pair to 1")
    return w


def make_isotropic(space: FormSpace, v: Vector, j: int) -> Vector:
    """Isotropic ``z`` congruent to ``v`` modulo ``V r^j``; needs ``h(v, v)`` in ``r^j``.

    Each pass adds ``w * (-h(v,v)/2)`` for a unit partner ``w`` of the current
    vector, which pushes the length from ``r^i`` into ``r^(2i)``.
    """
    if j < 1:
        raise PreconditionFailed("the ideal r^j must be proper (j >= 1)")
    ring = space.ring
    if not _in_power(space, form_eval(space, v, v), j):
        raise PreconditionFailed(f"length of v is not in r^{j}")
    z = v
    for _ in range(_max_passes(space) + 1):
        length = form_eval(space, z, z)
        if length.is_zero():
            break
        w = find_unit_partner(space, z)
        b = -length * ring.two_inv
        z = z + w * b
    else:
        raise InternalDefect("make_isotropic did not converge")
    if not z.congruent(v, j):
        raise InternalDefect("isotropic vector left the congruence class")
    return z


def normalize_pairing(space: FormSpace, u: Vector, v: Vector, j: int) -> Vector:
    """``z = v h(u,v)^-1`` so ``h(u, z) = 1``; needs ``h(u, v) = 1 mod r^j``."""
    ring = space.ring
    c = form_eval(space, u, v)
    if not _in_power(space, c - 1, j):
        raise NotCongruentToOne(f"h(u, v) is not 1 modulo r^{j}")
    z = v * c.inv()
    if form_eval(space, u, z) != ring(1):
        raise InternalDefect("normalized pairing is not 1")
    if not z.congruent(v, j):
        raise InternalDefect("normalized vector left the congruence class")
    return z


def fix_partner(space: FormSpace, u: Vector, v: Vector) -> Vector:
    """``z = u b + v`` with ``b = h(v,v)/2``: then ``h(z,z) = 0`` and ``h(u,z) = 1``."""
    ring = space.ring
    if not form_eval(space, u, u).is_zero() or form_eval(space, u, v) != ring(1):
        raise PreconditionFailed("fix_partner needs h(u,u) = 0 and h(u,v) = 1")
    b = form_eval(space, v, v) * ring.two_inv
    z = u * b + v
    if not form_eval(space, z, z).is_zero() or form_eval(space, u, z) != ring(1):
        raise InternalDefect("fix_partner produced a non-symplectic pair")
    return z


def orthogonal_complement(
    space: FormSpace, vecs: list[Vector], rest: list[Vector] | None = None
) -> list[Vector]:
    """Replace each ``u`` in ``rest`` by ``u - sum v_k a_k`` orthogonal to ``vecs``.

    ``a = M^-1 (h(v_1,u), ..., h(v_s,u))`` with ``M`` the Gram matrix of ``vecs``.
    When ``rest`` is omitted it is completed from the standard basis.
    """
    if rest is None:
        rest = complete_to_basis(space, vecs)[len(vecs):]
    try:
        m_inv = mat_inv(gram_of(space, vecs))
    except Singular:
        raise SingularGram("Gram matrix of vecs is not invertible") from None
    vmat = Matrix.from_columns(vecs)
    out = []
    for u in rest:
        pairings = Vector.from_entries(space.ring, [form_eval(space, v, u) for v in vecs])
        w = u - vmat @ (m_inv @ pairings)
        if any(not form_eval(space, v, w).is_zero() for v in vecs):
            raise InternalDefect("complement vector is not orthogonal")
        out.append(w)
    return out


def symplectic_basis(space: FormSpace) -> SymplecticBasis:
    """A symplectic basis, by splitting off one hyperbolic pair at a time."""
    if space.rank % 2:
        raise OddRank(f"rank {space.rank} is odd")
    u = make_isotropic(space, space.basis_vector(0), 1)
    v = fix_partner(space, u, find_unit_partner(space, u))
    us, vs = [u], [v]
    if space.rank > 2:
        rest = orthogonal_complement(space, [u, v])
        sub, w = _subspace(space, rest)
        inner = symplectic_basis(sub)
        us += [w @ x for x in inner.us]
        vs += [w @ y for y in inner.vs]
    basis = SymplecticBasis(us, vs)
    if not basis.is_symplectic(space):
        raise InternalDefect("symplectic_basis output is not symplectic")
    return basis


def _check_approx(space: FormSpace, approx: list[Vector], j: int) -> int:
    if len(approx) % 2 or len(approx) != space.rank:
        raise NotApproximatelySymplectic(f"need {space.rank} vectors, got {len(approx)}")
    m = len(approx) // 2
    diff = gram_of(space, approx) - standard_j(space.ring, m)
    if not np.all(space.ring.in_radical_power(diff.codes, j)):
        raise NotApproximatelySymplectic(f"Gram matrix is not J modulo r^{j}")
    return m


def correct_basis_mod_ideal(space: FormSpace, approx: list[Vector], j: int) -> SymplecticBasis:
    """Exact symplectic basis congruent to ``approx`` modulo ``V r^j``.

    ``approx`` is ordered ``w_1..w_m, z_1..z_m`` and its Gram matrix must equal
    the standard J modulo ``r^j``.
    """
    if j < 1:
        raise PreconditionFailed("the ideal r^j must be proper (j >= 1)")
    m = _check_approx(space, approx, j)
    w1 = make_isotropic(space, approx[0], j)
    z1 = fix_partner(space, w1, normalize_pairing(space, w1, approx[m], j))
    us, vs = [w1], [z1]
    if m > 1:
        others = approx[1:m] + approx[m + 1:]
        rest = orthogonal_complement(space, [w1, z1], others)
        if not all(a.congruent(b, j) for a, b in zip(rest, others)):
            raise InternalDefect("complement left the congruence class")
        sub, w = _subspace(space, rest)
        inner = correct_basis_mod_ideal(sub, sub.standard_basis(), j)
        us += [w @ x for x in inner.us]
        vs += [w @ y for y in inner.vs]
    basis = SymplecticBasis(us, vs)
    if not basis.is_symplectic(space):
        raise InternalDefect("corrected basis is not symplectic")
    if not all(a.congruent(b, j) for a, b in zip(basis.vectors, approx)):
        raise InternalDefect("corrected basis is not congruent to the input")
    return basis


def _symplectic_frame(space: FormSpace) -> Matrix | None:
    """Transform to a symplectic basis, or None when the Gram matrix is already J."""
    if space.gram == standard_j(space.ring, space.m):
        return None
    return symplectic_basis(space).transform


def lift_unitary(space: FormSpace, xbar: Matrix, j: int | None = None) -> Matrix:
    """A unitary ``X`` over ``A`` reducing to ``xbar`` over ``A/r^j``.

    ``xbar`` is applied to a symplectic basis, its entries are lifted to
    canonical representatives, the resulting near-symplectic basis is repaired
    with :func:`correct_basis_mod_ideal`, and ``X`` is read off.
    """
    quotient = xbar.ring
    if not isinstance(quotient, QuotientRing) or quotient.parent is not space.ring:
        raise RingMismatch("xbar must live over a quotient of the space's ring")
    if j is not None and j != quotient.j:
        raise PreconditionFailed(f"xbar lives modulo r^{quotient.j}, not r^{j}")
    j = quotient.j
    jbar = reduce_matrix(space.gram, quotient)
    if xbar.shape != jbar.shape or xbar.H @ jbar @ xbar != jbar:
        raise NotUnitaryDownstairs("xbar does not preserve the reduced form")
    frame = _symplectic_frame(space)
    approx = lift_matrix(xbar, quotient)
    if frame is not None:
        approx = approx @ frame
    corrected = correct_basis_mod_ideal(space, approx.columns(), j).transform
    x = corrected if frame is None else corrected @ mat_inv(frame)
    if not is_unitary(space, x):
        raise InternalDefect("lifted matrix is not unitary")
    if reduce_matrix(x, quotient) != xbar:
        raise InternalDefect("lifted matrix does not reduce to xbar")
    return x


def _adapted_basis(space: FormSpace, u: Vector):
    """Symplectic basis ``x_1..x_m, y_1..y_m`` and ``b`` with ``u = x_1 + y_1 b``."""
    ring = space.ring
    partner = find_unit_partner(space, u)
    plane_space, plane = _subspace(space, [u, partner])
    local = symplectic_basis(plane_space)
    x, y = plane @ local.us[0], plane @ local.vs[0]
    coeffs = mat_inv(local.transform) @ Vector.basis(ring, 2, 0)
    a, b = coeffs[0], coeffs[1]
    if not a.is_unit():
        # (y, -x) is symplectic too and carries the unit coefficient first
        x, y = y, -x
        a, b = b, -a
    a_star_inv = a.star().inv()
    x, y, b = x * a, y * a_star_inv, a.star() * b
    if x + y * b != u:
        raise InternalDefect("adapted coordinates do not reproduce u")
    xs, ys = [x], [y]
    if space.rank > 2:
        rest = orthogonal_complement(space, [u, partner])
        sub, w = _subspace(space, rest)
        inner = symplectic_basis(sub)
        xs += [w @ c for c in inner.us]
        ys += [w @ c for c in inner.vs]
    return xs, ys, b


def transport(space: FormSpace, u: Vector, v: Vector) -> Matrix:
    """A unitary ``g`` with ``g u = v`` for basis vectors of equal length."""
    for vec in (u, v):
        space._check_vector(vec)
        if not vec.is_basis_vector():
            raise NotABasisVector("transport needs basis vectors")
    if form_eval(space, u, u) != form_eval(space, v, v):
        raise LengthMismatch("u and v have different lengths")
    xs, ys, b = _adapted_basis(space, u)
    ws, zs, c = _adapted_basis(space, v)
    r = c - b
    if r.star() != r:
        raise InternalDefect("difference of coordinates is not hermitian")
    # shear the first pair so that v = w + z b as well
    ws[0] = ws[0] + zs[0] * r
    if ws[0] + zs[0] * b != v:
        raise InternalDefect("sheared basis does not reproduce v")
    source = Matrix.from_columns(xs + ys)
    target = Matrix.from_columns(ws + zs)
    g = target @ mat_inv(source)
    if not is_unitary(space, g):
        raise InternalDefect("transport matrix is not unitary")
    if g @ u != v:
        raise InternalDefect("transport matrix does not send u to v")
    return g


# -- random sampling for property tests --------------------------------------


def random_matrix(ring, rows: int, cols: int, rng: np.random.Generator) -> Matrix:
    return Matrix(ring, rng.integers(0, ring.order, size=(rows, cols)))


def random_invertible(ring, n: int, rng: np.random.Generator) -> Matrix:
    while True:
        x = random_matrix(ring, n, n, rng)
        try:
            mat_inv(x)
        except Singular:
            continue
        return x


def random_unitary(space: FormSpace, rng: np.random.Generator) -> Matrix:
    """A unitary matrix built from a random change of basis.

    For a random invertible ``Y``, a symplectic basis ``P`` of the form with
    Gram ``Y.H J Y`` makes ``Y P S^-1`` unitary, where ``S`` is a symplectic
    frame of ``space`` itself.
    """
    y = random_invertible(space.ring, space.rank, rng)
    moved = FormSpace(space.ring, y.H @ space.gram @ y)
    p = symplectic_basis(moved).transform
    frame = _symplectic_frame(space)
    g = y @ p if frame is None else y @ p @ mat_inv(frame)
    if not is_unitary(space, g):
        raise InternalDefect("random_unitary produced a non-unitary matrix")
    return g
