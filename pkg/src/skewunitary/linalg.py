"""Matrices, vectors and skew-hermitian forms over a finite local ring.

Conventions, fixed throughout the package:

* modules are *right* modules; a scalar ``a`` acts on a vector as ``v * a``,
  which multiplies every coordinate on the right;
* vectors are coordinate columns in a fixed ambient basis;
* ``h(u, v) = sum_ij u_i* J_ij v_j`` is ``*``-linear in the first argument and
  linear in the second, so ``h(u a, v b) = a* h(u, v) b``;
* ``X.H`` is the star-transpose, ``(X.H)_ij = (X_ji)*``.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import (
    Degenerate,
    DimensionMismatch,
    InternalDefect,
    InvalidSpec,
    NotSkewHermitian,
    RingMismatch,
    Singular,
)
from .ring import Element, QuotientRing, Ring


def _codes_of(ring: Ring, value) -> int:
    if isinstance(value, Element):
        if value.ring is not ring:
            raise RingMismatch("entry belongs to another ring")
        return value.code
    return ring(value).code


def _matmul_codes(ring: Ring, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[-1] != b.shape[0]:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    out = np.zeros(a.shape[:-1] + b.shape[1:], dtype=np.int64)
    for k in range(a.shape[-1]):
        left, right = a[..., k], b[k]
        if a.ndim == 2 and b.ndim == 2:
            term = ring.mul(left[:, None], right[None, :])
        else:
            term = ring.mul(left, right)
        out = ring.add(out, term)
    return np.asarray(out, dtype=np.int64)


class Matrix:
    """A rectangular matrix over ``ring``; entries stored as a code array."""

    __slots__ = ("ring", "codes")

    def __init__(self, ring: Ring, codes):
        codes = np.array(codes, dtype=np.int64)
        if codes.ndim != 2:
            raise DimensionMismatch("a matrix needs a 2-d array of codes")
        if codes.size and (codes.min() < 0 or codes.max() >= ring.order):
            raise ValueError("matrix entry code out of range")
        codes.setflags(write=False)
        self.ring = ring
        self.codes = codes

    @classmethod
    def from_entries(cls, ring: Ring, rows) -> "Matrix":
        return cls(ring, [[_codes_of(ring, x) for x in row] for row in rows])

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "Matrix":
        codes = np.full((n, n), ring.zero, dtype=np.int64)
        np.fill_diagonal(codes, ring.one)
        return cls(ring, codes)

    @classmethod
    def zeros(cls, ring: Ring, rows: int, cols: int) -> "Matrix":
        return cls(ring, np.full((rows, cols), ring.zero, dtype=np.int64))

    @classmethod
    def from_columns(cls, vectors: list["Vector"]) -> "Matrix":
        if not vectors:
            raise DimensionMismatch("need at least one column")
        ring = vectors[0].ring
        for v in vectors:
            _same_ring(ring, v.ring)
        return cls(ring, np.stack([v.codes for v in vectors], axis=1))

    @property
    def shape(self) -> tuple[int, int]:
        return self.codes.shape

    @property
    def rows(self) -> int:
        return self.codes.shape[0]

    @property
    def cols(self) -> int:
        return self.codes.shape[1]

    def __getitem__(self, idx) -> Element:
        i, j = idx
        return Element(self.ring, int(self.codes[i, j]))

    def column(self, j: int) -> "Vector":
        return Vector(self.ring, self.codes[:, j])

    def columns(self) -> list["Vector"]:
        return [self.column(j) for j in range(self.cols)]

    def _check(self, other: "Matrix") -> None:
        _same_ring(self.ring, other.ring)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        return Matrix(self.ring, self.ring.add(self.codes, other.codes))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot subtract {other.shape} from {self.shape}")
        return Matrix(self.ring, self.ring.sub(self.codes, other.codes))

    def __neg__(self) -> "Matrix":
        return Matrix(self.ring, self.ring.neg(self.codes))

    def __matmul__(self, other):
        if isinstance(other, Vector):
            _same_ring(self.ring, other.ring)
            return Vector(self.ring, _matmul_codes(self.ring, self.codes, other.codes))
        self._check(other)
        return Matrix(self.ring, _matmul_codes(self.ring, self.codes, other.codes))

    def scale(self, a) -> "Matrix":
        """Right scalar multiple ``X * a``."""
        return Matrix(self.ring, self.ring.mul(self.codes, _codes_of(self.ring, a)))

    @property
    def H(self) -> "Matrix":
        return Matrix(self.ring, self.ring.star(self.codes.T))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and other.ring is self.ring
            and np.array_equal(self.codes, other.codes)
        )

    __hash__ = None

    def is_square(self) -> bool:
        return self.rows == self.cols

    def map_entries(self, ring: Ring, table) -> "Matrix":
        """Apply a code-level map (e.g. a reduction) into another ring."""
        return Matrix(ring, np.asarray(table)[self.codes])

    def __str__(self) -> str:
        return format_matrix(self)

    def __repr__(self) -> str:
        return f"Matrix({format_matrix(self)!r})"


class Vector:
    """A coordinate column in a right module ``A^n``."""

    __slots__ = ("ring", "codes")

    def __init__(self, ring: Ring, codes):
        codes = np.array(codes, dtype=np.int64)
        if codes.ndim != 1:
            raise DimensionMismatch("a vector needs a 1-d array of codes")
        codes.setflags(write=False)
        self.ring = ring
        self.codes = codes

    @classmethod
    def from_entries(cls, ring: Ring, coords) -> "Vector":
        return cls(ring, [_codes_of(ring, x) for x in coords])

    @classmethod
    def basis(cls, ring: Ring, n: int, i: int) -> "Vector":
        codes = np.full(n, ring.zero, dtype=np.int64)
        codes[i] = ring.one
        return cls(ring, codes)

    @classmethod
    def zero(cls, ring: Ring, n: int) -> "Vector":
        return cls(ring, np.full(n, ring.zero, dtype=np.int64))

    def __len__(self) -> int:
        return len(self.codes)

    def __getitem__(self, i: int) -> Element:
        return Element(self.ring, int(self.codes[i]))

    def __add__(self, other: "Vector") -> "Vector":
        _same_ring(self.ring, other.ring)
        if len(self) != len(other):
            raise DimensionMismatch("vectors of different lengths")
        return Vector(self.ring, self.ring.add(self.codes, other.codes))

    def __sub__(self, other: "Vector") -> "Vector":
        _same_ring(self.ring, other.ring)
        if len(self) != len(other):
            raise DimensionMismatch("vectors of different lengths")
        return Vector(self.ring, self.ring.sub(self.codes, other.codes))

    def __neg__(self) -> "Vector":
        return Vector(self.ring, self.ring.neg(self.codes))

    def __mul__(self, a) -> "Vector":
        """Right scalar action ``v * a``."""
        if isinstance(a, (Vector, Matrix)):
            return NotImplemented
        return Vector(self.ring, self.ring.mul(self.codes, _codes_of(self.ring, a)))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Vector)
            and other.ring is self.ring
            and np.array_equal(self.codes, other.codes)
        )

    __hash__ = None

    def key(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.codes)

    def is_basis_vector(self) -> bool:
        """Over a local ring a vector is part of a basis iff a coordinate is a unit."""
        return bool(np.any(self.ring.unit_mask[self.codes]))

    def congruent(self, other: "Vector", j: int) -> bool:
        """``self == other`` modulo ``V r^j``."""
        diff = (self - other).codes
        return bool(np.all(self.ring.in_radical_power(diff, j)))

    def __str__(self) -> str:
        return format_vector(self)

    def __repr__(self) -> str:
        return f"Vector({format_vector(self)!r})"


def _same_ring(a: Ring, b: Ring) -> None:
    if a is not b:
        raise RingMismatch("operands belong to different rings")


# -- basic operations --------------------------------------------------------


def mat_mul(x: Matrix, y: Matrix) -> Matrix:
    return x @ y


def mat_add(x: Matrix, y: Matrix) -> Matrix:
    return x + y


def star_transpose(x: Matrix) -> Matrix:
    return x.H


def residue_field(ring: Ring) -> Ring:
    """``A/r`` (cached on the ring); the ring itself when it is a field."""
    field = getattr(ring, "_residue_field", None)
    if field is None:
        field = ring if ring.e <= 1 else QuotientRing(ring, 1)
        ring._residue_field = field
    return field


def _field_inverse(field: Ring, codes: np.ndarray) -> np.ndarray:
    """Gauss-Jordan inversion over a finite field given by tables."""
    n = codes.shape[0]
    aug = np.concatenate([codes, np.eye(n, dtype=np.int64) * field.one], axis=1)
    aug = aug.copy()
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r, col] != field.zero), None)
        if pivot is None:
            raise Singular("matrix is not invertible modulo the radical")
        if pivot != col:
            aug[[col, pivot]] = aug[[pivot, col]]
        aug[col] = field.mul(field.inv(int(aug[col, col])), aug[col])
        for r in range(n):
            if r != col and aug[r, col] != field.zero:
                factor = int(aug[r, col])
                aug[r] = field.sub(aug[r], field.mul(factor, aug[col]))
    return aug[:, n:]


def mat_inv(x: Matrix) -> Matrix:
    """Exact two-sided inverse.

    The residue image is inverted over ``F_q`` and lifted; Newton steps
    ``Y <- Y(2 - XY)`` square the defect ``1 - XY`` (entries in ``M_n(r)``) so
    ``ceil(log2 e)`` steps give the exact inverse.
    """
    if not x.is_square():
        raise DimensionMismatch(f"cannot invert a {x.shape} matrix")
    ring = x.ring
    n = x.rows
    if n == 0:
        return x
    field = residue_field(ring)
    if field is ring:
        y = Matrix(ring, _field_inverse(ring, x.codes))
    else:
        reduced = field.reduction[x.codes]
        y = Matrix(ring, field.representatives[_field_inverse(field, reduced)])
    two = Matrix.identity(ring, n).scale(ring(2))
    for _ in range(math.ceil(math.log2(ring.e)) if ring.e > 1 else 0):
        y = y @ (two - x @ y)
    one = Matrix.identity(ring, n)
    if x @ y != one or y @ x != one:
        raise InternalDefect("matrix inverse failed its two-sided check")
    return y


def is_invertible(x: Matrix) -> bool:
    try:
        mat_inv(x)
    except Singular:
        return False
    return True


# -- forms -------------------------------------------------------------------


def standard_j(ring: Ring, m: int) -> Matrix:
    """``[[0, 1], [-1, 0]]`` with ``m x m`` blocks."""
    if m < 1:
        raise DimensionMismatch("m must be positive")
    codes = np.full((2 * m, 2 * m), ring.zero, dtype=np.int64)
    minus_one = int(ring.neg(ring.one))
    for i in range(m):
        codes[i, m + i] = ring.one
        codes[m + i, i] = minus_one
    return Matrix(ring, codes)


class FormSpace:
    """``A^n`` with the skew-hermitian form whose Gram matrix is ``gram``.

    Both invariants (``gram.H == -gram`` and invertibility) are verified here.
    """

    def __init__(self, ring: Ring, gram: Matrix):
        _same_ring(ring, gram.ring)
        if not gram.is_square():
            raise DimensionMismatch("Gram matrix must be square")
        if gram.H != -gram:
            raise NotSkewHermitian("Gram matrix is not skew-hermitian")
        try:
            self.gram_inverse = mat_inv(gram)
        except Singular:
            raise Degenerate("Gram matrix is not invertible") from None
        self.ring = ring
        self.gram = gram
        self.rank = gram.rows

    @property
    def m(self) -> int:
        return self.rank // 2

    def vector(self, coords) -> Vector:
        v = Vector.from_entries(self.ring, coords)
        self._check_vector(v)
        return v

    def basis_vector(self, i: int) -> Vector:
        return Vector.basis(self.ring, self.rank, i)

    def standard_basis(self) -> list[Vector]:
        return [self.basis_vector(i) for i in range(self.rank)]

    def _check_vector(self, v: Vector) -> None:
        _same_ring(self.ring, v.ring)
        if len(v) != self.rank:
            raise DimensionMismatch(f"vector of length {len(v)} in a rank-{self.rank} space")

    def h(self, u: Vector, v: Vector) -> Element:
        return form_eval(self, u, v)

    def length(self, v: Vector) -> Element:
        return form_eval(self, v, v)

    def __repr__(self) -> str:
        return f"FormSpace({self.ring.name}, rank={self.rank})"


def standard_gram(ring: Ring, m: int) -> FormSpace:
    return FormSpace(ring, standard_j(ring, m))


def form_eval(space: FormSpace, u: Vector, v: Vector) -> Element:
    space._check_vector(u)
    space._check_vector(v)
    ring = space.ring
    row = _matmul_codes(ring, ring.star(u.codes)[None, :], space.gram.codes)
    value = _matmul_codes(ring, row, v.codes)
    return Element(ring, int(value[0]))


def gram_of(space: FormSpace, vectors: list[Vector]) -> Matrix:
    for v in vectors:
        space._check_vector(v)
    x = Matrix.from_columns(vectors)
    return x.H @ space.gram @ x


def is_unitary(space: FormSpace, x: Matrix) -> bool:
    _same_ring(space.ring, x.ring)
    if x.shape != (space.rank, space.rank):
        raise DimensionMismatch(f"expected a {space.rank}x{space.rank} matrix, got {x.shape}")
    return x.H @ space.gram @ x == space.gram


def reduce_matrix(x: Matrix, quotient: QuotientRing) -> Matrix:
    _same_ring(x.ring, quotient.parent)
    return x.map_entries(quotient, quotient.reduction)


def lift_matrix(x: Matrix, quotient: QuotientRing) -> Matrix:
    """Canonical coset representatives entrywise."""
    _same_ring(x.ring, quotient)
    return x.map_entries(quotient.parent, quotient.representatives)


# -- text format -------------------------------------------------------------


def format_vector(v: Vector) -> str:
    return " ".join(v.ring.format_code(int(c)) for c in v.codes)


def parse_vector(ring: Ring, text: str) -> Vector:
    entries = text.replace(";", " ").split()
    if not entries:
        raise InvalidSpec("empty vector")
    return Vector(ring, [ring.parse_code(e) for e in entries])


def format_matrix(x: Matrix) -> str:
    return "; ".join(
        " ".join(x.ring.format_code(int(c)) for c in row) for row in x.codes
    )


def parse_matrix(ring: Ring, text: str) -> Matrix:
    rows = [r.split() for r in text.strip().split(";") if r.strip()]
    if not rows:
        raise InvalidSpec("empty matrix")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise InvalidSpec("matrix rows have different lengths")
    return Matrix(ring, [[ring.parse_code(e) for e in row] for row in rows])
