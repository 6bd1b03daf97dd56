"""Galois rings GR(p, k, d) = (Z/p^k)[x]/(f) with dense operation tables.

Elements are encoded as integers ``sum(c_i * (p**k)**i)`` where ``c_i`` is the
coefficient of ``x**i``.  Every table is indexed by these codes.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
import sympy

from .errors import InvalidSpec, NotAvailable

MAX_BASE_ORDER = 1024


@dataclass(frozen=True)
class GaloisRingSpec:
    p: int
    k: int
    d: int

    def validate(self) -> None:
        for name in ("p", "k", "d"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool):
                raise InvalidSpec(f"{name} must be an integer, got {value!r}")
        if self.p < 3 or not sympy.isprime(self.p):
            raise InvalidSpec(f"p must be an odd prime, got {self.p}")
        if self.k < 1:
            raise InvalidSpec(f"k must be positive, got {self.k}")
        if self.d < 1:
            raise InvalidSpec(f"d must be positive, got {self.d}")
        if (self.p ** self.k) ** self.d > MAX_BASE_ORDER:
            raise InvalidSpec(
                f"GR({self.p},{self.k},{self.d}) has more than {MAX_BASE_ORDER} elements"
            )


def defining_polynomial(p: int, d: int) -> tuple[int, ...]:
    """Lowest monic irreducible polynomial of degree ``d`` over F_p.

    Returns the non-leading coefficients ``(c_0, ..., c_{d-1})``.  Candidates are
    ordered by the integer ``sum(c_i * p**i)``, i.e. lexicographically on
    ``(c_{d-1}, ..., c_0)``.
    """
    x = sympy.Symbol("x")
    for n in range(p**d):
        coeffs = tuple((n // p**i) % p for i in range(d))
        expr = x**d + sum(c * x**i for i, c in enumerate(coeffs))
        if sympy.Poly(expr, x, modulus=p).is_irreducible:
            return coeffs
    raise AssertionError(f"no irreducible polynomial of degree {d} over F_{p}")


class GaloisRing:
    """The unramified extension of Z/p^k of degree d, with full tables."""

    def __init__(self, spec: GaloisRingSpec):
        spec.validate()
        self.spec = spec
        self.p, self.k, self.d = spec.p, spec.k, spec.d
        self.modulus = self.p**self.k
        self.poly = defining_polynomial(self.p, self.d)
        self.order = self.modulus**self.d
        self.residue_order = self.p**self.d
        self.weights = self.modulus ** np.arange(self.d, dtype=np.int64)

        codes = np.arange(self.order, dtype=np.int64)
        self.coeffs = (codes[:, None] // self.weights[None, :]) % self.modulus

        # reduction of x^i (0 <= i <= 2d-2) modulo f, as coefficient rows
        red = np.zeros((2 * self.d - 1, self.d), dtype=np.int64)
        for i in range(self.d):
            red[i, i] = 1
        tail = -np.array(self.poly, dtype=np.int64) % self.modulus
        for i in range(self.d, 2 * self.d - 1):
            prev = red[i - 1]
            shifted = np.concatenate(([0], prev[:-1]))
            red[i] = (shifted + prev[-1] * tail) % self.modulus
        self._reduce_rows = red

        self.add_table = self.encode(
            (self.coeffs[:, None, :] + self.coeffs[None, :, :]) % self.modulus
        )
        self.neg_table = self.encode(-self.coeffs % self.modulus)
        self.mul_table = np.empty((self.order, self.order), dtype=np.int64)
        for a in range(self.order):
            self.mul_table[a] = self._mul_row(self.coeffs[a])
        self.one = 1 % self.order
        self.unit_mask = np.any(self.coeffs % self.p != 0, axis=1)
        self._sigma = self._build_sigma()

    def encode(self, coeffs) -> np.ndarray:
        return np.asarray(coeffs, dtype=np.int64) @ self.weights

    def code_of(self, coeffs) -> int:
        coeffs = list(coeffs) + [0] * (self.d - len(coeffs))
        if len(coeffs) != self.d:
            raise InvalidSpec(f"expected {self.d} coefficients, got {len(coeffs)}")
        return int(sum((int(c) % self.modulus) * int(w) for c, w in zip(coeffs, self.weights)))

    def _mul_row(self, a_coeffs: np.ndarray) -> np.ndarray:
        conv = np.zeros((self.order, 2 * self.d - 1), dtype=np.int64)
        for i, ai in enumerate(a_coeffs):
            if ai:
                conv[:, i : i + self.d] += ai * self.coeffs
        prod = (conv % self.modulus) @ self._reduce_rows % self.modulus
        return self.encode(prod)

    def scalar(self, n: int) -> int:
        """Code of the image of the integer ``n``."""
        return n % self.modulus

    def pow(self, a: int, n: int) -> int:
        result, base = self.one, a
        while n:
            if n & 1:
                result = int(self.mul_table[result, base])
            base = int(self.mul_table[base, base])
            n >>= 1
        return result

    def inv(self, a: int) -> int:
        if not self.unit_mask[a]:
            raise ArithmeticError("not a unit of the Galois ring")
        unit_group = (self.residue_order - 1) * self.residue_order ** (self.k - 1)
        return self.pow(a, unit_group - 1)

    def eval_poly(self, y: int) -> tuple[int, int]:
        """Return ``(f(y), f'(y))`` for the defining polynomial f."""
        full = list(self.poly) + [1]
        value = 0
        for c in reversed(full):
            value = int(self.add_table[self.mul_table[value, y], self.scalar(c)])
        deriv = 0
        for i in range(len(full) - 1, 0, -1):
            deriv = int(self.add_table[self.mul_table[deriv, y], self.scalar(i * full[i])])
        return value, deriv

    def _build_sigma(self):
        if self.d % 2:
            return None
        xi = self.code_of([0, 1])
        y = self.pow(xi, self.p ** (self.d // 2))
        for _ in range(math.ceil(math.log2(self.k)) + 1):
            fy, dfy = self.eval_poly(y)
            step = int(self.mul_table[fy, self.inv(dfy)])
            y = int(self.add_table[y, self.neg_table[step]])
        if self.eval_poly(y)[0] != 0:
            raise AssertionError("Hensel lift did not converge to a root of f")
        powers = [self.one]
        for _ in range(1, self.d):
            powers.append(int(self.mul_table[powers[-1], y]))
        power_coeffs = self.coeffs[np.array(powers)]
        images = (self.coeffs @ power_coeffs) % self.modulus
        sigma = self.encode(images)
        if not np.array_equal(sigma[sigma], np.arange(self.order)):
            raise AssertionError("sigma is not an involution")
        gens = [self.code_of([0] * i + [1]) for i in range(self.d)]
        for a, b in itertools.product(gens, repeat=2):
            if sigma[self.mul_table[a, b]] != self.mul_table[sigma[a], sigma[b]]:
                raise AssertionError("sigma is not multiplicative")
        return sigma

    def sigma_table(self, order: int) -> np.ndarray:
        """Table of the automorphism of the given order (1 or 2)."""
        if order == 1:
            return np.arange(self.order, dtype=np.int64)
        if order == 2 and self._sigma is not None:
            return self._sigma
        raise NotAvailable(f"GR({self.p},{self.k},{self.d}) has no automorphism of order {order}")

    def sigma(self, c: int) -> int:
        """The order-2 automorphism; only defined for even d."""
        return int(self.sigma_table(2)[c])

    def name(self) -> str:
        if self.d == 1:
            return f"F_{self.p}" if self.k == 1 else f"Z/{self.modulus}"
        if self.k == 1:
            return f"F_{self.residue_order}"
        return f"GR({self.p},{self.k},{self.d})"
