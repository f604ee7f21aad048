"""Lambda-circulant builders and matrix algebra over the nibble rings."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .rings import (MUL_TABLE, ONE, Ring, RingElement, RingMismatchError,
                    RingVector, is_self_inverse_unit)


@dataclass(frozen=True, eq=False)
class RingMatrix:
    """Row-major matrix of nibbles over ``ring``."""

    ring: Ring
    entries: np.ndarray

    def __post_init__(self):
        arr = np.array(self.entries, dtype=np.uint8)
        if arr.ndim != 2 or 0 in arr.shape:
            raise ValueError(f"matrix must be 2-d and non-empty, got shape {arr.shape}")
        if np.any(arr & ~np.uint8(self.ring.mask)):
            raise ValueError(f"entries outside {self.ring.value}")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    def __eq__(self, other) -> bool:
        return (isinstance(other, RingMatrix) and self.ring is other.ring
                and np.array_equal(self.entries, other.entries))

    def __hash__(self) -> int:
        return hash((self.ring, self.shape, self.entries.tobytes()))

    def __add__(self, other: "RingMatrix") -> "RingMatrix":
        return mat_add(self, other)

    def __matmul__(self, other: "RingMatrix") -> "RingMatrix":
        return mat_mul(self, other)

    @property
    def T(self) -> "RingMatrix":
        return mat_transpose(self)

    def row(self, i: int) -> RingVector:
        return RingVector(self.ring, self.entries[i])

    @cached_property
    def packed_rows(self) -> list[int]:
        """F2 rows as int bitsets (bit j = column j)."""
        if self.ring is not Ring.F2:
            raise ValueError("bit packing is only defined over F2")
        weights = 1 << np.arange(self.cols, dtype=object)
        return [int((r.astype(object) * weights).sum()) for r in self.entries]

    def is_zero(self) -> bool:
        return not self.entries.any()


def _check(a: RingMatrix, b: RingMatrix) -> None:
    if a.ring is not b.ring:
        raise RingMismatchError(f"{a.ring.value} vs {b.ring.value}")


def mat_mul_array(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Nibble matrix product; broadcasts over leading batch axes."""
    prod = MUL_TABLE[a[..., :, :, None], b[..., None, :, :]]
    return np.bitwise_xor.reduce(prod, axis=-2)


def mat_mul(a: RingMatrix, b: RingMatrix) -> RingMatrix:
    _check(a, b)
    if a.cols != b.rows:
        raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
    return RingMatrix(a.ring, mat_mul_array(a.entries, b.entries))


def mat_add(a: RingMatrix, b: RingMatrix) -> RingMatrix:
    _check(a, b)
    if a.shape != b.shape:
        raise ValueError(f"cannot add {a.shape} and {b.shape}")
    return RingMatrix(a.ring, a.entries ^ b.entries)


def mat_transpose(m: RingMatrix) -> RingMatrix:
    return RingMatrix(m.ring, m.entries.T.copy())


def identity(n: int, ring: Ring) -> RingMatrix:
    return RingMatrix(ring, np.eye(n, dtype=np.uint8))


def zeros(rows: int, cols: int, ring: Ring) -> RingMatrix:
    return RingMatrix(ring, np.zeros((rows, cols), dtype=np.uint8))


def is_identity(m: RingMatrix) -> bool:
    return m.rows == m.cols and np.array_equal(m.entries, np.eye(m.rows, dtype=np.uint8))


def is_symmetric(m: RingMatrix) -> bool:
    return m.rows == m.cols and np.array_equal(m.entries, m.entries.T)


def lambda_shift(lam: RingElement, row: RingVector) -> RingVector:
    """(a_1, ..., a_n) -> (lam * a_n, a_1, ..., a_{n-1})."""
    if lam.ring is not row.ring:
        raise RingMismatchError(f"{lam.ring.value} vs {row.ring.value}")
    e = row.entries
    shifted = np.concatenate([[MUL_TABLE[lam.value, e[-1]]], e[:-1]]).astype(np.uint8)
    return RingVector(row.ring, shifted)


def circulant_array(first_row: np.ndarray, lam: int = ONE) -> np.ndarray:
    """Rows sigma_lam^i(first_row) for i = 0..n-1; batch over leading axes."""
    r = np.asarray(first_row, dtype=np.uint8)
    n = r.shape[-1]
    i = np.arange(n)[:, None]
    j = np.arange(n)[None, :]
    # entry (i, j) is r[j - i], scaled by lam once it has wrapped around
    out = r[..., (j - i) % n]
    if lam != ONE:
        wrapped = j < i
        out = np.where(wrapped, MUL_TABLE[lam][out], out)
    return out.astype(np.uint8)


@dataclass(frozen=True)
class CirculantSpec:
    ring: Ring
    lam: RingElement
    first_row: RingVector
    symmetric: bool = False

    def __post_init__(self):
        if not is_self_inverse_unit(self.lam):
            raise ValueError(f"lambda {self.lam} does not square to 1")
        if self.symmetric:
            e = self.first_row.entries
            n = len(e)
            if self.lam.value != ONE or any(e[i] != e[n - i] for i in range(1, n)):
                raise ValueError("symmetric circulant needs lambda = 1 and a mirrored first row")


def build_circulant(spec: CirculantSpec) -> RingMatrix:
    return RingMatrix(spec.ring, circulant_array(spec.first_row.entries, spec.lam.value))


def lambda_circulant(first_row: RingVector, lam: RingElement | None = None) -> RingMatrix:
    lam = lam if lam is not None else RingElement(ONE, first_row.ring)
    return build_circulant(CirculantSpec(first_row.ring, lam, first_row))


def expand_symmetric_half(half: RingVector, n: int) -> RingVector:
    """Mirror a half row so that row[i] = row[n - i]."""
    if n % 2 == 0:
        raise ValueError("mirror expansion needs odd n")
    if len(half) != (n + 1) // 2:
        raise ValueError(f"half row must have {(n + 1) // 2} entries, got {len(half)}")
    h = half.entries
    full = np.concatenate([h, h[1:][::-1]]).astype(np.uint8)
    return RingVector(half.ring, full)


def shift_matrix(n: int, ring: Ring, lam: RingElement | None = None) -> RingMatrix:
    """The lambda-twisted n-cycle T: row @ T == lambda_shift(lam, row)."""
    base = np.zeros(n, dtype=np.uint8)
    base[1 % n] = ONE
    if n == 1:
        base[0] = lam.value if lam is not None else ONE
        return RingMatrix(ring, base[None, :])
    return RingMatrix(ring, circulant_array(base, lam.value if lam is not None else ONE))


def check_amicable(a: RingMatrix, b: RingMatrix) -> bool:
    """A B^T == B A^T, written as A B^T + B A^T == 0."""
    if a.shape != b.shape or a.rows != a.cols:
        raise ValueError("amicability needs square matrices of equal size")
    return (mat_mul(a, b.T) + mat_mul(b, a.T)).is_zero()
