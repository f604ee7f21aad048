"""Self-dual generator matrices from the four-block Baumert-Hall array,
plus the building-up extension and the neighbour construction.

The array, for lambda-circulant A, B, C, D of order n, is

     A    B    C    D
    -B    A   -D    C
    -C^T  D^T  A^T -B^T
    -D^T -C^T  B^T  A^T

and [I_4n | N] is self-dual as soon as N N^T = -I_4n.
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass, field

import numpy as np

from .analytics import BinaryCode, bits_to_int, weight
from .matrices import (RingMatrix, circulant_array, expand_symmetric_half,
                       identity, is_symmetric, mat_mul, mat_transpose)
from .rings import (MUL_TABLE, ONE, W, Ring, RingElement, RingVector,
                    gray_array_to_binary, gray_f4u_to_f2u_array, inner,
                    is_self_inverse_unit, neg)


class ConditionError(ValueError):
    """A recipe violates one of the array's orthogonality conditions."""

    def __init__(self, failed: list[str]):
        self.failed = failed
        super().__init__("conditions violated: " + "; ".join(failed))


class Variant(enum.Enum):
    GENERAL = "general"      # Gram sum plus the combined skew condition
    AMICABLE = "amicable"    # (A, B) and (C, D) amicable pairs
    SYMMETRIC = "symmetric"  # A, B symmetric circulant, (C, D) amicable


GRAM_EQ = "AA^T + BB^T + CC^T + DD^T = -I_n"
SKEW_EQ = "AB^T - BA^T + CD^T - DC^T = 0"
AB_EQ = "AB^T - BA^T = 0"
CD_EQ = "CD^T - DC^T = 0"
SYM_EQ = "A = A^T and B = B^T"


@dataclass(frozen=True)
class ConstructionRecipe:
    """Everything needed to rebuild one generator matrix.

    For the symmetric variant ``r_a`` and ``r_b`` are half rows that get
    mirror-expanded to length ``n``.
    """

    variant: Variant
    ring: Ring
    lam: RingElement
    r_a: RingVector
    r_b: RingVector
    r_c: RingVector
    r_d: RingVector
    table_id: str = ""

    def __post_init__(self):
        rows = (self.r_a, self.r_b, self.r_c, self.r_d)
        if any(r.ring is not self.ring for r in rows) or self.lam.ring is not self.ring:
            raise ValueError("recipe rows and lambda must share the recipe ring")
        if not is_self_inverse_unit(self.lam):
            raise ValueError(f"lambda {self.lam} does not square to 1")
        if len({len(r) for r in self.full_rows()}) != 1:
            raise ValueError("first rows have different lengths")

    @property
    def n(self) -> int:
        return len(self.r_c)

    def full_rows(self) -> tuple[RingVector, RingVector, RingVector, RingVector]:
        if self.variant is Variant.SYMMETRIC:
            n = len(self.r_c)
            return (expand_symmetric_half(self.r_a, n), expand_symmetric_half(self.r_b, n),
                    self.r_c, self.r_d)
        return self.r_a, self.r_b, self.r_c, self.r_d

    def blocks(self) -> tuple[RingMatrix, RingMatrix, RingMatrix, RingMatrix]:
        ra, rb, rc, rd = self.full_rows()
        lam_ab = ONE if self.variant is Variant.SYMMETRIC else self.lam.value
        return (RingMatrix(self.ring, circulant_array(ra.entries, lam_ab)),
                RingMatrix(self.ring, circulant_array(rb.entries, lam_ab)),
                RingMatrix(self.ring, circulant_array(rc.entries, self.lam.value)),
                RingMatrix(self.ring, circulant_array(rd.entries, self.lam.value)))


@dataclass
class ConditionReport:
    gram_ok: bool
    skew_ok: bool
    failed: list[str] = field(default_factory=list)
    details: dict[str, RingMatrix] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.gram_ok and self.skew_ok


def _gram(a: RingMatrix, b: RingMatrix) -> np.ndarray:
    return mat_mul(a, mat_transpose(b)).entries


def check_conditions(recipe: ConstructionRecipe) -> ConditionReport:
    A, B, C, D = recipe.blocks()
    n = recipe.n
    ring = recipe.ring
    gram = _gram(A, A) ^ _gram(B, B) ^ _gram(C, C) ^ _gram(D, D)
    gram_res = gram ^ neg(np.eye(n, dtype=np.uint8))
    ab = _gram(A, B) ^ neg(_gram(B, A))
    cd = _gram(C, D) ^ neg(_gram(D, C))
    details = {"gram": RingMatrix(ring, gram_res), "ab": RingMatrix(ring, ab),
               "cd": RingMatrix(ring, cd)}
    failed = []
    gram_ok = not gram_res.any()
    if not gram_ok:
        failed.append(GRAM_EQ)
    if recipe.variant is Variant.GENERAL:
        skew_ok = not (ab ^ cd).any()
        if not skew_ok:
            failed.append(SKEW_EQ)
    else:
        ab_ok = not ab.any()
        if recipe.variant is Variant.SYMMETRIC:
            ab_ok = is_symmetric(A) and is_symmetric(B)
        cd_ok = not cd.any()
        if not ab_ok:
            failed.append(SYM_EQ if recipe.variant is Variant.SYMMETRIC else AB_EQ)
        if not cd_ok:
            failed.append(CD_EQ)
        skew_ok = ab_ok and cd_ok
    return ConditionReport(gram_ok, skew_ok, failed, details)


def array_blocks(A: RingMatrix, B: RingMatrix, C: RingMatrix, D: RingMatrix) -> np.ndarray:
    a, b, c, d = A.entries, B.entries, C.entries, D.entries
    return np.block([
        [a, b, c, d],
        [neg(b), a, neg(d), c],
        [neg(c.T), d.T, a.T, neg(b.T)],
        [neg(d.T), neg(c.T), b.T, a.T],
    ]).astype(np.uint8)


def build_baumert_hall(recipe: ConstructionRecipe, *, check: bool = True) -> RingMatrix:
    """Generator [I_4n | N] of a self-dual code of length 8n over the recipe ring."""
    if check:
        report = check_conditions(recipe)
        if not report.ok:
            raise ConditionError(report.failed)
    N = array_blocks(*recipe.blocks())
    G = np.concatenate([np.eye(4 * recipe.n, dtype=np.uint8), N], axis=1)
    gen = RingMatrix(recipe.ring, G)
    if check and not ring_self_orthogonal(gen):
        raise ConditionError(["N N^T = -I_4n"])
    return gen


# -- ring codes ---------------------------------------------------------------

def ring_self_orthogonal(gen: RingMatrix) -> bool:
    return mat_mul(gen, mat_transpose(gen)).is_zero()


def gray_generator_f4u_to_f2u(gen: RingMatrix) -> RingMatrix:
    """F2+uF2 generator of the Gray image: images of g and w*g for every row g."""
    if gen.ring is not Ring.F4U:
        raise ValueError("expected a generator over F4+uF4")
    rows = []
    for g in gen.entries:
        rows.append(gray_f4u_to_f2u_array(g))
        rows.append(gray_f4u_to_f2u_array(MUL_TABLE[W][g]))
    return RingMatrix(Ring.F2U, np.array(rows, dtype=np.uint8))


def binary_image(gen: RingMatrix) -> BinaryCode:
    """Binary Gray image of the code spanned (over its ring) by ``gen``."""
    rows = []
    for s in gen.ring.additive_basis():
        scaled = MUL_TABLE[s][gen.entries]
        for r in gray_array_to_binary(scaled, gen.ring):
            rows.append(bits_to_int(r))
    n = gen.cols * {Ring.F2: 1, Ring.F2U: 2, Ring.F4U: 4}[gen.ring]
    return BinaryCode.from_spanning(rows, n)


def build_binary(recipe: ConstructionRecipe) -> BinaryCode:
    return binary_image(build_baumert_hall(recipe))


# -- building-up extension -----------------------------------------------------

@dataclass(frozen=True)
class ExtensionSpec:
    c: RingElement
    X: RingVector

    def __post_init__(self):
        if self.c.ring is not self.X.ring:
            raise ValueError("c and X must share a ring")
        if not is_self_inverse_unit(self.c):
            raise ValueError(f"c = {self.c} is not a unit squaring to 1")
        if inner(self.X, self.X).value != ONE:
            raise ValueError("<X, X> must equal 1")


def extend_code(gen: RingMatrix, spec: ExtensionSpec) -> RingMatrix:
    """Bordered generator: first row (1, 0 | X), then (y_i, c*y_i | r_i), y_i = <r_i, X>."""
    if gen.ring is not spec.X.ring:
        raise ValueError("extension vector lives in a different ring")
    if gen.cols != len(spec.X):
        raise ValueError(f"X has length {len(spec.X)}, code has length {gen.cols}")
    if not ring_self_orthogonal(gen):
        raise ValueError("base code is not self-orthogonal")
    X = spec.X.entries
    y = np.bitwise_xor.reduce(MUL_TABLE[gen.entries, X[None, :]], axis=1).astype(np.uint8)
    cy = MUL_TABLE[spec.c.value][y]
    top = np.concatenate([[ONE, 0], X])[None, :]
    body = np.concatenate([y[:, None], cy[:, None], gen.entries], axis=1)
    out = RingMatrix(gen.ring, np.concatenate([top, body]).astype(np.uint8))
    if not ring_self_orthogonal(out):
        raise AssertionError("extension is not self-orthogonal")
    return out


# -- neighbours ----------------------------------------------------------------

def neighbor(code: BinaryCode, x: int) -> BinaryCode:
    """<<x>^perp intersected with C, x> for a binary self-dual C and even-weight x."""
    if weight(x) % 2:
        raise ValueError("x must have even weight")
    if x >> code.length:
        raise ValueError("x is longer than the code")
    if code.contains(x):
        warnings.warn("x lies in the code; the neighbour is the code itself", stacklevel=2)
        return code
    rows = list(code.rows)
    odd = [i for i, r in enumerate(rows) if (r & x).bit_count() & 1]
    # x is not in C = C^perp, so some row has odd inner product with it
    pivot = rows[odd[0]]
    for i in odd[1:]:
        rows[i] ^= pivot
    del rows[odd[0]]
    return BinaryCode(rows + [x], code.length)


def neighbor_vector(bits: str, length: int) -> int:
    """x with zeros on the first length - len(bits) coordinates and ``bits`` after."""
    offset = length - len(bits)
    if offset < 0 or any(b not in "01" for b in bits):
        raise ValueError(f"bad neighbour vector {bits!r}")
    return sum(1 << (offset + i) for i, b in enumerate(bits) if b == "1")
