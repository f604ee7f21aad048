"""Arithmetic over F2, F2+uF2 and F4+uF4, the hex codec and the Gray maps.

Every element is stored as a 4-bit nibble on the basis (1, u, w, uw):

    bit 0 -> 1, bit 1 -> u, bit 2 -> w, bit 3 -> uw

so an F4+uF4 element *is* its hexadecimal digit.  F2 elements only use bit 0
and F2+uF2 elements bits 0-1, which makes the embeddings F2 < F2U < F4U a
plain zero-extension.  Vectors and matrices are numpy ``uint8`` arrays of
nibbles; products go through a 16x16 lookup table.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


class RingMismatchError(ValueError):
    """Operands live in different rings."""


class Ring(enum.Enum):
    F2 = "F2"
    F2U = "F2U"
    F4U = "F4U"

    @property
    def mask(self) -> int:
        return _MASKS[self]

    @property
    def size(self) -> int:
        return 1 << bin(self.mask).count("1")

    def elements(self) -> list[int]:
        return [v for v in range(16) if v & ~self.mask == 0]

    def additive_basis(self) -> list[int]:
        """GF(2)-basis of the ring as nibbles (1, u, w, uw restricted)."""
        return [1 << b for b in range(4) if self.mask >> b & 1]

    def contains(self, value: int) -> bool:
        return 0 <= value < 16 and value & ~self.mask == 0

    @classmethod
    def parse(cls, tag: str | "Ring") -> "Ring":
        if isinstance(tag, Ring):
            return tag
        key = tag.strip().upper().replace("+", "").replace("_", "")
        aliases = {"F2": cls.F2, "F2U": cls.F2U, "F2UF2": cls.F2U,
                   "F4U": cls.F4U, "F4UF4": cls.F4U}
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown ring {tag!r}") from None


_MASKS = {Ring.F2: 0b0001, Ring.F2U: 0b0011, Ring.F4U: 0b1111}

ONE, U, W, UW = 0b0001, 0b0010, 0b0100, 0b1000


def _f4_mul(a0: int, a1: int, b0: int, b1: int) -> tuple[int, int]:
    # (a0 + a1 w)(b0 + b1 w) with w^2 = w + 1
    return (a0 & b0) ^ (a1 & b1), (a0 & b1) ^ (a1 & b0) ^ (a1 & b1)


def _mul_nibble(a: int, b: int) -> int:
    # a = p + u q with p, q in F4; u^2 = 0 kills the q q' term
    p = (a & 1, a >> 2 & 1)
    q = (a >> 1 & 1, a >> 3 & 1)
    p2 = (b & 1, b >> 2 & 1)
    q2 = (b >> 1 & 1, b >> 3 & 1)
    r = _f4_mul(*p, *p2)
    s1 = _f4_mul(*p, *q2)
    s2 = _f4_mul(*q, *p2)
    s = (s1[0] ^ s2[0], s1[1] ^ s2[1])
    return r[0] | s[0] << 1 | r[1] << 2 | s[1] << 3


MUL_TABLE = np.array([[_mul_nibble(a, b) for b in range(16)] for a in range(16)],
                     dtype=np.uint8)
MUL_TABLE.setflags(write=False)

_HEX = "0123456789ABCDEF"
_F2U_SYMBOLS = {"0": 0, "1": 1, "u": 2, "U": 2, "3": 3}
_F2U_TEXT = "01u3"


@dataclass(frozen=True)
class RingElement:
    """Element x + y*w + z*u + t*uw of one of the three rings."""

    value: int
    ring: Ring = Ring.F4U

    def __post_init__(self):
        if not self.ring.contains(self.value):
            raise ValueError(f"nibble {self.value:#x} is not an element of {self.ring.value}")

    @property
    def x(self) -> int:
        return self.value & 1

    @property
    def z(self) -> int:
        return self.value >> 1 & 1

    @property
    def y(self) -> int:
        return self.value >> 2 & 1

    @property
    def t(self) -> int:
        return self.value >> 3 & 1

    def __add__(self, other: "RingElement") -> "RingElement":
        return ring_add(self, other)

    def __mul__(self, other: "RingElement") -> "RingElement":
        return ring_mul(self, other)

    def __neg__(self) -> "RingElement":
        return self

    def __repr__(self) -> str:
        return f"RingElement({hex_encode(self)}, {self.ring.value})"


def _check_same(a: RingElement, b: RingElement) -> None:
    if a.ring is not b.ring:
        raise RingMismatchError(f"{a.ring.value} vs {b.ring.value}")


def ring_add(a: RingElement, b: RingElement) -> RingElement:
    _check_same(a, b)
    return RingElement(a.value ^ b.value, a.ring)


def ring_mul(a: RingElement, b: RingElement) -> RingElement:
    _check_same(a, b)
    return RingElement(int(MUL_TABLE[a.value, b.value]), a.ring)


def neg(a):
    """Additive inverse; the identity in characteristic 2.

    Accepts elements or nibble arrays so that signed formulas can be written
    out literally.
    """
    return a


def one(ring: Ring) -> RingElement:
    return RingElement(ONE, ring)


def is_self_inverse_unit(e: RingElement) -> bool:
    return int(MUL_TABLE[e.value, e.value]) == ONE


def hex_decode(digit: str, ring: Ring = Ring.F4U) -> RingElement:
    if len(digit) != 1 or digit.upper() not in _HEX:
        raise ValueError(f"not a hexadecimal digit: {digit!r}")
    return RingElement(_HEX.index(digit.upper()), ring)


def hex_encode(e: RingElement) -> str:
    return _HEX[e.value]


# -- vectors ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class RingVector:
    """Immutable vector of nibbles over ``ring``."""

    ring: Ring
    entries: np.ndarray

    def __post_init__(self):
        arr = np.array(self.entries, dtype=np.uint8).reshape(-1)
        if np.any(arr & ~np.uint8(self.ring.mask)):
            raise ValueError(f"entries outside {self.ring.value}")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> RingElement:
        return RingElement(int(self.entries[i]), self.ring)

    def __eq__(self, other) -> bool:
        return (isinstance(other, RingVector) and self.ring is other.ring
                and np.array_equal(self.entries, other.entries))

    def __hash__(self) -> int:
        return hash((self.ring, self.entries.tobytes()))

    def __add__(self, other: "RingVector") -> "RingVector":
        if self.ring is not other.ring:
            raise RingMismatchError(f"{self.ring.value} vs {other.ring.value}")
        return RingVector(self.ring, self.entries ^ other.entries)

    def scale(self, c: RingElement) -> "RingVector":
        if c.ring is not self.ring:
            raise RingMismatchError(f"{c.ring.value} vs {self.ring.value}")
        return RingVector(self.ring, MUL_TABLE[c.value][self.entries])

    def to_text(self) -> str:
        return encode_vector(self)

    def __repr__(self) -> str:
        return f"RingVector({self.ring.value}, {self.to_text()!r})"


def inner(v: RingVector, w: RingVector) -> RingElement:
    """Standard (non-Hermitian) inner product sum v_i w_i."""
    if v.ring is not w.ring:
        raise RingMismatchError(f"{v.ring.value} vs {w.ring.value}")
    if len(v) != len(w):
        raise ValueError("length mismatch")
    return RingElement(int(np.bitwise_xor.reduce(MUL_TABLE[v.entries, w.entries], initial=0)),
                       v.ring)


def decode_vector(text: str, ring: Ring | str) -> RingVector:
    """Parse a vector string: hex digits for F4U, {0,1,u,3} for F2U, bits for F2.

    Separators (commas, spaces, parentheses) are ignored.
    """
    ring = Ring.parse(ring)
    cleaned = [ch for ch in text if ch not in " ,()[]\t\n"]
    if ring is Ring.F4U:
        values = [hex_decode(ch).value for ch in cleaned]
    elif ring is Ring.F2U:
        try:
            values = [_F2U_SYMBOLS[ch] for ch in cleaned]
        except KeyError as exc:
            raise ValueError(f"bad F2+uF2 symbol {exc.args[0]!r}") from None
    else:
        if any(ch not in "01" for ch in cleaned):
            raise ValueError(f"bad binary string {text!r}")
        values = [int(ch) for ch in cleaned]
    return RingVector(ring, np.array(values, dtype=np.uint8))


def encode_vector(v: RingVector) -> str:
    if v.ring is Ring.F4U:
        return "".join(_HEX[e] for e in v.entries)
    if v.ring is Ring.F2U:
        return "".join(_F2U_TEXT[e] for e in v.entries)
    return "".join(str(int(e)) for e in v.entries)


def embed(v: RingVector, ring: Ring) -> RingVector:
    """Zero-extend into a larger ring (F2 < F2U < F4U)."""
    if v.ring.mask & ~ring.mask:
        raise ValueError(f"cannot embed {v.ring.value} into {ring.value}")
    return RingVector(ring, v.entries)


# -- Gray maps (array level: last axis is the coordinate axis) ---------------

def gray_f4u_to_f2u_array(a: np.ndarray) -> np.ndarray:
    """e = a*w + b*(w+1) with a, b in F2+uF2, mapped to (a-part || b-part)."""
    a = np.asarray(a, dtype=np.uint8)
    x, z, y, t = a & 1, a >> 1 & 1, a >> 2 & 1, a >> 3 & 1
    b_part = x | z << 1
    a_part = (x ^ y) | (z ^ t) << 1
    return np.concatenate([a_part, b_part], axis=-1).astype(np.uint8)


def gray_f2u_to_f2_array(a: np.ndarray) -> np.ndarray:
    """Entry-wise v = A + uB mapped to (B || A+B)."""
    a = np.asarray(a, dtype=np.uint8)
    low, high = a & 1, a >> 1 & 1
    return np.concatenate([high, low ^ high], axis=-1).astype(np.uint8)


def gray_array_to_binary(a: np.ndarray, ring: Ring) -> np.ndarray:
    if ring is Ring.F2:
        return np.asarray(a, dtype=np.uint8)
    if ring is Ring.F2U:
        return gray_f2u_to_f2_array(a)
    return gray_f2u_to_f2_array(gray_f4u_to_f2u_array(a))


def _require(v: RingVector, ring: Ring) -> None:
    if v.ring is not ring:
        raise RingMismatchError(f"expected a vector over {ring.value}, got {v.ring.value}")


def gray_f4u_to_f2u(v: RingVector) -> RingVector:
    _require(v, Ring.F4U)
    return RingVector(Ring.F2U, gray_f4u_to_f2u_array(v.entries))


def gray_f2u_to_f2(v: RingVector) -> RingVector:
    _require(v, Ring.F2U)
    return RingVector(Ring.F2, gray_f2u_to_f2_array(v.entries))


def gray_to_binary(v: RingVector) -> RingVector:
    return RingVector(Ring.F2, gray_array_to_binary(v.entries, v.ring))


def lee_weight(v: RingVector) -> int:
    """Hamming weight of the binary Gray image."""
    return int(gray_array_to_binary(v.entries, v.ring).sum())


def self_inverse_units(ring: Ring) -> list[RingElement]:
    return [RingElement(v, ring) for v in ring.elements()
            if is_self_inverse_unit(RingElement(v, ring))]


def elements_from(values: Iterable[int], ring: Ring) -> list[RingElement]:
    return [RingElement(int(v), ring) for v in values]


def as_vector(values: Sequence[int] | str, ring: Ring | str) -> RingVector:
    ring = Ring.parse(ring)
    if isinstance(values, str):
        return decode_vector(values, ring)
    return RingVector(ring, np.array(values, dtype=np.uint8))
