import itertools
import random

import numpy as np
import pytest

from bhcodes.analytics import BinaryCode, weight
from bhcodes.constructions import ConstructionRecipe, Variant, build_binary, check_conditions
from bhcodes.rings import Ring, RingElement, RingVector

HAMMING_8 = [0b11110000, 0b11001100, 0b10101010, 0b11111111]


def hamming8() -> BinaryCode:
    return BinaryCode.from_spanning(HAMMING_8, 8)


def brute_distribution(code: BinaryCode) -> dict[int, int]:
    """Weight distribution by summing every subset of generator rows."""
    dist: dict[int, int] = {}
    rows = code.rows
    for mask in range(1 << len(rows)):
        w = 0
        for i, r in enumerate(rows):
            if mask >> i & 1:
                w ^= r
        dist[weight(w)] = dist.get(weight(w), 0) + 1
    return dist


def passing_recipes(ring: Ring, n: int, variant: Variant = Variant.GENERAL, lam: int = 1):
    """Every recipe over a tiny space that satisfies the conditions."""
    elems = ring.elements()
    lam_e = RingElement(lam, ring)
    for vals in itertools.product(elems, repeat=4 * n):
        rows = [RingVector(ring, np.array(vals[i * n:(i + 1) * n], dtype=np.uint8)) for i in range(4)]
        rec = ConstructionRecipe(variant, ring, lam_e, *rows)
        if check_conditions(rec).ok:
            yield rec


def random_permutation(n: int, rng: random.Random) -> list[int]:
    order = list(range(n))
    rng.shuffle(order)
    return order


@pytest.fixture(scope="session")
def small_self_dual_codes() -> list[BinaryCode]:
    """200 self-dual codes of length <= 24 from tiny arrays, permuted at random."""
    rng = random.Random(2024)
    pool = [hamming8()]
    pool += [build_binary(r) for r in itertools.islice(passing_recipes(Ring.F2, 1), 20)]
    pool += [build_binary(r) for r in itertools.islice(passing_recipes(Ring.F2, 2), 60)]
    recs3 = list(itertools.islice(passing_recipes(Ring.F2, 3), 400))
    pool += [build_binary(r) for r in rng.sample(recs3, 80)]
    codes = []
    while len(codes) < 200:
        base = pool[len(codes) % len(pool)]
        codes.append(base.permute(random_permutation(base.length, rng)))
    return codes
