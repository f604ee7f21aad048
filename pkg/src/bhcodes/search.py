"""Seeded random and exhaustive scans over array recipes.

Candidates are numbered.  Random mode draws candidate block b from
SeedSequence([seed, b]), so the hit set depends only on (seed, budget) and
never on how blocks are spread over workers.  The orthogonality conditions
are checked in numpy batches before any code is built.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from .analytics import (BinaryCode, WeightProfile, extremal_bound, find_word, i16_invariant,
                        profile)
from .constructions import ConstructionRecipe, Variant, build_binary
from .matrices import circulant_array, mat_mul_array
from .recipes import RecipeRecord
from .rings import MUL_TABLE, ONE, Ring, RingElement, RingVector, encode_vector, hex_encode

EXHAUSTIVE_CEILING = 10 ** 8
GRAY_FACTOR = {Ring.F2: 1, Ring.F2U: 2, Ring.F4U: 4}


@dataclass
class SearchConfig:
    ring: Ring
    variant: Variant
    n: int
    seed: int | None = None
    mode: str = "random"
    lambdas: list[int] = field(default_factory=lambda: [ONE])
    budget: int = 10_000
    min_distance: int | None = None
    family: str | None = None
    params: dict = field(default_factory=dict)
    block_size: int = 2048
    workers: int = 1
    stepwise: bool = False

    def __post_init__(self):
        self.ring = Ring.parse(self.ring)
        self.variant = Variant(self.variant)
        if self.mode not in ("random", "exhaustive"):
            raise ValueError(f"unknown search mode {self.mode!r}")
        if self.mode == "random" and self.seed is None:
            raise ValueError("random search needs an explicit seed")
        if self.variant is Variant.SYMMETRIC and self.n % 2 == 0:
            raise ValueError("the symmetric variant needs odd n")
        for lam in self.lambdas:
            RingElement(lam, self.ring)  # validates membership
        if self.variant is Variant.SYMMETRIC:
            self.lambdas = [ONE]
        if self.mode == "exhaustive" and self.space_size() > min(self.budget, EXHAUSTIVE_CEILING):
            raise ValueError(f"exhaustive space {self.space_size()} exceeds the budget")

    @property
    def length(self) -> int:
        return 8 * self.n * GRAY_FACTOR[self.ring]

    @property
    def target_distance(self) -> int:
        return self.min_distance if self.min_distance is not None else extremal_bound(self.length)

    @property
    def free_entries(self) -> int:
        if self.variant is Variant.SYMMETRIC:
            return 2 * ((self.n + 1) // 2) + 2 * self.n
        return 4 * self.n

    def space_size(self) -> int:
        return len(self.lambdas) * self.ring.size ** self.free_entries

    def to_dict(self) -> dict:
        d = asdict(self)
        d["ring"] = self.ring.value
        d["variant"] = self.variant.value
        return d

    @classmethod
    def from_dict(cls, data: dict) -> "SearchConfig":
        return cls(**data)

    @classmethod
    def load(cls, path: str | Path) -> "SearchConfig":
        return cls.from_dict(json.loads(Path(path).read_text()))


@dataclass
class SearchHit:
    index: int
    recipe: ConstructionRecipe
    profile: WeightProfile
    fingerprint: tuple

    def record(self) -> dict:
        r = self.recipe
        rec = RecipeRecord(r.table_id, r.variant.value, r.ring.value,
                           *(encode_vector(v) for v in (r.r_a, r.r_b, r.r_c, r.r_d)),
                           lambda_hex=hex_encode(r.lam))
        return {**rec.to_dict(), "profile": self.profile.to_dict(),
                "fingerprint": list(self.fingerprint)}


# -- candidate generation --------------------------------------------------------

def _lengths(cfg: SearchConfig) -> list[int]:
    if cfg.variant is Variant.SYMMETRIC:
        h = (cfg.n + 1) // 2
        return [h, h, cfg.n, cfg.n]
    return [cfg.n] * 4


def _random_block(cfg: SearchConfig, block: int, count: int) -> tuple[np.ndarray, np.ndarray]:
    rng = np.random.default_rng(np.random.SeedSequence([cfg.seed, block]))
    elems = np.array(cfg.ring.elements(), dtype=np.uint8)
    lam = np.array(cfg.lambdas, dtype=np.uint8)[rng.integers(0, len(cfg.lambdas), count)]
    flat = elems[rng.integers(0, len(elems), (count, cfg.free_entries))]
    return lam, flat


def _exhaustive_block(cfg: SearchConfig, start: int, count: int) -> tuple[np.ndarray, np.ndarray]:
    idx = np.arange(start, start + count, dtype=np.int64)
    elems = np.array(cfg.ring.elements(), dtype=np.uint8)
    q = len(elems)
    lam = np.array(cfg.lambdas, dtype=np.uint8)[idx % len(cfg.lambdas)]
    rest = idx // len(cfg.lambdas)
    flat = np.empty((count, cfg.free_entries), dtype=np.uint8)
    for j in range(cfg.free_entries - 1, -1, -1):
        flat[:, j] = elems[rest % q]
        rest //= q
    return lam, flat


def _split_rows(cfg: SearchConfig, flat: np.ndarray) -> list[np.ndarray]:
    out, pos = [], 0
    for size in _lengths(cfg):
        out.append(flat[:, pos:pos + size])
        pos += size
    if cfg.variant is Variant.SYMMETRIC:
        out[0] = np.concatenate([out[0], out[0][:, 1:][:, ::-1]], axis=1)
        out[1] = np.concatenate([out[1], out[1][:, 1:][:, ::-1]], axis=1)
    return out


def _circulants(rows: np.ndarray, lam: np.ndarray) -> np.ndarray:
    out = np.empty(rows.shape + (rows.shape[-1],), dtype=np.uint8)
    for value in np.unique(lam):
        sel = lam == value
        out[sel] = circulant_array(rows[sel], int(value))
    return out


def _gram(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return mat_mul_array(a, np.swapaxes(b, -1, -2))


def condition_mask(cfg: SearchConfig, lam: np.ndarray, flat: np.ndarray) -> np.ndarray:
    """Vectorised check_conditions over a batch of candidates."""
    ra, rb, rc, rd = _split_rows(cfg, flat)
    lam_ab = np.full_like(lam, ONE) if cfg.variant is Variant.SYMMETRIC else lam
    A, B = _circulants(ra, lam_ab), _circulants(rb, lam_ab)
    C, D = _circulants(rc, lam), _circulants(rd, lam)
    eye = np.eye(cfg.n, dtype=np.uint8)
    gram = _gram(A, A) ^ _gram(B, B) ^ _gram(C, C) ^ _gram(D, D)
    ok = ~(gram ^ eye).reshape(len(lam), -1).any(axis=1)
    ab = (_gram(A, B) ^ _gram(B, A)).reshape(len(lam), -1)
    cd = (_gram(C, D) ^ _gram(D, C)).reshape(len(lam), -1)
    if cfg.variant is Variant.GENERAL:
        ok &= ~(ab ^ cd).any(axis=1)
    elif cfg.variant is Variant.AMICABLE:
        ok &= ~ab.any(axis=1) & ~cd.any(axis=1)
    else:
        ok &= ~cd.any(axis=1)
    return ok


def _recipe(cfg: SearchConfig, lam: int, flat: np.ndarray, index: int) -> ConstructionRecipe:
    parts, pos = [], 0
    for size in _lengths(cfg):
        parts.append(RingVector(cfg.ring, flat[pos:pos + size]))
        pos += size
    return ConstructionRecipe(cfg.variant, cfg.ring, RingElement(int(lam), cfg.ring), *parts,
                              table_id=f"hit{index}")


def fingerprint(prof: WeightProfile, code: BinaryCode | None = None, *, i16: bool = False) -> tuple:
    """(length, A_12, A_14)-style key; I16 for length 80 when requested.

    Equal fingerprints are necessary, not sufficient, for equivalence.
    """
    if prof.length == 80 and i16 and code is not None:
        return (80, "I16", i16_invariant(code).I16)
    return (prof.length, prof.min_distance) + tuple(a for _, a in sorted(prof.counts.items()))


def _accept(cfg: SearchConfig, prof: WeightProfile) -> bool:
    if prof.min_distance < cfg.target_distance:
        return False
    if cfg.family and prof.family != cfg.family:
        return False
    return all(getattr(prof, k) == v for k, v in cfg.params.items())


def _evaluate(cfg: SearchConfig, lam: int, flat: np.ndarray, index: int) -> SearchHit | None:
    recipe = _recipe(cfg, lam, flat, index)
    code = build_binary(recipe)
    d = cfg.target_distance
    if find_word(code, (d - 1) // 2, 1, d - 1) is not None:
        return None
    prof = profile(code)
    if not _accept(cfg, prof):
        return None
    return SearchHit(index, recipe, prof, fingerprint(prof))


def _scan_block(cfg: SearchConfig, block: int) -> list[SearchHit]:
    start = block * cfg.block_size
    total = cfg.budget if cfg.mode == "random" else cfg.space_size()
    count = min(cfg.block_size, total - start)
    if count <= 0:
        return []
    if cfg.mode == "random":
        lam, flat = _random_block(cfg, block, count)
    else:
        lam, flat = _exhaustive_block(cfg, start, count)
    hits = []
    for i in np.nonzero(condition_mask(cfg, lam, flat))[0]:
        hit = _evaluate(cfg, int(lam[i]), flat[i], start + int(i))
        if hit is not None:
            hits.append(hit)
    return hits


def _amicable_pairs(cfg: SearchConfig, lam: int) -> dict[bytes, list[np.ndarray]]:
    """Every amicable pair of lam-circulants, keyed by its Gram contribution."""
    q = cfg.ring.size
    total = q ** (2 * cfg.n)
    out: dict[bytes, list[np.ndarray]] = {}
    step = 4096
    elems = np.array(cfg.ring.elements(), dtype=np.uint8)
    for start in range(0, total, step):
        idx = np.arange(start, min(start + step, total), dtype=np.int64)
        flat = np.empty((len(idx), 2 * cfg.n), dtype=np.uint8)
        rest = idx.copy()
        for j in range(2 * cfg.n - 1, -1, -1):
            flat[:, j] = elems[rest % q]
            rest //= q
        lv = np.full(len(idx), lam, dtype=np.uint8)
        X = _circulants(flat[:, :cfg.n], lv)
        Y = _circulants(flat[:, cfg.n:], lv)
        ami = ~(_gram(X, Y) ^ _gram(Y, X)).reshape(len(idx), -1).any(axis=1)
        gram = _gram(X, X) ^ _gram(Y, Y)
        for i in np.nonzero(ami)[0]:
            out.setdefault(gram[i].tobytes(), []).append(flat[i])
    return out


def _stepwise(cfg: SearchConfig) -> Iterator[SearchHit]:
    """Exhaustive amicable scan: join (A,B) and (C,D) pairs whose Gram parts sum to I."""
    eye = np.eye(cfg.n, dtype=np.uint8)
    index = 0
    for lam in cfg.lambdas:
        pairs = _amicable_pairs(cfg, lam)
        for key in sorted(pairs):
            need = (np.frombuffer(key, dtype=np.uint8).reshape(cfg.n, cfg.n) ^ eye).tobytes()
            for ab in pairs[key]:
                for cd in pairs.get(need, ()):
                    flat = np.concatenate([ab, cd])
                    hit = _evaluate(cfg, lam, flat, index)
                    index += 1
                    if hit is not None:
                        yield hit


def run_search(cfg: SearchConfig) -> list[SearchHit]:
    """All hits in candidate order; deterministic for fixed (seed, budget)."""
    if cfg.stepwise:
        if cfg.variant is not Variant.AMICABLE or cfg.mode != "exhaustive":
            raise ValueError("stepwise scanning is for exhaustive amicable searches")
        return list(_stepwise(cfg))
    total = cfg.budget if cfg.mode == "random" else cfg.space_size()
    blocks = range(-(-total // cfg.block_size))
    if cfg.workers <= 1:
        parts = [_scan_block(cfg, b) for b in blocks]
    else:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            parts = list(pool.map(lambda b: _scan_block(cfg, b), blocks))
    hits = [h for part in parts for h in part]
    hits.sort(key=lambda h: h.index)
    return hits


def dedupe_hits(hits: Iterable[SearchHit], *, keep_order: bool = True) -> list[SearchHit]:
    """First hit per fingerprint."""
    seen, out = set(), []
    for h in hits:
        if h.fingerprint not in seen:
            seen.add(h.fingerprint)
            out.append(h)
    return out if keep_order else sorted(out, key=lambda h: h.fingerprint)
