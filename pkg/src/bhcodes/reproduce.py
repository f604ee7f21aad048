"""Rebuild every fixture row and compare against the published parameters."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache

from .analytics import (BinaryCode, WeightProfile, count_weight, i16_invariant,
                        is_self_dual, profile)
from .constructions import (ConditionError, binary_image, build_baumert_hall, build_binary,
                            extend_code, gray_generator_f4u_to_f2u, neighbor, neighbor_vector)
from .matrices import RingMatrix
from .recipes import load_table, parse_extension, table_records


@dataclass
class RowResult:
    table: str
    row_id: str
    ok: bool
    expected: dict
    got: dict = field(default_factory=dict)
    seconds: float = 0.0
    error: str = ""

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        text = f"{status} {self.table}:{self.row_id} ({self.seconds:.1f}s)"
        if not self.ok:
            diff = {k: (v, self.got.get(k)) for k, v in self.expected.items() if self.got.get(k) != v}
            text += f" expected/got {diff}" if diff else ""
            text += f" {self.error}" if self.error else ""
        return text


def _observed(prof: WeightProfile) -> dict:
    got = {"length": prof.length, "d": prof.min_distance, "family": prof.family,
           "type_two": prof.type_two}
    for name in ("beta", "gamma", "alpha"):
        if getattr(prof, name) is not None:
            got[name] = getattr(prof, name)
    return got


def _expected(table: dict, row: dict) -> dict:
    exp = {"length": table["expect_length"], "d": table["expect_d"],
           "family": table["expect_family"]}
    exp.update({k: v for k, v in row["expect"].items() if k != "I16"})
    return exp


# -- base codes for the length-68 tables --------------------------------------

@lru_cache(maxsize=None)
def extension_base(row_id: str = "D16") -> RingMatrix:
    """F2+uF2 generator of the Gray image of a Table 1 code."""
    table = load_table("table1")
    rec = next(r for r in table_records(table) if r.table_id == row_id)
    return gray_generator_f4u_to_f2u(build_baumert_hall(rec.to_recipe()))


@lru_cache(maxsize=None)
def extension_code(row_id: str) -> BinaryCode:
    table = load_table("table5")
    row = next(r for r in table["rows"] if r["id"] == row_id)
    base = extension_base(table.get("base_row", "D16"))
    return binary_image(extend_code(base, parse_extension(row["c"], row["X"])))


def neighbor_code(base_id: str, bits: str) -> BinaryCode:
    std = extension_code(base_id).standard_form
    std = BinaryCode(std.rows, std.length)
    return neighbor(std, neighbor_vector(bits, std.length))


# -- reproduction --------------------------------------------------------------

def _build(table: dict, row: dict) -> BinaryCode:
    kind = table["kind"]
    if kind == "extension":
        return extension_code(row["id"])
    if kind == "neighbor":
        return neighbor_code(row["base"], row["x"])
    rec = next(r for r in table_records(table) if r.table_id == row["id"])
    return build_binary(rec.to_recipe())


def reproduce_row(table: dict, row: dict, *, slow: bool = False, threads: int = 1,
                  check_a20: bool = False) -> RowResult:
    t0 = time.perf_counter()
    exp = _expected(table, row)
    if slow and "I16" in row["expect"]:
        exp["I16"] = row["expect"]["I16"]
    res = RowResult(table["table"], row["id"], False, exp)
    try:
        code = _build(table, row)
        if not is_self_dual(code):
            res.error = "built code is not self-dual"
            return res
        prof = profile(code, threads=threads)
        res.got = _observed(prof)
        if code.length == 80:
            res.got["A16"] = prof.counts.get(16)
            exp["A16"] = 97565
            if slow:
                res.got["I16"] = i16_invariant(code, threads=threads).I16
                if check_a20:
                    exp["A20"] = 12882688
                    res.got["A20"] = count_weight(code, 20, threads=threads)
        res.ok = all(res.got.get(k) == v for k, v in exp.items())
    except (ConditionError, ValueError) as exc:
        res.error = f"{type(exc).__name__}: {exc}"
    finally:
        res.seconds = time.perf_counter() - t0
    return res


def reproduce_table(table_id: str, *, slow: bool = False, threads: int = 1) -> list[RowResult]:
    table = load_table(table_id)
    out = []
    for i, row in enumerate(table["rows"]):
        out.append(reproduce_row(table, row, slow=slow, threads=threads,
                                 check_a20=slow and i == 0))
    return out
