"""Recipe and code-artifact files, plus the shipped table fixtures.

Recipe record (JSON object)::

    {"table_id": "D1", "variant": "general", "ring": "F4U", "lambda_hex": "3",
     "rA": "1B", "rB": "7C", "rC": "6D", "rD": "45",
     "slot_order": "ACBD",                      # optional, default "ABCD"
     "extension": {"c": "3", "X": "1131..."},   # optional
     "neighbor": {"x": "0111..."}}              # optional

A recipe file holds one record, a list of records, or one record per line.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Iterable

from .analytics import BinaryCode, WeightProfile, hex_to_word, word_to_hex
from .constructions import ConstructionRecipe, ExtensionSpec, Variant
from .rings import Ring, RingElement, as_vector, hex_decode

SLOTS = "ABCD"


class RecipeFormatError(ValueError):
    """A recipe or artifact file does not parse."""


@dataclass
class RecipeRecord:
    table_id: str
    variant: str
    ring: str
    rA: str
    rB: str
    rC: str
    rD: str
    lambda_hex: str = "1"
    slot_order: str = SLOTS
    extension: dict | None = None
    neighbor: dict | None = None

    @classmethod
    def from_dict(cls, data: dict) -> "RecipeRecord":
        known = {f for f in cls.__dataclass_fields__}
        missing = {"variant", "ring", "rA", "rB", "rC", "rD"} - set(data)
        if missing:
            raise RecipeFormatError(f"recipe lacks fields {sorted(missing)}")
        kw = {k: v for k, v in data.items() if k in known}
        kw.setdefault("table_id", data.get("id", ""))
        if "lambda_hex" in kw:
            kw["lambda_hex"] = str(kw["lambda_hex"])
        return cls(**kw)

    def to_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}

    def to_recipe(self) -> ConstructionRecipe:
        try:
            ring = Ring.parse(self.ring)
            variant = Variant(self.variant)
        except (KeyError, ValueError) as exc:
            raise RecipeFormatError(str(exc)) from exc
        if sorted(self.slot_order) != list(SLOTS):
            raise RecipeFormatError(f"slot_order {self.slot_order!r} is not a permutation of ABCD")
        try:
            lam = RingElement(hex_decode(self.lambda_hex).value, ring)
            cols = {s: as_vector(getattr(self, "r" + s), ring) for s in SLOTS}
        except ValueError as exc:
            raise RecipeFormatError(f"{self.table_id or 'recipe'}: {exc}") from exc
        # slot i of the array takes the table column slot_order[i]
        rows = [cols[s] for s in self.slot_order]
        return ConstructionRecipe(variant, ring, lam, *rows, table_id=self.table_id)

    def extension_spec(self) -> ExtensionSpec | None:
        if not self.extension:
            return None
        return parse_extension(self.extension["c"], self.extension["X"])


def parse_extension(c: str, X: str) -> ExtensionSpec:
    ring = Ring.F2U
    c_vec = as_vector(c.replace("1+u", "3"), ring)
    if len(c_vec) != 1:
        raise RecipeFormatError(f"c must be a single element, got {c!r}")
    return ExtensionSpec(RingElement(int(c_vec.entries[0]), ring), as_vector(X, ring))


def read_records(path: str | Path) -> list[RecipeRecord]:
    text = Path(path).read_text()
    try:
        data: Any = json.loads(text)
    except json.JSONDecodeError:
        try:
            data = [json.loads(line) for line in text.splitlines() if line.strip()]
        except json.JSONDecodeError as exc:
            raise RecipeFormatError(f"{path}: {exc}") from exc
    if isinstance(data, dict) and "rows" in data:
        return table_records(data)
    items = data if isinstance(data, list) else [data]
    return [RecipeRecord.from_dict(d) for d in items]


def write_records(path: str | Path, records: Iterable[RecipeRecord]) -> None:
    Path(path).write_text(json.dumps([r.to_dict() for r in records], indent=1) + "\n")


def append_record(path: str | Path, record: dict) -> None:
    with open(path, "a") as fh:
        fh.write(json.dumps(record) + "\n")


# -- code artifacts ------------------------------------------------------------

@dataclass
class CodeArtifact:
    code: BinaryCode
    meta: dict = field(default_factory=dict)
    profile: WeightProfile | None = None

    def to_dict(self) -> dict:
        n = self.code.length
        out = {"length": n, "dimension": self.code.dimension, **self.meta,
               "generator": [word_to_hex(r, n) for r in self.code.rows]}
        if self.profile is not None:
            out["profile"] = self.profile.to_dict()
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "CodeArtifact":
        try:
            n = int(data["length"])
            rows = [hex_to_word(h, n) for h in data["generator"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise RecipeFormatError(f"bad code artifact: {exc}") from exc
        code = BinaryCode(rows, n)
        if code.dimension != data.get("dimension", code.dimension):
            raise RecipeFormatError("artifact dimension does not match its generator")
        meta = {k: v for k, v in data.items() if k not in ("length", "dimension", "generator", "profile")}
        prof = WeightProfile.from_dict(data["profile"]) if data.get("profile") else None
        return cls(code, meta, prof)

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=1) + "\n")

    @classmethod
    def load(cls, path: str | Path) -> "CodeArtifact":
        try:
            data = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise RecipeFormatError(f"{path}: {exc}") from exc
        return cls.from_dict(data)


# -- shipped fixtures ------------------------------------------------------------

TABLE_IDS = ("table1", "table2", "table3", "table4", "example4_1",
             "table5", "table6", "table7", "table8")


def load_table(table_id: str) -> dict:
    table_id = table_id.replace(".", "_").lower()
    if table_id not in TABLE_IDS:
        raise KeyError(f"unknown table {table_id!r}; choose from {', '.join(TABLE_IDS)}")
    text = resources.files(__package__).joinpath("data", f"{table_id}.json").read_text()
    data = json.loads(text)
    data["table"] = table_id
    return data


def table_records(table: dict) -> list[RecipeRecord]:
    """Recipe records of an array-kind table, table-level defaults filled in."""
    if table.get("kind", "array") != "array":
        raise RecipeFormatError(f"{table.get('table')} does not hold array recipes")
    out = []
    for row in table["rows"]:
        merged = {"ring": table.get("ring"), "variant": table.get("variant"),
                  "lambda_hex": table.get("lambda_hex", "1"),
                  "slot_order": table.get("slot_order", SLOTS), **row}
        merged["table_id"] = row["id"]
        out.append(RecipeRecord.from_dict(merged))
    return out


def find_record(row_id: str) -> RecipeRecord:
    for tid in TABLE_IDS:
        table = load_table(tid)
        if table["kind"] == "array":
            for rec in table_records(table):
                if rec.table_id == row_id:
                    return rec
    raise KeyError(f"no array recipe with id {row_id!r}")
