"""Persistent JSON cache for weight diagrams and fusion tables.

One JSON document per entry; the filename is the SHA-256 of the canonical
key, so lookups never scan the directory. All integers in payloads are
decimal strings, which keeps round-trips lossless at any magnitude. Writes go
through a temp file plus rename, so concurrent readers always see a complete
document.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

from .fusion import FusionTable
from .multiplicity import WeightDiagram
from .rootdata import RootSystem, Weight

SCHEMA_VERSION = 1

ENV_VAR = "FUSIONKIT_CACHE"
LOCAL_DIR = ".fusionkit-cache"


@dataclass(frozen=True)
class CacheEntry:
    schema_version: int
    cartan_type: str
    payload_kind: str  # "weight_diagram" | "fusion_table"
    key: str
    payload: dict


def resolve_cache_dir(flag_value: str | None) -> Path:
    if flag_value:
        return Path(flag_value)
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(LOCAL_DIR)


def _coords_str(w: Weight) -> str:
    return ",".join(str(int(c)) for c in w)


def _parse_coords(s: str) -> Weight:
    return tuple(int(p) for p in s.split(","))


def diagram_key(cartan_type: str, lam: Weight) -> str:
    return f"weight_diagram|{cartan_type}|{_coords_str(lam)}"


def table_key(cartan_type: str, level: int) -> str:
    return f"fusion_table|{cartan_type}|{level}"


class DiskCache:
    def __init__(self, root: Path | str):
        self.root = Path(root)

    def _path(self, key: str) -> Path:
        digest = hashlib.sha256(key.encode("utf-8")).hexdigest()
        return self.root / f"{digest}.json"

    def _read(self, key: str, kind: str) -> dict | None:
        path = self._path(key)
        if not path.exists():
            return None
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError):
            return None
        if (
            doc.get("schema_version") != SCHEMA_VERSION
            or doc.get("payload_kind") != kind
            or doc.get("key") != key
        ):
            return None
        return doc

    def _write(self, entry: CacheEntry) -> None:
        self.root.mkdir(parents=True, exist_ok=True)
        doc = {
            "schema_version": entry.schema_version,
            "cartan_type": entry.cartan_type,
            "payload_kind": entry.payload_kind,
            "key": entry.key,
            "payload": entry.payload,
        }
        text = json.dumps(doc, sort_keys=True, indent=1)
        fd, tmp = tempfile.mkstemp(dir=self.root, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as handle:
                handle.write(text)
            os.replace(tmp, self._path(entry.key))
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    # -- weight diagrams -------------------------------------------------

    def load_diagram(self, rs: RootSystem, lam: Weight) -> WeightDiagram | None:
        key = diagram_key(str(rs.cartan_type), tuple(lam))
        doc = self._read(key, "weight_diagram")
        if doc is None:
            return None
        payload = doc["payload"]
        table = {
            _parse_coords(entry[0]): int(entry[1]) for entry in payload["entries"]
        }
        return WeightDiagram(
            highest=_parse_coords(payload["highest"]), table=table, root_system=rs
        )

    def store_diagram(self, rs: RootSystem, diagram: WeightDiagram) -> None:
        key = diagram_key(str(rs.cartan_type), diagram.highest)
        payload = {
            "highest": _coords_str(diagram.highest),
            "entries": [
                [_coords_str(w), str(m)] for w, m in sorted(diagram.table.items())
            ],
        }
        self._write(
            CacheEntry(SCHEMA_VERSION, str(rs.cartan_type), "weight_diagram", key, payload)
        )

    # -- fusion tables ---------------------------------------------------

    def load_table(self, rs: RootSystem, level: int) -> FusionTable | None:
        key = table_key(str(rs.cartan_type), level)
        doc = self._read(key, "fusion_table")
        if doc is None:
            return None
        payload = doc["payload"]
        coeffs = {}
        for entry in payload["entries"]:
            lam, mu, nu = (_parse_coords(p) for p in entry[0].split("|"))
            coeffs[(lam, mu, nu)] = int(entry[1])
        alcove = tuple(_parse_coords(p) for p in payload["alcove"])
        return FusionTable(
            cartan_type=str(rs.cartan_type),
            level=int(payload["level"]),
            alcove=alcove,
            coeffs=coeffs,
        )

    def store_table(self, rs: RootSystem, table: FusionTable) -> None:
        key = table_key(str(rs.cartan_type), table.level)
        payload = {
            "level": str(table.level),
            "alcove": [_coords_str(w) for w in table.alcove],
            "entries": [
                ["|".join(_coords_str(w) for w in triple), str(c)]
                for triple, c in sorted(table.coeffs.items())
            ],
        }
        self._write(
            CacheEntry(SCHEMA_VERSION, str(rs.cartan_type), "fusion_table", key, payload)
        )
