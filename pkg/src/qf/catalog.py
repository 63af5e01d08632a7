"""Named groups and quandles, parsed from short spec strings.

Groups: ``Z4``, ``S3``, ``D4`` (order 8), ``V4``/``Klein``, ``1``, products ``Z2xZ4``.
Quandles: ``trivial:3``, ``dihedral:4``, ``conj:S3`` or ``conj:S3:2``, ``core:Z4``,
``alex:Z5:2`` (power map x ↦ x^k on an abelian group), ``alex:S3:id``.
A spec starting with ``@`` names a JSON file.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache, reduce

from .algebra import (
    FiniteGroup, cyclic_group, dihedral_group, direct_product, klein_group, power_map, symmetric_group,
    trivial_group,
)
from .quandle import FiniteQuandle, alexander_quandle, conj_quandle, core_quandle, dihedral_quandle, trivial_quandle


def _single_group(text: str) -> FiniteGroup:
    t = text.strip()
    low = t.lower()
    if low in ("1", "trivial", "z1"):
        return trivial_group()
    if low in ("v4", "klein"):
        return klein_group()
    kind, num = t[:1].upper(), t[1:]
    if not num.isdigit():
        raise ValueError(f"unknown group {text!r}")
    k = int(num)
    if kind == "Z":
        return cyclic_group(k)
    if kind == "S":
        return symmetric_group(k)
    if kind == "D":
        return dihedral_group(k)
    raise ValueError(f"unknown group {text!r}")


@lru_cache(maxsize=None)
def parse_group(text: str) -> FiniteGroup:
    if text.startswith("@"):
        from .io import group_from_json
        with open(text[1:]) as fh:
            return group_from_json(json.load(fh))
    parts = [p for p in text.replace("×", "x").split("x") if p]
    if len(parts) == 1:
        return _single_group(text)
    G = reduce(direct_product, (_single_group(p) for p in parts))
    return FiniteGroup(G.table, G.identity, G.inverse, text)


@lru_cache(maxsize=None)
def parse_quandle(text: str) -> FiniteQuandle:
    if text.startswith("@"):
        from .io import quandle_from_json
        with open(text[1:]) as fh:
            return quandle_from_json(json.load(fh))
    parts = text.split(":")
    kind = parts[0].lower()
    try:
        if kind == "trivial" and len(parts) == 2:
            return trivial_quandle(int(parts[1]))
        if kind == "dihedral" and len(parts) == 2:
            return dihedral_quandle(int(parts[1]))
        if kind == "conj" and len(parts) in (2, 3):
            n = int(parts[2]) if len(parts) == 3 else 1
            return conj_quandle(parse_group(parts[1]), n)
        if kind == "core" and len(parts) == 2:
            return core_quandle(parse_group(parts[1]))
        if kind == "alex" and len(parts) == 3:
            G = parse_group(parts[1])
            if parts[2] == "id":
                f = tuple(G.elements())
            else:
                k = int(parts[2])
                if not G.is_abelian:
                    raise ValueError("power maps are used as automorphisms on abelian groups only")
                f = power_map(G, k)
            return alexander_quandle(G, f, f"Alex({G.name},{parts[2]})")
    except (IndexError, KeyError) as exc:
        raise ValueError(f"cannot parse quandle spec {text!r}") from exc
    raise ValueError(f"cannot parse quandle spec {text!r}")


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    spec: str
    kind: str  # "group" or "quandle"

    def build(self):
        return parse_group(self.spec) if self.kind == "group" else parse_quandle(self.spec)


CATALOG_GROUPS = ["Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "S3", "D4", "V4"]


def catalog_entries() -> list[CatalogEntry]:
    out = [CatalogEntry(g, g, "group") for g in CATALOG_GROUPS]
    specs = [f"trivial:{n}" for n in range(1, 5)] + [f"dihedral:{n}" for n in range(3, 9)]
    specs += [f"conj:{g}" for g in CATALOG_GROUPS] + [f"core:{g}" for g in CATALOG_GROUPS]
    specs.append("alex:Z5:2")
    out += [CatalogEntry(s, s, "quandle") for s in specs]
    return out


def catalog_quandles() -> list[tuple[str, FiniteQuandle]]:
    return [(e.name, e.build()) for e in catalog_entries() if e.kind == "quandle"]


def catalog_groups() -> list[tuple[str, FiniteGroup]]:
    return [(e.name, e.build()) for e in catalog_entries() if e.kind == "group"]


def is_power_automorphism(G: FiniteGroup, k: int) -> bool:
    return G.is_abelian and math.gcd(k, G.size) == 1
