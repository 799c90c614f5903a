"""JSON document formats for every object kind the CLI consumes and emits.

All coefficient arrays are constant-term first.  Field elements serialize as
nested coordinate arrays (one array of F_p digits per F_q coordinate); bare
integers are accepted on input as canonical element indices.  Every emitted
document re-parses to an equal object, which the test suite checks.
"""

from __future__ import annotations

import json
from typing import Any

from .drinfeld import CoverMap, DrinfeldModule, drinfeld_module
from .errors import ParseError, SchemaError
from .ff import FieldElement, FieldTower
from .polys import Matrix, Poly
from .sheaves import AbelianSheafLadder, LadderLevel
from .shtuka import Shtuka
from .skew import SkewPoly

KINDS = ("field", "drinfeld_module", "cover", "abelian_sheaf", "shtuka", "job")

_tower_cache: dict[tuple, FieldTower] = {}


def loads(text: str) -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}")
    if not isinstance(data, dict):
        raise SchemaError("top-level document must be a JSON object")
    return data


def _need(data: dict, key: str, kind: str) -> Any:
    if key not in data:
        raise SchemaError(f"{kind} document is missing {key!r}")
    return data[key]


def parse_field(data: dict) -> FieldTower:
    p = _need(data, "p", "field")
    base = _need(data, "base_modulus", "field")
    ext = data.get("ext_modulus")
    try:
        tower = FieldTower(int(p), base, ext)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"bad field description: {exc}")
    cached = _tower_cache.get(tower.signature)
    if cached is None:
        _tower_cache[tower.signature] = tower
        cached = tower
    return cached


def parse_element(tower: FieldTower, data) -> FieldElement:
    try:
        return tower.element(data)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"bad field element {data!r}: {exc}")


def element_doc(e: FieldElement) -> list:
    return [list(c) for c in e.coords]


def field_doc(tower: FieldTower) -> dict:
    base_q = tower.base_field()
    return {
        "kind": "field",
        "p": tower.p,
        "base_modulus": list(tower.base_modulus),
        "ext_modulus": [list(base_q.coords_of(c)[0]) for c in tower.ext_modulus],
    }


def parse_poly(tower: FieldTower, data) -> Poly:
    if not isinstance(data, list):
        raise SchemaError(f"polynomial must be an array, got {data!r}")
    return Poly(tower, [parse_element(tower, c) for c in data])


def poly_doc(p: Poly) -> list:
    return [element_doc(c) for c in p.coeffs]


def parse_matrix(tower: FieldTower, data, rank: int) -> Matrix:
    if not isinstance(data, list) or len(data) != rank:
        raise SchemaError(f"matrix must be an array of {rank} rows")
    rows = []
    for row in data:
        if not isinstance(row, list) or len(row) != rank:
            raise SchemaError(f"matrix rows must have {rank} entries")
        rows.append(tuple(parse_poly(tower, e) for e in row))
    return tuple(rows)


def matrix_doc(M: Matrix) -> list:
    return [[poly_doc(e) for e in row] for row in M]


def parse_module(data: dict) -> DrinfeldModule:
    tower = parse_field(_need(data, "field", "drinfeld_module"))
    ring = _need(data, "ring", "drinfeld_module")
    if ring not in ("A", "Aprime"):
        raise SchemaError(f"ring must be 'A' or 'Aprime', got {ring!r}")
    gen = _need(data, "gen_image", "drinfeld_module")
    phi = SkewPoly(tower, [parse_element(tower, c) for c in gen])
    M = drinfeld_module(tower, ring, phi, data.get("rank"))
    if "characteristic" in data:
        xi = parse_element(tower, data["characteristic"])
        if xi != M.characteristic:
            raise SchemaError("declared characteristic differs from the constant term")
    return M


def module_doc(M: DrinfeldModule) -> dict:
    return {
        "kind": "drinfeld_module",
        "field": field_doc(M.tower),
        "ring": M.ring_tag,
        "gen_image": [element_doc(c) for c in M.gen_image.coeffs],
        "rank": M.rank,
        "characteristic": element_doc(M.characteristic),
    }


def parse_cover(data: dict) -> CoverMap:
    tower = parse_field(_need(data, "field", "cover"))
    return CoverMap(tower, _need(data, "p_poly", "cover"))


def cover_doc(c: CoverMap) -> dict:
    base = c.base
    return {
        "kind": "cover",
        "field": field_doc(base),
        "p_poly": [list(base.coords_of(i)[0]) for i in c.coeffs],
    }


def parse_ladder(data: dict) -> AbelianSheafLadder:
    tower = parse_field(_need(data, "field", "abelian_sheaf"))
    rank = int(_need(data, "rank", "abelian_sheaf"))
    levels = []
    for lvl in _need(data, "levels", "abelian_sheaf"):
        splits = tuple(int(s) for s in _need(lvl, "splits", "level"))
        if len(splits) != rank:
            raise SchemaError(f"level must carry {rank} splitting degrees")
        levels.append(
            LadderLevel(
                splits,
                parse_matrix(tower, _need(lvl, "Pi", "level"), rank),
                parse_matrix(tower, _need(lvl, "tau", "level"), rank),
            )
        )
    return AbelianSheafLadder(
        tower,
        rank,
        int(_need(data, "dim", "abelian_sheaf")),
        int(_need(data, "period", "abelian_sheaf")),
        int(_need(data, "twist", "abelian_sheaf")),
        parse_element(tower, _need(data, "characteristic", "abelian_sheaf")),
        tuple(levels),
    )


def ladder_doc(L: AbelianSheafLadder) -> dict:
    return {
        "kind": "abelian_sheaf",
        "field": field_doc(L.tower),
        "rank": L.rank,
        "dim": L.dim,
        "period": L.period,
        "twist": L.twist,
        "characteristic": element_doc(L.characteristic),
        "levels": [
            {
                "splits": list(lvl.splits),
                "Pi": matrix_doc(lvl.Pi),
                "tau": matrix_doc(lvl.tau),
            }
            for lvl in L.levels
        ],
    }


def _parse_point(tower: FieldTower, data):
    if data == "infinity":
        return None
    return parse_element(tower, data)


def _point_doc(p):
    return "infinity" if p is None else element_doc(p)


def parse_shtuka(data: dict) -> Shtuka:
    tower = parse_field(_need(data, "field", "shtuka"))
    rank = int(_need(data, "rank", "shtuka"))
    return Shtuka(
        _need(data, "orientation", "shtuka"),
        tower,
        rank,
        int(_need(data, "dim", "shtuka")),
        _parse_point(tower, _need(data, "pole", "shtuka")),
        _parse_point(tower, _need(data, "zero", "shtuka")),
        tuple(int(s) for s in _need(data, "splits_E", "shtuka")),
        tuple(int(s) for s in _need(data, "splits_Eprime", "shtuka")),
        parse_matrix(tower, _need(data, "J", "shtuka"), rank),
        parse_matrix(tower, _need(data, "T", "shtuka"), rank),
    )


def shtuka_doc(S: Shtuka) -> dict:
    return {
        "kind": "shtuka",
        "field": field_doc(S.tower),
        "orientation": S.orientation,
        "rank": S.rank,
        "dim": S.dim,
        "pole": _point_doc(S.pole),
        "zero": _point_doc(S.zero),
        "splits_E": list(S.split_E),
        "splits_Eprime": list(S.split_Eprime),
        "J": matrix_doc(S.J),
        "T": matrix_doc(S.T),
    }


_PARSERS = {
    "field": parse_field,
    "drinfeld_module": parse_module,
    "cover": parse_cover,
    "abelian_sheaf": parse_ladder,
    "shtuka": parse_shtuka,
}


def parse_document(data: dict):
    kind = _need(data, "kind", "document")
    if kind not in KINDS:
        raise SchemaError(f"unknown document kind {kind!r}")
    if kind == "job":
        return data
    return _PARSERS[kind](data)


def object_doc(obj) -> dict:
    if isinstance(obj, DrinfeldModule):
        return module_doc(obj)
    if isinstance(obj, CoverMap):
        return cover_doc(obj)
    if isinstance(obj, AbelianSheafLadder):
        return ladder_doc(obj)
    if isinstance(obj, Shtuka):
        return shtuka_doc(obj)
    if isinstance(obj, FieldTower):
        return field_doc(obj)
    raise SchemaError(f"cannot serialize {type(obj).__name__}")
