"""JSON documents for cubical sets, maps and coefficient systems.

Cubes are written as ``{"base": id, "eta": [deleted coordinates]}``; the
dimension follows from the base.  Matrices are lists of rows, relation
matrices lists of column vectors.  Serialization is canonical so a
parse/serialize round trip reproduces the file byte for byte.
"""

from __future__ import annotations

import json
from pathlib import Path

from .abgrp import FpAbGroup, IntMatrix
from .coeff import ContraSystem, constant_system, pullback, twist
from .cubical_set import CubeRef, CubicalMap, CubicalSetFin


class FormatError(ValueError):
    pass


def _need(doc: dict, key: str, where: str):
    if not isinstance(doc, dict) or key not in doc:
        raise FormatError(f"{where}: missing field {key!r}")
    return doc[key]


def _int_list(v, where: str) -> list:
    if not isinstance(v, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in v):
        raise FormatError(f"{where}: expected a list of integers")
    return v


# -- cubical sets -----------------------------------------------------------

def cube_to_json(c: CubeRef) -> dict:
    return {"base": c.base, "eta": list(c.deleted)}


def cube_from_json(doc, X: CubicalSetFin, where: str = "cube") -> CubeRef:
    if isinstance(doc, str):
        return parse_cube(doc, X)
    base = _need(doc, "base", where)
    if base not in X.dims:
        raise FormatError(f"{where}: unknown cube {base!r}")
    eta = _int_list(doc.get("eta", []), where)
    return CubeRef(X.dims[base] + len(eta), base, tuple(eta))


def parse_cube(text: str, X: CubicalSetFin) -> CubeRef:
    """``id`` or ``id<i,j,...>`` (the printed form of a cube)."""
    base, deleted = text, ()
    if text.endswith(">") and "<" in text:
        cut = text.rindex("<")
        base = text[:cut]
        try:
            deleted = tuple(int(x) for x in text[cut + 1:-1].split(","))
        except ValueError:
            base, deleted = text, ()
    if base not in X.dims:
        raise FormatError(f"unknown cube {base!r}")
    return CubeRef(X.dims[base] + len(deleted), base, deleted)


def set_to_json(X: CubicalSetFin, dim_cap: int | None = None) -> dict:
    order = sorted(X.dims, key=lambda z: (X.dims[z], z))
    doc = {"cubes": [{"id": z, "dim": X.dims[z]} for z in order],
           "faces": {z: [{"i": i, "tau": t, "eta": list(c.deleted), "target": c.base}
                         for (i, t), c in sorted(X.faces[z].items())]
                     for z in order if X.faces[z]}}
    if dim_cap is not None:
        doc["dim_cap"] = dim_cap
    return doc


def set_from_json(doc: dict) -> CubicalSetFin:
    cubes = _need(doc, "cubes", "presentation")
    dims = {}
    for k, entry in enumerate(cubes):
        z = _need(entry, "id", f"cubes[{k}]")
        d = _need(entry, "dim", f"cubes[{k}]")
        if not isinstance(z, str) or not isinstance(d, int) or z in dims:
            raise FormatError(f"cubes[{k}]: bad or repeated entry")
        dims[z] = d
    faces = {z: {} for z in dims}
    for z, rows in doc.get("faces", {}).items():
        if z not in dims:
            raise FormatError(f"faces: unknown cube {z!r}")
        for k, f in enumerate(rows):
            where = f"faces[{z}][{k}]"
            target = _need(f, "target", where)
            if target not in dims:
                raise FormatError(f"{where}: unknown target {target!r}")
            eta = tuple(_int_list(f.get("eta", []), where))
            faces[z][(_need(f, "i", where), _need(f, "tau", where))] = \
                CubeRef(dims[target] + len(eta), target, eta)
    X = CubicalSetFin(dims, faces)
    cap = doc.get("dim_cap")
    if cap is not None and X.dim_cap > cap:
        raise FormatError(f"presentation has a {X.dim_cap}-cube but dim_cap is {cap}")
    return X


# -- maps -------------------------------------------------------------------

def map_to_json(f: CubicalMap) -> dict:
    return {"assignment": {z: cube_to_json(f.assignment[z])
                           for z in sorted(f.assignment, key=lambda z: (f.source.dims[z], z))}}


def map_from_json(doc: dict, X: CubicalSetFin, Y: CubicalSetFin) -> CubicalMap:
    table = _need(doc, "assignment", "map")
    return CubicalMap(X, Y, {z: cube_from_json(c, Y, f"assignment[{z}]") for z, c in table.items()})


# -- groups and systems -----------------------------------------------------

def group_to_json(G: FpAbGroup) -> dict:
    return {"gens": G.gens, "relations": [list(c) for c in G.relations.columns()]}


def group_from_json(doc, where: str = "group") -> FpAbGroup:
    if isinstance(doc, list):   # shorthand: cyclic orders, 0 meaning Z
        return FpAbGroup.from_orders(_int_list(doc, where))
    gens = _need(doc, "gens", where)
    cols = doc.get("relations", [])
    for c in cols:
        if len(_int_list(c, where)) != gens:
            raise FormatError(f"{where}: relation vectors need {gens} entries")
    return FpAbGroup(gens, IntMatrix.from_columns(cols, gens))


def matrix_from_json(doc, rows: int, cols: int, where: str) -> IntMatrix:
    if not isinstance(doc, list) or len(doc) != rows:
        raise FormatError(f"{where}: expected {rows} rows")
    for r in doc:
        if len(_int_list(r, where)) != cols:
            raise FormatError(f"{where}: expected {cols} columns")
    return IntMatrix(rows, cols, doc)


def system_to_json(F: ContraSystem) -> dict:
    key = lambda c: (c.dim, c.base, c.deleted)  # noqa: E731
    return {
        "kind": "table",
        "cap": F.cap,
        "values": [{"cube": cube_to_json(c), "group": group_to_json(F.values[c])}
                   for c in sorted(F.values, key=key)],
        "face_maps": [{"cube": cube_to_json(c), "i": i, "tau": t,
                       "matrix": F.face_maps[(c, i, t)].tolist()}
                      for (c, i, t) in sorted(F.face_maps, key=lambda k: (key(k[0]), k[1], k[2]))],
        "degen_maps": [{"cube": cube_to_json(c), "i": i, "matrix": F.degen_maps[(c, i)].tolist()}
                       for (c, i) in sorted(F.degen_maps, key=lambda k: (key(k[0]), k[1]))],
    }


def system_from_json(doc: dict, X: CubicalSetFin, cap: int | None = None,
                     base_dir: Path | None = None) -> ContraSystem:
    """Build a system on ``X``.  ``cap`` is used when the document has none."""
    kind = _need(doc, "kind", "system")
    cap = doc.get("cap", cap)
    if kind == "constant":
        if cap is None:
            raise FormatError("constant system: no cap given")
        return constant_system(X, group_from_json(doc.get("group", [0])), cap)
    if kind == "table":
        if cap is None:
            raise FormatError("table system: no cap given")
        values = {}
        for k, v in enumerate(_need(doc, "values", "table system")):
            values[cube_from_json(_need(v, "cube", f"values[{k}]"), X, f"values[{k}]")] = \
                group_from_json(_need(v, "group", f"values[{k}]"), f"values[{k}].group")

        def size(c, where):
            if c not in values:
                raise FormatError(f"{where}: no value at {c}")
            return values[c].gens

        faces, degens = {}, {}
        for k, m in enumerate(doc.get("face_maps", [])):
            where = f"face_maps[{k}]"
            c = cube_from_json(_need(m, "cube", where), X, where)
            i, t = _need(m, "i", where), _need(m, "tau", where)
            if not 1 <= i <= c.dim or t not in (0, 1):
                raise FormatError(f"{where}: bad face index")
            faces[(c, i, t)] = matrix_from_json(_need(m, "matrix", where),
                                                size(X.face(c, i, t), where), size(c, where), where)
        for k, m in enumerate(doc.get("degen_maps", [])):
            where = f"degen_maps[{k}]"
            c = cube_from_json(_need(m, "cube", where), X, where)
            i = _need(m, "i", where)
            if not 1 <= i <= c.dim + 1:
                raise FormatError(f"{where}: bad degeneracy index")
            degens[(c, i)] = matrix_from_json(_need(m, "matrix", where),
                                              size(X.degeneracy(c, i), where), size(c, where), where)
        return ContraSystem(X, cap, values, faces, degens)
    if kind == "twist":
        F = system_from_json(_need(doc, "system", "twist"), X, cap, base_dir)
        units = {}
        if "signs" in doc:
            sign_of = {cube_from_json(s["cube"], X, "signs"): s["sign"] for s in doc["signs"]}
            for c, G in F.values.items():
                units[c] = IntMatrix.identity(G.gens).scale(sign_of.get(c, 1))
        else:
            for k, u in enumerate(_need(doc, "units", "twist")):
                c = cube_from_json(_need(u, "cube", f"units[{k}]"), X, f"units[{k}]")
                g = F.values[c].gens if c in F.values else 0
                units[c] = matrix_from_json(_need(u, "matrix", f"units[{k}]"), g, g, f"units[{k}]")
        return twist(F, units)
    if kind == "pullback":
        Ydoc = _need(doc, "target", "pullback")
        Y = set_from_json(load_json(Ydoc, base_dir) if isinstance(Ydoc, str) else Ydoc)
        f = map_from_json(_need(doc, "map", "pullback"), X, Y)
        F = system_from_json(_need(doc, "system", "pullback"), Y, cap, base_dir)
        return pullback(f, F)
    raise FormatError(f"unknown system kind {kind!r}")


# -- files ------------------------------------------------------------------

def dumps(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def load_json(path, base_dir: Path | None = None):
    p = Path(path)
    if base_dir is not None and not p.is_absolute():
        p = base_dir / p
    try:
        return json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{p}: not valid JSON ({exc})") from exc


def read_set(path) -> CubicalSetFin:
    return set_from_json(load_json(path))


def write_set(X: CubicalSetFin, path, dim_cap: int | None = None) -> None:
    Path(path).write_text(dumps(set_to_json(X, dim_cap)))


def read_system(path, X: CubicalSetFin, cap: int | None = None) -> ContraSystem:
    return system_from_json(load_json(path), X, cap, Path(path).parent)
