"""Bundled example files, regenerated by ``python -m cubhom.fixtures``."""

from __future__ import annotations

from pathlib import Path

HERE = Path(__file__).parent


def path(name: str) -> Path:
    return HERE / name


def documents() -> dict:
    """File name -> text of every bundled fixture."""
    from .. import io
    from ..abgrp import FpAbGroup
    from ..cubical_set import boundary_square, point, product, standard_cube, to_point

    cube1 = standard_cube(1)
    docs = {
        "point.cubset": io.set_to_json(point()),
        "boundary_square.cubset": io.set_to_json(boundary_square()),
        "interval_square.cubset": io.set_to_json(product(cube1, cube1)),
        "cube1_to_point.map": io.map_to_json(to_point(cube1)),
        "constant_Z.system": {"kind": "constant", "group": io.group_to_json(FpAbGroup.free(1))},
        "constant_Z6.system": {"kind": "constant", "group": io.group_to_json(FpAbGroup.cyclic(6))},
        "twist_cube2.system": {
            "kind": "twist",
            "system": {"kind": "constant", "group": io.group_to_json(FpAbGroup.free(1))},
            "signs": [{"cube": {"base": z, "eta": []}, "sign": -1}
                      for z in ("[0x]", "[11]", "[xx]")],
        },
    }
    for n in range(4):
        docs[f"cube{n}.cubset"] = io.set_to_json(standard_cube(n))
    return {name: io.dumps(doc) for name, doc in sorted(docs.items())}


def regenerate(target: Path = HERE) -> list:
    written = []
    for name, text in documents().items():
        (target / name).write_text(text)
        written.append(name)
    return written
