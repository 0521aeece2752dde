"""Rebuild the frozen oracle files.  Run by hand: python tests/golden/regen.py"""

import json
from pathlib import Path

from flipforge.generators import octahedron, stacked_random
from flipforge.oracle import (
    enumerate_triangulations,
    flip_distance,
    labelled_flip_diameter,
    labelled_flip_distance,
    reference_code,
)

HERE = Path(__file__).parent


def enumeration() -> dict:
    out = {}
    for n in range(4, 10):
        primary = enumerate_triangulations(n)
        ref = enumerate_triangulations(n, code=reference_code)
        out[str(n)] = {
            "classes_primary": len(primary),
            "classes_reference": len(ref),
            "codes_primary": [c.hex() for c in primary.nodes],
            "codes_reference": sorted(ref.nodes),
        }
    return out


def flipdist() -> dict:
    o, s = octahedron(), stacked_random(2, 0)
    out = {
        "octahedron_stacked_classes": flip_distance(o, s),
        "octahedron_stacked_labelled": labelled_flip_distance(o, s),
        "class_diameter": {},
        "labelled_diameter": {},
    }
    for n in (5, 6, 7, 8):
        ix = enumerate_triangulations(n)
        out["class_diameter"][str(n)] = ix.diameter()
        out["labelled_diameter"][str(n)] = labelled_flip_diameter(n, ix)
    return out


if __name__ == "__main__":
    for name, fn in (("enumeration", enumeration), ("flipdist", flipdist)):
        (HERE / f"{name}.json").write_text(json.dumps(fn(), indent=1, sort_keys=True) + "\n")
