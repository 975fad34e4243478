"""Cusp torus of the figure-eight complement as a decorated 2-cycle.

The meridian ``a`` and the longitude commute, so ``[a|l] - [l|a]`` is a
cycle of the bar complex of the cusp group.  Every degree-2 class is torsion
in the coinvariants, so both routes of the commuting square give zero and
the volume vanishes.
"""

from __future__ import annotations

import json
from pathlib import Path

from ..exactnum import ProjPoint, format_point
from . import figure_eight as f8

MERIDIAN = "a"


def build() -> dict:
    f = f8.FIELD
    m, l = MERIDIAN, f8.LONGITUDE
    return {
        "header": {"field": f.header(), "precision": 212, "coefficient_mode": "Q", "primary": "decorated"},
        "generators": {k: [f.format(x) for x in g.entries()] for k, g in f8.GENERATORS.items()},
        "relators": f8.RELATORS,
        "cusps": [{"index": 1, "generators": [m, l], "fixed_point": "inf"}],
        "base_point": format_point(ProjPoint(f8.BASE_POINT)),
        "decorated": [
            {"coeff": "1", "words": [m, l], "cusp": None},
            {"coeff": "-1", "words": [l, m], "cusp": None},
        ],
    }


def write(path: Path | str) -> None:
    Path(path).write_text(json.dumps(build(), indent=1) + "\n")


if __name__ == "__main__":
    write(Path(__file__).with_name("cusp_torus.json"))
