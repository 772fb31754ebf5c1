"""Connection-point layouts for two atom pairs on two independent waveguides.

Atoms a and b couple to waveguide 1, atoms c and d to waveguide 2.  Positions
are dimensionless multiples of the base spacing d0, so the propagation phase
accumulated between two points at positions p and q is phi * |p - q|, with phi
the phase shift between adjacent unit-spaced points.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

ATOMS = ("a", "b", "c", "d")

# intra-waveguide pairs that share a field (and therefore exchange excitations)
WAVEGUIDE_PAIRS = (("a", "b"), ("c", "d"))

# single-excitation amplitude ordering used everywhere: (e_a, e_c, e_b, e_d)
AMPLITUDE_INDEX = {"a": 0, "c": 1, "b": 2, "d": 3}
GROUND_INDEX = 4

PRESETS = ("small", "separated", "braided", "nested")

# waveguide-1 positions of the named configurations; waveguide 2 mirrors them
_PRESET_POINTS = {
    "small": {"a": (0.0,), "b": (1.0,)},
    "separated": {"a": (0.0, 1.0), "b": (2.0, 3.0)},
    "braided": {"a": (0.0, 2.0), "b": (1.0, 3.0)},
    "nested": {"a": (0.0, 3.0), "b": (1.0, 2.0)},
}


@dataclass(frozen=True)
class ConnectionLayout:
    """Connection-point positions per atom, in units of d0.

    Every atom needs at least one finite position.  Presets use one point per
    atom (small) or two (the giant-atom configurations); custom layouts may
    use more.
    """

    points: dict[str, tuple[float, ...]]

    def __post_init__(self):
        for atom in ATOMS:
            pts = self.points.get(atom)
            if not pts:
                raise ValueError(f"atom {atom!r} needs at least one connection point")
            if not all(isinstance(p, (int, float)) and math.isfinite(p) for p in pts):
                raise ValueError(f"atom {atom!r} has a non-finite connection point")
        extra = set(self.points) - set(ATOMS)
        if extra:
            raise ValueError(f"unknown atom labels in layout: {sorted(extra)}")


def preset_layout(config: str) -> ConnectionLayout:
    """Layout of a named configuration.

    Raises ValueError for anything that is not one of the four presets
    (custom layouts are constructed directly or loaded from JSON).
    """
    if config not in PRESETS:
        raise ValueError("preset_layout requires a named preset")
    wg1 = _PRESET_POINTS[config]
    return ConnectionLayout(
        points={"a": wg1["a"], "b": wg1["b"], "c": wg1["a"], "d": wg1["b"]}
    )


def layout_from_dict(data: dict) -> ConnectionLayout:
    """Build a layout from a mapping {"a": [..], "b": [..], "c": [..], "d": [..]}."""
    if not isinstance(data, dict):
        raise ValueError("layout must be a JSON object with keys a, b, c, d")
    points = {}
    for atom in ATOMS:
        raw = data.get(atom)
        if raw is None:
            raise ValueError(f"layout is missing atom {atom!r}")
        if not isinstance(raw, (list, tuple)):
            raise ValueError(f"positions for atom {atom!r} must be an array")
        points[atom] = tuple(float(p) for p in raw)
    return ConnectionLayout(points=points)


def load_layout(path: str) -> ConnectionLayout:
    """Read a custom layout from a JSON file."""
    with open(path, "r", encoding="utf-8") as fh:
        return layout_from_dict(json.load(fh))
