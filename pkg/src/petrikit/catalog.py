"""Small curves with enough rational points for randomized checks."""

from __future__ import annotations

from functools import lru_cache

from .curve import HyperellipticCurve, Place
from .exact import Polynomial

# lowest-degree coefficient first
CURVES: dict[str, list[int]] = {
    "g1_x3p1": [1, 0, 0, 1],
    "g1_x3mx": [0, -1, 0, 1],
    "g2_x5mxp1": [1, -1, 0, 0, 0, 1],
    "g2_x5m1": [-1, 0, 0, 0, 0, 1],
    "g3_x7mxp1": [1, -1, 0, 0, 0, 0, 0, 1],
    "g3_x7m1": [-1, 0, 0, 0, 0, 0, 0, 1],
    "g3_x7p1": [1, 0, 0, 0, 0, 0, 0, 1],
    "g4_x9mxp1": [1, -1, 0, 0, 0, 0, 0, 0, 0, 1],
}

BY_GENUS: dict[int, list[str]] = {
    1: ["g1_x3p1", "g1_x3mx"],
    2: ["g2_x5mxp1", "g2_x5m1"],
    3: ["g3_x7mxp1", "g3_x7p1"],
    4: ["g4_x9mxp1"],
}


@lru_cache(maxsize=None)
def curve(name: str) -> HyperellipticCurve:
    return HyperellipticCurve(Polynomial(CURVES[name]))


@lru_cache(maxsize=None)
def affine_points(name: str, height: int = 9) -> tuple[Place, ...]:
    return tuple(curve(name).rational_points(height))


@lru_cache(maxsize=None)
def unramified_points(name: str, height: int = 9) -> tuple[Place, ...]:
    return tuple(p for p in affine_points(name, height) if not p.ramified)
