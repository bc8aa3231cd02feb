"""H^1(O(D)) as Laurent tails at one marked place modulo principal parts of
global sections, with the residue pairing against H^0(K - D) dx/y.

A tail tau at the marked place A (off supp D) is zero in H^1 exactly when
it is the principal part at A of some s in L(D + N*A), N = depth(tau).
Serre duality turns that into: res_A(tau * eta) = 0 for every eta with
div(eta) >= D.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .curve import (
    CurveDifferential,
    CurveFunction,
    Divisor,
    HyperellipticCurve,
    Place,
    differential_expansion,
    in_riemann_roch_space,
    principal_part,
    riemann_roch_space,
)
from .exact import ExactMatrix, LaurentSeries


def default_tail_depth(curve: HyperellipticCurve) -> int:
    return 2 * curve.genus + 2


def check_marked_place(curve: HyperellipticCurve, divisor: Divisor, place: Place) -> None:
    curve.check_place(place)
    if place.is_infinity or place.ramified:
        raise ValueError("marked place must be affine and unramified")
    if divisor[place] != 0:
        raise ValueError("marked place must lie off the support of the bundle divisor")


@dataclass(frozen=True)
class TailClass:
    """A principal part at ``marked_place``, viewed in H^1(O(bundle_divisor))."""

    curve: HyperellipticCurve
    bundle_divisor: Divisor
    marked_place: Place
    tail: LaurentSeries

    def __post_init__(self):
        check_marked_place(self.curve, self.bundle_divisor, self.marked_place)
        t = self.tail
        if t.trunc > 0:
            t = t.truncate(0)
        elif t.trunc < 0:
            raise ValueError("tail must be known through z^-1 (trunc 0)")
        object.__setattr__(self, "tail", t)

    @classmethod
    def from_terms(cls, curve, divisor, place, terms: Mapping[int, object]) -> TailClass:
        return cls(curve, divisor, place, LaurentSeries.from_terms(terms, 0))

    @property
    def depth(self) -> int:
        return 0 if self.tail.is_zero() else -self.tail.lead

    def is_zero_tail(self) -> bool:
        return self.tail.is_zero()

    def __add__(self, other: TailClass) -> TailClass:
        self._same_space(other)
        return TailClass(self.curve, self.bundle_divisor, self.marked_place, self.tail + other.tail)

    def __sub__(self, other: TailClass) -> TailClass:
        self._same_space(other)
        return TailClass(self.curve, self.bundle_divisor, self.marked_place, self.tail - other.tail)

    def scale(self, c) -> TailClass:
        return TailClass(self.curve, self.bundle_divisor, self.marked_place, self.tail.scale(c))

    def _same_space(self, other: TailClass) -> None:
        if (self.curve, self.bundle_divisor, self.marked_place) != (
            other.curve,
            other.bundle_divisor,
            other.marked_place,
        ):
            raise ValueError("tails live in different H^1 models")


def h1_dimension(curve: HyperellipticCurve, divisor: Divisor) -> int:
    return len(riemann_roch_space(curve, curve.canonical_divisor() - divisor))


def dual_basis(curve: HyperellipticCurve, divisor: Divisor) -> list[CurveDifferential]:
    """Basis of {eta : div(eta) >= D} as phi dx/y with phi in L(K - D)."""
    return [CurveDifferential(phi) for phi in riemann_roch_space(curve, curve.canonical_divisor() - divisor)]


def in_dual_space(eta: CurveDifferential, divisor: Divisor) -> bool:
    return in_riemann_roch_space(eta.h, eta.curve.canonical_divisor() - divisor)


def pair_with_dual(c: TailClass, eta: CurveDifferential) -> Fraction:
    """res_A(tail * eta)."""
    if not in_dual_space(eta, c.bundle_divisor):
        raise ValueError("eta not in dual space")
    if c.tail.is_zero() or eta.is_zero():
        return Fraction(0)
    w = differential_expansion(eta.h, c.marked_place, c.depth)
    return (c.tail * w).residue()


def pairing_vector(c: TailClass, duals: Sequence[CurveDifferential] | None = None) -> tuple[Fraction, ...]:
    if duals is None:
        duals = dual_basis(c.curve, c.bundle_divisor)
    return tuple(pair_with_dual(c, eta) for eta in duals)


def is_zero_class(c: TailClass, oracle: bool = False) -> bool:
    if oracle:
        return lift_tail(c) is not None
    if c.tail.is_zero():
        return True
    return all(v == 0 for v in pairing_vector(c))


def principal_part_matrix(
    curve: HyperellipticCurve, divisor: Divisor, place: Place, depth: int
) -> tuple[ExactMatrix, list[CurveFunction]]:
    """Columns: principal parts at ``place`` (rows z^-depth .. z^-1) of the
    basis of L(D + depth * place)."""
    check_marked_place(curve, divisor, place)
    basis = riemann_roch_space(curve, divisor + Divisor({place: depth}))
    cols = []
    for s in basis:
        ser = principal_part(s, place)
        cols.append([ser[k] for k in range(-depth, 0)])
    return ExactMatrix.from_columns(cols, rows=depth), basis


def lift_tail(c: TailClass) -> CurveFunction | None:
    """Some s in L(D + depth*A) whose principal part at A is the tail, or None."""
    n = c.depth
    if n == 0:
        return c.curve.constant(0)
    m, basis = principal_part_matrix(c.curve, c.bundle_divisor, c.marked_place, n)
    rhs = [c.tail[k] for k in range(-n, 0)]
    if not m.is_consistent(rhs):
        return None
    coeffs = m.solve(rhs)
    out = c.curve.constant(0)
    for a, s in zip(coeffs, basis):
        if a:
            out = out + s * a
    return out


def tail_quotient_dimension(curve: HyperellipticCurve, divisor: Divisor, place: Place, depth: int) -> int:
    """dim {tails of depth <= N} / {principal parts of L(D + N*A)}."""
    if depth == 0:
        return 0
    m, _ = principal_part_matrix(curve, divisor, place, depth)
    return depth - m.rank()


def tail_quotient_basis(curve: HyperellipticCurve, divisor: Divisor, place: Place, depth: int) -> list[TailClass]:
    """Monomial tails z^-k completing the principal-part image to all tails of depth <= N."""
    m, _ = principal_part_matrix(curve, divisor, place, depth)
    image = [list(m.column(j)) for j in range(m.cols)]
    chosen: list[TailClass] = []
    current = image
    rank = ExactMatrix(current, depth).rank() if current else 0
    for k in range(1, depth + 1):
        vec = [0] * depth
        vec[depth - k] = 1
        trial = current + [vec]
        r = ExactMatrix(trial, depth).rank()
        if r > rank:
            current, rank = trial, r
            chosen.append(TailClass.from_terms(curve, divisor, place, {-k: 1}))
    return chosen


def pairing_matrix(tails: Sequence[TailClass], duals: Sequence[CurveDifferential]) -> ExactMatrix:
    """Rows indexed by tails, columns by dual differentials."""
    return ExactMatrix([[pair_with_dual(c, eta) for eta in duals] for c in tails], len(duals))
