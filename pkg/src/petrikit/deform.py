"""Formal Schiffer-type deformations centred at one marked place A.

A lift is beta = sum_j t^j b_j(z) d/dz together with zeroth-order terms
a_j(z); it acts on local section data by L = sum_j t^j L_j with
L_j(f) = b_j f' + a_j f.  A section of the deformed bundle is a pair
(global meromorphic g = sum g_n t^n on C minus A, local regular f near A)
glued by g = exp(-L) f.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Mapping, Sequence

from .cohom import TailClass, check_marked_place, dual_basis, is_zero_class, pair_with_dual, principal_part_matrix
from .curve import (
    CurveFunction,
    Divisor,
    HyperellipticCurve,
    Place,
    differential_expansion,
    in_riemann_roch_space,
    local_expansion,
    riemann_roch_space,
)
from .exact import DeformationSeries, ExactMatrix, LaurentSeries, WindowError
from .exact.matrix import InconsistentSystem
from .exact.rational import as_rational
from .petri import PetriMap, PetriTensor, mu_next

MAX_WINDOW = 1024


class LaurentPolynomial:
    """Finite sum c_k z^k with known (exact) coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, object] | Iterable[tuple[int, object]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else list(terms)
        acc: dict[int, Fraction] = {}
        for k, c in items:
            acc[int(k)] = acc.get(int(k), Fraction(0)) + as_rational(c)
        self.terms = tuple(sorted((k, c) for k, c in acc.items() if c))

    @classmethod
    def monomial(cls, k: int, c=1) -> LaurentPolynomial:
        return cls({k: c})

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def min_exponent(self) -> int | None:
        return self.terms[0][0] if self.terms else None

    @property
    def depth(self) -> int:
        """Pole order (0 when regular)."""
        return max(0, -self.terms[0][0]) if self.terms else 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(("LaurentPolynomial", self.terms))

    def __repr__(self) -> str:
        return f"LaurentPolynomial({dict(self.terms)})"

    def __add__(self, other: LaurentPolynomial) -> LaurentPolynomial:
        return LaurentPolynomial(list(self.terms) + list(other.terms))

    def scale(self, c) -> LaurentPolynomial:
        c = as_rational(c)
        return LaurentPolynomial([(k, c * v) for k, v in self.terms])

    def __mul__(self, other):
        if isinstance(other, LaurentPolynomial):
            out: dict[int, Fraction] = {}
            for i, a in self.terms:
                for j, b in other.terms:
                    out[i + j] = out.get(i + j, Fraction(0)) + a * b
            return LaurentPolynomial(out)
        if isinstance(other, LaurentSeries):
            return self.times_series(other)
        return self.scale(other)

    def __pow__(self, n: int) -> LaurentPolynomial:
        out = LaurentPolynomial({0: 1})
        for _ in range(n):
            out = out * self
        return out

    def times_series(self, s: LaurentSeries) -> LaurentSeries:
        """Exact product; the window moves by the lowest exponent."""
        if not self.terms:
            return LaurentSeries.zero(s.trunc + 10**6)
        lo = self.terms[0][0]
        trunc = s.trunc + lo
        out: dict[int, Fraction] = {}
        for k, c in self.terms:
            for e, v in s.terms().items():
                if e + k < trunc:
                    out[e + k] = out.get(e + k, Fraction(0)) + c * v
        return LaurentSeries.from_terms(out, trunc)

    def to_series(self, trunc: int) -> LaurentSeries:
        return LaurentSeries.from_terms(dict(self.terms), trunc)

    def to_pairs(self) -> list[tuple[int, Fraction]]:
        return list(self.terms)


_ZERO_LP = LaurentPolynomial()


@dataclass(frozen=True)
class SchifferLift:
    """b_j and a_j for t-orders j = 1, 2, ...; index 0 of each tuple is t^1."""

    marked_place: Place
    beta: tuple[LaurentPolynomial, ...] = ()
    lift_a: tuple[LaurentPolynomial, ...] = ()
    curve: HyperellipticCurve | None = None

    def __post_init__(self):
        if self.marked_place.is_infinity or self.marked_place.ramified:
            raise ValueError("marked place must be affine and unramified")
        if self.curve is not None:
            self.curve.check_place(self.marked_place)
        object.__setattr__(self, "beta", tuple(self.beta))
        object.__setattr__(self, "lift_a", tuple(self.lift_a))

    @classmethod
    def from_terms(
        cls,
        place: Place,
        beta: Mapping[int, Mapping[int, object]] | None = None,
        lift_a: Mapping[int, Mapping[int, object]] | None = None,
        curve: HyperellipticCurve | None = None,
    ) -> SchifferLift:
        """``beta`` and ``lift_a`` map t-order j >= 1 to {exponent: coefficient}."""
        beta = beta or {}
        lift_a = lift_a or {}
        for j in list(beta) + list(lift_a):
            if j < 1:
                raise ValueError("Schiffer data has no t^0 term")
        n = max([0] + list(beta) + list(lift_a))
        b = tuple(LaurentPolynomial(beta.get(j, {})) for j in range(1, n + 1))
        a = tuple(LaurentPolynomial(lift_a.get(j, {})) for j in range(1, n + 1))
        return cls(place, b, a, curve)

    def b(self, j: int) -> LaurentPolynomial:
        return self.beta[j - 1] if 1 <= j <= len(self.beta) else _ZERO_LP

    def a(self, j: int) -> LaurentPolynomial:
        return self.lift_a[j - 1] if 1 <= j <= len(self.lift_a) else _ZERO_LP

    @property
    def max_order(self) -> int:
        return max(len(self.beta), len(self.lift_a))

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.beta + self.lift_a)

    def is_pure(self) -> bool:
        return all(self.b(j).is_zero() for j in range(2, self.max_order + 1))

    @property
    def pole_growth(self) -> int:
        """Bound on the pole order added by one application of any L_j."""
        out = 0
        for j in range(1, self.max_order + 1):
            b, a = self.b(j), self.a(j)
            if not b.is_zero():
                out = max(out, b.depth + 1)
            if not a.is_zero():
                out = max(out, a.depth)
        return out

    def with_lift_a(self, lift_a: Sequence[LaurentPolynomial]) -> SchifferLift:
        return SchifferLift(self.marked_place, self.beta, tuple(lift_a), self.curve)

    def beta_series(self, order: int, trunc: int) -> DeformationSeries:
        """beta as a t-series of Laurent series (t^0 coefficient zero)."""
        cs = [LaurentSeries.zero(trunc)] + [self.b(j).to_series(trunc) for j in range(1, order)]
        return DeformationSeries(cs, order)


def _apply_Lj(lift: SchifferLift, j: int, h: LaurentSeries) -> LaurentSeries | None:
    b, a = lift.b(j), lift.a(j)
    out = None
    if not b.is_zero():
        out = b.times_series(h.derivative())
    if not a.is_zero():
        term = a.times_series(h)
        out = term if out is None else out + term
    return out


def _apply_L(lift: SchifferLift, h: list[LaurentSeries | None]) -> list[LaurentSeries | None]:
    n = len(h)
    out: list[LaurentSeries | None] = [None] * n
    for k in range(1, n):
        acc = None
        for j in range(1, k + 1):
            src = h[k - j]
            if src is None:
                continue
            term = _apply_Lj(lift, j, src)
            if term is None:
                continue
            acc = term if acc is None else acc + term
        out[k] = acc
    return out


def exp_lie(
    lift: SchifferLift, f: DeformationSeries, sign: int = 1, min_trunc: int | None = None
) -> DeformationSeries:
    """sum_m (sign L)^m f / m! mod t^order.

    Raises WindowError when a resulting coefficient is known to fewer than
    ``min_trunc`` orders in z.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    n = f.order
    acc = list(f.coeffs)
    term: list[LaurentSeries | None] = list(f.coeffs)
    for m in range(1, n):
        term = _apply_L(lift, term)
        factor = Fraction(sign**m, factorial(m))
        for k in range(n):
            if term[k] is not None:
                acc[k] = acc[k] + term[k].scale(factor)
    if min_trunc is not None:
        for k, c in enumerate(acc):
            if c.trunc < min_trunc:
                raise WindowError(f"t^{k} coefficient known only to O(z^{c.trunc}); window exhausted")
    return DeformationSeries(acc, n)


def _local(s: CurveFunction, p: Place, window: int) -> LaurentSeries:
    if s.is_zero():
        return LaurentSeries.zero(window)
    return local_expansion(s, p, window)


def _check_section(lift: SchifferLift, s0: CurveFunction, B0: Divisor) -> None:
    check_marked_place(s0.curve, B0, lift.marked_place)
    if not in_riemann_roch_space(s0, B0):
        raise ValueError("s0 is not a section of O(B0)")


def first_order_obstruction(lift: SchifferLift, s0: CurveFunction, B0: Divisor) -> TailClass:
    """Principal part at A of b_1 s0' + a_1 s0, as a class in H^1(O(B0))."""
    _check_section(lift, s0, B0)
    curve, A = s0.curve, lift.marked_place
    b, a = lift.b(1), lift.a(1)
    order = max(b.depth + 1, a.depth) + 2
    loc = _local(s0, A, order)
    tail = LaurentSeries.zero(0)
    if not b.is_zero():
        tail = tail + b.times_series(loc.derivative()).principal_part()
    if not a.is_zero():
        tail = tail + a.times_series(loc).principal_part()
    return TailClass(curve, B0, A, tail.truncate(0))


@dataclass
class ExtensionResult:
    achieved_order: int
    corrections: list[CurveFunction]
    obstruction: TailClass | None = None
    local_data: list[LaurentSeries] = field(default_factory=list, repr=False)

    @property
    def succeeded(self) -> bool:
        return self.obstruction is None


def _solve_tail(curve: HyperellipticCurve, B0: Divisor, A: Place, tail: LaurentSeries, depth: int) -> CurveFunction:
    """Element of L(B0 + depth*A) with the given principal part; free coordinates zero."""
    if depth == 0:
        return curve.constant(0)
    m, basis = principal_part_matrix(curve, B0, A, depth)
    rhs = [tail[k] for k in range(-depth, 0)]
    coeffs = m.solve(rhs)
    out = curve.constant(0)
    for c, s in zip(coeffs, basis):
        if c:
            out = out + s * c
    return out


def extend_section(
    lift: SchifferLift,
    s0: CurveFunction,
    B0: Divisor,
    N_t: int,
    N_pole: int = 0,
    oracle: bool = False,
    window: int | None = None,
) -> ExtensionResult:
    """Extend s0 order by order in t; stop at the first obstructed order.

    At order n the t^n coefficient c_n of exp(-L) applied to the local data
    found so far must have a principal part that is the principal part of a
    global g_n in L(B0 + N*A); then f_n = g_n - c_n is the new local term.
    """
    _check_section(lift, s0, B0)
    if N_t < 1:
        raise ValueError("N_t must be at least 1")
    w = window or (N_t * (lift.pole_growth + 1) + N_pole + 8)
    while True:
        try:
            return _extend(lift, s0, B0, N_t, N_pole, oracle, w)
        except WindowError:
            if window is not None or w >= MAX_WINDOW:
                raise
            w *= 2


def _extend(lift, s0, B0, N_t, N_pole, oracle, w) -> ExtensionResult:
    curve, A = s0.curve, lift.marked_place
    local = [_local(s0, A, w)]
    corrections: list[CurveFunction] = []
    for n in range(1, N_t):
        data = DeformationSeries(local + [LaurentSeries.zero(w)], n + 1)
        c_n = exp_lie(lift, data, -1)[n]
        if c_n.trunc < 1:
            raise WindowError("extension window exhausted")
        tail = c_n.principal_part()
        cls = TailClass(curve, B0, A, tail)
        if not is_zero_class(cls, oracle=oracle):
            return ExtensionResult(n - 1, corrections, cls, local)
        depth = max(N_pole, cls.depth)
        try:
            g_n = _solve_tail(curve, B0, A, tail, depth)
        except InconsistentSystem:
            raise AssertionError("residue pairing and lifting disagree on a tail class") from None
        f_n = _local(g_n, A, w) - c_n
        if not f_n.is_zero() and f_n.lead < 0:
            raise AssertionError("local correction is not regular at the marked place")
        corrections.append(g_n)
        local.append(f_n)
    return ExtensionResult(N_t - 1, corrections, None, local)


def kernel_model(
    lift: SchifferLift, B0: Divisor, N_pole: int, N_t: int, window: int | None = None
) -> list[int]:
    """dims[n] = dimension of {g_0 : some g = sum g_i t^i, g_i in L(B0 + N_i A),
    has exp(L) g regular at A modulo t^(n+1)}, N_i = max(N_pole, i * growth).

    g_0 ranges over L(B0) since exp(L) g = g_0 at t^0.
    """
    curve = _require_curve(lift)
    A = lift.marked_place
    check_marked_place(curve, B0, A)
    kappa = lift.pole_growth
    orders = [max(N_pole, i * kappa) for i in range(N_t)]
    w = window or (max(orders) + N_t * (kappa + 1) + 8)
    while True:
        try:
            return _kernel_dims(lift, curve, B0, A, orders, N_t, w)
        except WindowError:
            if window is not None or w >= MAX_WINDOW:
                raise
            w *= 2


def _require_curve(lift: SchifferLift) -> HyperellipticCurve:
    if lift.curve is None:
        raise ValueError("this operation needs the lift's curve")
    return lift.curve


def _kernel_dims(lift, curve, B0, A, orders, N_t, w) -> list[int]:
    blocks = []
    for i in range(N_t):
        basis = riemann_roch_space(curve, B0 + Divisor({A: orders[i]}))
        cols = []
        for s in basis:
            data = DeformationSeries([_local(s, A, w)], N_t - i)
            e = exp_lie(lift, data, +1)
            pps = []
            for k in range(N_t - i):
                if e[k].trunc < 0:
                    raise WindowError("kernel model window exhausted")
                pps.append(e[k].principal_part().terms())
            cols.append(pps)
        blocks.append(cols)
    dims = []
    for n in range(N_t):
        rows: dict[tuple[int, int], dict[tuple[int, int], Fraction]] = {}
        var_index = []
        for i in range(n + 1):
            for c, pps in enumerate(blocks[i]):
                var_index.append((i, c))
        for vi, (i, c) in enumerate(var_index):
            pps = blocks[i][c]
            for k in range(i, n + 1):
                for e, v in pps[k - i].items():
                    rows.setdefault((k, e), {})[vi] = v
        nvars = len(var_index)
        n0 = len(blocks[0])
        if n0 == 0:
            dims.append(0)
            continue
        if rows:
            mat = ExactMatrix([[r.get(v, Fraction(0)) for v in range(nvars)] for _, r in sorted(rows.items())], nvars)
            kern = mat.kernel()
        else:
            kern = [tuple(Fraction(int(a == b)) for b in range(nvars)) for a in range(nvars)]
        proj = [v[:n0] for v in kern]
        dims.append(ExactMatrix(proj, n0).rank() if proj else 0)
    return dims


def first_order_extendable_dimension(lift: SchifferLift, B0: Divisor, oracle: bool = False) -> int:
    """dim {s0 in L(B0) : the first-order obstruction class of s0 vanishes}."""
    curve = _require_curve(lift)
    basis = riemann_roch_space(curve, B0)
    if not basis:
        return 0
    vecs = []
    if oracle:
        # lifting route: s0 = sum c_i s_i extends iff sum c_i tail_i lifts
        tails = [first_order_obstruction(lift, s, B0) for s in basis]
        depth = max([t.depth for t in tails] + [1])
        m, _ = principal_part_matrix(curve, B0, lift.marked_place, depth)
        tail_cols = [[t.tail[k] for k in range(-depth, 0)] for t in tails]
        joint = ExactMatrix.from_columns(tail_cols + [list(m.column(j)) for j in range(m.cols)], rows=depth)
        kern = joint.kernel()
        proj = [v[: len(basis)] for v in kern]
        return ExactMatrix(proj, len(basis)).rank() if proj else 0
    duals = dual_basis(curve, B0)
    for s in basis:
        t = first_order_obstruction(lift, s, B0)
        vecs.append([pair_with_dual(t, eta) for eta in duals])
    if not duals:
        return len(basis)
    mat = ExactMatrix.from_columns(vecs, rows=len(duals))
    return len(basis) - mat.rank()


@dataclass
class JointFeasibility:
    feasible: bool
    a_exponents: tuple[int, ...]
    lift_a1: LaurentPolynomial | None
    system: ExactMatrix
    rhs: tuple[Fraction, ...]


def joint_first_order_system(
    lift: SchifferLift,
    B0: Divisor,
    a_depth: int,
    oracle: bool = False,
) -> JointFeasibility:
    """Is there one a_1 = sum_{-a_depth <= k < 0} alpha_k z^k (regular terms never
    matter) making every basis section of L(B0) extend to first order?

    Pairing route: sum_k alpha_k res(z^k s eta) = -res(b_1 s' eta) for every
    basis section s and dual eta.  Oracle route: unknown alpha together with
    unknown lifts g_s in L(B0 + N*A), pp(g_s) = pp(b_1 s' + a_1 s).
    """
    curve = _require_curve(lift)
    A = lift.marked_place
    check_marked_place(curve, B0, A)
    basis = riemann_roch_space(curve, B0)
    exps = tuple(range(-a_depth, 0))
    b1 = lift.b(1)
    depth = max(b1.depth + 1, a_depth, 1)
    loc = [_local(s, A, depth + 2) for s in basis]
    if not oracle:
        duals = dual_basis(curve, B0)
        rows, rhs = [], []
        for s, ls in zip(basis, loc):
            for eta in duals:
                w = differential_expansion(eta.h, A, depth + 2)
                row = [LaurentPolynomial.monomial(k).times_series(ls * w).residue() for k in exps]
                rows.append(row)
                rhs.append(-b1.times_series(ls.derivative() * w).residue() if not b1.is_zero() else Fraction(0))
        mat = ExactMatrix(rows, len(exps)) if rows else ExactMatrix([], len(exps))
    else:
        m, lift_basis = principal_part_matrix(curve, B0, A, depth)
        nb = len(lift_basis)
        nvars = len(exps) + nb * len(basis)
        rows, rhs = [], []
        for si, ls in enumerate(loc):
            target = b1.times_series(ls.derivative()).principal_part() if not b1.is_zero() else LaurentSeries.zero(0)
            a_cols = [LaurentPolynomial.monomial(k).times_series(ls).principal_part() for k in exps]
            for r, e in enumerate(range(-depth, 0)):
                row = [Fraction(0)] * nvars
                for ci in range(len(exps)):
                    row[ci] = -a_cols[ci][e]
                for bj in range(nb):
                    row[len(exps) + si * nb + bj] = m[r, bj]
                rows.append(row)
                rhs.append(target[e])
        mat = ExactMatrix(rows, nvars) if rows else ExactMatrix([], nvars)
    feasible = mat.is_consistent(rhs) if rows else True
    sol = None
    if feasible:
        v = mat.solve(rhs) if rows else tuple(Fraction(0) for _ in range(mat.cols))
        sol = LaurentPolynomial({k: c for k, c in zip(exps, v[: len(exps)])})
    return JointFeasibility(feasible, exps, sol, mat, tuple(rhs))


def obstruction_pairing(lift: SchifferLift, kappa: PetriTensor, pm: PetriMap) -> Fraction:
    """sum c_ij < first-order obstruction of s_i , eta_j >."""
    if not pm.apply(kappa).is_zero():
        raise ValueError("kappa is not in the kernel of mu_0")
    total = Fraction(0)
    for i, j, c in kappa.terms():
        t = first_order_obstruction(lift, pm.sections[i], pm.L_divisor)
        total += c * pair_with_dual(t, pm.duals[j])
    return total


def contraction_pairing(lift: SchifferLift, kappa: PetriTensor, pm: PetriMap) -> Fraction:
    """res_A(b_1 w) where mu_1(kappa) = w dz^2 near A."""
    value = mu_next(pm, kappa).value
    b1 = lift.b(1)
    if b1.is_zero() or value.is_zero():
        return Fraction(0)
    w = value.expansion(lift.marked_place, b1.depth + 1)
    return b1.times_series(w).residue()


def symbol_of_order(lift: SchifferLift, n: int) -> LaurentPolynomial:
    """Top coefficient (of d^(n+1)/dz^(n+1)) of the t^(n+1) part of exp(-L):
    (-b_1)^(n+1) / (n+1)!."""
    if not lift.is_pure():
        raise ValueError("pure Schiffer data required")
    return (lift.b(1).scale(-1) ** (n + 1)).scale(Fraction(1, factorial(n + 1)))


def symbol_by_expansion(lift: SchifferLift, n: int, window: int = 24) -> LaurentSeries:
    """The same coefficient read off from exp_lie applied to test monomials z^m.

    The t^(n+1) part of exp(-L) is sum_k c_k(z) d^k/dz^k; applying it to
    z^0 .. z^(n+1) gives a triangular system for c_0 .. c_(n+1).
    """
    if not lift.is_pure():
        raise ValueError("pure Schiffer data required")
    order = n + 2
    images = []
    for m in range(n + 2):
        f = DeformationSeries([LaurentSeries.monomial(m, window)] + [LaurentSeries.zero(window)] * (order - 1), order)
        images.append(exp_lie(lift, f, -1)[n + 1])
    cs: list[LaurentSeries] = []
    for m in range(n + 2):
        acc = images[m]
        for k, ck in enumerate(cs):
            acc = acc - ck.shift(m - k).scale(Fraction(factorial(m), factorial(m - k)))
        cs.append(acc.scale(Fraction(1, factorial(m))))
    return cs[n + 1]


# operator identities in a nilpotent matrix model


def _rand_matrix(rng: random.Random, dim: int, strict_upper: bool = False) -> ExactMatrix:
    rows = []
    for i in range(dim):
        row = []
        for j in range(dim):
            if strict_upper and j <= i:
                row.append(Fraction(0))
            else:
                row.append(Fraction(rng.randint(-6, 6), rng.randint(1, 5)))
        rows.append(row)
    return ExactMatrix(rows, dim)


def _bracket(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    return a @ b - b @ a


def _ad_power(b: ExactMatrix, x: ExactMatrix, k: int) -> ExactMatrix:
    for _ in range(k):
        x = _bracket(b, x)
    return x


def _nilpotent_exp(b: ExactMatrix) -> ExactMatrix:
    dim = b.rows
    out = ExactMatrix.identity(dim)
    power = ExactMatrix.identity(dim)
    for k in range(1, dim):
        power = power @ b
        out = out + power.scale(Fraction(1, factorial(k)))
    return out


def varsigma(d: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """sum_k ad_b^k([d, b]) / (k+1)!, finite for nilpotent b (ad_b^k = 0 for k >= 2 dim - 1)."""
    dim = b.rows
    x = _bracket(d, b)
    out = ExactMatrix.zeros(dim, dim)
    for k in range(2 * dim - 1):
        out = out + x.scale(Fraction(1, factorial(k + 1)))
        x = _bracket(b, x)
    return out


def binomial_identity_holds(d: ExactMatrix, b: ExactMatrix, n: int) -> bool:
    """[d, b^(n+1)] = sum_{i=0}^{n} C(n+1, i) ad_b^(n-i)([d, b]) b^i."""
    lhs = _bracket(d, b ** (n + 1))
    db = _bracket(d, b)
    rhs = ExactMatrix.zeros(d.rows, d.cols)
    for i in range(n + 1):
        rhs = rhs + (_ad_power(b, db, n - i) @ (b**i)).scale(comb(n + 1, i))
    return lhs == rhs


def exponential_identity_holds(d: ExactMatrix, b: ExactMatrix) -> bool:
    """[d, e^b] = varsigma(d, b) e^b for strictly upper triangular b."""
    e = _nilpotent_exp(b)
    return _bracket(d, e) == varsigma(d, b) @ e


def inverse_gauge_identity_holds(d: ExactMatrix, b: ExactMatrix) -> bool:
    """varsigma(d, b) + e^b varsigma(d, -b) e^-b = 0."""
    e, einv = _nilpotent_exp(b), _nilpotent_exp(-b)
    return (varsigma(d, b) + e @ varsigma(d, -b) @ einv).is_zero()


def operator_identity_check(n_max: int, dim: int, trials: int, seed: int = 0) -> dict:
    if dim < 2:
        raise ValueError("dim must be at least 2")
    rng = random.Random(seed)
    counterexamples = []
    checks = 0
    for trial in range(trials):
        d = _rand_matrix(rng, dim)
        b = _rand_matrix(rng, dim)
        for n in range(n_max):
            checks += 1
            if not binomial_identity_holds(d, b, n):
                counterexamples.append({"trial": trial, "identity": "binomial", "n": n})
        bn = _rand_matrix(rng, dim, strict_upper=True)
        checks += 2
        if not exponential_identity_holds(d, bn):
            counterexamples.append({"trial": trial, "identity": "exponential"})
        if not inverse_gauge_identity_holds(d, bn):
            counterexamples.append({"trial": trial, "identity": "inverse_gauge"})
    return {
        "n_max": n_max,
        "dim": dim,
        "trials": trials,
        "checks": checks,
        "counterexamples": counterexamples,
        "passed": not counterexamples,
    }
