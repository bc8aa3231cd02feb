"""Seeded property suites shared by the test-suite and ``petrikit verify``."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import catalog
from .cohom import (
    TailClass,
    dual_basis,
    h1_dimension,
    is_zero_class,
    pairing_matrix,
    principal_part_matrix,
    tail_quotient_basis,
    tail_quotient_dimension,
)
from .curve import (
    CurveDifferential,
    CurveFunction,
    Divisor,
    HyperellipticCurve,
    coordinates_in_span,
    in_riemann_roch_space,
    principal_part,
    residue,
    riemann_roch_space,
    valuation,
)
from .deform import (
    LaurentPolynomial,
    SchifferLift,
    contraction_pairing,
    exp_lie,
    extend_section,
    first_order_extendable_dimension,
    first_order_obstruction,
    kernel_model,
    obstruction_pairing,
    operator_identity_check,
    symbol_by_expansion,
    symbol_of_order,
)
from .exact import (
    DeformationSeries,
    ExactMatrix,
    LaurentSeries,
    Polynomial,
    RationalFunction,
    format_rational,
    parse_rational,
)
from .petri import (
    PetriTensor,
    build_mu0,
    global_value_in_chart,
    mu_next,
    mu_value_in_chart,
    wronskian_matrix,
    _holomorphic_coordinates,
)

SUITES = ("algebra", "curve", "cohom", "petri", "deform")


@dataclass
class Property:
    name: str
    suite: str
    default_trials: int
    max_trials: int
    fn: Callable[[random.Random, int], list]


PROPERTIES: list[Property] = []


def prop(suite: str, default_trials: int, max_trials: int | None = None):
    def wrap(fn):
        PROPERTIES.append(Property(fn.__name__, suite, default_trials, max_trials or 10**9, fn))
        return fn

    return wrap


def _q(rng: random.Random, lo: int = -5, hi: int = 5, den: int = 4) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def _poly(rng: random.Random, deg: int) -> Polynomial:
    return Polynomial([_q(rng) for _ in range(deg + 1)])


def _series(rng: random.Random, lead_lo: int = -3, lead_hi: int = 2, width: int = 6) -> LaurentSeries:
    lead = rng.randint(lead_lo, lead_hi)
    cs = [_q(rng) for _ in range(width)]
    if cs[0] == 0:
        cs[0] = Fraction(1)
    return LaurentSeries(lead, cs, lead + width)


# algebra


@prop("algebra", 200)
def rational_ring_axioms(rng, n):
    bad = []
    for _ in range(n):
        a, b, c = _q(rng), _q(rng), _q(rng)
        if (a * b) * c != a * (b * c) or a * (b + c) != a * b + a * c:
            bad.append({"a": str(a), "b": str(b), "c": str(c)})
        if parse_rational(format_rational(a)) != a:
            bad.append({"roundtrip": str(a)})
    return bad


@prop("algebra", 200)
def polynomial_ring_axioms(rng, n):
    bad = []
    for _ in range(n):
        a, b, c = (_poly(rng, rng.randint(0, 4)) for _ in range(3))
        if (a * b) * c != a * (b * c) or a * (b + c) != a * b + a * c:
            bad.append({"a": str(a), "b": str(b), "c": str(c)})
        if not b.is_zero():
            q, r = a.divmod(b)
            if q * b + r != a or r.degree >= b.degree:
                bad.append({"divmod": [str(a), str(b)]})
    return bad


@prop("algebra", 200)
def laurent_ring_axioms(rng, n):
    bad = []
    for _ in range(n):
        a, b, c = _series(rng), _series(rng), _series(rng)
        if not ((a * b) * c).agrees_with(a * (b * c)):
            bad.append({"assoc": [str(a), str(b), str(c)]})
        if not (a * (b + c)).agrees_with(a * b + a * c):
            bad.append({"distrib": [str(a), str(b), str(c)]})
        if not (a * a.inverse()).agrees_with(LaurentSeries.constant(1, 50)):
            bad.append({"inverse": str(a)})
    return bad


@prop("algebra", 200)
def residue_linearity(rng, n):
    bad = []
    for _ in range(n):
        a = _series(rng, -4, -1, 6)
        b = _series(rng, -4, -1, 6)
        al, be = _q(rng), _q(rng)
        if (a.scale(al) + b.scale(be)).residue() != al * a.residue() + be * b.residue():
            bad.append({"a": str(a), "b": str(b)})
    return bad


@prop("algebra", 200)
def deformation_series_ring(rng, n):
    bad = []
    for _ in range(n):
        order = rng.randint(1, 6)
        a, b, c = (DeformationSeries([_q(rng) for _ in range(order)], order) for _ in range(3))
        if a * b != b * a or (a * b) * c != a * (b * c):
            bad.append({"a": [str(x) for x in a], "b": [str(x) for x in b], "c": [str(x) for x in c]})
    return bad


@prop("algebra", 200)
def matrix_kernel_rank_nullity(rng, n):
    bad = []
    for _ in range(n):
        rows, cols = rng.randint(1, 5), rng.randint(1, 6)
        m = ExactMatrix([[_q(rng, -2, 2, 2) for _ in range(cols)] for _ in range(rows)], cols)
        ker = m.kernel()
        if any(any(m.apply(v)) for v in ker) or m.rank() + len(ker) != cols:
            bad.append({"matrix": repr(m)})
        rhs = m.apply([_q(rng) for _ in range(cols)])
        if m.apply(m.solve(rhs)) != rhs:
            bad.append({"solve": repr(m)})
    return bad


# curve


def random_divisor(rng: random.Random, curve_name: str, max_abs_degree: int | None = None) -> Divisor:
    curve = catalog.curve(curve_name)
    g = curve.genus
    bound = max_abs_degree if max_abs_degree is not None else 2 * g + 4
    places = list(catalog.affine_points(curve_name)) + [curve.infinity]
    while True:
        k = rng.randint(1, min(4, len(places)))
        chosen = rng.sample(places, k)
        d = Divisor([(p, rng.randint(-3, 4)) for p in chosen])
        if abs(d.degree) <= bound:
            return d


def _rr_curve_names():
    return [name for g in (1, 2, 3, 4) for name in catalog.BY_GENUS[g]]


@prop("curve", 60)
def riemann_roch_theorem(rng, n):
    bad = []
    names = _rr_curve_names()
    for i in range(n):
        name = names[i % len(names)]
        curve = catalog.curve(name)
        d = random_divisor(rng, name)
        lhs = len(riemann_roch_space(curve, d)) - len(riemann_roch_space(curve, curve.canonical_divisor() - d))
        if lhs != d.degree - curve.genus + 1:
            bad.append({"curve": name, "divisor": repr(d), "difference": lhs})
    return bad


@prop("curve", 20)
def riemann_roch_degenerate_cases(rng, n):
    bad = []
    names = _rr_curve_names()
    for i in range(n):
        name = names[i % len(names)]
        curve = catalog.curve(name)
        if [str(s) for s in riemann_roch_space(curve, Divisor())] != ["1"]:
            bad.append({"curve": name, "case": "zero divisor"})
        d = random_divisor(rng, name)
        if d.degree < 0 and riemann_roch_space(curve, d):
            bad.append({"curve": name, "divisor": repr(d)})
    return bad


@prop("curve", 25)
def riemann_roch_basis_valid(rng, n):
    bad = []
    names = _rr_curve_names()
    for i in range(n):
        name = names[i % len(names)]
        curve = catalog.curve(name)
        d = random_divisor(rng, name)
        basis = riemann_roch_space(curve, d)
        places = set(d.support) | {curve.infinity}
        for s in basis:
            if not in_riemann_roch_space(s, d) or any(valuation(s, p) < -d[p] for p in places):
                bad.append({"curve": name, "divisor": repr(d), "element": str(s)})
        # exact independence: no element lies in the span of the others
        for j, s in enumerate(basis):
            if coordinates_in_span(s, basis[:j] + basis[j + 1 :]) is not None:
                bad.append({"curve": name, "divisor": repr(d), "dependent": str(s)})
    return bad


@prop("curve", 30)
def principal_divisor_degree(rng, n):
    bad = []
    names = ["g1_x3mx", "g1_x3p1", "g2_x5mxp1", "g3_x7mxp1", "g4_x9mxp1"]
    for i in range(n):
        name = names[i % len(names)]
        curve = catalog.curve(name)
        xs = sorted({p.x for p in catalog.affine_points(name)})
        s = curve.constant(_q(rng, 1, 5))
        support = {curve.infinity}
        for x0 in rng.sample(xs, rng.randint(1, min(3, len(xs)))):
            e = rng.choice([-2, -1, 1, 2])
            s = s * CurveFunction(curve, Polynomial([-x0, 1])) ** e
            support.update(curve.places_over(x0))
        if name == "g1_x3mx" and rng.random() < 0.5:
            s = s * curve.y ** rng.choice([-1, 1, 2])
            for x0 in (-1, 0, 1):
                support.update(curve.places_over(x0))
        total = sum(valuation(s, p) for p in support)
        if total != 0:
            bad.append({"curve": name, "function": str(s), "degree": total})
    return bad


@prop("curve", 30)
def residue_theorem(rng, n):
    bad = []
    names = ["g1_x3p1", "g2_x5mxp1", "g3_x7mxp1", "g4_x9mxp1", "g1_x3mx"]
    for i in range(n):
        name = names[i % len(names)]
        curve = catalog.curve(name)
        xs = sorted({p.x for p in catalog.affine_points(name)})
        den = Polynomial([1])
        places = {curve.infinity}
        for x0 in rng.sample(xs, rng.randint(1, min(3, len(xs)))):
            den = den * Polynomial([-x0, 1]) ** rng.randint(1, 3)
            places.update(curve.places_over(x0))
        a = _poly(rng, rng.randint(0, 3))
        b = _poly(rng, rng.randint(0, 2))
        h = CurveFunction(curve, RationalFunction(a, den), RationalFunction(b, den))
        if h.is_zero():
            continue
        total = sum(residue(CurveDifferential(h), p) for p in places)
        if total != 0:
            bad.append({"curve": name, "h": str(h), "sum": str(total)})
    return bad


@prop("curve", 20)
def local_expansion_on_curve(rng, n):
    bad = []
    names = _rr_curve_names()
    for i in range(n):
        name = names[i % len(names)]
        curve = catalog.curve(name)
        places = list(catalog.affine_points(name)) + [curve.infinity]
        p = rng.choice(places)
        w = rng.randint(4, 14)
        x, y = curve.local_xy(p, w)
        lhs = y * y - curve.f(x)
        if not lhs.is_zero():
            bad.append({"curve": name, "place": str(p), "residual": str(lhs)})
    return bad


# cohom


def _cohom_instances(rng: random.Random, genus: int, count: int):
    names = catalog.BY_GENUS[genus]
    out = []
    while len(out) < count:
        name = names[len(out) % len(names)]
        curve = catalog.curve(name)
        marks = catalog.unramified_points(name)
        if not marks:
            names = [m for m in names if catalog.unramified_points(m)]
            continue
        a = rng.choice(marks)
        d = random_divisor(rng, name, 2 * genus + 2)
        if d[a] != 0 or d.degree < -3:
            continue
        out.append((name, curve, d, a))
    return out


@prop("cohom", 10, 30)
def tail_quotient_dimension_matches_h1(rng, n):
    bad = []
    for g in (1, 2, 3):
        for name, curve, d, a in _cohom_instances(rng, g, n):
            depth = 2 * g + 2
            q = tail_quotient_dimension(curve, d, a, depth)
            h = h1_dimension(curve, d)
            if q != h:
                bad.append({"curve": name, "divisor": repr(d), "place": str(a), "quotient": q, "h1": h})
    return bad


@prop("cohom", 10, 30)
def pairing_nondegenerate(rng, n):
    bad = []
    for g in (1, 2, 3):
        for name, curve, d, a in _cohom_instances(rng, g, n):
            depth = 2 * g + 2
            tails = tail_quotient_basis(curve, d, a, depth)
            duals = dual_basis(curve, d)
            h = len(duals)
            rank = pairing_matrix(tails, duals).rank() if tails and duals else 0
            if rank != h or len(tails) != h:
                bad.append({"curve": name, "divisor": repr(d), "rank": rank, "h1": h})
    return bad


@prop("cohom", 10, 30)
def zero_class_matches_lifting_oracle(rng, n):
    bad = []
    for g in (1, 2, 3):
        for name, curve, d, a in _cohom_instances(rng, g, n):
            depth = rng.randint(1, 2 * g + 2)
            if rng.random() < 0.5:
                tail = LaurentSeries.from_terms({-k: _q(rng) for k in range(1, depth + 1)}, 0)
            else:
                basis = riemann_roch_space(curve, d + Divisor({a: depth}))
                s = curve.constant(0)
                for b in basis:
                    s = s + b * _q(rng)
                tail = principal_part(s, a) if not s.is_zero() else LaurentSeries.zero(0)
            c = TailClass(curve, d, a, tail)
            if is_zero_class(c) != is_zero_class(c, oracle=True):
                bad.append({"curve": name, "divisor": repr(d), "tail": str(tail)})
    return bad


# petri


def _petri_matrix(sections, duals) -> ExactMatrix:
    g = sections[0].curve.genus
    cols = [_holomorphic_coordinates(s * eta.h) for s in sections for eta in duals]
    return ExactMatrix.from_columns(cols, rows=g)


def _random_invertible(rng: random.Random, n: int) -> list[list[Fraction]]:
    while True:
        m = [[_q(rng, -3, 3, 2) for _ in range(n)] for _ in range(n)]
        if ExactMatrix(m, n).rank() == n:
            return m


def _petri_instances():
    out = []
    for name in ("g3_x7mxp1", "g3_x7m1", "g4_x9mxp1", "g2_x5mxp1", "g1_x3p1"):
        curve = catalog.curve(name)
        inf = curve.infinity
        g = curve.genus
        for mult in (2, 3, 2 * g - 2):
            d = Divisor({inf: mult})
            if riemann_roch_space(curve, d) and riemann_roch_space(curve, curve.canonical_divisor() - d):
                out.append((name, d))
    return out


@prop("petri", 6)
def mu0_rank_basis_invariance(rng, n):
    bad = []
    inst = _petri_instances()
    for i in range(n):
        name, d = inst[i % len(inst)]
        pm = build_mu0(catalog.curve(name), d)
        p = _random_invertible(rng, len(pm.sections))
        q = _random_invertible(rng, len(pm.duals))
        curve = pm.curve
        new_s = [sum((pm.sections[k] * p[i2][k] for k in range(len(pm.sections))), curve.constant(0)) for i2 in range(len(p))]
        new_e = [
            CurveDifferential(sum((pm.duals[k].h * q[j][k] for k in range(len(pm.duals))), curve.constant(0)))
            for j in range(len(q))
        ]
        if _petri_matrix(new_s, new_e).rank() != pm.rank:
            bad.append({"curve": name, "divisor": repr(d)})
    return bad


@prop("petri", 4)
def bpf_pencil_trick(rng, n):
    bad = []
    names = ["g3_x7mxp1", "g3_x7m1", "g3_x7p1", "g4_x9mxp1"]
    for i in range(n):
        name = names[i % len(names)]
        curve = catalog.curve(name)
        pts = catalog.unramified_points(name)
        if pts and rng.random() < 0.5:
            p = rng.choice(pts)
            d = Divisor({p: 1, p.conjugate(): 1})
        else:
            d = Divisor({curve.infinity: 2})
        pm = build_mu0(curve, d)
        expected = len(riemann_roch_space(curve, curve.canonical_divisor() - d * 2))
        if len(pm.kernel) != expected or pm.base_point_free is False:
            bad.append({"curve": name, "divisor": repr(d), "kernel": len(pm.kernel), "expected": expected})
    return bad


@prop("petri", 6)
def mu_tower_chart_independence(rng, n):
    bad = []
    names = ["g3_x7mxp1", "g4_x9mxp1"]
    for i in range(n):
        name = names[i % len(names)]
        curve = catalog.curve(name)
        pm = build_mu0(curve, Divisor({curve.infinity: 2}))
        kappa = PetriTensor.zero(len(pm.sections), len(pm.duals))
        for k in pm.kernel:
            kappa = kappa + k.scale(_q(rng, -3, 3, 2))
        value = mu_next(pm, kappa).value
        p1, p2 = rng.sample(list(catalog.unramified_points(name)), 2)
        for p in (p1, p2):
            chart = [_q(rng, -2, 2, 2) for _ in range(3)]
            local = mu_value_in_chart(pm, kappa, 1, p, chart, 6)
            glob = global_value_in_chart(value, p, chart, 6)
            if not local.agrees_with(glob):
                bad.append({"curve": name, "place": str(p), "local": str(local), "global": str(glob)})
    return bad


@prop("petri", 6)
def wronskian_tower_consistency(rng, n):
    """For a base-point-free system the Wronskian drops rank only at its
    finitely many inflection points (at most (r+1)d + (r+1)r(g-1) of them),
    so it has full rank at all remaining rational points."""
    bad = []
    names = ["g1_x3p1", "g2_x5mxp1", "g3_x7mxp1", "g4_x9mxp1"]
    for i in range(n):
        name = names[i % len(names)]
        curve = catalog.curve(name)
        d = Divisor({curve.infinity: rng.choice([2, 2 * curve.genus, 2 * curve.genus + 1])})
        pm = build_mu0(curve, d)
        if not pm.base_point_free:
            continue
        h0 = len(pm.sections)
        r, deg = h0 - 1, d.degree
        bound = (r + 1) * deg + (r + 1) * r * (curve.genus - 1)
        pts = catalog.unramified_points(name)
        deficient = [p for p in pts if wronskian_matrix(pm.sections, p, h0).rank() < h0]
        if len(deficient) > bound or len(deficient) == len(pts):
            bad.append({"curve": name, "divisor": repr(d), "deficient": [str(p) for p in deficient], "bound": bound})
    return bad


@prop("petri", 10)
def petri_low_genus_injective(rng, n):
    bad = []
    names = ["g1_x3p1", "g1_x3mx", "g2_x5mxp1", "g2_x5m1"]
    for i in range(n):
        name = names[i % len(names)]
        curve = catalog.curve(name)
        d = random_divisor(rng, name)
        if i % 4 == 2:
            d = curve.canonical_divisor()
        if not riemann_roch_space(curve, d):
            continue
        pm = build_mu0(curve, d)
        if pm.kernel:
            bad.append({"curve": name, "divisor": repr(d), "kernel": len(pm.kernel)})
    return bad


# deform


def random_lift(rng: random.Random, curve: HyperellipticCurve, place, orders: int = 2, depth: int = 2, pure=False) -> SchifferLift:
    beta, lift_a = {}, {}
    for j in range(1, orders + 1):
        if j == 1 or not pure:
            beta[j] = {k: _q(rng, -3, 3, 3) for k in range(-rng.randint(1, depth), rng.randint(0, 2))}
        if rng.random() < 0.7:
            lift_a[j] = {k: _q(rng, -3, 3, 3) for k in range(-rng.randint(0, depth), rng.randint(0, 2))}
    return SchifferLift.from_terms(place, beta, lift_a, curve)


@prop("deform", 10)
def exp_lie_group_law(rng, n):
    bad = []
    curve = catalog.curve("g1_x3p1")
    place = curve.place(2, 3)
    for _ in range(n):
        lift = random_lift(rng, curve, place, orders=3)
        order = rng.randint(2, 5)
        f = DeformationSeries([_series(rng, -2, 2, 30) for _ in range(order)], order)
        back = exp_lie(lift, exp_lie(lift, f, +1), -1)
        if not all(a.agrees_with(b) for a, b in zip(back, f)):
            bad.append({"lift": repr(lift)})
    return bad


@prop("deform", 5)
def regular_gauge_preserves_regularity(rng, n):
    """Transporting local data by a gauge regular at the marked place keeps
    regular data regular and singular data singular."""
    bad = []
    curve = catalog.curve("g1_x3p1")
    place = curve.place(2, 3)
    b0 = Divisor({curve.infinity: 2})
    for _ in range(n):
        lift = random_lift(rng, curve, place, orders=2, depth=1)
        gauge = SchifferLift.from_terms(
            place,
            {1: {k: _q(rng) for k in range(0, 3)}, 2: {0: _q(rng)}},
            {1: {k: _q(rng) for k in range(0, 2)}},
            curve,
        )
        s0 = riemann_roch_space(curve, b0)[1]
        res = extend_section(lift, s0, b0, 3)
        local = DeformationSeries(res.local_data, 3)
        moved = exp_lie(gauge, local, +1)
        if any(c.lead < 0 for c in moved if not c.is_zero()):
            bad.append({"case": "regular became singular", "lift": repr(lift)})
        sing = DeformationSeries([LaurentSeries.monomial(-1, 20), LaurentSeries.zero(20), LaurentSeries.zero(20)], 3)
        moved = exp_lie(gauge, sing, +1)
        if moved[0].is_zero() or moved[0].lead >= 0:
            bad.append({"case": "singular became regular", "lift": repr(lift)})
    return bad


def _genus3_setup(name: str = "g3_x7mxp1"):
    curve = catalog.curve(name)
    d = Divisor({curve.infinity: 2})
    return curve, d, build_mu0(curve, d)


@prop("deform", 8)
def lift_covariance(rng, n):
    bad = []
    curve, d, pm = _genus3_setup()
    pts = catalog.unramified_points("g3_x7mxp1")
    for _ in range(n):
        place = rng.choice(pts)
        lift = random_lift(rng, curve, place, orders=1, depth=3)
        delta = LaurentPolynomial({k: _q(rng) for k in range(-rng.randint(1, 3), 1)})
        shifted = lift.with_lift_a([lift.a(1) + delta])
        for s0 in pm.sections:
            t1 = first_order_obstruction(lift, s0, d)
            t2 = first_order_obstruction(shifted, s0, d)
            loc = s0.expand(place, 8)
            expected = delta.times_series(loc).principal_part()
            if not (t2.tail - t1.tail).agrees_with(expected):
                bad.append({"section": str(s0), "delta": repr(delta)})
        kappa = pm.kernel[0]
        if obstruction_pairing(lift, kappa, pm) != obstruction_pairing(shifted, kappa, pm):
            bad.append({"pairing_changed": repr(delta)})
    return bad


@prop("deform", 5, 12)
def extend_kernel_agreement(rng, n):
    bad = []
    curve = catalog.curve("g1_x3p1")
    b0 = Divisor({curve.infinity: 2})
    pts = catalog.unramified_points("g1_x3p1")
    for _ in range(n):
        place = rng.choice(pts)
        lift = random_lift(rng, curve, place, orders=2, depth=1)
        n_t = 4
        dims = kernel_model(lift, b0, 0, n_t)
        basis = riemann_roch_space(curve, b0)
        extended = sum(1 for s in basis if extend_section(lift, s, b0, n_t).achieved_order == n_t - 1)
        if dims != [len(basis)] * n_t or extended != len(basis):
            bad.append({"genus": 1, "lift": repr(lift), "dims": dims, "extended": extended})
    g3, d3, _ = _genus3_setup()
    pts3 = catalog.unramified_points("g3_x7mxp1")
    for _ in range(n):
        place = rng.choice(pts3)
        lift = random_lift(rng, g3, place, orders=1, depth=2)
        dims = kernel_model(lift, d3, 0, 2)
        first = first_order_extendable_dimension(lift, d3)
        first_oracle = first_order_extendable_dimension(lift, d3, oracle=True)
        if dims[1] != first or first != first_oracle:
            bad.append({"genus": 3, "lift": repr(lift), "dims": dims, "pairing": first, "oracle": first_oracle})
    return bad


@prop("deform", 8)
def obstruction_duality(rng, n):
    bad = []
    for i in range(n):
        name = ("g3_x7mxp1", "g4_x9mxp1")[i % 2]
        curve, d, pm = _genus3_setup(name)
        place = rng.choice(catalog.unramified_points(name))
        lift = random_lift(rng, curve, place, orders=1, depth=3)
        kappa = PetriTensor.zero(len(pm.sections), len(pm.duals))
        for k in pm.kernel:
            kappa = kappa + k.scale(_q(rng, -3, 3, 2))
        a = obstruction_pairing(lift, kappa, pm)
        b = contraction_pairing(lift, kappa, pm)
        if a != b:
            bad.append({"curve": name, "lift": repr(lift), "residues": str(a), "contraction": str(b)})
    return bad


@prop("deform", 6)
def symbol_matches_expansion(rng, n):
    bad = []
    curve = catalog.curve("g1_x3p1")
    place = curve.place(2, 3)
    for _ in range(n):
        lift = random_lift(rng, curve, place, orders=1, depth=2, pure=True)
        for order in range(5):
            exact = symbol_of_order(lift, order)
            brute = symbol_by_expansion(lift, order)
            if not exact.to_series(brute.trunc).agrees_with(brute):
                bad.append({"lift": repr(lift), "n": order})
    return bad


@prop("deform", 100)
def operator_identities(rng, n):
    bad = []
    per_dim = max(1, n // 4)
    for dim in (2, 3, 4, 5):
        report = operator_identity_check(7, dim, per_dim, seed=rng.getrandbits(64))
        bad.extend(dict(c, dim=dim) for c in report["counterexamples"])
    return bad


def run_property(p: Property, seed: int, trials: int | None) -> dict:
    n = p.default_trials if trials is None else max(1, min(trials, p.max_trials))
    rng = random.Random(f"{seed}:{p.name}")
    try:
        failures = p.fn(rng, n)
        error = None
    except Exception as exc:  # reported, never swallowed silently
        failures = []
        error = f"{type(exc).__name__}: {exc}"
    out = {"name": p.name, "suite": p.suite, "trials": n, "passed": not failures and error is None}
    if failures:
        out["counterexample"] = failures[0]
        out["failures"] = len(failures)
    if error:
        out["error"] = error
    return out


def run_suite(suite: str, seed: int = 0, trials: int | None = None) -> list[dict]:
    if suite != "all" and suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    chosen = [p for p in PROPERTIES if suite == "all" or p.suite == suite]
    results = [run_property(p, seed, trials) for p in chosen]
    if suite == "all":
        from .fixtures_runner import run_fixtures

        results.extend(run_fixtures())
    return results
