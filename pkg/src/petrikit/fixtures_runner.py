"""Execute the shipped fixture cases (``fixtures/cases/*.json``).

A case names an operation, its inputs (curve, divisor and Schiffer files
are referenced relative to the fixtures directory) and the expected
outcome.  Every case yields one pass/fail record.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Any, Callable

from . import cohom, curve as curve_mod, deform, petri
from .curve import CurveDifferential, CurveFunction, Divisor
from .exact import ExactMatrix, LaurentSeries, Polynomial, RationalFunction, format_rational, parse_rational
from .io import curve_from_json, divisor_from_json, load_json, place_from_json, schiffer_from_json

FIXTURE_DIR = Path(__file__).resolve().parent / "fixtures"


def _q(text) -> Fraction:
    return parse_rational(str(text))


def _series(obj) -> LaurentSeries:
    return LaurentSeries(obj["lead"], [_q(c) for c in obj["coeffs"]], obj["trunc"])


def _series_repr(s: LaurentSeries) -> dict:
    return {"terms": {str(k): format_rational(v) for k, v in sorted(s.terms().items())}, "trunc": s.trunc}


class Context:
    def __init__(self, case: dict):
        self.case = case
        self.args = case.get("args", {})

    def curve(self, key="curve"):
        return curve_from_json(load_json(FIXTURE_DIR / self.args[key]))

    def divisor(self, c, key="divisor"):
        return divisor_from_json(c, load_json(FIXTURE_DIR / self.args[key]))

    def lift(self, c, key="schiffer"):
        return schiffer_from_json(c, load_json(FIXTURE_DIR / self.args[key]))

    def place(self, c, key="place"):
        return place_from_json(c, self.args[key])

    def function(self, c, key="function") -> CurveFunction:
        obj = self.args[key]
        den = Polynomial([_q(v) for v in obj.get("den", ["1"])])
        a = RationalFunction(Polynomial([_q(v) for v in obj.get("a", [])]), den)
        b = RationalFunction(Polynomial([_q(v) for v in obj.get("b", [])]), den)
        return CurveFunction(c, a, b)


OPS: dict[str, Callable[[Context], Any]] = {}


def op(name):
    def wrap(fn):
        OPS[name] = fn
        return fn

    return wrap


def _matrix(rows) -> ExactMatrix:
    return ExactMatrix([[_q(v) for v in r] for r in rows], len(rows[0]) if rows else 0)


@op("matrix_kernel")
def _(ctx):
    m = _matrix(ctx.args["matrix"])
    return {"kernel": [[format_rational(v) for v in vec] for vec in m.kernel()]}


@op("series_multiply")
def _(ctx):
    return _series_repr(_series(ctx.args["a"]) * _series(ctx.args["b"]))


@op("series_residue")
def _(ctx):
    return {"residue": format_rational(_series(ctx.args["a"]).residue())}


@op("valuation")
def _(ctx):
    c = ctx.curve()
    return {"valuation": curve_mod.valuation(ctx.function(c), ctx.place(c))}


@op("local_expansion")
def _(ctx):
    c = ctx.curve()
    return _series_repr(curve_mod.local_expansion(ctx.function(c), ctx.place(c), ctx.args["order"]))


@op("riemann_roch_space")
def _(ctx):
    c = ctx.curve()
    basis = curve_mod.riemann_roch_space(c, ctx.divisor(c))
    return {"dimension": len(basis), "basis": [str(s) for s in basis]}


@op("canonical_basis")
def _(ctx):
    c = ctx.curve()
    basis = curve_mod.canonical_basis(c)
    return {"count": len(basis), "basis": [str(w) for w in basis]}


@op("residue")
def _(ctx):
    c = ctx.curve()
    omega = CurveDifferential(ctx.function(c))
    places = [place_from_json(c, p) for p in ctx.args["places"]]
    values = [curve_mod.residue(omega, p) for p in places]
    return {"residues": [format_rational(v) for v in values], "sum": format_rational(sum(values))}


@op("h1_dimension")
def _(ctx):
    c = ctx.curve()
    return {"h1": cohom.h1_dimension(c, ctx.divisor(c))}


def _tail(ctx, c):
    d = ctx.divisor(c)
    a = ctx.place(c)
    if "tail" in ctx.args:
        terms = {int(k): _q(v) for k, v in ctx.args["tail"]}
        return cohom.TailClass.from_terms(c, d, a, terms)
    # principal part of a combination of L(D + depth*A) basis elements
    depth = ctx.args["lift_depth"]
    basis = curve_mod.riemann_roch_space(c, d + Divisor({a: depth}))
    s = c.constant(0)
    for k, coeff in enumerate(ctx.args["combination"]):
        s = s + basis[k] * _q(coeff)
    return cohom.TailClass(c, d, a, curve_mod.principal_part(s, a))


@op("pair_with_dual")
def _(ctx):
    c = ctx.curve()
    t = _tail(ctx, c)
    eta = CurveDifferential(ctx.function(c, "eta"))
    return {"value": format_rational(cohom.pair_with_dual(t, eta))}


@op("is_zero_class")
def _(ctx):
    c = ctx.curve()
    t = _tail(ctx, c)
    return {"zero": cohom.is_zero_class(t), "oracle": cohom.is_zero_class(t, oracle=True)}


@op("build_mu0")
def _(ctx):
    c = ctx.curve()
    pm = petri.build_mu0(c, ctx.divisor(c))
    return {
        "domain_dim": pm.domain_dim,
        "target_dim": c.genus,
        "kernel_dim": len(pm.kernel),
        "kernel": [k.label() for k in pm.kernel],
        "injective": pm.is_injective,
    }


@op("mu_next")
def _(ctx):
    c = ctx.curve()
    pm = petri.build_mu0(c, ctx.divisor(c))
    if ctx.args.get("kappa") == "zero":
        kappa = petri.PetriTensor.zero(len(pm.sections), len(pm.duals))
    else:
        kappa = pm.kernel[ctx.args.get("kernel_index", 0)]
    res = petri.mu_next(pm, kappa)
    return {"level": res.level, "value": str(res.value), "nonzero": res.nonzero, "holomorphic": res.value.is_holomorphic()}


@op("tower")
def _(ctx):
    c = ctx.curve()
    pm = petri.build_mu0(c, ctx.divisor(c))
    levels = petri.tower(pm, ctx.args.get("depth", 3))
    return {"levels": len(levels)}


@op("wronskian_matrix")
def _(ctx):
    c = ctx.curve()
    sections = [
        CurveFunction(c, Polynomial([_q(v) for v in coeffs])) for coeffs in ctx.args["sections"]
    ]
    w = petri.wronskian_matrix(sections, ctx.place(c), ctx.args["depth"])
    return {"matrix": [[format_rational(v) for v in row] for row in w.entries], "rank": w.rank()}


@op("brill_noether_rho")
def _(ctx):
    a = ctx.args
    return {"rho": petri.brill_noether_rho(a["g"], a["r"], a["d"])}


def _local_data(ctx) -> "deform.DeformationSeries":
    from .exact import DeformationSeries

    cs = [_series(s) for s in ctx.args["f"]]
    return DeformationSeries(cs, len(cs))


@op("exp_lie")
def _(ctx):
    c = ctx.curve()
    lift = ctx.lift(c)
    f = _local_data(ctx)
    mode = ctx.args["mode"]
    if mode == "identity":
        out = deform.exp_lie(lift, f, +1)
        return {"unchanged": all(a.agrees_with(b) for a, b in zip(out, f))}
    if mode == "inverse":
        out = deform.exp_lie(lift, deform.exp_lie(lift, f, +1), -1)
        return {"unchanged": all(a.agrees_with(b) for a, b in zip(out, f))}
    # second-order coefficient against 1/2 b (b f0')'
    out = deform.exp_lie(lift, f, +1)
    b = lift.b(1)
    f0 = f[0]
    expected = b.times_series(b.times_series(f0.derivative()).derivative()).scale(Fraction(1, 2))
    return {"t2_matches": out[2].agrees_with(expected), "t2": _series_repr(out[2])}


@op("first_order_obstruction")
def _(ctx):
    c = ctx.curve()
    lift = ctx.lift(c)
    d = ctx.divisor(c)
    s0 = ctx.function(c, "s0")
    t = deform.first_order_obstruction(lift, s0, d)
    return {"tail": _series_repr(t.tail), "zero_class": cohom.is_zero_class(t), "zero_tail": t.is_zero_tail()}


@op("extend_section")
def _(ctx):
    c = ctx.curve()
    lift = ctx.lift(c)
    d = ctx.divisor(c)
    out = []
    for s0 in curve_mod.riemann_roch_space(c, d):
        r = deform.extend_section(lift, s0, d, ctx.args["N_t"])
        out.append(
            {
                "achieved_order": r.achieved_order,
                "obstructed": r.obstruction is not None,
                "corrections_zero": all(g.is_zero() for g in r.corrections),
            }
        )
    return {"sections": out}


@op("joint_first_order")
def _(ctx):
    c = ctx.curve()
    lift = ctx.lift(c)
    d = ctx.divisor(c)
    j = deform.joint_first_order_system(lift, d, ctx.args["a_depth"])
    jo = deform.joint_first_order_system(lift, d, ctx.args["a_depth"], oracle=True)
    return {"feasible": j.feasible, "oracle_feasible": jo.feasible}


@op("kernel_model")
def _(ctx):
    c = ctx.curve()
    lift = ctx.lift(c)
    d = ctx.divisor(c)
    return {"dims": deform.kernel_model(lift, d, ctx.args.get("N_pole", 0), ctx.args["N_t"])}


@op("obstruction_pairing")
def _(ctx):
    c = ctx.curve()
    lift = ctx.lift(c)
    pm = petri.build_mu0(c, ctx.divisor(c))
    if ctx.args.get("kappa") == "zero":
        kappa = petri.PetriTensor.zero(len(pm.sections), len(pm.duals))
    else:
        kappa = pm.kernel[0]
    a = deform.obstruction_pairing(lift, kappa, pm)
    b = deform.contraction_pairing(lift, kappa, pm)
    return {"value": format_rational(a), "contraction": format_rational(b)}


@op("symbol_of_order")
def _(ctx):
    c = ctx.curve()
    lift = ctx.lift(c)
    n = ctx.args["n"]
    exact = deform.symbol_of_order(lift, n)
    brute = deform.symbol_by_expansion(lift, n)
    power = (lift.b(1).scale(-1) ** (n + 1)).scale(Fraction(1, _factorial(n + 1)))
    return {
        "symbol": {str(k): format_rational(v) for k, v in exact.terms},
        "matches_expansion": exact.to_series(brute.trunc).agrees_with(brute),
        "pure_power": exact == power,
    }


def _factorial(n: int) -> int:
    from math import factorial

    return factorial(n)


@op("binomial_identity")
def _(ctx):
    d = _matrix(ctx.args["D"])
    b = _matrix(ctx.args["B"])
    return {"holds": deform.binomial_identity_holds(d, b, ctx.args["n"])}


@op("operator_identity_check")
def _(ctx):
    a = ctx.args
    rep = deform.operator_identity_check(a["n_max"], a["dim"], a["trials"], a.get("seed", 0))
    return {"passed": rep["passed"], "counterexamples": len(rep["counterexamples"])}


@op("cli")
def _(ctx):
    import io as _io
    import json
    from contextlib import redirect_stderr, redirect_stdout

    from .cli import main

    argv = [str(a) for a in ctx.args["argv"]]
    argv = [str(FIXTURE_DIR / a[len("@") :]) if a.startswith("@") else a for a in argv]
    out, err = _io.StringIO(), _io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(argv)
    payload = json.loads(out.getvalue()) if out.getvalue().strip() else {}
    res = payload.get("results", {})
    picked = {k: _dig(res, k) for k in ctx.case["expect"] if k != "exit_code"}
    picked["exit_code"] = code
    return picked


def _dig(obj, path: str):
    for part in path.split("."):
        if isinstance(obj, list):
            obj = obj[int(part)]
        else:
            obj = obj.get(part) if isinstance(obj, dict) else None
    return obj


@op("verify_suite_contents")
def _(ctx):
    from .verify import PROPERTIES, run_property

    suite = ctx.args["suite"]
    names = sorted(p.name for p in PROPERTIES if p.suite == suite)
    out = {"contains": all(n in names for n in ctx.args["required"])}
    if ctx.args.get("run_trials"):
        results = [run_property(p, 0, ctx.args["run_trials"]) for p in PROPERTIES if p.suite == suite]
        out["all_pass"] = all(r["passed"] for r in results)
    return out


def _matches(expected, actual) -> bool:
    if isinstance(expected, dict):
        return isinstance(actual, dict) and all(k in actual and _matches(v, actual[k]) for k, v in expected.items())
    if isinstance(expected, list):
        return isinstance(actual, list) and len(expected) == len(actual) and all(
            _matches(e, a) for e, a in zip(expected, actual)
        )
    return expected == actual


def run_case(path: Path) -> dict:
    case = load_json(path)
    name = f"fixture:{path.stem}"
    try:
        actual = OPS[case["op"]](Context(case))
    except Exception as exc:
        return {"name": name, "suite": "fixtures", "passed": False, "error": f"{type(exc).__name__}: {exc}"}
    ok = _matches(case["expect"], actual)
    out = {"name": name, "suite": "fixtures", "passed": ok}
    if not ok:
        out["counterexample"] = {"expected": case["expect"], "actual": actual}
    return out


def run_fixtures(directory: Path | None = None) -> list[dict]:
    directory = directory or FIXTURE_DIR / "cases"
    return [run_case(p) for p in sorted(directory.glob("*.json"))]
