"""JSON wire formats: curves, divisors, Schiffer data, and exact-string output."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .curve import CurveFunction, Divisor, HyperellipticCurve, Place
from .deform import LaurentPolynomial, SchifferLift
from .exact import LaurentSeries, Polynomial, RationalFunction, format_rational, parse_rational


class InputError(ValueError):
    """Malformed or invalid input file."""


def _rational(value: Any, where: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise InputError(f"{where}: expected an exact rational string, got {value!r}")
    try:
        return parse_rational(str(value))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{where}: {exc}") from None


def _int(value: Any, where: str) -> int:
    if isinstance(value, bool):
        raise InputError(f"{where}: expected an integer")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value)
        except ValueError:
            pass
    raise InputError(f"{where}: expected an integer, got {value!r}")


def load_json(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def curve_from_json(obj: Any) -> HyperellipticCurve:
    if not isinstance(obj, dict) or obj.get("model") != "hyperelliptic-odd":
        raise InputError('curve: expected {"model": "hyperelliptic-odd", "f": [...]}')
    coeffs = obj.get("f")
    if not isinstance(coeffs, list) or not coeffs:
        raise InputError("curve: f must be a nonempty coefficient list")
    f = Polynomial([_rational(c, f"curve f[{i}]") for i, c in enumerate(coeffs)])
    try:
        return HyperellipticCurve(f)
    except ValueError as exc:
        raise InputError(f"curve: {exc}") from None


def curve_to_json(curve: HyperellipticCurve) -> dict:
    return {"model": "hyperelliptic-odd", "f": [format_rational(c) for c in curve.f.coeffs]}


def place_from_json(curve: HyperellipticCurve, obj: Any, where: str = "place") -> Place:
    if not isinstance(obj, dict):
        raise InputError(f"{where}: expected an object")
    if obj.get("place") == "infinity":
        return curve.infinity
    if "x" not in obj or "y" not in obj:
        raise InputError(f'{where}: expected {{"x", "y"}} or {{"place": "infinity"}}')
    x, y = _rational(obj["x"], f"{where}.x"), _rational(obj["y"], f"{where}.y")
    try:
        return curve.place(x, y)
    except ValueError as exc:
        raise InputError(f"{where}: {exc}") from None


def place_to_json(p: Place) -> dict:
    if p.is_infinity:
        return {"place": "infinity"}
    return {"x": format_rational(p.x), "y": format_rational(p.y)}


def divisor_from_json(curve: HyperellipticCurve, obj: Any) -> Divisor:
    if not isinstance(obj, dict) or not isinstance(obj.get("support"), list):
        raise InputError('divisor: expected {"support": [...]}')
    items = []
    for i, entry in enumerate(obj["support"]):
        p = place_from_json(curve, entry, f"divisor support[{i}]")
        if "mult" not in entry:
            raise InputError(f"divisor support[{i}]: missing mult")
        items.append((p, _int(entry["mult"], f"divisor support[{i}].mult")))
    return Divisor(items)


def divisor_to_json(d: Divisor) -> dict:
    return {"support": [dict(place_to_json(p), mult=m) for p, m in d.items()]}


def _laurent_pairs(obj: Any, where: str) -> LaurentPolynomial:
    if not isinstance(obj, list):
        raise InputError(f"{where}: expected a list of [exponent, value] pairs")
    terms = []
    for i, pair in enumerate(obj):
        if not isinstance(pair, list) or len(pair) != 2:
            raise InputError(f"{where}[{i}]: expected [exponent, value]")
        terms.append((_int(pair[0], f"{where}[{i}] exponent"), _rational(pair[1], f"{where}[{i}] value")))
    return LaurentPolynomial(terms)


def _graded(obj: Any, where: str) -> dict[int, LaurentPolynomial]:
    if obj is None:
        return {}
    if not isinstance(obj, list):
        raise InputError(f"{where}: expected a list")
    out: dict[int, LaurentPolynomial] = {}
    for i, entry in enumerate(obj):
        if not isinstance(entry, dict) or "t_order" not in entry or "tail" not in entry:
            raise InputError(f'{where}[{i}]: expected {{"t_order", "tail"}}')
        j = _int(entry["t_order"], f"{where}[{i}].t_order")
        if j < 1:
            raise InputError(f"{where}[{i}]: t_order must be >= 1")
        if j in out:
            raise InputError(f"{where}[{i}]: duplicate t_order {j}")
        out[j] = _laurent_pairs(entry["tail"], f"{where}[{i}].tail")
    return out


def schiffer_from_json(curve: HyperellipticCurve, obj: Any) -> SchifferLift:
    if not isinstance(obj, dict) or "place" not in obj:
        raise InputError('schiffer: expected {"place": ..., "beta": [...], "lift_a": [...]}')
    p = place_from_json(curve, obj["place"], "schiffer place")
    if p.is_infinity or p.ramified:
        raise InputError("schiffer place: marked place must be affine and unramified")
    beta = _graded(obj.get("beta"), "schiffer beta")
    lift_a = _graded(obj.get("lift_a"), "schiffer lift_a")
    n = max([0] + list(beta) + list(lift_a))
    zero = LaurentPolynomial()
    return SchifferLift(
        p,
        tuple(beta.get(j, zero) for j in range(1, n + 1)),
        tuple(lift_a.get(j, zero) for j in range(1, n + 1)),
        curve,
    )


def _laurent_poly_to_json(p: LaurentPolynomial) -> list:
    return [[str(k), format_rational(c)] for k, c in p.terms]


def schiffer_to_json(lift: SchifferLift) -> dict:
    def graded(get):
        out = []
        for j in range(1, lift.max_order + 1):
            p = get(j)
            if not p.is_zero():
                out.append({"t_order": j, "tail": _laurent_poly_to_json(p)})
        return out

    return {"place": place_to_json(lift.marked_place), "beta": graded(lift.b), "lift_a": graded(lift.a)}


def rational_function_to_json(r: RationalFunction) -> dict:
    return {"num": [format_rational(c) for c in r.num.coeffs], "den": [format_rational(c) for c in r.den.coeffs]}


def function_to_json(s: CurveFunction) -> dict:
    return {"a": rational_function_to_json(s.a), "b": rational_function_to_json(s.b), "text": str(s)}


def series_to_json(s: LaurentSeries) -> dict:
    return {
        "terms": [[str(k), format_rational(c)] for k, c in sorted(s.terms().items())],
        "trunc": s.trunc,
        "text": str(s),
    }


def laurent_polynomial_to_json(p: LaurentPolynomial) -> dict:
    return {"terms": _laurent_poly_to_json(p)}


def dumps(obj: Any) -> str:
    """Canonical JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
