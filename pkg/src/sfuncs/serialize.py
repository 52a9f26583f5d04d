"""JSON wire formats with decimal-string integers throughout.

Field objects carry the defining polynomial low degree to high:
{"minpoly": ["-1", "-2", "1", "1"]}.  A series object is
{"field": <field object or path>, "order": N, "coeffs": [...]} where
coeffs[k-1] is the coefficient of z**k, each coefficient a list of
[numerator, denominator] string pairs, one per power-basis coordinate.
Multivariate series add "nvars" and key their coefficients by exponent
vectors "k1,k2,...".  Native JSON numbers are never used for values that
can exceed machine width.
"""
from __future__ import annotations

import json
import os
from fractions import Fraction

from .errors import SfuncError
from .mseries import MSeries
from .numfield import FieldElem, NumberField, make_field
from .series import Series


class BadFile(SfuncError):
    """Input file missing required structure."""


def _rational(x) -> Fraction:
    if isinstance(x, (list, tuple)):
        if len(x) != 2:
            raise BadFile(f"rational pair must have two entries, got {x!r}")
        return Fraction(int(x[0]), int(x[1]))
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, int):
        return Fraction(x)
    raise BadFile(f"cannot read {x!r} as a rational")


def field_to_obj(field: NumberField) -> dict:
    return {"minpoly": [str(c) for c in field.minpoly]}


def field_from_obj(obj) -> NumberField:
    if isinstance(obj, dict):
        if "minpoly" not in obj:
            raise BadFile("field object needs a 'minpoly' key")
        obj = obj["minpoly"]
    if not isinstance(obj, list):
        raise BadFile("field spec must be a list of coefficients")
    return make_field([int(c) for c in obj])


def elem_to_obj(e: FieldElem) -> list:
    return [[str(c.numerator), str(c.denominator)] for c in e.coords]


def elem_from_obj(field: NumberField, obj) -> FieldElem:
    if isinstance(obj, dict) and "coords" in obj:
        obj = obj["coords"]
    if not isinstance(obj, list):
        raise BadFile("element must be a list of coordinates")
    coords = [_rational(c) for c in obj]
    if len(coords) != field.degree:
        raise BadFile(
            f"element has {len(coords)} coordinates, field degree is {field.degree}"
        )
    return field.elem(coords)


def _resolve_field(obj, base_dir: str | None) -> NumberField:
    if isinstance(obj, str):
        path = obj if os.path.isabs(obj) or base_dir is None else os.path.join(base_dir, obj)
        with open(path) as fh:
            obj = json.load(fh)
    return field_from_obj(obj)


def series_to_obj(v: Series, field_ref=None) -> dict:
    """Series as a JSON object; field embedded unless field_ref names a path."""
    return {
        "field": field_ref if field_ref is not None else field_to_obj(v.field),
        "order": v.order,
        "coeffs": [elem_to_obj(v.coeff(k)) for k in range(1, v.order + 1)],
    }


def series_from_obj(obj, base_dir: str | None = None) -> Series:
    if "field" not in obj or "order" not in obj or "coeffs" not in obj:
        raise BadFile("series object needs 'field', 'order', and 'coeffs'")
    field = _resolve_field(obj["field"], base_dir)
    order = int(obj["order"])
    coeffs = obj["coeffs"]
    if len(coeffs) != order:
        raise BadFile(f"series lists {len(coeffs)} coefficients for order {order}")
    return Series.from_coeffs(field, order, [elem_from_obj(field, c) for c in coeffs])


def mseries_to_obj(v: MSeries, field_ref=None) -> dict:
    terms = {
        ",".join(str(e) for e in key): elem_to_obj(c) for key, c in v.terms
    }
    return {
        "field": field_ref if field_ref is not None else field_to_obj(v.field),
        "nvars": v.nvars,
        "order": v.order,
        "coeffs": terms,
    }


def mseries_from_obj(obj, base_dir: str | None = None) -> MSeries:
    for need in ("field", "nvars", "order", "coeffs"):
        if need not in obj:
            raise BadFile(f"multivariate series object needs '{need}'")
    field = _resolve_field(obj["field"], base_dir)
    nvars = int(obj["nvars"])
    order = int(obj["order"])
    terms = {}
    for key, c in obj["coeffs"].items():
        expo = tuple(int(e) for e in key.split(","))
        if len(expo) != nvars:
            raise BadFile(f"exponent key '{key}' does not have {nvars} entries")
        terms[expo] = elem_from_obj(field, c)
    return MSeries.from_dict(field, nvars, order, terms)


def load_series(path: str) -> Series | MSeries:
    """Read a series file, univariate or multivariate by the 'nvars' key."""
    with open(path) as fh:
        obj = json.load(fh)
    if not isinstance(obj, dict):
        raise BadFile(f"{path}: expected a JSON object")
    base = os.path.dirname(os.path.abspath(path))
    if "nvars" in obj:
        return mseries_from_obj(obj, base_dir=base)
    return series_from_obj(obj, base_dir=base)


def load_field(path: str) -> NumberField:
    with open(path) as fh:
        return field_from_obj(json.load(fh))


def dump_obj(obj, path: str | None = None) -> str:
    """Serialize to stable JSON text; write to path when given."""
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text)
    return text
