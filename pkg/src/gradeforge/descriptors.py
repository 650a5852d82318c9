"""Series descriptors: the uniform way commands name a series.

A descriptor is a kind plus a JSON payload.  Kinds: fixed coefficient
lists, algebraic annihilators, P-recursive recurrences, exp-poly rational
coefficient forms, and named builtins.  Command lines pass the payload
inline, via @file, or (for builtins) as a bare name.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .algebraic import Annihilator, expand_branch
from .analytic import ExpPolyRational
from .catalog import BuiltinSeries, get_builtin
from .errors import SchemaError, TruncationExceeded
from .holonomic import PRecurrence, unroll
from .polynomials import Poly
from .rationals import format_rational, parse_rational
from .series import TruncSeries

KINDS = ("coeffs", "algebraic", "holonomic", "rational-exppoly", "builtin")


@dataclass(frozen=True)
class SeriesDescriptor:
    kind: str
    payload: object

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SchemaError(
                f"unknown descriptor kind {self.kind!r}; "
                f"choose from {', '.join(KINDS)}"
            )


def descriptor_from_tokens(kind: str, arg: str) -> SeriesDescriptor:
    """Build a descriptor from a (kind, argument) command-line pair.

    The argument is a builtin name for kind=builtin; otherwise inline
    JSON, or @path to read the JSON from a file.
    """
    if kind == "builtin":
        return SeriesDescriptor(kind, arg)
    text = arg
    if arg.startswith("@"):
        try:
            with open(arg[1:], encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise SchemaError(f"cannot read descriptor file {arg[1:]}: {exc}") from exc
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"descriptor payload is not valid JSON: {exc}") from exc
    return SeriesDescriptor(kind, payload)


def _check_kind_label(payload: dict, expected: str) -> None:
    label = payload.get("kind")
    if label is not None and label != expected:
        raise SchemaError(
            f'payload says kind {label!r} but the descriptor is {expected!r}'
        )


def _coeffs_from_json(payload) -> TruncSeries:
    if isinstance(payload, dict):
        _check_kind_label(payload, "coeffs")
        if "coeffs" not in payload:
            raise SchemaError('coeffs payload object needs a "coeffs" key')
        payload = payload["coeffs"]
    if not isinstance(payload, list) or not payload:
        raise SchemaError("coeffs payload must be a nonempty list")
    out = []
    for i, entry in enumerate(payload):
        if isinstance(entry, bool) or not isinstance(entry, (int, str)):
            raise SchemaError(
                f"coefficient {i} must be an integer or rational string"
            )
        try:
            out.append(parse_rational(str(entry)))
        except ValueError as exc:
            raise SchemaError(f"coefficient {i}: {exc}") from exc
    return TruncSeries(tuple(out))


def annihilator_from_json(payload) -> Annihilator:
    if not isinstance(payload, dict):
        raise SchemaError("algebraic payload must be an object")
    _check_kind_label(payload, "algebraic")
    missing = {"P", "y0"} - set(payload)
    if missing:
        raise SchemaError(f"algebraic payload missing keys: {sorted(missing)}")
    rows = payload["P"]
    if not isinstance(rows, list) or not rows:
        raise SchemaError('"P" must be a nonempty list of [i, j, coeff] rows')
    terms: dict[tuple[int, int], Fraction] = {}
    for row in rows:
        if (not isinstance(row, list) or len(row) != 3
                or not all(isinstance(e, int) and e >= 0 for e in row[:2])
                or isinstance(row[2], bool)
                or not isinstance(row[2], (int, str))):
            raise SchemaError(
                'each "P" row must be [z-exponent, y-exponent, coeff]'
            )
        try:
            c = parse_rational(str(row[2]))
        except ValueError as exc:
            raise SchemaError(f'"P" row {row}: {exc}') from exc
        key = (row[0], row[1])
        terms[key] = terms.get(key, Fraction(0)) + c
    if isinstance(payload["y0"], bool) or not isinstance(payload["y0"], (int, str)):
        raise SchemaError('"y0" must be an integer or rational string')
    try:
        y0 = parse_rational(str(payload["y0"]))
    except ValueError as exc:
        raise SchemaError(f'"y0": {exc}') from exc
    try:
        return Annihilator(Poly(2, terms), y0)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def annihilator_to_json(ann: Annihilator) -> dict:
    from .polynomials import _grlex_key

    rows = [
        [e[0], e[1], format_rational(ann.poly.terms[e])]
        for e in sorted(ann.poly.terms, key=_grlex_key, reverse=True)
    ]
    return {"kind": "algebraic", "P": rows, "y0": format_rational(ann.y0)}


def _exppoly_from_json(payload) -> ExpPolyRational:
    if not isinstance(payload, dict):
        raise SchemaError("rational-exppoly payload must be an object")
    _check_kind_label(payload, "rational-exppoly")
    if "terms" not in payload or not isinstance(payload["terms"], list):
        raise SchemaError('rational-exppoly payload needs a "terms" list')
    built = []
    for row in payload["terms"]:
        if (not isinstance(row, list) or len(row) != 3
                or isinstance(row[1], bool) or not isinstance(row[1], int)
                or not isinstance(row[2], list)):
            raise SchemaError(
                "each term must be [pole, multiplicity, [poly coeffs...]]"
            )
        try:
            pole = parse_rational(str(row[0]))
            poly = tuple(parse_rational(str(c)) for c in row[2])
        except ValueError as exc:
            raise SchemaError(f"term {row}: {exc}") from exc
        built.append((pole, row[1], poly))
    try:
        return ExpPolyRational(tuple(built))
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def materialize(desc: SeriesDescriptor):
    """Payload -> the exact object the descriptor names."""
    if desc.kind == "coeffs":
        return _coeffs_from_json(desc.payload)
    if desc.kind == "algebraic":
        return annihilator_from_json(desc.payload)
    if desc.kind == "holonomic":
        return PRecurrence.from_json_dict(desc.payload)
    if desc.kind == "rational-exppoly":
        return _exppoly_from_json(desc.payload)
    if not isinstance(desc.payload, str):
        raise SchemaError("builtin payload must be a name string")
    return get_builtin(desc.payload)


def expand_descriptor(desc: SeriesDescriptor, terms: int) -> TruncSeries:
    """First ``terms`` exact coefficients of the series the descriptor names."""
    if terms < 1:
        raise SchemaError("terms must be positive")
    obj = materialize(desc)
    if isinstance(obj, TruncSeries):
        if obj.order < terms:
            raise TruncationExceeded(
                f"descriptor holds {obj.order} coefficients, "
                f"requested {terms}"
            )
        return obj.truncate(terms)
    if isinstance(obj, PRecurrence):
        return unroll(obj, terms)
    if isinstance(obj, Annihilator):
        return expand_branch(obj, terms)
    if isinstance(obj, ExpPolyRational):
        return obj.expand(terms)
    assert isinstance(obj, BuiltinSeries)
    return obj.expand(terms)


def coeffs_json(series: TruncSeries) -> dict:
    """Wire form of a coefficient table; re-ingestable as a coeffs payload."""
    return {
        "kind": "coeffs",
        "terms": series.order,
        "coeffs": [format_rational(c) for c in series.coeffs],
    }
