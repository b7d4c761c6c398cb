"""JSON files for instances, inequalities and fractional points.

Rationals are written as [numerator, denominator] pairs; arc-indexed data as
[tail, head, numerator, denominator] rows listing the nonzero entries.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .exceptions import InvalidParameter
from .inequalities import LinearInequality, regenerate
from .model import KINDS, build_graph
from .separation import FractionalPoint
from .solver import Instance


def _frac(v) -> Fraction:
    if isinstance(v, (list, tuple)) and len(v) == 2:
        num, den = v
        if not isinstance(num, int) or not isinstance(den, int) or den == 0:
            raise InvalidParameter(f"bad rational {v!r}")
        return Fraction(num, den)
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v)
        except ValueError:
            raise InvalidParameter(f"bad rational {v!r}") from None
    raise InvalidParameter(f"bad rational {v!r}")


def _pair(q: Fraction) -> list[int]:
    q = Fraction(q)
    return [q.numerator, q.denominator]


def _arc_rows(D, values) -> list:
    return [[u, v, *_pair(w)] for (u, v), w in zip(D.arcs, values) if w]


def _arc_vector(D, rows) -> list[Fraction]:
    vec = [Fraction(0)] * len(D.arcs)
    if not isinstance(rows, list):
        raise InvalidParameter("arc data must be a list of [tail, head, num, den] rows")
    for row in rows:
        if not isinstance(row, list) or len(row) != 4:
            raise InvalidParameter(f"bad arc row {row!r}")
        u, v, num, den = row
        k = D.arc_index(u, v)
        vec[k] = _frac([num, den])
    return vec


def _require_keys(doc, keys, what):
    if not isinstance(doc, dict):
        raise InvalidParameter(f"{what} must be a JSON object")
    missing = [k for k in keys if k not in doc]
    if missing:
        raise InvalidParameter(f"{what} is missing {', '.join(missing)}")


def _load(text_or_path):
    """Parse JSON given either as document text or as a file path."""
    text = text_or_path
    if isinstance(text_or_path, Path) or not text_or_path.lstrip().startswith(("{", "[")):
        text = Path(text_or_path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidParameter(f"malformed JSON: {exc}") from None


def _kind(doc):
    kind = doc["kind"]
    if kind not in KINDS:
        raise InvalidParameter(f"unknown kind {kind!r}")
    n = doc["n"]
    if not isinstance(n, int):
        raise InvalidParameter("n must be an integer")
    return kind, n


# -- instances -----------------------------------------------------------------------------------

def instance_to_dict(inst: Instance) -> dict:
    return {
        "kind": inst.kind, "n": inst.n, "c": list(inst.c),
        "weights": _arc_rows(inst.graph, inst.weights), "objective": inst.objective,
    }


def instance_from_dict(doc) -> Instance:
    _require_keys(doc, ("kind", "n", "c"), "instance")
    kind, n = _kind(doc)
    if not isinstance(doc["c"], list) or not all(isinstance(k, int) for k in doc["c"]):
        raise InvalidParameter("c must be a list of integers")
    D = build_graph(kind, n)
    # weights may be omitted for purely polyhedral commands
    return Instance(kind, n, tuple(doc["c"]), tuple(_arc_vector(D, doc.get("weights", []))),
                    doc.get("objective", "minimize"))


def dump_instance(inst: Instance) -> str:
    return json.dumps(instance_to_dict(inst), indent=1)


def load_instance(src) -> Instance:
    return instance_from_dict(_load(src))


# -- inequalities --------------------------------------------------------------------------------

def _params_out(params) -> dict:
    out = {}
    for k, v in params:
        if isinstance(v, tuple):
            v = [list(a) if isinstance(a, tuple) else a for a in v]
        out[k] = v
    return out


def _params_in(doc: dict) -> dict:
    out = {}
    for k, v in doc.items():
        if k == "arc":
            out[k] = tuple(v)
        elif k == "F":
            out[k] = [tuple(a) for a in v]
        else:
            out[k] = v
    return out


def inequality_to_dict(ineq: LinearInequality) -> dict:
    doc = {"kind": ineq.kind, "n": ineq.n, "class_tag": ineq.tag}
    if ineq.c is not None:
        doc["c"] = list(ineq.c)
    if ineq.tag == "custom":
        doc["coeffs"] = _arc_rows(ineq.graph, ineq.coeffs)
        doc["sense"] = ineq.sense
        doc["rhs"] = _pair(ineq.rhs)
    else:
        doc["params"] = _params_out(ineq.params)
    return doc


def inequality_from_dict(doc) -> LinearInequality:
    _require_keys(doc, ("kind", "n", "class_tag"), "inequality")
    kind, n = _kind(doc)
    c = tuple(doc["c"]) if doc.get("c") is not None else None
    if doc["class_tag"] == "custom":
        _require_keys(doc, ("coeffs", "sense", "rhs"), "custom inequality")
        D = build_graph(kind, n)
        return LinearInequality(kind, n, tuple(_arc_vector(D, doc["coeffs"])), doc["sense"],
                                _frac(doc["rhs"]), "custom", (), c)
    params = _params_in(doc.get("params", {}))
    needs_c = doc["class_tag"] not in ("flow", "degree", "nonneg", "one_sided_min_cut", "min_cut",
                                       "multi_cycle_excl")
    if needs_c and c is None:
        raise InvalidParameter(f"class {doc['class_tag']!r} needs a cardinality sequence c")
    try:
        return regenerate(doc["class_tag"], params, n, c, kind)
    except KeyError as exc:
        raise InvalidParameter(f"missing class parameter {exc}") from None


def dump_inequality(ineq: LinearInequality) -> str:
    return json.dumps(inequality_to_dict(ineq), indent=1)


def load_inequality(src) -> LinearInequality:
    return inequality_from_dict(_load(src))


# -- points --------------------------------------------------------------------------------------

def point_to_dict(kind: str, n: int, x) -> dict:
    return {"kind": kind, "n": n, "x": _arc_rows(build_graph(kind, n), list(x))}


def point_from_dict(doc) -> tuple[str, int, FractionalPoint]:
    _require_keys(doc, ("kind", "n", "x"), "point")
    kind, n = _kind(doc)
    return kind, n, FractionalPoint(_arc_vector(build_graph(kind, n), doc["x"]))


def dump_point(kind: str, n: int, x) -> str:
    return json.dumps(point_to_dict(kind, n, x), indent=1)


def load_point(src):
    return point_from_dict(_load(src))
