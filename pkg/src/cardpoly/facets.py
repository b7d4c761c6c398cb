"""Published facet conditions, encoded per inequality class and polytope.

``facet_predicate`` answers TRUE, FALSE or UNKNOWN.  UNKNOWN marks the small
parameter regimes whose proofs are delegated elsewhere; for those the verdict
still carries the condition as stated (``stated``) so a sweep can compare the
empirical answer against it.

Polytope variants: ``path`` (directed path), ``cycle`` (directed cycle),
``pstar`` (directed cycles through node 1), ``upath`` and ``ucycle``.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Mapping

from .exceptions import InvalidParameter
from .model import CardinalitySequence, as_sequence

VARIANTS = ("path", "cycle", "pstar", "upath", "ucycle")


class Answer(Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Verdict:
    answer: Answer
    stated: bool | None = None

    @property
    def known(self) -> bool:
        return self.answer is not Answer.UNKNOWN

    def __bool__(self):
        if not self.known:
            raise ValueError("an unknown verdict has no truth value")
        return self.answer is Answer.TRUE

    def __str__(self):
        return self.answer.value


def _v(flag) -> Verdict:
    return Verdict(Answer.TRUE if flag else Answer.FALSE, bool(flag))


def _unknown(stated=None) -> Verdict:
    return Verdict(Answer.UNKNOWN, None if stated is None else bool(stated))


def small_sequences(n: int) -> tuple[tuple[int, ...], ...]:
    """Sequences whose path-polytope proofs are handled separately: (2,n), (3,n), (2,3,n)."""
    return ((2, n), (3, n), (2, 3, n))


def _nodes(variant: str, n: int) -> set:
    return set(range(n + 1)) if variant in ("path", "upath") else set(range(1, n + 1))


def _size(params, key) -> int:
    return len(params[key])


def _bracket(c: CardinalitySequence, params, size) -> int:
    p = params.get("p")
    q = c.forbidden_bracket(size)
    if q is None or (p is not None and p != q):
        raise InvalidParameter("cardinality bracket violated")
    return q


def _path_one_sided(c, n, s, rest) -> Verdict:
    stated = rest >= 2 and s >= c.first + 1 and c.values != (2, n)
    if rest < 2 or s <= c.first:
        return _v(False)
    if c.values in small_sequences(n):
        return _unknown(stated)
    if c.first >= 4:
        return _v(True)
    if any(ci >= 4 and s >= ci + 1 for ci in c):
        return _v(True)
    return _unknown(stated)


def _odd_path(c, s, t) -> Verdict:
    half = c[2] // 2
    return _v((c.first == 2 and min(s, t) >= half + 1) or (c.first >= 4 and min(s, t) >= half))


def _even_path(c, s, t) -> Verdict:
    lo = (c[2] - 1) // 2
    return _v((c.first == 3 and s - 1 >= (c[2] + 1) // 2 and t >= lo)
              or (c.first >= 5 and min(s - 1, t) >= lo))


def _cycle_cf(c, n, size, p) -> Verdict:
    nxt = c[p + 1]
    return _v((nxt - size >= 2 and nxt < n) or (nxt == n and size == n - 1))


def _cycle_rs(c, n, size, p) -> Verdict:
    return _v(p + 1 < c.m or c[p + 1] == n == size + 1)


def facet_predicate(tag: str, params: Mapping, n: int, c, variant: str) -> Verdict:
    """Published facet condition for the class ``tag`` with parameters ``params``."""
    if variant not in VARIANTS:
        raise InvalidParameter(f"unknown variant {variant!r}")
    c = as_sequence(c)
    P = dict(params)
    N = _nodes(variant, n)
    path = variant in ("path", "upath")
    small = c.values in small_sequences(n)

    if tag == "cf_node":
        size = _size(P, "W") - (1 if path else 0)
        p = _bracket(c, P, size)
        # path forms shift |W| by one; the cycle condition then applies verbatim
        return _cycle_cf(c, n, size, p)
    if tag == "card_subgraph":
        size = _size(P, "W") - (1 if path else 0)
        p = _bracket(c, P, size)
        return _cycle_rs(c, n, size, p)
    if tag == "modified_cf":
        if variant not in ("cycle", "pstar"):
            raise InvalidParameter("modified cardinality forcing needs a directed cycle variant")
        return _v(True)
    if variant == "pstar":
        raise InvalidParameter(f"class {tag!r} is not classified on the through-node-1 face")

    if tag == "nonneg":
        u, w = P["arc"]
        inner = u not in (0, n) and w not in (0, n) if path else True
        if variant == "cycle":
            return _v(True)
        if variant == "ucycle":
            return _v(n >= 5)
        if variant == "upath" and {u, w} == {0, n}:
            return _v(False)
        stated = c.values != (2, n) or (inner and (variant == "upath" or n >= 5))
        return _unknown(stated) if small else _v(True)

    if tag == "degree":
        if variant in ("cycle", "ucycle"):
            return _v(True)
        return _unknown(c.values != (2, n)) if small else _v(True)

    if tag in ("cardinality_bound_lo", "cardinality_bound_hi"):
        k = c.first if tag == "cardinality_bound_lo" else c.last
        if variant == "path":
            return _v(4 <= k <= n - 1)
        if variant == "cycle":
            return _v((k == 3 and n >= 5) or 4 <= k <= n - 1)
        if variant == "ucycle":
            return _v(True) if tag == "cardinality_bound_lo" else _v(k < n)
        return _v(k >= 4) if tag == "cardinality_bound_lo" else _v(k < n)

    if tag == "one_sided_min_cut":
        s = _size(P, "S")
        rest = len(N) - s
        if path:
            return _path_one_sided(c, n, s, rest)
        return _v(s >= c.first and 2 <= rest <= c.first - 1)

    if tag == "min_cut":
        s = _size(P, "S")
        rest = len(N) - s
        if path:
            if s > c.first:
                return _v(False)
            stated = s >= 3 and rest >= 2
            if c.values == (3, n):
                return _unknown(stated)
            return _v(stated)
        if max(s, rest) > c.first - 1:
            return _v(False)
        return _v(min(s, rest) >= 2)

    if tag == "multi_cycle_excl":
        s = _size(P, "S")
        rest = len(N) - s
        if variant == "cycle":
            return _v(min(s, rest) >= c.first and c.values not in ((2, 3), (2, n)))
        if variant == "ucycle":
            return _v(True) if c.first <= s <= n - c.first else _unknown()
        raise InvalidParameter("multiple cycle exclusion needs a cycle variant")

    if tag in ("odd_excl", "even_excl"):
        s, t = _size(P, "S"), _size(P, "T")
        if tag == "odd_excl":
            if path:
                return _odd_path(c, s, t)
            if variant == "cycle":
                half = c[2] // 2
                return _v((c.first == 2 and min(s, t) >= half) or (c.first >= 4 and min(s, t) >= half - 1))
            raise InvalidParameter("odd exclusion is not classified on the undirected cycle polytope")
        if path:
            return _even_path(c, s, t)
        return _v(min(s, t) >= (c[2] - 1) // 2)

    raise InvalidParameter(f"no facet condition for class {tag!r}")
