"""Substitutions: finite maps from variables to formulas.

Composition follows the left-to-right convention: ``compose(s, t)`` maps
``x`` to ``t`` applied to ``s(x)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping

from .formula import Atom, AtomRef, Bot, Box, Formula, Iff, Neg, Or, parse, to_text, variables
from .prover import Invalid, Logic, Unknown, Verdict, decide


class Substitution:
    __slots__ = ("_map", "_hash")

    def __init__(self, mapping: Mapping | Iterable = ()):
        items = mapping.items() if isinstance(mapping, Mapping) else mapping
        norm = {}
        for key, image in items:
            if isinstance(key, AtomRef):
                key = key.atom
            elif isinstance(key, str):
                key = Atom.from_text(key)
            if not key.is_variable:
                raise ValueError(f"parameters cannot be substituted: {key}")
            if not isinstance(image, Formula):
                raise TypeError(f"image of {key} is not a formula")
            if image == AtomRef(key):
                continue
            norm[key] = image
        self._map = dict(sorted(norm.items()))
        self._hash = hash(frozenset(self._map.items()))

    @property
    def support(self) -> frozenset[Atom]:
        return frozenset(self._map)

    def items(self):
        return self._map.items()

    def image(self, x: Atom | AtomRef) -> Formula:
        if isinstance(x, AtomRef):
            x = x.atom
        return self._map.get(x, AtomRef(x))

    __call__ = image

    def __eq__(self, other) -> bool:
        return isinstance(other, Substitution) and self._map == other._map

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        inner = ", ".join(f"{k}: {to_text(v)}" for k, v in self._map.items())
        return "Substitution({" + inner + "})"

    def to_dict(self) -> dict:
        return {"map": {str(k): to_text(v) for k, v in self._map.items()}}

    @classmethod
    def from_dict(cls, d: Mapping) -> "Substitution":
        try:
            raw = d["map"]
        except (KeyError, TypeError):
            raise ValueError('substitution JSON needs a "map" object') from None
        return cls({Atom.from_text(k): parse(v) for k, v in raw.items()})

    def dumps(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def loads(cls, text: str) -> "Substitution":
        return cls.from_dict(json.loads(text))


IDENTITY = Substitution()


def apply(s: Substitution, f: Formula) -> Formula:
    """Replace every variable of ``f`` simultaneously; parameters stay."""
    if not s.support:
        return f
    memo: dict[Formula, Formula] = {}

    def go(g: Formula) -> Formula:
        hit = memo.get(g)
        if hit is not None:
            return hit
        if isinstance(g, AtomRef):
            r = s.image(g.atom) if g.atom.is_variable else g
        elif isinstance(g, Bot):
            r = g
        elif isinstance(g, Neg):
            r = Neg(go(g.arg))
        elif isinstance(g, Or):
            r = Or(go(g.left), go(g.right))
        elif isinstance(g, Box):
            r = Box(go(g.arg))
        else:
            raise TypeError(f"not a formula: {g!r}")
        memo[g] = r
        return r

    return go(f)


def compose(s: Substitution, t: Substitution) -> Substitution:
    """``s`` first, then ``t``."""
    keys = s.support | t.support
    return Substitution({x: apply(t, s.image(x)) for x in keys})


def restrict_to(s: Substitution, f: Formula) -> Substitution:
    vs = variables(f)
    return Substitution({x: img for x, img in s.items() if x in vs})


class Indeterminate(Exception):
    """The prover ran out of budget, so the relation is undecided."""


@dataclass(frozen=True)
class Judgement:
    """A yes/no/unknown answer with the prover verdicts behind it."""

    value: bool | None
    evidence: tuple = ()

    def __bool__(self) -> bool:
        if self.value is None:
            raise Indeterminate("prover returned Unknown")
        return self.value

    @property
    def determinate(self) -> bool:
        return self.value is not None


def _combine(verdicts: list[tuple[str, Verdict]]) -> Judgement:
    if any(isinstance(v, Invalid) for _, v in verdicts):
        return Judgement(False, tuple(verdicts))
    if any(isinstance(v, Unknown) for _, v in verdicts):
        return Judgement(None, tuple(verdicts))
    return Judgement(True, tuple(verdicts))


def equivalent(logic: Logic | str, s: Substitution, t: Substitution, **prover_opts) -> Judgement:
    """Variable-wise provable equivalence over the union of the supports."""
    verdicts = []
    for x in sorted(s.support | t.support):
        v = decide(logic, Iff(s.image(x), t.image(x)), **prover_opts)
        verdicts.append((str(x), v))
        if isinstance(v, Invalid):
            break
    return _combine(verdicts)


def more_general_with_witness(logic: Logic | str, s: Substitution, t: Substitution,
                              witness: Substitution, **prover_opts) -> Judgement:
    """Does ``witness`` show ``s`` is more general than ``t``?"""
    return equivalent(logic, compose(s, witness), t, **prover_opts)


def is_unifier(logic: Logic | str, s: Substitution, f: Formula, **prover_opts) -> Judgement:
    v = decide(logic, apply(s, f), **prover_opts)
    return _combine([("formula", v)])


__all__ = [
    "Substitution", "IDENTITY", "apply", "compose", "restrict_to",
    "equivalent", "more_general_with_witness", "is_unifier",
    "Judgement", "Indeterminate",
]
