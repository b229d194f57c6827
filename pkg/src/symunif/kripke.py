"""Finite Kripke frames and models.

State identifiers are arbitrary hashables.  Models keep the order in which
their states were given so that relabelling to integers (for JSON) is
deterministic.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from types import MappingProxyType
from typing import Hashable, Iterable, Mapping

from .formula import Atom, AtomRef, Bot, Box, Formula, Neg, Or, P, Q

State = Hashable

DEFAULT_STATE_BUDGET = 10**6

PLAIN = "plain"
REFLEXIVE = "reflexive"


class StateBudgetExceeded(RuntimeError):
    pass


class Frame:
    __slots__ = ("states", "order", "relation", "_succ")

    def __init__(self, states: Iterable[State], relation: Iterable[tuple[State, State]]):
        order = tuple(dict.fromkeys(states))
        if not order:
            raise ValueError("a frame needs at least one state")
        self.order = order
        self.states = frozenset(order)
        rel = frozenset((a, b) for a, b in relation)
        for a, b in rel:
            if a not in self.states or b not in self.states:
                raise ValueError(f"edge ({a!r}, {b!r}) leaves the state set")
        self.relation = rel
        succ: dict[State, list[State]] = {s: [] for s in order}
        for a, b in rel:
            succ[a].append(b)
        self._succ = {s: frozenset(v) for s, v in succ.items()}

    def successors(self, s: State) -> frozenset:
        return self._succ[s]

    def __len__(self) -> int:
        return len(self.order)

    def __eq__(self, other) -> bool:
        return isinstance(other, Frame) and self.states == other.states and self.relation == other.relation

    def __hash__(self) -> int:
        return hash((self.states, self.relation))

    def __repr__(self) -> str:
        return f"Frame(states={len(self.order)}, edges={len(self.relation)})"


class Model:
    __slots__ = ("frame", "valuation", "_index", "_succ_masks")

    def __init__(self, frame: Frame, valuation: Mapping[Atom, Iterable[State]] | None = None):
        self.frame = frame
        val = {}
        for atom, ext in (valuation or {}).items():
            if isinstance(atom, AtomRef):
                atom = atom.atom
            ext = frozenset(ext)
            if not ext <= frame.states:
                raise ValueError(f"valuation of {atom} mentions unknown states")
            if ext:
                val[atom] = ext
        self.valuation = MappingProxyType(val)
        self._index = {s: i for i, s in enumerate(frame.order)}
        masks = []
        for s in frame.order:
            m = 0
            for t in frame.successors(s):
                m |= 1 << self._index[t]
            masks.append(m)
        self._succ_masks = tuple(masks)

    @property
    def states(self) -> frozenset:
        return self.frame.states

    @property
    def relation(self) -> frozenset:
        return self.frame.relation

    def value(self, atom: Atom) -> frozenset:
        return self.valuation.get(atom, frozenset())

    def __len__(self) -> int:
        return len(self.frame)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Model) and self.frame == other.frame
                and dict(self.valuation) == dict(other.valuation))

    def __hash__(self) -> int:
        return hash((self.frame, frozenset(self.valuation.items())))

    def __repr__(self) -> str:
        return f"Model(states={len(self)}, edges={len(self.relation)}, atoms={sorted(map(str, self.valuation))})"

    # -- evaluation on bitmasks ------------------------------------------

    def _mask(self, states: Iterable[State]) -> int:
        m = 0
        for s in states:
            m |= 1 << self._index[s]
        return m

    def extension_mask(self, f: Formula, memo: dict | None = None) -> int:
        memo = {} if memo is None else memo
        full = (1 << len(self.frame.order)) - 1
        return self._ext(f, memo, full)

    def _ext(self, f: Formula, memo: dict, full: int) -> int:
        hit = memo.get(f)
        if hit is not None:
            return hit
        if isinstance(f, Bot):
            r = 0
        elif isinstance(f, AtomRef):
            r = self._mask(self.value(f.atom))
        elif isinstance(f, Neg):
            r = full & ~self._ext(f.arg, memo, full)
        elif isinstance(f, Or):
            r = self._ext(f.left, memo, full) | self._ext(f.right, memo, full)
        elif isinstance(f, Box):
            body = self._ext(f.arg, memo, full)
            r = 0
            for i, succ in enumerate(self._succ_masks):
                if succ & ~body == 0:
                    r |= 1 << i
        else:
            raise TypeError(f"not a formula: {f!r}")
        memo[f] = r
        return r

    def extension(self, f: Formula) -> frozenset:
        mask = self.extension_mask(f)
        return frozenset(s for i, s in enumerate(self.frame.order) if mask >> i & 1)

    def relabelled(self) -> tuple["Model", dict]:
        """Copy with states renamed 0..n-1 in model order, plus the renaming."""
        ren = {s: i for i, s in enumerate(self.frame.order)}
        frame = Frame(range(len(ren)), ((ren[a], ren[b]) for a, b in self.relation))
        val = {a: [ren[s] for s in ext] for a, ext in self.valuation.items()}
        return Model(frame, val), ren


@dataclass(frozen=True)
class PointedModel:
    model: Model
    point: State

    def __post_init__(self):
        if self.point not in self.model.states:
            raise ValueError(f"point {self.point!r} is not a state of the model")


def satisfies(m: Model, s: State, f: Formula) -> bool:
    if s not in m.states:
        raise KeyError(f"unknown state {s!r}")
    return bool(m.extension_mask(f) >> m._index[s] & 1)


def is_true_in_model(m: Model, f: Formula) -> bool:
    return m.extension_mask(f) == (1 << len(m)) - 1


def _frame(x) -> Frame:
    return x.frame if isinstance(x, Model) else x


def is_symmetric(fr) -> bool:
    fr = _frame(fr)
    return all((b, a) in fr.relation for a, b in fr.relation)


def is_serial(fr) -> bool:
    fr = _frame(fr)
    return all(fr.successors(s) for s in fr.order)


def is_reflexive(fr) -> bool:
    fr = _frame(fr)
    return all((s, s) in fr.relation for s in fr.order)


def chain_model(k: int) -> Model:
    """States 0..3k, neighbours at distance <= 1, #p on 1 mod 3, #q on 2 mod 3."""
    if k < 0:
        raise ValueError("k must be a natural number")
    n = 3 * k + 1
    rel = [(i, j) for i in range(n) for j in range(n) if abs(i - j) <= 1]
    val = {P.atom: [i for i in range(n) if i % 3 == 1],
           Q.atom: [i for i in range(n) if i % 3 == 2]}
    return Model(Frame(range(n), rel), val)


def disjoint_union(models: list[Model]) -> tuple[Model, list[dict]]:
    """Tagged union; state ``s`` of ``models[i]`` becomes ``(i, s)``.

    Returns the union and, per input, the map from old to new states.
    """
    if not models:
        raise ValueError("disjoint_union needs at least one model")
    states, rel, injections = [], [], []
    val: dict[Atom, set] = {}
    for i, m in enumerate(models):
        inj = {s: (i, s) for s in m.frame.order}
        injections.append(inj)
        states.extend(inj.values())
        rel.extend((inj[a], inj[b]) for a, b in m.relation)
        for atom, ext in m.valuation.items():
            val.setdefault(atom, set()).update(inj[s] for s in ext)
    return Model(Frame(states, rel), val), injections


def symmetric_unravelling(m: Model, s: State, depth: int, mode: str = PLAIN,
                          state_budget: int = DEFAULT_STATE_BUDGET) -> PointedModel:
    """Tree of paths from ``s`` of at most ``depth`` steps.

    Each path is linked both ways to its one-step extensions; in reflexive
    mode every path also sees itself and self-loop steps are not unravelled,
    since the reflexive closure already matches them.  Atoms are read off the last state of
    a path.  Satisfaction at the root agrees with ``m, s`` for formulas of
    degree at most ``depth``.
    """
    if mode not in (PLAIN, REFLEXIVE):
        raise ValueError(f"unknown unravelling mode {mode!r}")
    if depth < 0:
        raise ValueError("depth must be a natural number")
    if not is_symmetric(m):
        raise ValueError("symmetric unravelling needs a symmetric model")
    if mode == REFLEXIVE and not is_reflexive(m):
        raise ValueError("reflexive unravelling needs a reflexive model")
    if s not in m.states:
        raise KeyError(f"unknown state {s!r}")
    root = (s,)
    paths = [root]
    rel = []
    queue = deque([root])
    order = {t: i for i, t in enumerate(m.frame.order)}
    while queue:
        path = queue.popleft()
        if len(path) > depth:
            continue
        for t in sorted(m.frame.successors(path[-1]), key=order.__getitem__):
            if mode == REFLEXIVE and t == path[-1]:
                continue
            child = path + (t,)
            paths.append(child)
            if len(paths) > state_budget:
                raise StateBudgetExceeded(f"unravelling exceeds {state_budget} states")
            rel.append((path, child))
            rel.append((child, path))
            queue.append(child)
    if mode == REFLEXIVE:
        rel.extend((pth, pth) for pth in paths)
    val = {}
    for atom, ext in m.valuation.items():
        val[atom] = [pth for pth in paths if pth[-1] in ext]
    return PointedModel(Model(Frame(paths, rel), val), root)


# -- JSON -----------------------------------------------------------------

def model_to_dict(m: Model, point: State | None = None) -> dict:
    if not all(isinstance(s, int) and not isinstance(s, bool) for s in m.frame.order):
        m, ren = m.relabelled()
        point = None if point is None else ren[point]
    idx = {s: i for i, s in enumerate(m.frame.order)}
    d = {
        "states": list(m.frame.order),
        "rel": sorted([a, b] for a, b in m.relation),
        "val": {str(a): sorted(ext, key=idx.__getitem__)
                for a, ext in sorted(m.valuation.items())},
    }
    if point is not None:
        d["point"] = point
    return d


def model_from_dict(d: Mapping) -> tuple[Model, State | None]:
    try:
        states = [int(s) for s in d["states"]]
        rel = [(int(a), int(b)) for a, b in d.get("rel", [])]
        val = {Atom.from_text(name): [int(s) for s in ext] for name, ext in d.get("val", {}).items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed model JSON: {exc}") from exc
    m = Model(Frame(states, rel), val)
    point = d.get("point")
    if point is not None and point not in m.states:
        raise ValueError(f"point {point!r} is not a state")
    return m, point


def dumps_model(m: Model, point: State | None = None) -> str:
    return json.dumps(model_to_dict(m, point))


def loads_model(text: str) -> tuple[Model, State | None]:
    return model_from_dict(json.loads(text))


__all__ = [
    "Frame", "Model", "PointedModel", "State", "StateBudgetExceeded",
    "PLAIN", "REFLEXIVE", "satisfies", "is_true_in_model",
    "is_symmetric", "is_serial", "is_reflexive", "chain_model",
    "disjoint_union", "symmetric_unravelling",
    "model_to_dict", "model_from_dict", "dumps_model", "loads_model",
]
