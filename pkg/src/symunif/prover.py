"""Validity for KB, KDB and KTB.

``decide`` searches for a countermodel shaped as a symmetric tree whose
height is bounded by the modal degree of the query.  Each tree node holds a
set of negation-normal-form formulas; a child may need its parent to commit
to a formula it has not decided yet (a box in the child forces its body at
the parent, and a diamond in the child may be witnessed by the parent), in
which case the parent branches on that formula and re-runs.  Every
countermodel is model-checked against the frame class and the query before
it is returned.

``brute_force_countermodel`` is an independent enumerator over small frames
used to cross-check the search.
"""

from __future__ import annotations

import enum
import itertools
import time
from dataclasses import dataclass, field

import numpy as np

from .formula import Atom, AtomRef, Bot, Box, Formula, Neg, Or, atoms
from .kripke import Frame, Model, PointedModel, is_reflexive, is_serial, is_symmetric, satisfies

DEFAULT_MAX_NODES = 10**6
DEFAULT_ORACLE_STATES = 4
DEFAULT_ORACLE_BUDGET = 5 * 10**7


class Logic(enum.Enum):
    KB = "kb"
    KDB = "kdb"
    KTB = "ktb"

    @classmethod
    def parse(cls, text: str) -> "Logic":
        try:
            return cls(text.lower())
        except ValueError:
            raise ValueError(f"unknown logic {text!r}; expected kb, kdb or ktb") from None

    @property
    def serial(self) -> bool:
        return self is not Logic.KB

    @property
    def reflexive(self) -> bool:
        return self is Logic.KTB

    def admits(self, m: Model) -> bool:
        """Frame-class membership of the model's frame."""
        if not is_symmetric(m):
            return False
        if self is Logic.KDB and not is_serial(m):
            return False
        if self is Logic.KTB and not is_reflexive(m):
            return False
        return True


# -- verdicts --------------------------------------------------------------

@dataclass(frozen=True)
class Valid:
    stats: dict = field(default_factory=dict, compare=False, repr=False)

    status = "valid"


@dataclass(frozen=True)
class Invalid:
    counter: PointedModel
    stats: dict = field(default_factory=dict, compare=False, repr=False)

    status = "invalid"


@dataclass(frozen=True)
class Unknown:
    reason: str
    stats: dict = field(default_factory=dict, compare=False, repr=False)

    status = "unknown"


Verdict = Valid | Invalid | Unknown


class CertificationError(AssertionError):
    """A candidate countermodel failed its own check; this is a prover bug."""


class ResourceExhausted(Exception):
    pass


# -- negation normal form, interned as small integers ------------------------

TOP, BOT, LIT, AND, OR, BOX, DIA = range(7)


class _NNF:
    """Hash-consed NNF nodes, local to one query."""

    def __init__(self):
        self.kind: list[int] = []
        self.a: list = []
        self.b: list = []
        self._index: dict = {}
        self._neg: dict[int, int] = {}
        self._conv: dict = {}
        self.top = self._node(TOP, None, None)
        self.bot = self._node(BOT, None, None)
        self._neg[self.top] = self.bot
        self._neg[self.bot] = self.top

    def _node(self, kind, a, b) -> int:
        key = (kind, a, b)
        i = self._index.get(key)
        if i is None:
            i = len(self.kind)
            self.kind.append(kind)
            self.a.append(a)
            self.b.append(b)
            self._index[key] = i
        return i

    def lit(self, atom: Atom, positive: bool) -> int:
        return self._node(LIT, atom, positive)

    def conj(self, x: int, y: int) -> int:
        if x == self.bot or y == self.bot:
            return self.bot
        if x == self.top:
            return y
        if y == self.top or x == y:
            return x
        if self.neg(x) == y:
            return self.bot
        if y < x:
            x, y = y, x
        return self._node(AND, x, y)

    def disj(self, x: int, y: int) -> int:
        if x == self.top or y == self.top:
            return self.top
        if x == self.bot:
            return y
        if y == self.bot or x == y:
            return x
        if self.neg(x) == y:
            return self.top
        if y < x:
            x, y = y, x
        return self._node(OR, x, y)

    def box(self, x: int) -> int:
        return self.top if x == self.top else self._node(BOX, x, None)

    def dia(self, x: int) -> int:
        return self.bot if x == self.bot else self._node(DIA, x, None)

    def neg(self, i: int) -> int:
        n = self._neg.get(i)
        if n is not None:
            return n
        k, a, b = self.kind[i], self.a[i], self.b[i]
        if k == LIT:
            n = self.lit(a, not b)
        elif k == AND:
            n = self._node(OR, *sorted((self.neg(a), self.neg(b))))
        elif k == OR:
            n = self._node(AND, *sorted((self.neg(a), self.neg(b))))
        elif k == BOX:
            n = self._node(DIA, self.neg(a), None)
        else:
            n = self._node(BOX, self.neg(a), None)
        self._neg[i] = n
        self._neg[n] = i
        return n

    def convert(self, f: Formula, positive: bool = True) -> int:
        key = (f, positive)
        hit = self._conv.get(key)
        if hit is not None:
            return hit
        if isinstance(f, Bot):
            r = self.bot if positive else self.top
        elif isinstance(f, AtomRef):
            r = self.lit(f.atom, positive)
        elif isinstance(f, Neg):
            r = self.convert(f.arg, not positive)
        elif isinstance(f, Or):
            left, right = self.convert(f.left, positive), self.convert(f.right, positive)
            r = self.disj(left, right) if positive else self.conj(left, right)
        elif isinstance(f, Box):
            body = self.convert(f.arg, positive)
            r = self.box(body) if positive else self.dia(body)
        else:
            raise TypeError(f"not a formula: {f!r}")
        self._conv[key] = r
        return r


# -- tableau ---------------------------------------------------------------

class _NeedDecision(Exception):
    """Raised by a node that needs the node at depth ``target`` to decide ``formula``."""

    def __init__(self, formula: int, target: int):
        super().__init__(formula, target)
        self.formula = formula
        self.target = target


@dataclass
class _TreeNode:
    formulas: frozenset
    children: list


class _Search:
    def __init__(self, logic: Logic, max_nodes: int, deadline: float | None):
        self.logic = logic
        self.t = _NNF()
        self.max_nodes = max_nodes
        self.deadline = deadline
        self.expansions = 0
        self._memo: dict = {}
        self._eval_memo: dict = {}

    def _tick(self):
        self.expansions += 1
        if self.expansions > self.max_nodes:
            raise ResourceExhausted(f"node budget of {self.max_nodes} exhausted")
        if self.deadline is not None and self.expansions % 256 == 0 and time.monotonic() > self.deadline:
            raise ResourceExhausted("time budget exhausted")

    def saturations(self, base: frozenset, extra):
        """Propositionally saturated, clash-free extensions of ``base`` plus ``extra``.

        ``base`` is assumed already saturated on its own.
        """
        stack = [(set(base), [], list(extra))]
        while stack:
            S, pending, additions = stack.pop()
            if self._absorb(S, pending, additions, stack):
                yield frozenset(S)

    def _absorb(self, S: set, pending: list, additions, stack: list) -> bool:
        # invariant: members of ``pending`` are in S but not yet decomposed
        t = self.t
        kind, A, B, neg, bot = t.kind, t.a, t.b, t.neg, t.bot
        reflexive = self.logic.reflexive
        new = additions
        while True:
            for c in new:
                if c in S:
                    continue
                if c == bot or neg(c) in S:
                    return False
                S.add(c)
                pending.append(c)
            if not pending:
                return True
            i = pending.pop()
            k = kind[i]
            if k == AND:
                new = (A[i], B[i])
            elif k == OR:
                a, b = A[i], B[i]
                if a in S or b in S:
                    new = ()
                elif neg(a) in S:
                    new = (b,)
                elif neg(b) in S:
                    new = (a,)
                else:
                    # pushed first so that the left disjunct is explored first
                    stack.append((set(S), list(pending), (neg(a), b)))
                    new = (a,)
            elif k == BOX and reflexive:
                new = (A[i],)
            else:
                new = ()

    def evaluate(self, S: frozenset, i: int):
        """Truth of NNF node ``i`` forced by the committed set ``S``: True, False or None."""
        key = (S, i)
        hit = self._eval_memo.get(key, 0)
        if hit != 0:
            return hit
        t = self.t
        if i in S:
            r = True
        elif t.neg(i) in S:
            r = False
        else:
            k = t.kind[i]
            if k == TOP:
                r = True
            elif k == BOT:
                r = False
            elif k == AND:
                x, y = self.evaluate(S, t.a[i]), self.evaluate(S, t.b[i])
                r = False if (x is False or y is False) else (True if (x and y) else None)
            elif k == OR:
                x, y = self.evaluate(S, t.a[i]), self.evaluate(S, t.b[i])
                r = True if (x is True or y is True) else (False if (x is False and y is False) else None)
            else:
                r = None
        self._eval_memo[key] = r
        return r

    def sat(self, label: frozenset, parent: frozenset | None, depth: int):
        key = (label, parent)
        hit = self._memo.get(key)
        if hit is not None:
            if isinstance(hit, _NeedDecision):
                raise hit
            return hit[0]
        try:
            node = self._explore(frozenset(), label, parent, depth)
        except _NeedDecision as nd:
            self._memo[key] = nd
            raise
        self._memo[key] = (node,)
        return node

    def _explore(self, base: frozenset, extra, parent, depth):
        t = self.t
        for S in self.saturations(base, extra):
            self._tick()
            if parent is not None and not self._parent_agrees(S, parent, depth):
                continue
            try:
                node = self._expand(S, parent, depth)
            except _NeedDecision as nd:
                if nd.target != depth:
                    raise
                theta = nd.formula
                node = (self._explore(S, (theta,), parent, depth)
                        or self._explore(S, (t.neg(theta),), parent, depth))
            if node is not None:
                return node
        return None

    def _parent_agrees(self, S, parent, depth) -> bool:
        t = self.t
        for i in sorted(S):
            if t.kind[i] == BOX:
                v = self.evaluate(parent, t.a[i])
                if v is False:
                    return False
                if v is None:
                    raise _NeedDecision(t.a[i], depth - 1)
        return True

    def _expand(self, S, parent, depth):
        t = self.t
        kind, A = t.kind, t.a
        ordered = sorted(S)
        bodies = [A[i] for i in ordered if kind[i] == BOX]
        children = []
        for i in ordered:
            if kind[i] != DIA:
                continue
            chi = A[i]
            if self.logic.reflexive and self.evaluate(S, chi) is True:
                continue
            if parent is not None and self.evaluate(parent, chi) is True:
                continue
            child = self.sat(frozenset(bodies + [chi]), S, depth + 1)
            if child is None:
                if parent is not None and self.evaluate(parent, chi) is None:
                    raise _NeedDecision(chi, depth - 1)
                return None
            children.append(child)
        if self.logic.serial and parent is None and not children and not self.logic.reflexive:
            child = self.sat(frozenset(bodies), S, depth + 1)
            if child is None:
                return None
            children.append(child)
        return _TreeNode(S, children)


def _tree_to_model(search: _Search, root: _TreeNode, reflexive: bool) -> Model:
    t = search.t
    states, rel = [], []
    val: dict[Atom, list[int]] = {}
    queue = [(root, None)]
    while queue:
        node, parent_id = queue.pop(0)
        sid = len(states)
        states.append(sid)
        if parent_id is not None:
            rel.append((parent_id, sid))
            rel.append((sid, parent_id))
        if reflexive:
            rel.append((sid, sid))
        for i in sorted(node.formulas):
            if t.kind[i] == LIT and t.b[i]:
                val.setdefault(t.a[i], []).append(sid)
        queue.extend((c, sid) for c in node.children)
    return Model(Frame(states, rel), val)


def decide(logic: Logic | str, f: Formula, max_nodes: int = DEFAULT_MAX_NODES,
           timeout: float | None = None) -> Verdict:
    """Valid, Invalid with a checked countermodel, or Unknown when out of budget."""
    if isinstance(logic, str):
        logic = Logic.parse(logic)
    started = time.monotonic()
    deadline = None if timeout is None else started + timeout
    search = _Search(logic, max_nodes, deadline)
    goal = search.t.convert(f, positive=False)
    try:
        tree = search.sat(frozenset([goal]), None, 0)
    except ResourceExhausted as exc:
        return Unknown(str(exc), {"expansions": search.expansions})
    stats = {"expansions": search.expansions, "seconds": time.monotonic() - started}
    if tree is None:
        return Valid(stats)
    model = _tree_to_model(search, tree, logic.reflexive)
    counter = PointedModel(model, 0)
    certify(logic, f, counter)
    return Invalid(counter, stats)


def certify(logic: Logic, f: Formula, counter: PointedModel) -> None:
    """Raise :class:`CertificationError` unless ``counter`` refutes ``f`` within ``logic``."""
    m = counter.model
    if not logic.admits(m):
        raise CertificationError(f"countermodel is outside the {logic.name} frame class")
    if satisfies(m, counter.point, f):
        raise CertificationError("countermodel satisfies the formula at its point")


def is_valid(logic: Logic | str, f: Formula, **kwargs) -> bool | None:
    """True/False, or None when the prover gave up."""
    v = decide(logic, f, **kwargs)
    if isinstance(v, Unknown):
        return None
    return isinstance(v, Valid)


# -- brute-force oracle -------------------------------------------------------

class OracleBudgetExceeded(RuntimeError):
    pass


def _eval_vectorized(f: Formula, adj: np.ndarray, vals: dict, memo: dict) -> np.ndarray:
    hit = memo.get(f)
    if hit is not None:
        return hit
    if isinstance(f, Bot):
        r = np.zeros(memo["__shape__"], dtype=bool)
    elif isinstance(f, AtomRef):
        r = vals[f.atom]
    elif isinstance(f, Neg):
        r = ~_eval_vectorized(f.arg, adj, vals, memo)
    elif isinstance(f, Or):
        r = _eval_vectorized(f.left, adj, vals, memo) | _eval_vectorized(f.right, adj, vals, memo)
    elif isinstance(f, Box):
        body = _eval_vectorized(f.arg, adj, vals, memo)
        # s satisfies []g iff no successor falsifies g
        r = ((~body).astype(np.int32) @ adj.T.astype(np.int32)) == 0
    else:
        raise TypeError(f"not a formula: {f!r}")
    memo[f] = r
    return r


def _frames(n: int, logic: Logic):
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    for bits in itertools.product((False, True), repeat=len(pairs)):
        adj = np.zeros((n, n), dtype=bool)
        for (i, j), on in zip(pairs, bits):
            if on:
                adj[i, j] = adj[j, i] = True
        if logic.reflexive and not adj.diagonal().all():
            continue
        if logic.serial and not adj.any(axis=1).all():
            continue
        yield adj


def oracle_cost(f: Formula, max_states: int) -> int:
    n_atoms = len(atoms(f))
    return sum(2 ** (n * (n + 1) // 2) * 2 ** (n * n_atoms) * n for n in range(1, max_states + 1))


def brute_force_countermodel(logic: Logic | str, f: Formula, max_states: int = DEFAULT_ORACLE_STATES,
                             budget: int = DEFAULT_ORACLE_BUDGET) -> PointedModel | None:
    """First falsifying pointed model over 1..max_states states, or None.

    ``None`` says nothing about validity beyond the searched sizes.
    """
    if isinstance(logic, str):
        logic = Logic.parse(logic)
    if max_states < 1:
        raise ValueError("max_states must be at least 1")
    cost = oracle_cost(f, max_states)
    if cost > budget:
        raise OracleBudgetExceeded(f"enumeration needs {cost} state evaluations, budget is {budget}")
    atom_list = sorted(atoms(f))
    for n in range(1, max_states + 1):
        n_vals = 2 ** (n * len(atom_list))
        idx = np.arange(n_vals)
        vals = {}
        for a_i, atom in enumerate(atom_list):
            bits = [(idx >> (a_i * n + s)) & 1 for s in range(n)]
            vals[atom] = np.stack(bits, axis=1).astype(bool)
        for adj in _frames(n, logic):
            memo = {"__shape__": (n_vals, n)}
            truth = _eval_vectorized(f, adj, vals, memo)
            bad = np.argwhere(~truth)
            if bad.size:
                v, s = (int(x) for x in bad[0])
                rel = [(i, j) for i in range(n) for j in range(n) if adj[i, j]]
                valuation = {atom: [st for st in range(n) if vals[atom][v, st]] for atom in atom_list}
                return PointedModel(Model(Frame(range(n), rel), valuation), s)
    return None


__all__ = [
    "Logic", "Valid", "Invalid", "Unknown", "Verdict", "decide", "certify", "is_valid",
    "brute_force_countermodel", "oracle_cost", "OracleBudgetExceeded", "CertificationError",
    "DEFAULT_MAX_NODES", "DEFAULT_ORACLE_STATES",
]
